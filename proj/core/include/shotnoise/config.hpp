#pragma once

#include <string>
#include <string_view>

#include "shotnoise/model.hpp"

namespace shotnoise {

/// Parses a model config with exactly the keys
///   c, rho, delta, lambda0, u, claims, shocks
/// where claims/shocks are {"kind": "exponential", "rate": <real>}.
/// Unknown or missing keys raise ConfigError. The model is validated with
/// `policy`.
ModelParams parse_model_config(std::string_view json_text,
                               NetProfitPolicy policy = NetProfitPolicy::Enforce);
ModelParams load_model_config(const std::string& path,
                              NetProfitPolicy policy = NetProfitPolicy::Enforce);

std::string model_config_json(const ModelParams& p);
std::string distribution_json(const DistributionSpec& d);
DistributionSpec parse_distribution(std::string_view json_text);

/// printf("%.17g"); round-trips every double.
std::string format_real(double v);

} // namespace shotnoise
