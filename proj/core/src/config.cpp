#include "shotnoise/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shotnoise/errors.hpp"

namespace shotnoise {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(std::string("unknown key '") + key + "' in " + where);
        }
    }
    for (const auto& key : allowed) {
        if (!obj.contains(key)) {
            throw ConfigError(std::string("missing key '") + key + "' in " + where);
        }
    }
}

double real_field(const json& obj, const char* key, const char* where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("key '") + key + "' in " + where + " must be a number");
    }
    return v.get<double>();
}

DistributionSpec distribution_from(const json& obj, const char* where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    reject_unknown_keys(obj, {"kind", "rate"}, where);
    const json& kind = obj.at("kind");
    if (!kind.is_string() || kind.get<std::string>() != "exponential") {
        throw ConfigError(std::string(where) + ".kind must be \"exponential\"");
    }
    return DistributionSpec::exponential(real_field(obj, "rate", where));
}

json distribution_to(const DistributionSpec& d) {
    switch (d.kind()) {
    case DistributionKind::Exponential:
        return json{{"kind", "exponential"}, {"rate", d.rate()}};
    }
    return {};
}

json parse_or_throw(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

ModelParams parse_model_config(std::string_view json_text, NetProfitPolicy policy) {
    const json root = parse_or_throw(json_text);
    if (!root.is_object()) throw ConfigError("model config must be a JSON object");
    reject_unknown_keys(root, {"c", "rho", "delta", "lambda0", "u", "claims", "shocks"}, "config");
    ModelParams p;
    p.c = real_field(root, "c", "config");
    p.rho = real_field(root, "rho", "config");
    p.delta = real_field(root, "delta", "config");
    p.lambda0 = real_field(root, "lambda0", "config");
    p.u = real_field(root, "u", "config");
    p.claim_dist = distribution_from(root.at("claims"), "claims");
    p.shock_dist = distribution_from(root.at("shocks"), "shocks");
    validate(p, policy);
    return p;
}

ModelParams load_model_config(const std::string& path, NetProfitPolicy policy) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_config(buffer.str(), policy);
}

std::string model_config_json(const ModelParams& p) {
    const json root{{"c", p.c},
                    {"rho", p.rho},
                    {"delta", p.delta},
                    {"lambda0", p.lambda0},
                    {"u", p.u},
                    {"claims", distribution_to(p.claim_dist)},
                    {"shocks", distribution_to(p.shock_dist)}};
    return root.dump();
}

std::string distribution_json(const DistributionSpec& d) {
    return distribution_to(d).dump();
}

DistributionSpec parse_distribution(std::string_view json_text) {
    return distribution_from(parse_or_throw(json_text), "distribution");
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace shotnoise
