#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "shotnoise/config.hpp"
#include "shotnoise/errors.hpp"

using namespace shotnoise;

namespace {

const char* kValid = R"({"c":1.0,"rho":0.5,"delta":1.0,"lambda0":1.0,"u":10.0,
  "claims":{"kind":"exponential","rate":1.0},"shocks":{"kind":"exponential","rate":1.0}})";

std::string with(const std::string& from, const std::string& to) {
    std::string s = kValid;
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("parse the model config") {
    const ModelParams p = parse_model_config(kValid);
    CHECK(p.c == 1.0);
    CHECK(p.rho == 0.5);
    CHECK(p.u == 10.0);
    CHECK(p.claim_dist == DistributionSpec::exponential(1.0));
    CHECK(p.shock_dist.rate() == 1.0);

    const ModelParams back = parse_model_config(model_config_json(p));
    CHECK(back.c == p.c);
    CHECK(back.lambda0 == p.lambda0);
    CHECK(back.shock_dist == p.shock_dist);
}

TEST_CASE("distribution JSON form") {
    CHECK(distribution_json(DistributionSpec::exponential(1.0)) == R"({"kind":"exponential","rate":1.0})");
    CHECK(parse_distribution(R"({"kind":"exponential","rate":2.5})").rate() == 2.5);
    CHECK_THROWS_AS(parse_distribution(R"({"kind":"gamma","rate":2.5})"), ConfigError);
}

TEST_CASE("schema violations") {
    CHECK_THROWS_AS(parse_model_config(with("\"u\":10.0", "\"u\":10.0,\"extra\":1")), ConfigError);
    CHECK_THROWS_AS(parse_model_config(with("\"u\":10.0,", "")), ConfigError);
    CHECK_THROWS_AS(parse_model_config(with("\"c\":1.0", "\"c\":\"1\"")), ConfigError);
    CHECK_THROWS_AS(parse_model_config(with("\"rate\":1.0}", "\"rate\":1.0,\"shape\":2}")), ConfigError);
    CHECK_THROWS_AS(parse_model_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_model_config("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_model_config(with("\"delta\":1.0", "\"delta\":0.0")), ValidationError);
    CHECK_THROWS_AS(load_model_config("/nonexistent/model.json"), ConfigError);
}

TEST_CASE("net profit condition at load time") {
    const std::string bad = with("\"rho\":0.5", "\"rho\":1.0");
    CHECK_THROWS_AS(parse_model_config(bad), NetProfitError);
    CHECK_NOTHROW(parse_model_config(bad, NetProfitPolicy::AllowViolation));
}

TEST_CASE("format_real round-trips") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::ldexp(mant(gen), expo(gen));
        CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
    }
    CHECK(format_real(0.25) == "0.25");
}
