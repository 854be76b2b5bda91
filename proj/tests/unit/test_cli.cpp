#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "shotnoise");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = shotnoise::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_config(const std::string& name, const std::string& body) {
    const std::string path = std::string(SHOTNOISE_TEST_TMPDIR) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

const char* kUnsafe = R"({"c":1.0,"rho":1.5,"delta":1.0,"lambda0":1.0,"u":10.0,
  "claims":{"kind":"exponential","rate":1.0},"shocks":{"kind":"exponential","rate":1.0}})";

} // namespace

TEST_CASE("solve reports the canonical coefficient") {
    const Result r = invoke({"solve", "--canonical"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["R"].get<double>() == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(j["alpha_R"].get<double>() == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
    CHECK(j["theta_prime_R"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["bound"].get<double>() == doctest::Approx(std::exp(1.0 / 3.0 - 2.5)).epsilon(1e-10));
}

TEST_CASE("bound honours overrides") {
    const Result r = invoke({"bound", "--canonical", "--u", "4", "--lambda0", "1.5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["bound"].get<double>() == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
    CHECK(invoke({"bound", "--canonical", "--lambda0", "0"}).code == 1);
}

TEST_CASE("validation failures exit with 1") {
    const std::string unsafe = write_config("unsafe.json", kUnsafe);
    const Result np = invoke({"solve", "--config", unsafe});
    CHECK(np.code == 1);
    CHECK(np.err.find("net profit") != std::string::npos);

    const std::string extra = write_config(
        "extra.json", R"({"c":1.0,"rho":0.5,"delta":1.0,"lambda0":1.0,"u":10.0,"beta":2,
          "claims":{"kind":"exponential","rate":1.0},"shocks":{"kind":"exponential","rate":1.0}})");
    CHECK(invoke({"solve", "--config", extra}).code == 1);

    CHECK(invoke({"simulate", "--canonical", "--measure", "p", "--paths", "10"}).code == 1);
    CHECK(invoke({"estimate", "--canonical", "--method", "crude", "--paths", "10"}).code == 1);
    CHECK(invoke({"solve"}).code == 1);
    CHECK(invoke({"solve", "--canonical", "--config", extra}).code == 1);
    CHECK(invoke({"estimate", "--canonical", "--method", "magic"}).code == 1);
    CHECK(invoke({"solve", "--config", unsafe, "--allow-unsafe"}).code == 1);
}

TEST_CASE("event cap exits with 2") {
    const Result r = invoke({"simulate", "--canonical", "--measure", "p", "--horizon", "1000",
                             "--paths", "5", "--max-events", "3"});
    CHECK(r.code == 2);
}

TEST_CASE("simulate output is deterministic and thread-invariant") {
    const std::vector<std::string> base{"simulate", "--canonical", "--measure", "q",
                                        "--paths",  "300",         "--seed",    "9"};
    auto with_threads = [&](const char* t) {
        auto a = base;
        a.push_back("--threads");
        a.push_back(t);
        return invoke(a);
    };
    const Result one = with_threads("1");
    REQUIRE(one.code == 0);
    CHECK(one.out.rfind("replicate,ruined,tau,x_tau,lambda_tau,n_claims,n_shocks\n", 0) == 0);
    CHECK(with_threads("4").out == one.out);
    CHECK(with_threads("8").out == one.out);
    CHECK(with_threads("1").out == one.out);

    auto other = base;
    other[7] = "10";
    CHECK(invoke(other).out != one.out);
}

TEST_CASE("physical simulate leaves empty fields for survivors") {
    const Result r = invoke({"simulate", "--canonical", "--measure", "p", "--horizon", "0.5",
                             "--paths", "20"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find(",0,,,,") != std::string::npos);
}

TEST_CASE("estimate both emits two methods") {
    const Result r = invoke({"estimate", "--canonical", "--u", "2", "--method", "both", "--paths",
                             "2000", "--horizon", "100", "--threads", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["method"] == "crude");
    CHECK(j[1]["method"] == "is");
    CHECK(j[1].contains("max_weight"));
    const double crude = j[0]["point"], is = j[1]["point"];
    const double se = std::hypot(j[0]["stderr"].get<double>(), j[1]["stderr"].get<double>());
    CHECK(std::abs(crude - is) <= 5.0 * se);
}

TEST_CASE("scan and out file") {
    const std::string out = std::string(SHOTNOISE_TEST_TMPDIR) + "/scan.csv";
    const Result r = invoke({"scan", "--canonical", "--u-grid", "0,5,10", "--paths-per-point", "500",
                             "--out", out});
    REQUIRE(r.code == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "u,psi_hat,stderr,psi_eru,stderr_eru,bound");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("validate passes on the canonical model") {
    const Result r = invoke({"validate", "--canonical", "--paths", "20000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("help exits cleanly") {
    CHECK(invoke({"--help"}).code == 0);
}
