#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "affine_cells/affine_perm.hpp"
#include "affine_cells/canonical.hpp"
#include "cli.hpp"

using namespace affine_cells;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    std::string text = out.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return {code, text, err.str()};
}

} // namespace

TEST_CASE("element commands") {
    CHECK(run_cli({"elt", "len", "[4,2,3]", "--n", "3"}).out == "2");
    CHECK(run_cli({"elt", "mul", "[2,1,3]", "[2,1,3]"}).out == "[1,2,3]");
    CHECK(run_cli({"elt", "desc", "[2,1,3]"}).out == "R={1} L={1}");
    CHECK(run_cli({"elt", "inv", "[4,2,3]"}).out == "[-2,2,3]");
    CHECK(run_cli({"elt", "word", "[4,2,3]"}).out == "w^1.s2.s1");
    auto j = nlohmann::json::parse(run_cli({"--json", "elt", "len", "[4,2,3]"}).out);
    CHECK(j["length"] == 2);
}

TEST_CASE("cell and weight commands") {
    CHECK(run_cli({"cell", "[6,3,10,7,8,11]", "--n", "6"}).out == "lambda=2,2,1,1 mu=4,2");
    CHECK(run_cli({"eps-inv", "--lambda", "2,1", "(0)(0)"}).out == "[2,1,3]");
    CHECK(run_cli({"eps", "[2,1,3]", "--lambda", "2,1"}).out == "(0)(0)");
    auto fe = to_string(fundamental_element({2, 1}, 2, 1));
    CHECK(run_cli({"eps", fe, "--lambda", "2,1"}).out == "(0)(1)");
    auto j = nlohmann::json::parse(run_cli({"cell", "[6,3,10,7,8,11]", "--json"}).out);
    CHECK(j["mu"] == nlohmann::json::array({4, 2}));
}

TEST_CASE("Hecke commands") {
    CHECK(run_cli({"kl", "[1,2,3,4]", "[3,4,1,2]"}).out == "1,1");
    CHECK(run_cli({"kl", "[1,2,3]", "[4,2,3]"}).out == "0");
    CHECK(run_cli({"gamma", "[2,1]", "[2,1]", "[2,1]"}).out == "1");
    auto j = nlohmann::json::parse(run_cli({"--json", "gamma", "[2,1]", "[2,1]", "[2,1]"}).out);
    CHECK(j["gamma"] == 1);
    CHECK(j["predicted"] == 1);
    auto oracle = run_cli({"jprod", "[2,-1]", "[4,1]", "--oracle"});
    auto predicted = run_cli({"jprod", "[2,-1]", "[4,1]", "--lambda", "2"});
    CHECK(oracle.code == cli::ok);
    CHECK(oracle.out == predicted.out);
}

TEST_CASE("round trip of printed values") {
    for (const auto& w : {"[4,2,3]", "[6,3,10,7,8,11]", "[-3,5,4]"}) {
        auto inv = run_cli({"elt", "inv", w}).out;
        CHECK(run_cli({"elt", "inv", inv}).out == to_string(parse_window(w)));
        auto word = run_cli({"elt", "word", w}).out;
        CHECK(evaluate(parse_window(w).rank(), parse_word(word)) == parse_window(w));
    }
    auto member = run_cli({"eps-inv", "--lambda", "3,1,1", "(1,-1)(2)"}).out;
    CHECK(run_cli({"eps", member, "--lambda", "3,1,1"}).out == "(1,-1)(2)");
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"elt", "len", "[1,1]"}).code == cli::invalid_input);
    CHECK(run_cli({"elt", "len", "[1,2,3]", "--n", "4"}).code == cli::invalid_input);
    CHECK(run_cli({"frobnicate"}).code == cli::invalid_input);
    CHECK(run_cli({"eps-inv", "(0)(0)"}).code == cli::invalid_input);
    CHECK(run_cli({"eps", "[1,2,3]", "--lambda", "2,2"}).code == cli::invalid_input);
    auto big = run_cli({"--budget", "2", "kl", "[1,2,3]", "[3,5,-2]"});
    CHECK(big.code == cli::limit_exceeded);
    CHECK(big.err.find("LimitExceeded") != std::string::npos);
    CHECK(run_cli({"verify", "--n", "2", "--lambda", "2", "--max-length", "8"}).code == cli::ok);
}

TEST_CASE("verify output and cache soundness") {
    const std::string cache = "cli_cache_test.txt";
    const std::string report = "cli_report_test.json";
    std::remove(cache.c_str());
    auto cold = run_cli({"--json", "--cache", cache, "verify", "--n", "2", "--lambda", "2", "--max-length", "6", "--output", report});
    REQUIRE(cold.code == cli::ok);
    CHECK(std::ifstream(cache).good());
    CHECK(std::ifstream(report).good());
    auto warm = run_cli({"--json", "--cache", cache, "verify", "--n", "2", "--lambda", "2", "--max-length", "6", "--jobs", "2"});
    REQUIRE(warm.code == cli::ok);
    CHECK(cold.out == warm.out);
    auto j = nlohmann::json::parse(cold.out);
    CHECK(j["summary"]["disagreements"] == 0);
    CHECK(j["triples"].size() > 0);
    CHECK_FALSE(j.contains("wall_time_seconds"));
    auto timed = nlohmann::json::parse(run_cli({"--json", "verify", "--n", "2", "--lambda", "2", "--max-length", "4", "--timing"}).out);
    CHECK(timed.contains("wall_time_seconds"));
    auto text = run_cli({"verify", "--n", "2", "--lambda", "2", "--max-length", "4"});
    CHECK(text.out.find("disagree=0") != std::string::npos);
    std::remove(cache.c_str());
    std::remove(report.c_str());

    const std::string env_cache = "cli_env_cache_test.txt";
    ::setenv("AFFINE_CELLS_CACHE", env_cache.c_str(), 1);
    CHECK(run_cli({"--cache", cache, "kl", "[1,2,3]", "[2,1,3]"}).out == "1");
    ::unsetenv("AFFINE_CELLS_CACHE");
    CHECK(std::ifstream(env_cache).good());
    CHECK_FALSE(std::ifstream(cache).good());
    std::remove(env_cache.c_str());
}
