#include "../tools/commands.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using podsum::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name)
{
    return std::string(PODSUM_TEST_DATA) + "/" + name;
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "podsum_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("spec digest is FNV-1a 64")
{
    CHECK(podsum::cli::spec_digest("") == "cbf29ce484222325");
    CHECK(podsum::cli::spec_digest("a") == "af63dc4c8601ec8c");
}

TEST_CASE("log grid")
{
    const auto g = podsum::cli::log_grid(1.0, 1e4, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 1e4);
    CHECK(g[2] == doctest::Approx(100.0));
    CHECK(podsum::cli::log_grid(3.0, 3.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("sum reports a certified lower bound per m")
{
    const Outcome o = call({"sum", "--spec", data("pod_factorial.json"), "--m", "0.5,1"});
    REQUIRE(o.code == 0);
    const json r = json::parse(o.out);
    CHECK(r["command"] == "sum");
    CHECK(r["family"] == "pod");
    CHECK(r["spec_digest"].get<std::string>().size() == 16);
    REQUIRE(r["rows"].size() == 2);
    const json& row = r["rows"][1];
    CHECK(row["m"] == 1.0);
    CHECK(row["converged"] == true);
    CHECK(row["exact_lo"].get<double>() <= std::log(oracle::kPodSumAt1) + 1e-14);
    CHECK(row["exact_lo"].get<double>() >= std::log(oracle::kPodSumAt1) - 1e-7);
    CHECK(row["naive"] == "diverged");
    CHECK(r["rows"][0]["naive"].is_number());
    CHECK_FALSE(r.contains("wall_time_s"));
}

TEST_CASE("bound rows carry theorem1 values and flags")
{
    const Outcome o = call({"bound", "--spec", data("pod_factorial.json"), "--m", "1,10", "--L", "2", "--max-d", "4096"});
    REQUIRE(o.code == 0);
    const json r = json::parse(o.out);
    CHECK(r["L"] == 2);
    CHECK(r["rows"][1]["theorem1"] == "unbounded-at-L");
    CHECK(r["rows"][1]["dominance"] == "ok");

    const Outcome big = call({"bound", "--spec", data("pod_factorial.json"), "--m", "1", "--L", "40"});
    REQUIRE(big.code == 0);
    const json row = json::parse(big.out)["rows"][0];
    CHECK(row["naive"] == "diverged");
    REQUIRE(row["theorem1"].is_number());
    CHECK(row["theorem1"].get<double>() >= row["exact_lo"].get<double>());

    const Outcome spod = call({"bound", "--spec", data("spod_alpha2.json"), "--m", "0.5,2", "--L", "40", "--rtol", "1e-6"});
    REQUIRE(spod.code == 0);
    CHECK(json::parse(spod.out)["family"] == "spod");
}

TEST_CASE("bound never reports a dominance bug on random families")
{
    auto g = oracle::rng(61);
    const auto path = scratch("random_spec.json");
    for (int rep = 0; rep < 100; ++rep) {
        json spec;
        const double sigma = oracle::uniform(g, 0.0, 1.5);
        spec["gamma"] = {{"kind", "factorial_power"}, {"sigma", sigma}};
        if (rep % 2) {
            spec["upsilon"] = {{"kind", "explicit"}, {"values", oracle::weights(g, 1 + oracle::below(g, 30))}};
        } else {
            spec["upsilon"] = {{"kind", "poly_decay"},
                               {"c", oracle::uniform(g, 0.1, 2.0)},
                               {"rho", std::max(1.2, sigma + oracle::uniform(g, 0.5, 2.0))}};
        }
        std::ofstream(path) << spec.dump();
        const double m = std::exp(oracle::uniform(g, std::log(0.01), std::log(10.0)));
        const Outcome o = call({"bound", "--spec", path.string(), "--m", std::to_string(m), "--L", "48",
                                "--rtol", "1e-6", "--max-d", "4096"});
        CHECK(o.code == 0);
        CHECK(json::parse(o.out)["rows"][0]["dominance"] == "ok");
    }
}

TEST_CASE("usage and spec errors exit 2, divergent families exit 3")
{
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"sum"}).code == 2);
    CHECK(call({"sum", "--spec", data("pod_factorial.json"), "--m", "-1"}).code == 2);
    CHECK(call({"sum", "--spec", data("missing.json")}).code == 2);
    const Outcome bad = call({"sum", "--spec", data("bad_sigma.json")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("/gamma/sigma") != std::string::npos);
    const Outcome div = call({"sum", "--spec", data("pod_divergent.json")});
    CHECK(div.code == 3);
    CHECK(div.err.rfind("not summable", 0) == 0);
    CHECK(call({"rate", "--rho", "2", "--sigma", "2"}).code == 3);
    CHECK(call({"verify", "unknown-suite"}).code == 2);
}

TEST_CASE("rate modes")
{
    const Outcome pod = call({"rate", "--rho", "2", "--sigma", "0", "--c", "1", "--m", "100"});
    REQUIRE(pod.code == 0);
    const json r = json::parse(pod.out);
    CHECK(r["mode"] == "pod");
    CHECK(r["bracket"]["lower_const"].get<double>() == doctest::Approx(2.0));
    CHECK(r["bracket"]["upper_const"].get<double>() == doctest::Approx(2.0 * std::sqrt(std::exp(1.0))));
    const json& row = r["rows"][0];
    CHECK(row["lower_series"].get<double>() <= row["exact_lo"].get<double>() + 1e-12);
    CHECK(row["exact_lo"].get<double>() <= row["upper"].get<double>());

    const Outcome theta = call({"rate", "--theta", "1", "--m", "10,100"});
    REQUIRE(theta.code == 0);
    for (const auto& t : json::parse(theta.out)["rows"]) {
        CHECK(t["normalized_log"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    }

    const Outcome spod = call({"rate", "--alpha", "2", "--c", "1,1", "--m", "10", "--d", "64", "--L", "32"});
    REQUIRE(spod.code == 0);
    const json s = json::parse(spod.out);
    CHECK(s["mode"] == "spod");
    CHECK(s["rows"][0]["lower"].get<double>() <= s["rows"][0]["upper"].get<double>());
}

TEST_CASE("m grid options")
{
    const Outcome o = call({"sum", "--spec", data("pod_explicit.json"), "--m-log", "0.1", "10", "3"});
    REQUIRE(o.code == 0);
    const json rows = json::parse(o.out)["rows"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[1]["m"].get<double>() == doctest::Approx(1.0));
    CHECK(rows[1]["naive"] == "n/a");
}

TEST_CASE("CSV output")
{
    const auto path = scratch("rows.csv");
    std::filesystem::remove(path);
    const Outcome o = call({"sum", "--spec", data("pod_product.json"), "--m", "1,2", "--csv", path.string()});
    REQUIRE(o.code == 0);
    std::ifstream in(path);
    std::string header, first, second, extra;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(header == "m,exact_lo,converged,d,L,rel_change,naive");
    CHECK(first.rfind("1,", 0) == 0);
    CHECK(second.rfind("2,", 0) == 0);
    CHECK_FALSE(std::getline(in, extra));
}

TEST_CASE("environment fallbacks")
{
    ::setenv("PODSUM_SPEC", data("pod_explicit.json").c_str(), 1);
    ::setenv("PODSUM_M", "2", 1);
    const Outcome o = call({"sum"});
    ::unsetenv("PODSUM_SPEC");
    ::unsetenv("PODSUM_M");
    REQUIRE(o.code == 0);
    CHECK(json::parse(o.out)["rows"][0]["m"] == 2.0);
}

TEST_CASE("verify output is deterministic and reports pass/fail")
{
    const std::vector<std::string> args{"verify", "lemma2", "--seed", "5", "--n", "40"};
    const Outcome a = call(args);
    const Outcome b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json r = json::parse(a.out);
    CHECK(r["passed"] == true);
    CHECK(r["environment"]["seed"] == 5);
    CHECK(r["rows"].size() == 4);

    const Outcome text = call({"verify", "lemma2", "--n", "20", "--text"});
    CHECK(text.code == 0);
    CHECK(text.out.rfind("PASS lemma2.exact_le_fine", 0) == 0);
}

TEST_CASE("zero weights give Gamma_0 and pass every suite")
{
    const Outcome sum = call({"sum", "--spec", data("pod_zero.json"), "--m", "0.1,1,1000"});
    REQUIRE(sum.code == 0);
    for (const auto& row : json::parse(sum.out)["rows"]) {
        CHECK(row["exact_lo"].get<double>() == doctest::Approx(std::log(2.5)).epsilon(1e-15));
    }
    const Outcome ver = call({"verify", "all", "--spec", data("pod_zero.json"), "--n", "20", "--mc-samples", "2000"});
    CHECK(ver.code == 0);
    CHECK(json::parse(ver.out)["passed"] == true);
}

TEST_CASE("single-weight bound column")
{
    const Outcome o = call({"bound", "--spec", data("pod_single.json"), "--m", "2", "--L", "3"});
    REQUIRE(o.code == 0);
    const json row = json::parse(o.out)["rows"][0];
    CHECK(row["theorem1"].get<double>() == doctest::Approx(std::log(1.0 + std::exp(2.0) * 2.0 * 0.3)).epsilon(1e-14));
    CHECK(row["exact_lo"].get<double>() == doctest::Approx(std::log(1.6)).epsilon(1e-14));
}
