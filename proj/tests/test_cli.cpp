#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "oqsim/experiments.hpp"

using namespace oqsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(OQSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("hom metrics: the coincidence probability is zero") {
    ExperimentConfig config;
    config.name = "hom";
    auto r = run_experiment(config);
    CHECK(r.metrics.at("coincidence_prob").get<double>() == doctest::Approx(0.0));
    CHECK(r.metrics.at("target_fidelity").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("double-heralding experiment tracks eta^2/2") {
    ExperimentConfig config;
    config.name = "double-heralding";
    config.seed = 7;
    config.trials = 10000;
    config.params["eta"] = "1.0";
    auto r = run_experiment(config);
    double rate = r.metrics.at("success_rate").get<double>();
    double sigma = std::sqrt(0.5 * 0.5 / config.trials);
    CHECK(std::abs(rate - 0.5) < 3.0 * sigma);
    CHECK(r.metrics.at("mean_fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("JSON round-trip parses back to an equal record") {
    ExperimentConfig config;
    config.name = "cluster-growth";
    config.params = {{"p", "0.5"}, {"m", "5"}, {"steps", "100"}, {"n0", "50"}};
    auto r = run_experiment(config);
    auto parsed = ordered_json::parse(record_to_json_text(r));
    CHECK(parsed.at("experiment") == "cluster-growth");
    CHECK(parsed.at("metrics") == r.metrics);
    CHECK(parsed.at("config") == r.config_echo);
}

TEST_CASE("cluster-growth CSV carries the declared header") {
    ExperimentConfig config;
    config.name = "cluster-growth";
    config.params = {{"steps", "10"}};
    auto r = run_experiment(config);
    REQUIRE(!r.csv_lines.empty());
    CHECK(r.csv_lines[0] == "step,size");
    CHECK(r.csv_lines.size() == 12);  // header + n0 row + 10 steps
}

TEST_CASE("unknown experiments and parameters are rejected") {
    ExperimentConfig config;
    config.name = "warp-drive";
    CHECK_THROWS_AS(run_experiment(config), UnknownExperiment);

    config.name = "hom";
    config.params["typo"] = "1";
    CHECK_THROWS_AS(run_experiment(config), InvalidParams);

    config.params.clear();
    config.format = "xml";
    CHECK_THROWS_AS(run_experiment(config), InvalidParams);
}

TEST_CASE("identical CLI invocations produce byte-identical files") {
    TempFile a("run_a.json"), b("run_b.json");
    std::string args = "-e double-heralding -s 11 -t 200 -p eta=0.8";
    REQUIRE(run_cli(args + " -o " + a.path) == 0);
    REQUIRE(run_cli(args + " -o " + b.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("CLI output is bit-identical to a direct library call") {
    TempFile out("direct.json");
    REQUIRE(run_cli("-e cluster-rotation -s 3 -t 25 -o " + out.path) == 0);

    ExperimentConfig config;
    config.name = "cluster-rotation";
    config.seed = 3;
    config.trials = 25;
    auto r = run_experiment(config);
    CHECK(slurp(out.path) == record_to_json_text(r));
}

TEST_CASE("config files drive runs and flags override them") {
    TempFile cfg("config.json"), out("from_config.csv");
    {
        std::ofstream f(cfg.path);
        f << R"({"experiment": "cluster-growth",
                 "seed": 5,
                 "trials": 1,
                 "params": {"p": 1.0, "m": 3, "steps": 20, "n0": 10},
                 "output": {"path": ")" +
                 out.path + R"(", "format": "csv"}})";
    }
    REQUIRE(run_cli("-c " + cfg.path) == 0);
    std::string text = slurp(out.path);
    CHECK(text.rfind("step,size\n", 0) == 0);
    // p=1, m=3: deterministic +1 per step from 10 to 30.
    CHECK(text.find("20,30") != std::string::npos);

    // A flag overrides the config file's seed without touching the rest.
    TempFile out2("override.csv");
    REQUIRE(run_cli("-c " + cfg.path + " -s 6 -o " + out2.path) == 0);
    CHECK(slurp(out2.path) == text);  // p=1 growth is seed-independent
}

TEST_CASE("exit codes: 2 for usage and config errors, 3 for io errors") {
    CHECK(run_cli("-e no-such-thing") == 2);
    CHECK(run_cli("-e hom -f xml") == 2);
    CHECK(run_cli("-e hom -p oops=1") == 2);
    CHECK(run_cli("") == 2);  // no experiment selected
    CHECK(run_cli("-e hom -o /nonexistent-dir/x.json") == 3);

    TempFile bad("bad.json");
    {
        std::ofstream f(bad.path);
        f << "{not json";
    }
    CHECK(run_cli("-c " + bad.path) == 2);
}

TEST_CASE("state JSON serialization round-trips") {
    auto trunc = TruncationConfig::with_photons(3);
    PureState psi(ModeLayout::polar(1), trunc);
    psi.set_term({1, 0}, cd(0.6, 0.0));
    psi.set_term({0, 1}, cd(0.0, 0.8));
    auto parsed = state_from_json(state_to_json(psi));
    CHECK(parsed.layout() == psi.layout());
    CHECK(std::abs(inner_product(parsed, psi) - 1.0) < 1e-12);
}

TEST_CASE("circuit JSON serialization round-trips through the matrix") {
    RandomStream rng(13);
    auto u = haar_random_unitary(3, rng);
    auto circuit = reck_decompose(u);
    auto parsed = circuit_from_json(circuit_to_json(circuit));
    REQUIRE(parsed.size() == circuit.size());
    auto layout = ModeLayout::flat(3);
    CHECK((circuit_unitary(parsed, layout).matrix - circuit_unitary(circuit, layout).matrix)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
}

TEST_CASE("cluster graphs serialize as adjacency lists") {
    ClusterGraph g = ClusterGraph::path(3);
    g.corrections[1].z = 1;
    auto j = graph_to_json(g);
    CHECK(j.at("vertices") == std::vector<int>{0, 1, 2});
    CHECK(j.at("adjacency")[1] == std::vector<int>{0, 2});
    CHECK(j.at("corrections").at("1") == "Z");
}

TEST_CASE("per-trial substreams are order-independent") {
    std::uint64_t master = 99;
    std::vector<std::uint64_t> forward, backward;
    for (int t = 0; t < 10; ++t) forward.push_back(RandomStream::derive(master, t));
    for (int t = 9; t >= 0; --t) backward.push_back(RandomStream::derive(master, t));
    for (int t = 0; t < 10; ++t) CHECK(forward[t] == backward[9 - t]);
}
