#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

std::string paleo_bin() {
    const char* bin = std::getenv("PALEO_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "PALEO_BIN must point at the paleo binary");
    return bin;
}

int run(const std::string& args) {
    std::string cmd = paleo_bin() + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(static_cast<bool>(in), "missing file: " << p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Scratch {
    fs::path dir;
    Scratch() : dir(fs::path("cli_scratch") / std::to_string(counter_++)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    std::string out(const std::string& sub) const { return (dir / sub).string(); }
    static int counter_;
};
int Scratch::counter_ = 0;

// Small-grid config so CLI-level fits stay fast.
void write_small_config(const fs::path& path, int iterations) {
    std::ofstream cfg(path);
    cfg << R"({
  "grid": {"start_year": -400, "end_year": 100, "bin_width": 100, "observation_year": 2022},
  "seed": 11,
  "svi": {"iterations": )"
        << iterations << R"(, "mc_samples": 8, "elbo_log_stride": 10}
})";
}

}  // namespace

TEST_CASE("simulate writes the dataset with one row per bin") {
    Scratch s;
    int rc = run("--out " + s.out("o") + " --dataset " + s.out("ds.csv") + " --seed 42 simulate");
    CHECK(rc == 0);
    std::string csv = slurp(s.out("ds.csv"));
    CHECK(oracles::count_occurrences(csv, "\n") == 121);  // header + 120 default bins
    CHECK(fs::exists(s.out("o") + "/truth.json"));

    // same seed twice: identical bytes
    Scratch s2;
    rc = run("--out " + s2.out("o") + " --dataset " + s2.out("ds.csv") + " --seed 42 simulate");
    CHECK(rc == 0);
    CHECK(slurp(s2.out("ds.csv")) == csv);

    // different seed: different draws
    Scratch s3;
    run("--out " + s3.out("o") + " --dataset " + s3.out("ds.csv") + " --seed 43 simulate");
    CHECK(slurp(s3.out("ds.csv")) != csv);
}

TEST_CASE("all-zero dataset when the truth sampling probability vanishes") {
    Scratch s;
    std::ofstream cfg(s.dir / "cfg.json");
    cfg << R"({"truth": {"sampling_prob": 1e-12}})";
    cfg.close();
    int rc = run("--config " + s.out("cfg.json") + " --out " + s.out("o") + " --dataset " +
                 s.out("ds.csv") + " simulate");
    CHECK(rc == 0);
    std::string csv = slurp(s.out("ds.csv"));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        CHECK(line.substr(line.rfind(',') + 1) == "0");
    }
}

TEST_CASE("fit writes all artifacts and echoes overrides") {
    Scratch s;
    write_small_config(s.dir / "cfg.json", 400);
    std::string common =
        "--config " + s.out("cfg.json") + " --out " + s.out("o") + " --dataset " + s.out("ds.csv");
    REQUIRE(run(common + " simulate") == 0);
    REQUIRE(run(common + " fit --iterations 100") == 0);

    for (const char* name :
         {"fit.json", "summary.json", "trajectory.csv", "parameters.csv", "elbo_trace.csv"}) {
        CHECK(fs::exists(fs::path(s.out("o")) / name));
    }
    auto fit_json = nlohmann::json::parse(slurp(s.out("o") + "/fit.json"));
    CHECK(fit_json["config"]["svi"]["iterations"] == 100);
    CHECK(fit_json["elbo_trace"].size() == 10);

    // missing input: exit 2, nothing written
    Scratch s4;
    write_small_config(s4.dir / "cfg.json", 100);
    int rc = run("--config " + s4.out("cfg.json") + " --out " + s4.out("o") + " --dataset " +
                 s4.out("missing.csv") + " fit");
    CHECK(rc == 2);
    CHECK(!fs::exists(fs::path(s4.out("o")) / "fit.json"));
}

TEST_CASE("report renders figures idempotently") {
    Scratch s;
    write_small_config(s.dir / "cfg.json", 150);
    std::string common =
        "--config " + s.out("cfg.json") + " --out " + s.out("o") + " --dataset " + s.out("ds.csv");
    REQUIRE(run(common + " simulate") == 0);
    REQUIRE(run(common + " fit") == 0);
    REQUIRE(run(common + " report") == 0);

    std::string traj = slurp(s.out("o") + "/trajectory.svg");
    std::string dens = slurp(s.out("o") + "/densities.svg");
    CHECK(oracles::well_formed_xml(traj));
    CHECK(oracles::well_formed_xml(dens));

    REQUIRE(run(common + " report") == 0);  // overwrite with identical bytes
    CHECK(slurp(s.out("o") + "/trajectory.svg") == traj);
    CHECK(slurp(s.out("o") + "/densities.svg") == dens);

    // reserved flag accepts only iqr
    CHECK(run(common + " report --band iqr") == 0);
    CHECK(run(common + " report --band p95") == 2);

    // missing artifacts
    Scratch s5;
    write_small_config(s5.dir / "cfg.json", 100);
    CHECK(run("--config " + s5.out("cfg.json") + " --out " + s5.out("o") + " report") == 2);
}

TEST_CASE("config errors exit with code 2") {
    Scratch s;
    std::ofstream cfg(s.dir / "bad.json");
    cfg << R"({"svi": {"iterations": 100, "learning_rte": 0.001}})";
    cfg.close();
    CHECK(run("--config " + s.out("bad.json") + " simulate") == 2);

    std::ofstream cfg2(s.dir / "notjson.json");
    cfg2 << "{nope";
    cfg2.close();
    CHECK(run("--config " + s.out("notjson.json") + " simulate") == 2);
}

TEST_CASE("PALEO_SEED overrides the config seed, --seed beats both") {
    Scratch s;
    std::string base = "--out " + s.out("o") + " --dataset " + s.out("a.csv") + " simulate";
    std::string cmd = "PALEO_SEED=7 " + paleo_bin() + " --out " + s.out("o") + " --dataset " +
                      s.out("b.csv") + " simulate >/dev/null 2>&1";
    REQUIRE(run("--seed 7 " + base.substr(0)) == 0);
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    // env seed 7 matches --seed 7
    std::string a = slurp(s.out("a.csv"));
    CHECK(slurp(s.out("b.csv")) == a);

    std::string cmd2 = "PALEO_SEED=9 " + paleo_bin() + " --seed 7 --out " + s.out("o") +
                       " --dataset " + s.out("c.csv") + " simulate >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd2.c_str())) == 0);
    CHECK(slurp(s.out("c.csv")) == a);  // flag wins over env
}

TEST_CASE("verify --quick runs the gradient suite") {
    Scratch s;
    int rc = run("--out " + s.out("o") + " verify --quick");
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(slurp(s.out("o") + "/verify.json"));
    CHECK(doc["all_pass"] == true);
    CHECK(doc["quick"] == true);
    REQUIRE(doc["checks"].size() == 1);
    CHECK(doc["checks"][0]["name"] == "gradient_finite_difference");
    CHECK(doc["checks"][0]["measured"].get<double>() <=
          doc["checks"][0]["threshold"].get<double>());
}
