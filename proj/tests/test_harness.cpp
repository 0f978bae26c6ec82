#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "rpde/brownian.hpp"
#include "rpde/harness.hpp"
#include "rpde/io.hpp"

using namespace rpde;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("rpde_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("lift csv round trip is bit-exact") {
    PathLift lift = brownian_lift(123, TimeGrid::make_uniform(0.7, 65), 8, 3);
    fs::path p = fresh_dir("lift") / "lift.csv";
    save_lift_csv(lift, p.string(), config_hash("cfg-text"));
    PathLift back = load_lift_csv(p.string());
    CHECK(back.dim == lift.dim);
    CHECK(back.points() == lift.points());
    CHECK(back.geometric == lift.geometric);
    CHECK(back.seed == lift.seed);
    CHECK(back.refinement == lift.refinement);
    CHECK(back.pvar_exponent == lift.pvar_exponent);
    for (std::size_t i = 0; i < lift.points(); ++i) {
        CHECK(back.grid.points[i] == lift.grid.points[i]);
        CHECK((back.level1[i] - lift.level1[i]).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((back.level2[i] - lift.level2[i]).lpNorm<Eigen::Infinity>() == 0.0);
    }
    // The config hash is embedded in the header.
    CHECK(slurp(p.string()).find(config_hash("cfg-text")) != std::string::npos);
}

TEST_CASE("scalar driver csv round trip is bit-exact") {
    SpaceGrid sg{1, 16};
    ScalarDriver d = make_scalar_driver(brownian_lift(9, TimeGrid::make_uniform(1.0, 32), 4, 2),
                                        sg, {make_profile(sg, "sin"), make_profile(sg, "bump")});
    fs::path p = fresh_dir("driver") / "driver.csv";
    save_scalar_driver_csv(d, p.string());
    ScalarDriver back = load_scalar_driver_csv(p.string());
    CHECK(back.grid.dim == d.grid.dim);
    CHECK(back.grid.n == d.grid.n);
    CHECK(back.profiles == d.profiles);
    for (std::size_t i = 0; i < d.points(); ++i) {
        CHECK((back.base.level1[i] - d.base.level1[i]).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((back.base.level2[i] - d.base.level2[i]).lpNorm<Eigen::Infinity>() == 0.0);
    }
    CHECK(back.chen_defect_recorded <= 1e-10);
}

TEST_CASE("config parsing and validation") {
    ExperimentConfig def;
    CHECK(def.experiment == "clt");
    CHECK(def.eps.empty());  // filled with the default schedule on resolve

    ExperimentConfig c = ExperimentConfig::from_json_text(
        R"({"experiment":"solve","equation":"llg","space_n":64,"steps":250,"seed":7})");
    CHECK(c.experiment == "solve");
    CHECK(c.equation == "llg");
    CHECK(c.space_n == 64);
    CHECK(c.steps == 250);
    CHECK(c.seed == 7);
    CHECK(c.horizon == def.horizon);  // untouched fields keep defaults

    // Wrong type names the offending field.
    try {
        ExperimentConfig::from_json_text(R"({"space_n":"many"})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "space_n");
    }

    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{nope"), ConfigError);

    auto invalid = [](auto&& mutate) {
        ExperimentConfig c;
        mutate(c);
        try {
            c.validate();
            return false;
        } catch (const ConfigError&) {
            return true;
        }
    };
    CHECK(invalid([](ExperimentConfig& c) { c.experiment = "bogus"; }));
    CHECK(invalid([](ExperimentConfig& c) { c.equation = "bogus"; }));
    CHECK(invalid([](ExperimentConfig& c) { c.eps = {0.25}; }));
    CHECK(invalid([](ExperimentConfig& c) { c.eps = {0.25, 0.25}; }));
    CHECK(invalid([](ExperimentConfig& c) { c.refinement = 3; }));
    CHECK(invalid([](ExperimentConfig& c) { c.space_dim = 3; }));
    CHECK(invalid([](ExperimentConfig& c) {
        c.equation = "llg";
        c.space_dim = 2;
    }));
    CHECK(invalid([](ExperimentConfig& c) {
        c.equation = "llg";
        c.experiment = "mdp";
    }));

    // Canonical resolved text is deterministic, so hashes are stable.
    ExperimentConfig a = ExperimentConfig::from_json_text(R"({"seed":11})");
    ExperimentConfig b = ExperimentConfig::from_json_text(R"({"seed":11})");
    CHECK(a.resolved_text() == b.resolved_text());
    CHECK(config_hash(a.resolved_text()) == config_hash(b.resolved_text()));
    b.seed = 12;
    CHECK(config_hash(a.resolved_text()) != config_hash(b.resolved_text()));
}

TEST_CASE("run dispatch encodes schema violations as exit code 2") {
    ExperimentConfig c;
    c.experiment = "not-an-experiment";
    c.out_dir = (fresh_dir("bad") / "out").string();
    RunRecord rec = run(c);
    CHECK(rec.exit_code == 2);
}

TEST_CASE("lift-check run produces artifacts and is deterministic") {
    ExperimentConfig c;
    c.experiment = "lift-check";
    c.space_n = 16;
    c.steps = 64;
    c.horizon = 0.5;
    c.refinement = 4;
    c.out_dir = (fresh_dir("liftcheck") / "out").string();
    RunRecord rec = run(c);
    CHECK(rec.exit_code == 0);
    CHECK(!rec.artifacts.empty());
    CHECK(!rec.hash.empty());

    std::map<std::string, std::string> first;
    for (const auto& a : rec.artifacts) {
        CHECK(fs::exists(a));
        first[a] = slurp(a);
        // Artifacts embed the config hash for traceability.
        if (a.ends_with(".csv")) CHECK(first[a].find(rec.hash) != std::string::npos);
    }
    RunRecord again = run(c);
    CHECK(again.exit_code == 0);
    CHECK(again.hash == rec.hash);
    for (const auto& a : again.artifacts) CHECK(slurp(a) == first.at(a));
}

TEST_CASE("clt run on a small grid reports a rate and writes the report") {
    ExperimentConfig c;
    c.experiment = "clt";
    c.space_n = 16;
    c.steps = 200;
    c.horizon = 0.1;
    c.refinement = 4;
    c.eps = {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
    c.min_slope = 0.2;
    c.out_dir = (fresh_dir("clt") / "out").string();
    RunRecord rec = run(c);
    CHECK(rec.exit_code == 0);
    bool has_json = false, has_svg = false;
    for (const auto& a : rec.artifacts) {
        CHECK(fs::exists(a));
        if (a.ends_with(".json")) has_json = true;
        if (a.ends_with(".svg")) has_svg = true;
    }
    CHECK(has_json);
    CHECK(has_svg);
}

TEST_CASE("run_file reads the config from disk") {
    fs::path dir = fresh_dir("runfile");
    fs::path cfg = dir / "config.json";
    {
        std::ofstream out(cfg);
        out << R"({"experiment":"lift-check","space_n":16,"steps":32,"horizon":0.25,)"
            << R"("refinement":2,"out_dir":")" << (dir / "out").string() << R"("})";
    }
    RunRecord rec = run_file(cfg.string());
    CHECK(rec.exit_code == 0);

    RunRecord missing = run_file((dir / "nope.json").string());
    CHECK(missing.exit_code == 2);
}
