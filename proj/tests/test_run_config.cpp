#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fcl/run_config.hpp"

using namespace fcl;
using nlohmann::json;

namespace {

std::string field_of(const json& j) {
    try {
        run_config_from_json(j);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "none";
}

RunConfig random_config(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(0, 3);
    std::uniform_real_distribution<double> real(0.01, 5.0);
    RunConfig c;
    const int n = 1 + small(rng);
    for (int i = 0; i < n; ++i) {
        ScenarioConfig s;
        s.name = "s" + std::to_string(rng() % 1000);
        s.L = 2 * (2 + small(rng));
        s.model = small(rng) % 2 ? "lr" : "tb";
        if (s.model == "lr") s.alpha = real(rng);
        s.boundary = small(rng) % 2 ? "open" : "periodic";
        s.state = small(rng) == 0 ? "random:3" : "neel";
        if (small(rng) == 0) s.N = s.L / 2;
        if (small(rng) == 0) s.seed = rng();
        if (small(rng) < 2) s.tmax = real(rng);
        s.dt = real(rng) / 10;
        s.allow_odd_L = small(rng) == 0;
        c.scenarios.push_back(s);
    }
    c.out = "dir" + std::to_string(small(rng));
    c.seed = rng();
    c.quadrature_points = 256 << small(rng);
    c.quasiparticle = small(rng) % 2;
    c.verify = small(rng) % 2;
    c.c = real(rng);
    c.profile_method = small(rng) % 2 ? "pure" : "direct";
    return c;
}

}  // namespace

TEST(RunConfig, DefaultsFromEmptyObject) {
    const auto c = run_config_from_json(json::object());
    EXPECT_EQ(c, RunConfig{});
    EXPECT_EQ(c.quadrature_points, 8192);
    EXPECT_DOUBLE_EQ(c.c, 2.0);
}

TEST(RunConfig, RejectsUnknownKeysWithPath) {
    EXPECT_EQ(field_of(json{{"seeds", 1}}), "config.seeds");
    EXPECT_EQ(field_of(json{{"scenarios", {{{"L", 10}, {"alhpa", 1.0}}}}}), "config.scenarios[0].alhpa");
    EXPECT_EQ(field_of(json{{"scenarios", {json::object(), {{"L", "ten"}}}}}), "config.scenarios[1].L");
    EXPECT_EQ(field_of(json{{"scenarios", 3}}), "config.scenarios");
    EXPECT_EQ(field_of(json::array()), "config");
}

TEST(RunConfig, RoundTripProperty) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_config(rng);
        const json j = to_json(c);
        EXPECT_EQ(run_config_from_json(j), c);
        EXPECT_EQ(run_config_from_json(json::parse(j.dump())), c) << j.dump();
    }
}

TEST(RunConfig, LoadReportsSyntaxLocation) {
    const auto path = std::filesystem::temp_directory_path() / "fcl_bad_config.json";
    {
        std::ofstream out(path);
        out << "{\n  \"seed\": 1,\n  \"out\" \"x\"\n}\n";
    }
    try {
        load_run_config(path.string());
        FAIL() << "expected a ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
    EXPECT_THROW(load_run_config("/nonexistent/fcl.json"), ValidationError);
}

TEST(RunConfig, ToScenario) {
    ScenarioConfig s;
    s.L = 20;
    s.model = "lr";
    s.alpha = 0.5;
    s.boundary = "periodic";
    s.state = "random:4";
    RunConfig run;
    run.seed = 17;
    const auto scn = to_scenario(s, run);
    EXPECT_EQ(scn.model.boundary, Boundary::Periodic);
    EXPECT_EQ(std::get<PowerLaw>(scn.model.hopping).alpha, 0.5);
    EXPECT_EQ(scn.state.seed, 17u);
    EXPECT_EQ(scn.state.count(), 4);
    EXPECT_DOUBLE_EQ(scn.t_grid.back(), 80.0);
    s.seed = 3;
    EXPECT_EQ(to_scenario(s, run).state.seed, 3u);
}

TEST(RunConfig, ToScenarioErrors) {
    ScenarioConfig s;
    s.model = "lr";
    EXPECT_THROW(to_model_spec(s), ValidationError);
    s.model = "xx";
    EXPECT_THROW(to_model_spec(s), ValidationError);
    s.model = "tb";
    s.boundary = "twisted";
    EXPECT_THROW(to_model_spec(s), ValidationError);
    s.boundary = "open";
    RunConfig run;
    run.profile_method = "fast";
    EXPECT_THROW(to_scenario(s, run), ValidationError);
    run = RunConfig{};
    run.quasiparticle = true;
    s.model = "lr";
    s.alpha = 2.0;
    EXPECT_THROW(to_scenario(s, run), ValidationError);
}
