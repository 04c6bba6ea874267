#include "doctest.h"
#include "udmap/config.hpp"
#include "udmap/errors.hpp"

using namespace udmap;

TEST_SUITE("config") {
  TEST_CASE("empty object takes the defaults") {
    const ScenarioConfig c = parse_config("{}");
    CHECK(c.detector.omega == 1.0);
    CHECK(c.detector.epsilon == 0.025);
    CHECK(c.detector.coupling_abs == 0.05);
    CHECK(c.quadrature.rel_tol == 1e-6);
    CHECK(c.quadrature.abs_tol == 1e-10);
    CHECK(c.quadrature.max_depth == 18);
    CHECK_FALSE(c.sweep.has_value());
    CHECK(c.bloch.n_samples == 2000);
    CHECK(c.quad().ridge_width == 0.025);
  }

  TEST_CASE("full document") {
    const ScenarioConfig c = parse_config(R"({
      "detector": {"omega": 2, "epsilon": 0.05, "coupling_abs": 0.01, "coupling_phase": 0.3},
      "trajectory": {"inertial_duration": 1, "acceleration": 3, "accel_duration": 1.5},
      "quadrature": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_depth": 20, "max_panels": 1000},
      "sweep": {"variable": "a", "values": [1, 2, 3, 4], "map": "ini_to_combined"},
      "bloch": {"n_samples": 500, "map": "ini_to_accelerated"},
      "output": {"directory": "out", "formats": ["csv"]},
      "oracle": {"n": 100},
      "verify": {"inertial_durations": [0, 1], "accel_durations": [1], "accelerations": [2]},
      "test_hooks": {"flip_ai_kernel_sign": true}
    })");
    CHECK(c.detector.omega == 2.0);
    CHECK(c.trajectory.accel_duration == 1.5);
    CHECK(c.quadrature.max_panels == 1000);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->variable == SweepVariable::Acceleration);
    CHECK(c.sweep->values.size() == 4);
    CHECK(c.sweep->map == MapKind::IniToCombined);
    CHECK(c.bloch.map == MapKind::IniToAccelerated);
    CHECK(c.output.formats == std::vector<std::string>{"csv"});
    CHECK(c.oracle.n == 100);
    CHECK(c.verify.accelerations == std::vector<double>{2.0});
    CHECK(c.hooks.flip_ai_kernel_sign);
  }

  TEST_CASE("uniform sweep grids exclude the lower end") {
    const ScenarioConfig c = parse_config(R"({"sweep": {"variable": "T", "uniform": {"lo": 0, "hi": 2, "count": 80}}})");
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->values.size() == 80);
    CHECK(c.sweep->values.front() == doctest::Approx(0.025));
    CHECK(c.sweep->values.back() == 2.0);
    CHECK(uniform_grid(0.0, 1.0, 4) == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  }

  TEST_CASE("rejections") {
    const char* bad[] = {
        "{",
        "[]",
        R"({"detektor": {}})",
        R"({"detector": {"epsilon": 0}})",
        R"({"detector": {"omega": "one"}})",
        R"({"trajectory": {"inertial_duration": -1}})",
        R"({"trajectory": {"acceleration": 0}})",
        R"({"trajectory": {"acceleration": 20, "accel_duration": 2}})",
        R"({"quadrature": {"rel_tol": 0}})",
        R"({"quadrature": {"max_depth": 0}})",
        R"({"sweep": {"variable": "x", "values": [1]}})",
        R"({"sweep": {"variable": "T", "values": [1, 1]}})",
        R"({"sweep": {"variable": "T", "values": [2, 1]}})",
        R"({"sweep": {"variable": "T"}})",
        R"({"sweep": {"variable": "T", "values": [1], "uniform": {"lo": 0, "hi": 1, "count": 2}}})",
        R"({"sweep": {"variable": "a", "values": [0, 1]}})",
        R"({"sweep": {"variable": "T", "values": [1], "map": "sideways"}})",
        R"({"bloch": {"n_samples": 3}})",
        R"({"output": {"formats": ["xml"]}})",
        R"({"oracle": {"n": 0}})",
        R"({"verify": {"accelerations": [0]}})",
    };
    for (const char* text : bad) {
      INFO(text);
      CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/udmap.json"), ConfigError);
  }

  TEST_CASE("map names round-trip") {
    for (MapKind k : {MapKind::AcceleratedPhase, MapKind::IniToInertial, MapKind::IniToAccelerated,
                      MapKind::IniToCombined}) {
      const std::string text = std::string(R"({"bloch": {"map": ")") + std::string(to_string(k)) + "\"}}";
      CHECK(parse_config(text).bloch.map == k);
    }
  }
}
