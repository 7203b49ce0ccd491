#include <doctest.h>

#include <string>

#include "casipol/config.hpp"

using namespace casipol;

namespace {

// Substitution-friendly skeleton used by most cases.
std::string base_config() {
    return R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } },
        "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 10 }
    })";
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& text, const std::string& needle) {
    return error_of(text).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("config: minimal valid job fills defaults") {
    JobConfig cfg = parse_config(base_config());
    CHECK(cfg.task == Task::cp_potential);
    CHECK(cfg.wall.has_value());
    CHECK(cfg.atom.has_value());
    CHECK(cfg.sweep.points == 10);
    CHECK_FALSE(cfg.sweep.log_spacing);
    CHECK(cfg.quadrature.rel_tol == 1e-8);
    CHECK(cfg.quadrature.max_evals == 10'000'000);
    CHECK(cfg.output_path.empty());
    CHECK(std::string(task_name(cfg.task)) == "cp-potential");
}

TEST_CASE("config: invalid JSON and wrong top-level type") {
    CHECK(mentions("{ not json", "invalid JSON"));
    CHECK(mentions("[1,2,3]", "top level"));
}

TEST_CASE("config: unknown keys are rejected by name") {
    CHECK(mentions(R"({
        "task": "cp-potential", "typo_key": 1,
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 10 }
    })",
                   "config.typo_key"));

    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40, "color": 3 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 10 }
    })",
                   "atoms.a.color"));

    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 10,
                   "midpoint": true }
    })",
                   "sweep.midpoint"));
}

TEST_CASE("config: materials") {
    // both flavors parse
    JobConfig cfg = parse_config(R"({
        "task": "casimir-plate",
        "materials": {
            "metal": { "epsilon_constant": 100.0 },
            "gas": { "epsilon_oscillators": [
                { "strength_rad_s": 1e15, "resonance_rad_s": 3e15, "damping_rad_s": 1e13 }
            ] }
        },
        "wall": { "type": "stack", "layers": [
            { "material": "metal", "thickness_m": "semi-infinite" } ] },
        "plate_material": "gas",
        "dz_m": 1e-6,
        "sweep": { "variable": "d1", "start": 1e-7, "stop": 1e-6, "points": 3 }
    })");
    CHECK(cfg.plate_material.has_value());
    CHECK(cfg.plate_material->epsilon(0.0) == doctest::Approx(1.0 + 1.0 / 9.0));

    // vacuum is built in and reserved
    CHECK(mentions(R"({
        "task": "cp-potential",
        "materials": { "vacuum": { "epsilon_constant": 2.0 } },
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "materials.vacuum"));

    // mixed constant/oscillator definitions are ambiguous
    CHECK(mentions(R"({
        "task": "cp-potential",
        "materials": { "m": { "epsilon_constant": 2.0, "epsilon_oscillators": [] } },
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "materials.m"));

    // oscillator fields are validated with their paths
    CHECK(mentions(R"({
        "task": "cp-potential",
        "materials": { "m": { "epsilon_oscillators": [
            { "strength_rad_s": 1e15, "resonance_rad_s": -3e15 } ] } },
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "materials.m.epsilon_oscillators[0].resonance_rad_s"));

    // unresolved reference names the offender
    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "stack", "layers": [
            { "material": "unobtainium", "thickness_m": "semi-infinite" } ] },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "unobtainium"));
}

TEST_CASE("config: layers and stacks") {
    CHECK(mentions(R"({
        "task": "stress-profile",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": "semi-infinite" },
            { "material": "vacuum", "thickness_m": -1e-6 },
            { "material": "m", "thickness_m": "semi-infinite" } ],
        "layer_index": 1,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 9e-7, "points": 3 }
    })",
                   "thickness_m"));

    CHECK(mentions(R"({
        "task": "stress-profile",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": "semi-infinite" },
            { "material": "vacuum", "thickness_m": "half" },
            { "material": "m", "thickness_m": "semi-infinite" } ],
        "layer_index": 1,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 9e-7, "points": 3 }
    })",
                   "thickness_m"));

    // structural validation of the stack itself (finite outer layer)
    CHECK(mentions(R"({
        "task": "stress-profile",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": 1e-6 },
            { "material": "m", "thickness_m": "semi-infinite" } ],
        "layer_index": 0,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 9e-7, "points": 3 }
    })",
                   "stack"));

    // wall stacks demand a semi-infinite backing first
    CHECK(mentions(R"({
        "task": "cp-potential",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "stack", "layers": [ { "material": "m", "thickness_m": 1e-6 } ] },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "wall.layers"));

    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "hedge" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "wall.type"));
}

TEST_CASE("config: sweep validation") {
    auto with_sweep = [](const std::string& sweep) {
        return std::string(R"({
            "task": "cp-potential",
            "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
            "wall": { "type": "mirror" },
            "sweep": )") +
               sweep + "}";
    };
    CHECK(mentions(with_sweep(R"({ "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 0 })"),
                   "sweep.points"));
    CHECK(mentions(with_sweep(R"({ "variable": "z", "start": 1e-5, "stop": 1e-7, "points": 5 })"),
                   "sweep.stop"));
    CHECK(mentions(with_sweep(R"({ "variable": "z", "start": -1e-7, "stop": 1e-5, "points": 5 })"),
                   "sweep.start"));
    CHECK(mentions(with_sweep(R"({ "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 5, "spacing": "cubic" })"),
                   "sweep.spacing"));
    CHECK(mentions(with_sweep(R"({ "variable": "w", "start": 1e-7, "stop": 1e-5, "points": 5 })"),
                   "sweep.variable"));
    // the task only accepts a z sweep
    CHECK(mentions(with_sweep(R"({ "variable": "d1", "start": 1e-7, "stop": 1e-5, "points": 5 })"),
                   "sweep.variable"));
    // points == 1 pins start == stop
    CHECK(mentions(with_sweep(R"({ "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 1 })"),
                   "sweep.stop"));

    JobConfig single = parse_config(with_sweep(R"({ "variable": "z", "start": 1e-7, "points": 1 })"));
    CHECK(sweep_values(single.sweep) == std::vector<double>{1e-7});
}

TEST_CASE("config: swept variable must not also be given as a scalar") {
    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "z_m": 1e-7,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 5 }
    })",
                   "z_m"));

    // a scalar with no meaning for the task is rejected too
    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "d1_m": 1e-7,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 5 }
    })",
                   "d1_m"));
}

TEST_CASE("config: per-task required parameters") {
    CHECK(mentions(R"({
        "task": "cp-potential",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 5 }
    })",
                   "atom"));

    CHECK(mentions(R"({
        "task": "casimir-plate",
        "wall": { "type": "mirror" },
        "dz_m": 1e-6,
        "sweep": { "variable": "d1", "start": 1e-7, "stop": 1e-6, "points": 3 }
    })",
                   "plate_material"));

    // casimir-plate sweeping d1 still needs the dz_m scalar
    CHECK(mentions(R"({
        "task": "casimir-plate",
        "materials": { "m": { "epsilon_constant": 2.0 } },
        "wall": { "type": "mirror" },
        "plate_material": "m",
        "sweep": { "variable": "d1", "start": 1e-7, "stop": 1e-6, "points": 3 }
    })",
                   "dz_m"));

    CHECK(mentions(R"({
        "task": "casimir-plate-medium",
        "materials": { "m": { "epsilon_constant": 2.0 } },
        "wall": { "type": "mirror" },
        "dz_m": 1e-6,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-6, "points": 3 }
    })",
                   "medium_material"));
}

TEST_CASE("config: stress-profile bounds and layer-force neighbors") {
    // profile must stay inside the chosen layer
    CHECK(mentions(R"({
        "task": "stress-profile",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": "semi-infinite" },
            { "material": "vacuum", "thickness_m": 1e-6 },
            { "material": "m", "thickness_m": "semi-infinite" } ],
        "layer_index": 1,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 2e-6, "points": 3 }
    })",
                   "sweep.stop"));

    CHECK(mentions(R"({
        "task": "stress-profile",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": "semi-infinite" },
            { "material": "vacuum", "thickness_m": 1e-6 },
            { "material": "m", "thickness_m": "semi-infinite" } ],
        "layer_index": 5,
        "sweep": { "variable": "z", "start": 1e-7, "stop": 9e-7, "points": 3 }
    })",
                   "layer_index"));

    // layer-force sweeps the gap to the left of the chosen layer, so that
    // left neighbor must itself be a finite interior layer
    CHECK(mentions(R"({
        "task": "layer-force",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": "semi-infinite" },
            { "material": "m", "thickness_m": 1e-7 },
            { "material": "vacuum", "thickness_m": "semi-infinite" } ],
        "layer_index": 1,
        "sweep": { "variable": "gap", "start": 1e-7, "stop": 1e-6, "points": 3 }
    })",
                   "layer_index"));

    JobConfig ok = parse_config(R"({
        "task": "layer-force",
        "materials": { "m": { "epsilon_constant": 4.0 } },
        "stack": [
            { "material": "m", "thickness_m": "semi-infinite" },
            { "material": "vacuum", "thickness_m": 1e-6 },
            { "material": "m", "thickness_m": 1e-7 },
            { "material": "vacuum", "thickness_m": "semi-infinite" } ],
        "layer_index": 2,
        "sweep": { "variable": "gap", "start": 1e-7, "stop": 1e-6, "points": 3 }
    })");
    CHECK(ok.layer_index == 2);
}

TEST_CASE("config: quadrature overrides") {
    JobConfig cfg = parse_config(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 },
        "quadrature": { "rel_tol": 1e-6, "abs_tol": 1e-30, "max_evals": 50000,
                        "xi_scale_rad_s": 1e15, "q_scale_rad_m": 1e6,
                        "strategy": "fixed_panel", "fixed_panels": 32 },
        "output": { "path": "out.csv" }
    })");
    CHECK(cfg.quadrature.rel_tol == 1e-6);
    CHECK(cfg.quadrature.abs_tol == 1e-30);
    CHECK(cfg.quadrature.max_evals == 50000);
    CHECK(cfg.quadrature.xi_scale == 1e15);
    CHECK(cfg.quadrature.q_scale == 1e6);
    CHECK(cfg.quadrature.strategy == quad::QuadratureSpec::Strategy::fixed_panel);
    CHECK(cfg.quadrature.fixed_panels == 32);
    CHECK(cfg.output_path == "out.csv");

    auto with_quad = [](const std::string& q) {
        return std::string(R"({
            "task": "cp-potential",
            "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "a",
            "wall": { "type": "mirror" },
            "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 },
            "quadrature": )") +
               q + "}";
    };
    CHECK(mentions(with_quad(R"({ "rel_tol": 0 })"), "quadrature.rel_tol"));
    CHECK(mentions(with_quad(R"({ "rel_tol": 1.5 })"), "quadrature.rel_tol"));
    CHECK(mentions(with_quad(R"({ "max_evals": 10 })"), "quadrature.max_evals"));
    CHECK(mentions(with_quad(R"({ "strategy": "monte-carlo" })"), "quadrature.strategy"));
    CHECK(mentions(with_quad(R"({ "fixed_panels": 0 })"), "quadrature.fixed_panels"));
}

TEST_CASE("config: atom definitions") {
    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { } }, "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "alpha_scale_C_m2_per_V"));

    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40, "eta_per_m3": -1 } },
        "atom": "a",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "eta_per_m3"));

    CHECK(mentions(R"({
        "task": "cp-potential",
        "atoms": { "a": { "alpha_scale_C_m2_per_V": 1e-40 } }, "atom": "b",
        "wall": { "type": "mirror" },
        "sweep": { "variable": "z", "start": 1e-7, "stop": 1e-5, "points": 2 }
    })",
                   "'b'"));
}

TEST_CASE("sweep value grids") {
    SweepSpec lin{SweepSpec::Variable::z, 1.0, 2.0, 5, false};
    auto v = sweep_values(lin);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 1.0);  // endpoints exact, not reconstructed
    CHECK(v.back() == 2.0);
    CHECK(v[2] == doctest::Approx(1.5).epsilon(1e-15));

    SweepSpec lg{SweepSpec::Variable::z, 1e-8, 1e-4, 5, true};
    auto w = sweep_values(lg);
    REQUIRE(w.size() == 5);
    CHECK(w.front() == 1e-8);
    CHECK(w.back() == 1e-4);
    CHECK(w[1] == doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(w[3] == doctest::Approx(1e-5).epsilon(1e-12));
}

TEST_CASE("task names cover every task") {
    CHECK(std::string(task_name(Task::cp_potential)) == "cp-potential");
    CHECK(std::string(task_name(Task::cp_screened)) == "cp-screened");
    CHECK(std::string(task_name(Task::screening_compare)) == "screening-compare");
    CHECK(std::string(task_name(Task::casimir_plate)) == "casimir-plate");
    CHECK(std::string(task_name(Task::casimir_plate_medium)) == "casimir-plate-medium");
    CHECK(std::string(task_name(Task::stress_profile)) == "stress-profile");
    CHECK(std::string(task_name(Task::layer_force)) == "layer-force");
}
