#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casipol/layers.hpp"
#include "casipol/materials.hpp"
#include "casipol/quad.hpp"
#include "casipol/wall.hpp"

// Strict JSON job description. Unknown keys are rejected, every length or
// frequency key carries its unit in the name, and all validation failures
// name the offending key.

namespace casipol {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Task {
    cp_potential,
    cp_screened,
    screening_compare,
    casimir_plate,
    casimir_plate_medium,
    stress_profile,
    layer_force,
};

const char* task_name(Task t);

struct SweepSpec {
    enum class Variable { z, d1, dz, gap };
    Variable variable = Variable::z;
    double start = 0.0;
    double stop = 0.0;
    int points = 1;
    bool log_spacing = false;
};

// The swept coordinate values, endpoints exact.
std::vector<double> sweep_values(const SweepSpec& s);

struct JobConfig {
    Task task = Task::cp_potential;

    std::optional<Wall> wall;
    std::optional<AtomModel> atom;
    std::optional<LayerStack> stack;          // stress-profile, layer-force
    std::optional<MaterialModel> plate_material;
    std::optional<MaterialModel> medium_material;
    std::size_t layer_index = 0;

    double z_m = 0.0;   // scalar values for parameters that are not swept
    double d1_m = 0.0;
    double dz_m = 0.0;

    SweepSpec sweep;
    quad::QuadratureSpec quadrature;
    std::string output_path;  // empty = stdout
};

// Parse and fully validate a JSON job description. Throws ConfigError with
// a message naming the key on any problem.
JobConfig parse_config(const std::string& json_text);

}  // namespace casipol
