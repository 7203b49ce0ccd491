#include "casipol/config.hpp"

#include <cmath>
#include <initializer_list>
#include <map>
#include <string>

#include <json.hpp>

namespace casipol {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config error: " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(path + "." + it.key(), "unknown key");
    }
}

const json& require_key(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required key");
    return obj.at(key);
}

json require_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    return v;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

double number_in(const json& obj, const char* key, const std::string& path, double dflt) {
    if (!obj.contains(key)) return dflt;
    return as_number(obj.at(key), path + "." + key);
}

double positive(const json& obj, const char* key, const std::string& path) {
    double x = as_number(require_key(obj, key, path), path + "." + key);
    if (!(x > 0.0)) fail(path + "." + key, "must be > 0");
    return x;
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "must be a string");
    return v.get<std::string>();
}

Oscillator parse_oscillator(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"strength_rad_s", "resonance_rad_s", "damping_rad_s"});
    Oscillator o;
    o.strength = as_number(require_key(j, "strength_rad_s", path), path + ".strength_rad_s");
    if (o.strength < 0.0) fail(path + ".strength_rad_s", "must be >= 0");
    o.resonance = positive(j, "resonance_rad_s", path);
    o.damping = number_in(j, "damping_rad_s", path, 0.0);
    if (o.damping < 0.0) fail(path + ".damping_rad_s", "must be >= 0");
    return o;
}

OscillatorSet parse_oscillator_set(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "must be an array of oscillator terms");
    std::vector<Oscillator> terms;
    for (std::size_t i = 0; i < j.size(); ++i)
        terms.push_back(parse_oscillator(j[i], path + "[" + std::to_string(i) + "]"));
    return OscillatorSet(std::move(terms));
}

MaterialModel parse_material(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path,
               {"epsilon_constant", "mu_constant", "epsilon_oscillators", "mu_oscillators"});
    bool constant = j.contains("epsilon_constant") || j.contains("mu_constant");
    bool dispersive = j.contains("epsilon_oscillators") || j.contains("mu_oscillators");
    if (constant && dispersive)
        fail(path, "give either constant or oscillator response, not both");
    try {
        if (constant) {
            double eps = number_in(j, "epsilon_constant", path, 1.0);
            double mu = number_in(j, "mu_constant", path, 1.0);
            return MaterialModel::constant(eps, mu);
        }
        OscillatorSet eps_terms, mu_terms;
        if (j.contains("epsilon_oscillators"))
            eps_terms = parse_oscillator_set(j.at("epsilon_oscillators"),
                                             path + ".epsilon_oscillators");
        if (j.contains("mu_oscillators"))
            mu_terms = parse_oscillator_set(j.at("mu_oscillators"), path + ".mu_oscillators");
        return MaterialModel::oscillators(std::move(eps_terms), std::move(mu_terms));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

AtomModel parse_atom(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"alpha_scale_C_m2_per_V", "alpha_oscillators", "eta_per_m3"});
    double scale = positive(j, "alpha_scale_C_m2_per_V", path);
    double eta = number_in(j, "eta_per_m3", path, 0.0);
    if (eta < 0.0) fail(path + ".eta_per_m3", "must be >= 0");
    OscillatorSet shape;
    if (j.contains("alpha_oscillators"))
        shape = parse_oscillator_set(j.at("alpha_oscillators"), path + ".alpha_oscillators");
    try {
        return AtomModel(std::move(shape), scale, eta);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

using MaterialMap = std::map<std::string, MaterialModel>;

MaterialModel lookup_material(const std::string& name, const MaterialMap& mats,
                              const std::string& path) {
    if (name == "vacuum") return MaterialModel::vacuum();
    auto it = mats.find(name);
    if (it == mats.end()) fail(path, "unknown material '" + name + "'");
    return it->second;
}

Layer parse_layer(const json& j, const MaterialMap& mats, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"material", "thickness_m"});
    Layer lay;
    lay.material = lookup_material(
        as_string(require_key(j, "material", path), path + ".material"), mats,
        path + ".material");
    const json& t = require_key(j, "thickness_m", path);
    if (t.is_string()) {
        if (t.get<std::string>() != "semi-infinite")
            fail(path + ".thickness_m", "must be a number > 0 or \"semi-infinite\"");
        lay.thickness = kSemiInfinite;
    } else {
        lay.thickness = as_number(t, path + ".thickness_m");
        if (!(lay.thickness > 0.0)) fail(path + ".thickness_m", "must be > 0");
    }
    return lay;
}

std::vector<Layer> parse_layer_list(const json& j, const MaterialMap& mats,
                                    const std::string& path) {
    if (!j.is_array()) fail(path, "must be an array of layers");
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < j.size(); ++i)
        layers.push_back(parse_layer(j[i], mats, path + "[" + std::to_string(i) + "]"));
    return layers;
}

Wall parse_wall(const json& j, const MaterialMap& mats, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"type", "layers"});
    std::string type = as_string(require_key(j, "type", path), path + ".type");
    if (type == "none") return Wall::none();
    if (type == "mirror") return Wall::mirror();
    if (type == "stack") {
        auto layers = parse_layer_list(require_key(j, "layers", path), mats, path + ".layers");
        try {
            return Wall::stack(std::move(layers));
        } catch (const std::invalid_argument& e) {
            fail(path + ".layers", e.what());
        }
    }
    fail(path + ".type", "must be one of \"none\", \"mirror\", \"stack\"");
}

SweepSpec parse_sweep(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"variable", "start", "stop", "points", "spacing"});
    SweepSpec s;

    std::string var = as_string(require_key(j, "variable", path), path + ".variable");
    if (var == "z")
        s.variable = SweepSpec::Variable::z;
    else if (var == "d1")
        s.variable = SweepSpec::Variable::d1;
    else if (var == "dz")
        s.variable = SweepSpec::Variable::dz;
    else if (var == "gap")
        s.variable = SweepSpec::Variable::gap;
    else
        fail(path + ".variable", "must be one of \"z\", \"d1\", \"dz\", \"gap\"");

    const json& pj = require_key(j, "points", path);
    if (!pj.is_number_integer()) fail(path + ".points", "must be an integer");
    s.points = pj.get<int>();
    if (s.points < 1) fail(path + ".points", "must be >= 1");

    s.start = positive(j, "start", path);
    s.stop = j.contains("stop") ? as_number(j.at("stop"), path + ".stop") : s.start;
    if (s.points == 1) {
        if (s.stop != s.start) fail(path + ".stop", "must equal start when points == 1");
    } else if (!(s.stop > s.start)) {
        fail(path + ".stop", "must be > start");
    }

    std::string spacing = j.contains("spacing")
                              ? as_string(j.at("spacing"), path + ".spacing")
                              : "linear";
    if (spacing == "log")
        s.log_spacing = true;
    else if (spacing != "linear")
        fail(path + ".spacing", "must be \"linear\" or \"log\"");
    return s;
}

quad::QuadratureSpec parse_quadrature(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"rel_tol", "abs_tol", "max_evals", "xi_scale_rad_s",
                         "q_scale_rad_m", "strategy", "fixed_panels"});
    quad::QuadratureSpec q;
    q.rel_tol = number_in(j, "rel_tol", path, q.rel_tol);
    if (!(q.rel_tol > 0.0) || q.rel_tol >= 1.0) fail(path + ".rel_tol", "must be in (0,1)");
    q.abs_tol = number_in(j, "abs_tol", path, q.abs_tol);
    if (q.abs_tol < 0.0) fail(path + ".abs_tol", "must be >= 0");
    if (j.contains("max_evals")) {
        const json& m = j.at("max_evals");
        if (!m.is_number_integer()) fail(path + ".max_evals", "must be an integer");
        q.max_evals = m.get<std::int64_t>();
        if (q.max_evals < 1000) fail(path + ".max_evals", "must be >= 1000");
    }
    q.xi_scale = number_in(j, "xi_scale_rad_s", path, 0.0);
    if (q.xi_scale < 0.0) fail(path + ".xi_scale_rad_s", "must be >= 0 (0 = automatic)");
    q.q_scale = number_in(j, "q_scale_rad_m", path, 0.0);
    if (q.q_scale < 0.0) fail(path + ".q_scale_rad_m", "must be >= 0 (0 = automatic)");
    if (j.contains("strategy")) {
        std::string st = as_string(j.at("strategy"), path + ".strategy");
        if (st == "adaptive_nested")
            q.strategy = quad::QuadratureSpec::Strategy::adaptive_nested;
        else if (st == "fixed_panel")
            q.strategy = quad::QuadratureSpec::Strategy::fixed_panel;
        else
            fail(path + ".strategy", "must be \"adaptive_nested\" or \"fixed_panel\"");
    }
    if (j.contains("fixed_panels")) {
        const json& fp = j.at("fixed_panels");
        if (!fp.is_number_integer()) fail(path + ".fixed_panels", "must be an integer");
        q.fixed_panels = fp.get<int>();
        if (q.fixed_panels < 1) fail(path + ".fixed_panels", "must be >= 1");
    }
    return q;
}

Task parse_task(const json& root) {
    std::string t = as_string(require_key(root, "task", "config"), "task");
    if (t == "cp-potential") return Task::cp_potential;
    if (t == "cp-screened") return Task::cp_screened;
    if (t == "screening-compare") return Task::screening_compare;
    if (t == "casimir-plate") return Task::casimir_plate;
    if (t == "casimir-plate-medium") return Task::casimir_plate_medium;
    if (t == "stress-profile") return Task::stress_profile;
    if (t == "layer-force") return Task::layer_force;
    fail("task", "unknown task '" + t + "'");
}

// Scalar parameter keys a task accepts besides the swept one.
struct ParamNeeds {
    bool z = false, d1 = false, dz = false;
};

ParamNeeds needs_for(Task t) {
    switch (t) {
        case Task::cp_potential:
        case Task::cp_screened:
        case Task::screening_compare:
        case Task::stress_profile:
            return {true, false, false};
        case Task::casimir_plate:
            return {false, true, true};
        case Task::casimir_plate_medium:
            return {true, false, true};
        case Task::layer_force:
            return {false, false, false};
    }
    return {};
}

bool sweep_allowed(Task t, SweepSpec::Variable v) {
    switch (t) {
        case Task::cp_potential:
        case Task::cp_screened:
        case Task::screening_compare:
        case Task::stress_profile:
            return v == SweepSpec::Variable::z;
        case Task::casimir_plate:
            return v == SweepSpec::Variable::d1 || v == SweepSpec::Variable::dz;
        case Task::casimir_plate_medium:
            return v == SweepSpec::Variable::z || v == SweepSpec::Variable::dz;
        case Task::layer_force:
            return v == SweepSpec::Variable::gap;
    }
    return false;
}

const char* variable_name(SweepSpec::Variable v) {
    switch (v) {
        case SweepSpec::Variable::z: return "z";
        case SweepSpec::Variable::d1: return "d1";
        case SweepSpec::Variable::dz: return "dz";
        case SweepSpec::Variable::gap: return "gap";
    }
    return "?";
}

}  // namespace

const char* task_name(Task t) {
    switch (t) {
        case Task::cp_potential: return "cp-potential";
        case Task::cp_screened: return "cp-screened";
        case Task::screening_compare: return "screening-compare";
        case Task::casimir_plate: return "casimir-plate";
        case Task::casimir_plate_medium: return "casimir-plate-medium";
        case Task::stress_profile: return "stress-profile";
        case Task::layer_force: return "layer-force";
    }
    return "?";
}

std::vector<double> sweep_values(const SweepSpec& s) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(s.points));
    if (s.points == 1) {
        v.push_back(s.start);
        return v;
    }
    for (int i = 0; i < s.points; ++i) {
        if (i == 0) {
            v.push_back(s.start);
        } else if (i == s.points - 1) {
            v.push_back(s.stop);
        } else if (s.log_spacing) {
            double t = static_cast<double>(i) / (s.points - 1);
            v.push_back(s.start * std::pow(s.stop / s.start, t));
        } else {
            double t = static_cast<double>(i) / (s.points - 1);
            v.push_back(s.start + (s.stop - s.start) * t);
        }
    }
    return v;
}

JobConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config error: top level must be an object");

    check_keys(root, "config",
               {"task", "materials", "atoms", "wall", "stack", "layer_index", "atom",
                "plate_material", "medium_material", "z_m", "d1_m", "dz_m", "sweep",
                "quadrature", "output"});

    JobConfig cfg;
    cfg.task = parse_task(root);

    MaterialMap mats;
    if (root.contains("materials")) {
        const json& m = require_object(root.at("materials"), "materials");
        for (auto it = m.begin(); it != m.end(); ++it) {
            if (it.key() == "vacuum")
                fail("materials.vacuum", "name is reserved for the built-in vacuum");
            mats.emplace(it.key(), parse_material(it.value(), "materials." + it.key()));
        }
    }

    std::map<std::string, AtomModel> atoms;
    if (root.contains("atoms")) {
        const json& a = require_object(root.at("atoms"), "atoms");
        for (auto it = a.begin(); it != a.end(); ++it)
            atoms.emplace(it.key(), parse_atom(it.value(), "atoms." + it.key()));
    }

    if (root.contains("wall")) cfg.wall = parse_wall(root.at("wall"), mats, "wall");

    if (root.contains("stack")) {
        auto layers = parse_layer_list(root.at("stack"), mats, "stack");
        try {
            cfg.stack = LayerStack(std::move(layers));
        } catch (const std::invalid_argument& e) {
            fail("stack", e.what());
        }
    }

    if (root.contains("layer_index")) {
        const json& li = root.at("layer_index");
        if (!li.is_number_integer() || li.get<long long>() < 0)
            fail("layer_index", "must be a non-negative integer");
        cfg.layer_index = li.get<std::size_t>();
    }

    if (root.contains("atom")) {
        std::string name = as_string(root.at("atom"), "atom");
        auto it = atoms.find(name);
        if (it == atoms.end()) fail("atom", "unknown atom '" + name + "'");
        cfg.atom = it->second;
    }

    if (root.contains("plate_material"))
        cfg.plate_material = lookup_material(
            as_string(root.at("plate_material"), "plate_material"), mats, "plate_material");
    if (root.contains("medium_material"))
        cfg.medium_material = lookup_material(
            as_string(root.at("medium_material"), "medium_material"), mats,
            "medium_material");

    cfg.sweep = parse_sweep(require_key(root, "sweep", "config"), "sweep");

    if (root.contains("quadrature"))
        cfg.quadrature = parse_quadrature(root.at("quadrature"), "quadrature");

    if (root.contains("output")) {
        const json& o = require_object(root.at("output"), "output");
        check_keys(o, "output", {"path"});
        if (o.contains("path")) cfg.output_path = as_string(o.at("path"), "output.path");
    }

    // Scalar parameters: required unless swept; forbidden when swept.
    ParamNeeds need = needs_for(cfg.task);
    auto var = cfg.sweep.variable;
    if (!sweep_allowed(cfg.task, var))
        fail("sweep.variable", std::string("variable '") + variable_name(var) +
                                   "' cannot be swept for task " + task_name(cfg.task));
    auto scalar = [&](const char* key, bool needed, bool swept, double& out) {
        if (swept) {
            if (root.contains(key))
                fail(key, std::string("not allowed: '") + variable_name(var) +
                              "' is the sweep variable");
            return;
        }
        if (!needed) {
            if (root.contains(key))
                fail(key, std::string("not used by task ") + task_name(cfg.task));
            return;
        }
        out = positive(root, key, "config");
    };
    scalar("z_m", need.z, var == SweepSpec::Variable::z, cfg.z_m);
    scalar("d1_m", need.d1, var == SweepSpec::Variable::d1, cfg.d1_m);
    scalar("dz_m", need.dz, var == SweepSpec::Variable::dz, cfg.dz_m);

    // Per-task structural requirements.
    auto need_field = [&](bool present, const char* key) {
        if (!present)
            fail(key, std::string("missing required key for task ") + task_name(cfg.task));
    };
    switch (cfg.task) {
        case Task::cp_potential:
        case Task::cp_screened:
        case Task::screening_compare:
            need_field(cfg.wall.has_value(), "wall");
            need_field(cfg.atom.has_value(), "atom");
            break;
        case Task::casimir_plate:
            need_field(cfg.wall.has_value(), "wall");
            need_field(cfg.plate_material.has_value(), "plate_material");
            break;
        case Task::casimir_plate_medium:
            need_field(cfg.wall.has_value(), "wall");
            need_field(cfg.medium_material.has_value(), "medium_material");
            break;
        case Task::stress_profile: {
            need_field(cfg.stack.has_value(), "stack");
            if (cfg.layer_index >= cfg.stack->size())
                fail("layer_index", "out of range for the given stack");
            const Layer& lay = cfg.stack->layer(cfg.layer_index);
            if (!lay.semi_infinite() && !(cfg.sweep.stop < lay.thickness))
                fail("sweep.stop", "must be < the thickness of the profiled layer");
            break;
        }
        case Task::layer_force:
            need_field(cfg.stack.has_value(), "stack");
            if (cfg.layer_index >= cfg.stack->size())
                fail("layer_index", "out of range for the given stack");
            if (cfg.layer_index == 0 || cfg.layer_index + 1 >= cfg.stack->size())
                fail("layer_index", "must name an interior layer");
            if (cfg.layer_index < 2)
                fail("layer_index",
                     "the layer left of it must be a finite interior layer (its "
                     "thickness is the swept gap)");
            break;
    }

    return cfg;
}

}  // namespace casipol
