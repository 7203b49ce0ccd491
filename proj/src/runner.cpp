#include "casipol/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "casipol/constants.hpp"
#include "casipol/cp.hpp"
#include "casipol/stress.hpp"

namespace casipol {

namespace {

struct Row {
    std::vector<double> cols;
    bool converged = true;
};

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_row(std::ostream& out, const Row& row) {
    for (double c : row.cols) out << format_double(c) << ',';
    out << (row.converged ? '1' : '0') << '\n';
}

// Dimensionless far-distance form of a surface potential: V z^4 divided by
// hbar c alpha(0) / (32 pi^2 eps0). A perfect mirror gives -3 (unscreened)
// and -1 (screened) in the retarded limit.
double reduced_potential(double v, double z, const AtomModel& atom) {
    using namespace constants;
    double unit = hbar * c_light * atom.alpha(0.0) / (32.0 * pi * pi * eps0);
    return v * z * z * z * z / unit;
}

}  // namespace

RunReport run_job(const JobConfig& config, const RunOptions& options, std::ostream& out) {
    quad::QuadratureSpec spec = config.quadrature;
    if (options.rel_tol_override > 0.0) spec.rel_tol = options.rel_tol_override;

    const std::vector<double> values = sweep_values(config.sweep);
    const bool sweep_z = config.sweep.variable == SweepSpec::Variable::z;
    const bool sweep_d1 = config.sweep.variable == SweepSpec::Variable::d1;
    const bool sweep_dz = config.sweep.variable == SweepSpec::Variable::dz;

    // cp tasks accept the extra dimensionless columns; others ignore the flag.
    bool reduced = options.reduced &&
                   (config.task == Task::cp_potential || config.task == Task::cp_screened ||
                    config.task == Task::screening_compare);

    std::string header;
    std::function<Row(double)> compute;

    switch (config.task) {
        case Task::cp_potential:
        case Task::cp_screened: {
            header = reduced ? "z_m,V_J,F_N,V_err_J,V_reduced,converged"
                             : "z_m,V_J,F_N,V_err_J,converged";
            bool screened = config.task == Task::cp_screened;
            compute = [&, screened](double z) {
                CpResult r = screened ? cp_screened(*config.wall, *config.atom, z, spec)
                                      : cp_unscreened(*config.wall, *config.atom, z, spec);
                Row row;
                row.cols = {z, r.potential, r.force, r.potential_error};
                if (reduced) row.cols.push_back(reduced_potential(r.potential, z, *config.atom));
                row.converged = r.converged;
                return row;
            };
            break;
        }
        case Task::screening_compare: {
            header = reduced ? "z_m,V_J,F_N,V_err_J,V_screened_J,ratio,V_reduced,"
                               "V_screened_reduced,converged"
                             : "z_m,V_J,F_N,V_err_J,V_screened_J,ratio,converged";
            compute = [&](double z) {
                CpResult u = cp_unscreened(*config.wall, *config.atom, z, spec);
                CpResult s = cp_screened(*config.wall, *config.atom, z, spec);
                double ratio = u.potential != 0.0 ? s.potential / u.potential : 0.0;
                Row row;
                row.cols = {z, u.potential, u.force, u.potential_error, s.potential, ratio};
                if (reduced) {
                    row.cols.push_back(reduced_potential(u.potential, z, *config.atom));
                    row.cols.push_back(reduced_potential(s.potential, z, *config.atom));
                }
                row.converged = u.converged && s.converged;
                return row;
            };
            break;
        }
        case Task::casimir_plate: {
            header = "d1_m,dz_m,F_N_per_m2,F_err_N_per_m2,converged";
            compute = [&](double v) {
                double d1 = sweep_d1 ? v : config.d1_m;
                double dz = sweep_dz ? v : config.dz_m;
                Layer plate{*config.plate_material, dz};
                ForceResult r = force_plate_vacuum(*config.wall, plate, d1, spec);
                return Row{{d1, dz, r.value, r.error_estimate}, r.converged};
            };
            break;
        }
        case Task::casimir_plate_medium: {
            header = "z_m,dz_m,F_N_per_m2,F_err_N_per_m2,converged";
            compute = [&](double v) {
                double z = sweep_z ? v : config.z_m;
                double dz = sweep_dz ? v : config.dz_m;
                ForceResult r =
                    force_plate_medium(*config.wall, *config.medium_material, z, dz, spec);
                return Row{{z, dz, r.value, r.error_estimate}, r.converged};
            };
            break;
        }
        case Task::stress_profile: {
            header = "z_m,T_zz_Pa,T_err_Pa,converged";
            compute = [&](double z) {
                StressContext ctx{&*config.stack, config.layer_index, z};
                ForceResult r = stress_zz(ctx, spec);
                return Row{{z, r.value, r.error_estimate}, r.converged};
            };
            break;
        }
        case Task::layer_force: {
            header = "gap_m,F_N_per_m2,F_err_N_per_m2,converged";
            compute = [&](double gap) {
                std::vector<Layer> layers;
                layers.reserve(config.stack->size());
                for (std::size_t j = 0; j < config.stack->size(); ++j)
                    layers.push_back(config.stack->layer(j));
                layers[config.layer_index - 1].thickness = gap;
                LayerStack stack(std::move(layers));
                ForceResult r = force_on_layer(stack, config.layer_index, spec);
                return Row{{gap, r.value, r.error_estimate}, r.converged};
            };
            break;
        }
    }

    std::vector<Row> rows(values.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            try {
                rows[i] = compute(values[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::size_t n_threads = std::max(1, options.threads);
    n_threads = std::min(n_threads, values.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    out << header << '\n';
    RunReport report;
    report.rows = rows.size();
    for (const Row& row : rows) {
        emit_row(out, row);
        if (!row.converged) ++report.unconverged;
    }
    out.flush();
    report.exit_code = report.unconverged == 0 ? 0 : 2;
    return report;
}

}  // namespace casipol
