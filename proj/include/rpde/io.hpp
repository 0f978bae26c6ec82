#pragma once

#include <string>

#include "rpde/drivers.hpp"
#include "rpde/field.hpp"
#include "rpde/tangent.hpp"

namespace rpde {

// FNV-1a hash of the resolved configuration text; embedded in every artifact
// header so outputs are traceable to the exact config that produced them.
std::string config_hash(const std::string& text);

// Lift CSV: header (d, n, p, geometric, seed, refinement), then one row per
// grid point with t_i, X_{0,t_i}, XX_{0,t_i} row-major. All floating-point
// values are hexfloat so the round-trip is bit-exact.
void save_lift_csv(const PathLift& lift, const std::string& path,
                   const std::string& cfg_hash = "");
PathLift load_lift_csv(const std::string& path);

// Driver CSV extends the lift format with one profile row per channel.
void save_scalar_driver_csv(const ScalarDriver& d, const std::string& path,
                            const std::string& cfg_hash = "");
ScalarDriver load_scalar_driver_csv(const std::string& path);

// Field CSV: rows t, x-index, components (hexfloat).
void save_field_csv(const Field& f, const std::string& path, const std::string& cfg_hash = "");

// Convergence reports: JSON record, CSV table (eps, error, in_fit), bare
// two-column log-log plot data, and a supplementary SVG line plot.
void save_report_json(const ConvergenceReport& r, const std::string& path,
                      const std::string& cfg_hash = "");
void save_report_csv(const ConvergenceReport& r, const std::string& path,
                     const std::string& cfg_hash = "");
void save_loglog_plot_data(const ConvergenceReport& r, const std::string& path,
                           const std::string& cfg_hash = "");
void save_loglog_svg(const ConvergenceReport& r, const std::string& path);

}  // namespace rpde
