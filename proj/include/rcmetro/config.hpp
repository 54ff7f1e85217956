#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcmetro/grwa.hpp"
#include "rcmetro/thermal.hpp"

namespace rcmetro {

enum class ModelKind {
    rabi_exact,   // exact diagonalization SNR
    grwa,         // GRWA SNR
    dicke,        // large-N closed forms
    weak,         // weak-coupling baseline
    levels,       // GRWA vs exact energy levels
    observables,  // <Jz>: exact, GRWA, weak
    lambda,       // variational parameter: root vs closed form
    curvature,    // d^2 E_g / d eps^2: GRWA vs exact
};

enum class GridAxis { beta_omega, g_over_omega, epsilon_over_omega, gbar_over_omega, n_spins };

std::string to_string(ModelKind m);
std::string to_string(GridAxis a);

/// One curve: every physical parameter except the swept one, in units of omega.
struct CurveSpec {
    std::string label = "main";
    int n_spins = 1;
    double epsilon = 1.0;
    double g = 0.0;
    double gbar = 0.0;
    double beta_omega = 1.0;
};

inline constexpr int kSchemaVersion = 1;

struct SweepConfig {
    int schema_version = kSchemaVersion;
    ModelKind model = ModelKind::rabi_exact;
    GridAxis axis = GridAxis::beta_omega;
    std::vector<double> values;  // ascending
    std::vector<CurveSpec> curves;

    DeltaConvention delta = DeltaConvention::absolute;
    SectorMode sectors = SectorMode::full;
    VarianceEstimator variance = VarianceEstimator::operator_trace;
    CurvatureSource curvature = CurvatureSource::implicit;

    double fd_step = 1e-4;
    int n_max = 0;  // 0: converge per point
    int n_max_cap = 4096;
    double ln_z_tol = 1e-8;
    double rel_tol = 1e-6;

    std::string output_path;
    std::string output_format = "csv";
    std::optional<std::pair<double, double>> fit_window;

    std::vector<std::string> warnings;  // unknown keys
};

/// Flat "key = value" text, '#' comments. Required: schema_version = 1,
/// model, grid.axis and either grid.values or grid.start/stop/count.
/// Curve keys may be set globally or per curve as curve.<label>.<key>.
/// Schema violations throw ConfigError carrying the key path; unknown keys
/// are collected in `warnings`.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);

/// Parameters of one grid point of a curve.
CurveSpec point_spec(const SweepConfig& cfg, const CurveSpec& curve, double grid_value);

}  // namespace rcmetro
