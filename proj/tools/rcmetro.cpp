#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rcmetro/config.hpp"
#include "rcmetro/dicke.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/fit.hpp"
#include "rcmetro/grwa.hpp"
#include "rcmetro/rcmap.hpp"
#include "rcmetro/sweep.hpp"
#include "rcmetro/table.hpp"
#include "rcmetro/thermal.hpp"
#include "rcmetro/units.hpp"

using namespace rcmetro;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kConvergence = 3, kNumerical = 4 };

struct Common {
    std::string out;
    std::string format = "csv";
    int jobs = 1;
    std::string sector;
    std::optional<double> fd_step;
    std::optional<double> tol;
    std::string variance;
};

void add_common(CLI::App* cmd, Common& c, bool with_jobs) {
    cmd->add_option("--out", c.out, "Output path (default: stdout)");
    cmd->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    if (with_jobs) cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--sector", c.sector, "full|maximal")->check(CLI::IsMember({"full", "maximal"}));
    cmd->add_option("--fd-step", c.fd_step, "Finite-difference step in units of omega");
    cmd->add_option("--tol", c.tol, "Relative truncation tolerance on <Jz> and snr");
    cmd->add_option("--variance", c.variance, "operator|free_energy")
        ->check(CLI::IsMember({"operator", "free_energy"}));
}

void emit(const Table& t, const std::string& format, const std::string& path) {
    const std::string text = format == "json" ? t.to_json() : t.to_csv();
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("--out", "cannot write '" + path + "'");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("--in", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_overrides(SweepConfig& cfg, const Common& c, bool format_given) {
    if (!c.sector.empty()) cfg.sectors = parse_sector_mode(c.sector);
    if (!c.variance.empty()) cfg.variance = parse_variance_estimator(c.variance);
    if (c.fd_step) {
        if (!(*c.fd_step > 0.0)) throw ConfigError("--fd-step", "must be > 0");
        cfg.fd_step = *c.fd_step;
    }
    if (c.tol) {
        if (!(*c.tol > 0.0)) throw ConfigError("--tol", "must be > 0");
        cfg.rel_tol = *c.tol;
    }
    if (!c.out.empty()) cfg.output_path = c.out;
    if (format_given) cfg.output_format = c.format;
}

int run_config(SweepConfig cfg, const Common& c, bool format_given) {
    apply_overrides(cfg, c, format_given);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
    const auto res = run_sweep(cfg, c.jobs);
    emit(res.table, cfg.output_format, cfg.output_path);
    if (cfg.fit_window && res.table.column_index("snr") >= 0) {
        for (const auto& curve : cfg.curves) {
            try {
                const auto f = fit_scaling(res.table, *cfg.fit_window, curve.label);
                std::fprintf(stderr, "fit %s: theta = %.6f +- %.6f (r^2 = %.6f, %d points)\n", curve.label.c_str(),
                             f.theta, f.stderr_theta, f.r_squared, f.points);
            } catch (const DomainError& e) {
                std::cerr << "fit " << curve.label << ": " << e.what() << "\n";
            }
        }
    }
    if (res.unconverged > 0) {
        std::cerr << res.unconverged << " row(s) did not converge\n";
        return kConvergence;
    }
    return kOk;
}

std::vector<double> linspace(const std::vector<double>& spec, const std::string& name) {
    if (spec.size() != 3 || spec[2] < 1 || spec[2] != static_cast<int>(spec[2])) {
        throw ConfigError(name, "expected lo,hi,count");
    }
    std::vector<double> v;
    const int n = static_cast<int>(spec[2]);
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? spec[0] : spec[0] + (spec[1] - spec[0]) * i / (n - 1));
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium-probe SNR engine: exact diagonalization, GRWA, Dicke limit, RC mapping"};
    app.require_subcommand(1);
    Common common;

    // snr
    auto* snr = app.add_subcommand("snr", "SNR at a single parameter point");
    std::string snr_model = "rabi_exact";
    int n_spins = 1;
    double eps = 1.0, g = 0.0, beta_omega = 1.0;
    std::optional<double> eps_ghz, omega_ghz, g_ghz, temp_mk;
    std::optional<int> n_max;
    snr->add_option("--model", snr_model, "rabi_exact|grwa|weak")
        ->check(CLI::IsMember({"rabi_exact", "grwa", "weak"}));
    snr->add_option("-N,--n-spins", n_spins, "Number of spins")->check(CLI::PositiveNumber);
    snr->add_option("--epsilon", eps, "eps / omega");
    snr->add_option("--g", g, "g / omega");
    snr->add_option("--beta-omega", beta_omega, "beta * omega");
    snr->add_option("--epsilon-ghz", eps_ghz, "eps / 2pi in GHz (physical units)");
    snr->add_option("--omega-ghz", omega_ghz, "omega / 2pi in GHz (physical units)");
    snr->add_option("--g-ghz", g_ghz, "g / 2pi in GHz (physical units)");
    snr->add_option("--temperature-mk", temp_mk, "Temperature in mK (physical units)");
    snr->add_option("--n-max", n_max, "Fock cutoff (default: converge)");
    add_common(snr, common, false);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Parameter grid from a config file");
    std::string config_path;
    sweep->add_option("--config", config_path, "Sweep config")->required();
    add_common(sweep, common, true);

    // dicke
    auto* dicke = app.add_subcommand("dicke", "Dicke-limit phase diagram over (gbar, beta omega)");
    double d_eps = 0.5;
    int d_n = 1;
    std::vector<double> gbar_spec{0.3, 1.2, 91}, beta_spec{3.0, 5.0, 3};
    dicke->add_option("--epsilon", d_eps, "eps / omega");
    dicke->add_option("-N,--n-spins", d_n, "N for extensive quantities")->check(CLI::PositiveNumber);
    dicke->add_option("--gbar", gbar_spec, "lo,hi,count")->delimiter(',')->expected(3);
    dicke->add_option("--beta-omega", beta_spec, "lo,hi,count")->delimiter(',')->expected(3);
    add_common(dicke, common, false);

    // map-spectral
    auto* mapping = app.add_subcommand("map-spectral", "Check the residual/original spectral-density equivalence");
    double m_gamma = 0.05, m_omega0 = 1.0, m_g = 0.5, m_delta = 1e-6;
    std::vector<double> m_cutoffs{1e2, 1e3, 1e4}, m_grid{0.1, 3.0, 30};
    std::string m_treatment = "counterterm";
    mapping->add_option("--gamma", m_gamma, "Ohmic coupling gamma");
    mapping->add_option("--omega0", m_omega0, "RC frequency");
    mapping->add_option("--g", m_g, "Probe-RC coupling");
    mapping->add_option("--delta", m_delta, "Imaginary offset");
    mapping->add_option("--omega-c", m_cutoffs, "Cutoffs, comma separated")->delimiter(',');
    mapping->add_option("--grid", m_grid, "lo,hi,count")->delimiter(',')->expected(3);
    mapping->add_option("--treatment", m_treatment, "counterterm|raw|imaginary")
        ->check(CLI::IsMember({"counterterm", "raw", "imaginary"}));
    add_common(mapping, common, false);

    // fit
    auto* fit = app.add_subcommand("fit", "Scaling exponent theta in S ~ T^theta from a sweep table");
    std::string fit_in, fit_curve;
    std::vector<double> window{20.0, 60.0};
    fit->add_option("--in", fit_in, "Sweep CSV or JSON")->required();
    fit->add_option("--window", window, "beta omega lo,hi")->delimiter(',')->expected(2);
    fit->add_option("--curve", fit_curve, "Curve label");
    add_common(fit, common, false);

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "Run a shipped figure config");
    std::string figure_id;
    std::string figures_dir = RCMETRO_FIGURES_DIR;
    reproduce->add_option("figure", figure_id, "Figure id, e.g. fig2a")->required();
    reproduce->add_option("--figures-dir", figures_dir, "Directory of shipped configs");
    reproduce->add_option("--config", config_path, "Explicit config path (overrides the figure id lookup)");
    add_common(reproduce, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        const bool format_given = app.get_subcommands().front()->count("--format") > 0;
        if (*snr) {
            SweepConfig cfg;
            cfg.model = snr_model == "grwa" ? ModelKind::grwa : snr_model == "weak" ? ModelKind::weak : ModelKind::rabi_exact;
            cfg.axis = GridAxis::beta_omega;
            CurveSpec c;
            c.n_spins = n_spins;
            if (eps_ghz || omega_ghz || g_ghz || temp_mk) {
                if (!eps_ghz || !omega_ghz || !temp_mk) {
                    throw ConfigError("--epsilon-ghz", "physical units need --epsilon-ghz, --omega-ghz and --temperature-mk");
                }
                const auto d = units::convert_units(*eps_ghz, *omega_ghz, g_ghz.value_or(0.0), *temp_mk);
                c.epsilon = d.epsilon;
                c.g = d.g;
                beta_omega = d.beta_omega;
            } else {
                c.epsilon = eps;
                c.g = g;
            }
            if (!(beta_omega > 0.0)) throw ConfigError("--beta-omega", "must be > 0");
            cfg.values = {beta_omega};
            cfg.curves = {c};
            if (n_max) cfg.n_max = *n_max;
            return run_config(cfg, common, format_given);
        }
        if (*sweep) return run_config(load_config(config_path), common, format_given);
        if (*reproduce) {
            const std::string path =
                !config_path.empty() ? config_path : (std::filesystem::path(figures_dir) / (figure_id + ".cfg")).string();
            if (!std::filesystem::exists(path)) throw ConfigError("figure", "no shipped config '" + path + "'");
            return run_config(load_config(path), common, format_given);
        }
        if (*dicke) {
            Table t({{"gbar", ColumnType::real},
                     {"beta_omega", ColumnType::real},
                     {"phase", ColumnType::text},
                     {"t_c", ColumnType::real},
                     {"eta", ColumnType::real},
                     {"snr_per_n", ColumnType::real},
                     {"snr_weak_per_n", ColumnType::real},
                     {"delta_snr", ColumnType::real},
                     {"mean_jz", ColumnType::real}});
            for (double gb : linspace(gbar_spec, "--gbar")) {
                for (double b : linspace(beta_spec, "--beta-omega")) {
                    const DickeParams p{d_eps, 1.0, gb, d_n};
                    const auto s = dicke_snr(p, b);
                    const auto tc = critical_temperature(p);
                    t.add_row({gb, b, to_string(s.phase), tc ? *tc : std::numeric_limits<double>::quiet_NaN(),
                               s.eta, s.snr_per_n, s.snr_weak_per_n, s.delta_per_n, dicke_observables(p, b).mean_jz});
                }
            }
            emit(t, common.format, common.out);
            return kOk;
        }
        if (*mapping) {
            const RealPartTreatment treat = m_treatment == "raw"         ? RealPartTreatment::raw
                                            : m_treatment == "imaginary" ? RealPartTreatment::imaginary_only
                                                                         : RealPartTreatment::counterterm_subtracted;
            const auto grid = linspace(m_grid, "--grid");
            Table t({{"omega_c", ColumnType::real},
                     {"frequency", ColumnType::real},
                     {"residual", ColumnType::real},
                     {"treatment", ColumnType::text}});
            for (double wc : m_cutoffs) {
                const auto rep = verify_equivalence({m_gamma, wc}, m_omega0, m_g, grid, m_delta, treat);
                for (std::size_t i = 0; i < grid.size(); ++i) t.add_row({wc, grid[i], rep.residuals[i], m_treatment});
                std::fprintf(stderr, "omega_c = %g: max residual %.6e at %g\n", wc, rep.max_residual, rep.worst_frequency);
            }
            emit(t, common.format, common.out);
            return kOk;
        }
        if (*fit) {
            const std::string text = read_file(fit_in);
            const Table in = text.find_first_not_of(" \n\t") != std::string::npos && text[text.find_first_not_of(" \n\t")] == '{'
                                 ? Table::from_json(text)
                                 : Table::from_csv(text);
            const auto f = fit_scaling(in, {window.at(0), window.at(1)}, fit_curve);
            Table t({{"curve", ColumnType::text},
                     {"theta", ColumnType::real},
                     {"stderr", ColumnType::real},
                     {"r_squared", ColumnType::real},
                     {"window_lo", ColumnType::real},
                     {"window_hi", ColumnType::real},
                     {"points", ColumnType::integer}});
            t.add_row({fit_curve, f.theta, f.stderr_theta, f.r_squared, f.window.first, f.window.second,
                       std::int64_t{f.points}});
            emit(t, common.format, common.out);
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kConvergence;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
