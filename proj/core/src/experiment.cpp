#include "betamom/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "betamom/csv.hpp"
#include "betamom/energy.hpp"
#include "betamom/method.hpp"
#include "betamom/ode.hpp"

namespace betamom {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> as_doubles(const json& j, const std::string& key) {
    if (!j.is_array()) throw ConfigError("'" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError("'" + key + "' must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

CheckKind parse_check(const std::string& name) {
    static const std::map<std::string, CheckKind> table = {
        {"energy-decrement", CheckKind::energy_decrement},
        {"continuous-bound", CheckKind::continuous_bound},
        {"deviation-ladder", CheckKind::deviation_ladder},
        {"phase-sweep", CheckKind::phase_sweep},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown check '" + name + "'");
    return it->second;
}

const char* status_name(CellStatus s) {
    switch (s) {
        case CellStatus::pass: return "PASS";
        case CellStatus::fail: return "FAIL";
        case CellStatus::advisory: return "ADVISORY";
        case CellStatus::invalid: return "INVALID";
        case CellStatus::diverged: return "DIVERGED";
    }
    return "UNKNOWN";
}

std::string cell_tag(double beta, double s) {
    return "beta" + format_full(beta) + "_s" + format_full(s);
}

struct ArtifactWriter {
    std::filesystem::path dir;
    ExperimentResult* result;

    std::ofstream open(const std::string& name) const {
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) throw ConfigError("cannot write artifact '" + name + "'");
        result->artifacts.push_back(name);
        return os;
    }
};

// Minimum over the series of (rhs - decrement): negative means a violation of
// that magnitude somewhere.
double worst_decrement_margin(const EnergySeries& series) {
    double worst = kInf;
    for (size_t k = 0; k < series.decrements.size(); ++k) {
        if (std::isnan(series.decrements[k]) || std::isnan(series.bound_rhs[k])) continue;
        worst = std::min(worst, series.bound_rhs[k] - series.decrements[k]);
    }
    return worst == kInf ? 0.0 : worst;
}

}  // namespace

Objective build_objective(const ObjectiveSpec& spec) {
    switch (spec.kind) {
        case ObjectiveKind::quadratic: {
            Vec x_star(static_cast<Eigen::Index>(spec.x_star.size()));
            for (size_t i = 0; i < spec.x_star.size(); ++i) {
                x_star[static_cast<Eigen::Index>(i)] = spec.x_star[i];
            }
            return make_quadratic(spec.eigenvalues, x_star);
        }
        case ObjectiveKind::logsumexp:
            return make_smooth_nonquadratic(spec.dimension, spec.mu, spec.seed);
    }
    throw ConfigError("unknown objective kind");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig config;
    if (!j.contains("objective")) throw ConfigError("missing 'objective'");
    const json& obj = j["objective"];
    const std::string kind = obj.value("kind", "");
    if (kind == "quadratic") {
        config.objective.kind = ObjectiveKind::quadratic;
        config.objective.eigenvalues = as_doubles(obj.at("eigenvalues"), "eigenvalues");
        config.objective.x_star = as_doubles(obj.at("x_star"), "x_star");
    } else if (kind == "logsumexp") {
        config.objective.kind = ObjectiveKind::logsumexp;
        config.objective.dimension = obj.at("dimension").get<int>();
        config.objective.mu = obj.value("mu", 1.0);
        config.objective.seed = obj.value("seed", std::uint64_t{0});
    } else {
        throw ConfigError("objective kind must be 'quadratic' or 'logsumexp'");
    }

    if (!j.contains("x0")) throw ConfigError("missing 'x0'");
    config.x0 = as_doubles(j["x0"], "x0");

    if (j.contains("betas")) config.betas = as_doubles(j["betas"], "betas");
    if (j.contains("steps")) {
        config.steps = as_doubles(j["steps"], "steps");
    } else if (j.contains("c_values")) {
        // s = 1 / (c L); L is known from the objective description.
        const double lip = config.objective.kind == ObjectiveKind::quadratic
                               ? *std::max_element(config.objective.eigenvalues.begin(),
                                                   config.objective.eigenvalues.end())
                               : 1.0 + config.objective.mu;
        for (double c : as_doubles(j["c_values"], "c_values")) {
            if (!(c > 0.0)) throw ConfigError("'c_values' must be positive");
            config.steps.push_back(1.0 / (c * lip));
        }
    }
    if (config.betas.empty() || config.steps.empty()) {
        throw ConfigError("empty method grid: both 'betas' and 'steps' (or 'c_values') "
                          "must be nonempty");
    }

    config.max_iter = j.value("max_iter", 500);
    config.grad_tol = j.value("grad_tol", 0.0);
    if (j.contains("ode")) {
        config.t_end = j["ode"].value("t_end", 40.0);
        config.deviation_t = j["ode"].value("deviation_t", 5.0);
    }
    if (j.contains("checks")) {
        for (const auto& c : j["checks"]) config.checks.push_back(parse_check(c.get<std::string>()));
    }
    config.output_dir = j.value("output_dir", std::string("out"));
    config.seed = j.value("seed", std::uint64_t{0});
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.betas.empty() || config.steps.empty()) {
        throw ConfigError("empty method grid");
    }
    if (config.max_iter < 1) throw ConfigError("max_iter must be >= 1");

    const Objective obj = build_objective(config.objective);
    if (static_cast<int>(config.x0.size()) != obj.dimension()) {
        throw ConfigError("x0 dimension does not match the objective");
    }
    Vec x0(obj.dimension());
    for (int i = 0; i < obj.dimension(); ++i) x0[i] = config.x0[static_cast<size_t>(i)];

    std::filesystem::path dir = config.output_dir;
    if (const char* root = std::getenv("BETAMOM_OUTPUT_ROOT"); root && *root) {
        dir = std::filesystem::path(root) / config.output_dir;
    }
    std::filesystem::create_directories(dir);

    ExperimentResult result;
    ArtifactWriter writer{dir, &result};
    const double mu = obj.mu();
    const double lip = obj.lip();
    const double r2 = (x0 - obj.minimizer()).squaredNorm();

    const auto requested = [&](CheckKind kind) {
        return std::find(config.checks.begin(), config.checks.end(), kind) !=
               config.checks.end();
    };
    auto report = [&](std::string check, double beta, double s, CellStatus status,
                      double margin, std::string detail) {
        result.outcomes.push_back(
            {std::move(check), beta, s, status, margin, std::move(detail)});
        if (status == CellStatus::fail) ++result.binding_failures;
    };

    std::ostringstream rates;
    rates << "beta,s,regime,rate_factor,gap_constant,energy_rate_factor,in_window\n";
    bool any_rates = false;

    for (double beta : config.betas) {
        for (double s : config.steps) {
            const std::string tag = cell_tag(beta, s);
            if (!(beta >= 0.0 && beta <= 1.0) || !(s > 0.0)) {
                report("parameters", beta, s, CellStatus::invalid, 0.0,
                       "outside the valid domain (need beta in [0,1], s > 0)");
                continue;
            }

            MethodConfig mc;
            mc.beta = beta;
            mc.step = s;
            mc.max_iter = config.max_iter;
            mc.grad_tol = config.grad_tol;
            mc.variant = Variant::single_variable;

            Trajectory traj;
            bool have_traj = true;
            try {
                traj = run(mc, obj, x0);
            } catch (const DivergenceError& e) {
                have_traj = false;
                report("trajectory", beta, s, CellStatus::diverged, 0.0,
                       std::string(e.what()));
            }
            if (have_traj) {
                auto os = writer.open("traj_" + tag + ".csv");
                write_csv(traj, os);
            }

            if (mu * s < 1.0) {
                const auto ab = coefficients_AB(beta, s, mu, lip);
                const auto rb = rate_bound(beta, s, mu, lip, 0, r2);
                const double energy_rate =
                    1.0 + std::sqrt(mu * s) * std::min(1.0 / 6.0, ab.ratio());
                rates << format_full(beta) << ',' << format_full(s) << ','
                      << regime_name(rb.regime) << ',' << format_full(rb.rate_factor)
                      << ',' << format_full(rb.constant) << ','
                      << format_full(energy_rate) << ',' << (rb.in_window ? 1 : 0)
                      << '\n';
                any_rates = true;
            }

            if (requested(CheckKind::energy_decrement)) {
                if (!have_traj) {
                    report("energy-decrement", beta, s, CellStatus::diverged, 0.0,
                           "trajectory diverged");
                } else if (mu * s >= 1.0) {
                    report("energy-decrement", beta, s, CellStatus::advisory, 0.0,
                           "discrete energy functional undefined for mu*s >= 1");
                } else {
                    const EnergySeries series = check_discrete_decrement(traj, beta, s, obj);
                    auto os = writer.open("energy_" + tag + ".csv");
                    write_csv(series, os);
                    const double margin = worst_decrement_margin(series);
                    const int count = series.violation_count();
                    CellStatus status = series.binding
                                            ? (count == 0 ? CellStatus::pass : CellStatus::fail)
                                            : CellStatus::advisory;
                    report("energy-decrement", beta, s, status, margin,
                           std::to_string(count) + " violations" +
                               (series.binding ? "" : " (s > 1/(4L), non-binding)"));
                }
            }

            if (requested(CheckKind::continuous_bound)) {
                const auto [h, substeps] = ode_grid_step(s, lip);
                (void)substeps;
                OdeSolution sol;
                try {
                    sol = integrate_hr(beta, s, obj, x0, config.t_end, h);
                } catch (const IntegrationBlowupError& e) {
                    report("continuous-bound", beta, s, CellStatus::diverged, 0.0,
                           std::string(e.what()));
                    continue;
                }
                {
                    auto os = writer.open("ode_" + tag + ".csv");
                    write_csv(sol, obj, os);
                }
                const BoundReport br = continuous_rate_check(sol, obj, beta, s);
                CellStatus status = br.hypothesis_satisfied
                                        ? (br.pass ? CellStatus::pass : CellStatus::fail)
                                        : CellStatus::advisory;
                report("continuous-bound", beta, s, status, 1.0 + 1e-9 - br.max_ratio,
                       "max gap/bound ratio " + format_full(br.max_ratio) +
                           (br.hypothesis_satisfied ? "" : " (s > 1/L, non-binding)"));

                const EnergySeries decay = check_continuous_decay(sol, beta, s, obj);
                {
                    auto os = writer.open("decay_" + tag + ".csv");
                    write_csv(decay, os);
                }
                report("continuous-decay", beta, s,
                       decay.violation_count() == 0 ? CellStatus::pass : CellStatus::fail,
                       worst_decrement_margin(decay),
                       std::to_string(decay.violation_count()) + " violations");
            }
        }
    }

    if (requested(CheckKind::deviation_ladder)) {
        std::vector<double> ladder = config.steps;
        std::sort(ladder.begin(), ladder.end(), std::greater<>());
        ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
        for (double beta : config.betas) {
            if (!(beta >= 0.0 && beta <= 1.0)) continue;
            std::ostringstream csv;
            csv << "s,deviation_hr,deviation_lr\n";
            std::vector<double> dev_hr;
            std::vector<double> dev_lr;
            bool diverged = false;
            for (double s : ladder) {
                if (!(s > 0.0)) continue;
                const double T = config.deviation_t;
                const auto k_max = static_cast<int>(std::floor(T / std::sqrt(s) + 1e-9));
                MethodConfig mc;
                mc.beta = beta;
                mc.step = s;
                mc.max_iter = std::max(k_max, 1);
                mc.variant = Variant::single_variable;
                const auto [h, substeps] = ode_grid_step(s, lip);
                (void)substeps;
                try {
                    const Trajectory traj = run(mc, obj, x0);
                    const OdeSolution hr = integrate_hr(beta, s, obj, x0, T, h);
                    const OdeSolution lr = integrate_lr(s, obj, x0, T, h);
                    dev_hr.push_back(deviation(traj, hr, T));
                    dev_lr.push_back(deviation(traj, lr, T));
                } catch (const std::runtime_error& e) {
                    report("deviation-ladder", beta, s, CellStatus::diverged, 0.0,
                           std::string(e.what()));
                    diverged = true;
                    break;
                }
                csv << format_full(s) << ',' << format_full(dev_hr.back()) << ','
                    << format_full(dev_lr.back()) << '\n';
            }
            if (diverged) continue;
            {
                auto os = writer.open("deviation_beta" + format_full(beta) + ".csv");
                os << csv.str();
            }
            if (ladder.size() < 2) {
                report("deviation-ladder", beta, ladder.empty() ? 0.0 : ladder.front(),
                       CellStatus::advisory, 0.0,
                       "need at least two step sizes to check monotonicity");
                continue;
            }
            double worst = kInf;
            for (size_t i = 0; i + 1 < dev_hr.size(); ++i) {
                worst = std::min(worst, dev_hr[i] - dev_hr[i + 1]);
                worst = std::min(worst, dev_lr[i] - dev_lr[i + 1]);
            }
            report("deviation-ladder", beta, ladder.back(),
                   worst > 0.0 ? CellStatus::pass : CellStatus::fail, worst,
                   "deviation strictly decreasing in s against both dynamics");
        }
    }

    if (requested(CheckKind::phase_sweep)) {
        std::ostringstream csv;
        csv << "mu_over_L,c,beta,h,ratio,regime,beta_c,in_window\n";
        double worst = kInf;
        int mismatches = 0;
        for (double beta : config.betas) {
            for (double s : config.steps) {
                if (!(beta >= 0.0 && beta <= 1.0) || !(s > 0.0) || mu * s >= 1.0) continue;
                const PhaseReport pr = phase_report(beta, s, mu, lip);
                csv << format_full(mu / lip) << ',' << format_full(1.0 / (lip * s)) << ','
                    << format_full(beta) << ',' << format_full(pr.h_value) << ','
                    << format_full(pr.ratio) << ',' << regime_name(pr.regime) << ','
                    << (pr.beta_c_closed ? format_full(*pr.beta_c_closed) : "nan") << ','
                    << (pr.in_window ? 1 : 0) << '\n';
                // sign(h) must agree with sign(ratio - 1/6).
                const double excess = pr.ratio - 1.0 / 6.0;
                if (pr.h_value * excess < 0.0 &&
                    std::abs(excess) > 1e-12 && std::abs(pr.h_value) > 1e-12) {
                    ++mismatches;
                }
                if (pr.beta_c_closed && pr.beta_c_bisect) {
                    worst = std::min(
                        worst, 1e-8 - std::abs(*pr.beta_c_closed - *pr.beta_c_bisect));
                }
            }
        }
        {
            auto os = writer.open("phase_cells.csv");
            os << csv.str();
        }
        const bool ok = mismatches == 0 && (worst == kInf || worst >= 0.0);
        report("phase-consistency", 0.0, 0.0, ok ? CellStatus::pass : CellStatus::fail,
               worst == kInf ? 0.0 : worst,
               std::to_string(mismatches) + " sign mismatches");
    }

    if (any_rates) {
        auto os = writer.open("rates.csv");
        os << rates.str();
    }
    {
        auto os = writer.open("summary.txt");
        write_summary(result, os);
    }
    return result;
}

void write_summary(const ExperimentResult& result, std::ostream& os) {
    for (const auto& o : result.outcomes) {
        os << "check=" << o.check << " beta=" << format_full(o.beta)
           << " s=" << format_full(o.step) << " status=" << status_name(o.status)
           << " worst_margin=" << format_full(o.worst_margin) << " detail=\"" << o.detail
           << "\"\n";
    }
    os << "binding_failures=" << result.binding_failures << "\n";
}

void sweep_phase(const std::vector<double>& mu_over_l_grid,
                 const std::vector<double>& c_grid,
                 const std::vector<double>& beta_grid, std::ostream& os) {
    if (mu_over_l_grid.empty() || c_grid.empty() || beta_grid.empty()) {
        throw ConfigError("sweep grids must be nonempty");
    }
    os << "mu_over_L,c,beta,h,ratio,regime,beta_c,in_window\n";
    for (double ratio_ml : mu_over_l_grid) {
        for (double c : c_grid) {
            for (double beta : beta_grid) {
                // Canonical L = 1; every reported quantity depends only on
                // (mu/L, c, beta).
                const double mu = ratio_ml;
                const double lip = 1.0;
                const double s = 1.0 / (c * lip);
                if (!(mu > 0.0) || mu > lip || !(s > 0.0) || mu * s >= 1.0 ||
                    beta < 0.0 || beta > 1.0) {
                    os << format_full(ratio_ml) << ',' << format_full(c) << ','
                       << format_full(beta) << ",nan,nan,invalid,nan,0\n";
                    continue;
                }
                const PhaseReport pr = phase_report(beta, s, mu, lip);
                os << format_full(ratio_ml) << ',' << format_full(c) << ','
                   << format_full(beta) << ',' << format_full(pr.h_value) << ','
                   << format_full(pr.ratio) << ',' << regime_name(pr.regime) << ','
                   << (pr.beta_c_closed ? format_full(*pr.beta_c_closed) : "nan") << ','
                   << (pr.in_window ? 1 : 0) << '\n';
            }
        }
    }
}

namespace {

std::vector<std::string> matching_files(const std::filesystem::path& dir,
                                        const std::string& prefix) {
    std::vector<std::string> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) == 0 && name.size() > 4 &&
            name.compare(name.size() - 4, 4, ".csv") == 0) {
            out.push_back(name);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string python_list(const std::vector<std::string>& names) {
    std::string out = "[";
    for (size_t i = 0; i < names.size(); ++i) {
        out += "\"" + names[i] + "\"";
        if (i + 1 < names.size()) out += ", ";
    }
    return out + "]";
}

void write_script(const std::filesystem::path& dir, const std::string& name,
                  const std::string& body) {
    std::ofstream os(dir / name, std::ios::binary);
    os << body;
}

}  // namespace

int emit_plots(const std::filesystem::path& artifact_dir, std::ostream& notices) {
    int written = 0;
    const auto trajs = matching_files(artifact_dir, "traj_");
    const auto energies = matching_files(artifact_dir, "energy_");
    const auto deviations = matching_files(artifact_dir, "deviation_");
    auto phase = matching_files(artifact_dir, "phase_sweep");
    if (phase.empty()) phase = matching_files(artifact_dir, "phase_cells");
    const bool has_rates = std::filesystem::exists(artifact_dir / "rates.csv");

    if (!trajs.empty() && has_rates) {
        write_script(artifact_dir, "plot_gap.py",
                     "#!/usr/bin/env python3\n"
                     "# Log function gap per iteration with guaranteed-rate overlays.\n"
                     "import csv, math\n"
                     "import matplotlib.pyplot as plt\n"
                     "files = " + python_list(trajs) + "\n"
                     "rates = {}\n"
                     "with open(\"rates.csv\") as f:\n"
                     "    for row in csv.DictReader(f):\n"
                     "        rates[(row[\"beta\"], row[\"s\"])] = row\n"
                     "fig, ax = plt.subplots()\n"
                     "for name in files:\n"
                     "    tag = name[len(\"traj_\"):-len(\".csv\")]\n"
                     "    beta, s = tag.replace(\"beta\", \"\").split(\"_s\")\n"
                     "    with open(name) as f:\n"
                     "        rows = list(csv.DictReader(f))\n"
                     "    k = [int(r[\"k\"]) for r in rows]\n"
                     "    gap = [float(r[\"gap\"]) for r in rows]\n"
                     "    line, = ax.semilogy(k, gap, label=f\"beta={beta}, s={s}\")\n"
                     "    info = rates.get((beta, s))\n"
                     "    if info:\n"
                     "        c0 = float(info[\"gap_constant\"])\n"
                     "        rho = float(info[\"rate_factor\"])\n"
                     "        bound = [c0 / rho ** kk for kk in k]\n"
                     "        ax.semilogy(k, bound, \"--\", color=line.get_color(), alpha=0.5)\n"
                     "ax.set_xlabel(\"k\")\n"
                     "ax.set_ylabel(\"f(x_k) - f*\")\n"
                     "ax.legend()\n"
                     "fig.savefig(\"gap.png\", dpi=150)\n");
        ++written;
    } else {
        notices << "skip plot_gap.py: need traj_*.csv and rates.csv\n";
    }

    if (!energies.empty() && has_rates) {
        write_script(artifact_dir, "plot_energy.py",
                     "#!/usr/bin/env python3\n"
                     "# Discrete energy against its geometric envelope.\n"
                     "import csv\n"
                     "import matplotlib.pyplot as plt\n"
                     "files = " + python_list(energies) + "\n"
                     "rates = {}\n"
                     "with open(\"rates.csv\") as f:\n"
                     "    for row in csv.DictReader(f):\n"
                     "        rates[(row[\"beta\"], row[\"s\"])] = row\n"
                     "fig, ax = plt.subplots()\n"
                     "for name in files:\n"
                     "    tag = name[len(\"energy_\"):-len(\".csv\")]\n"
                     "    beta, s = tag.replace(\"beta\", \"\").split(\"_s\")\n"
                     "    with open(name) as f:\n"
                     "        rows = list(csv.DictReader(f))\n"
                     "    k = [float(r[\"k\"]) for r in rows]\n"
                     "    E = [float(r[\"E\"]) for r in rows]\n"
                     "    line, = ax.semilogy(k, E, label=f\"beta={beta}, s={s}\")\n"
                     "    info = rates.get((beta, s))\n"
                     "    if info and E:\n"
                     "        rho = float(info[\"energy_rate_factor\"])\n"
                     "        env = [E[0] / rho ** kk for kk in k]\n"
                     "        ax.semilogy(k, env, \"--\", color=line.get_color(), alpha=0.5)\n"
                     "ax.set_xlabel(\"k\")\n"
                     "ax.set_ylabel(\"E(k)\")\n"
                     "ax.legend()\n"
                     "fig.savefig(\"energy.png\", dpi=150)\n");
        ++written;
    } else {
        notices << "skip plot_energy.py: need energy_*.csv and rates.csv\n";
    }

    if (!deviations.empty()) {
        write_script(artifact_dir, "plot_deviation.py",
                     "#!/usr/bin/env python3\n"
                     "# Discrete-vs-continuous deviation against step size, log-log.\n"
                     "import csv\n"
                     "import matplotlib.pyplot as plt\n"
                     "files = " + python_list(deviations) + "\n"
                     "fig, ax = plt.subplots()\n"
                     "for name in files:\n"
                     "    beta = name[len(\"deviation_beta\"):-len(\".csv\")]\n"
                     "    with open(name) as f:\n"
                     "        rows = list(csv.DictReader(f))\n"
                     "    s = [float(r[\"s\"]) for r in rows]\n"
                     "    hr = [float(r[\"deviation_hr\"]) for r in rows]\n"
                     "    lr = [float(r[\"deviation_lr\"]) for r in rows]\n"
                     "    ax.loglog(s, hr, \"o-\", label=f\"beta={beta} vs high-res\")\n"
                     "    ax.loglog(s, lr, \"s--\", label=f\"beta={beta} vs low-res\")\n"
                     "ax.set_xlabel(\"s\")\n"
                     "ax.set_ylabel(\"max_k ||x_k - X(k sqrt(s))||\")\n"
                     "ax.legend()\n"
                     "fig.savefig(\"deviation.png\", dpi=150)\n");
        ++written;
    } else {
        notices << "skip plot_deviation.py: no deviation_*.csv\n";
    }

    if (!phase.empty()) {
        write_script(artifact_dir, "plot_phase.py",
                     "#!/usr/bin/env python3\n"
                     "# Critical-beta phase diagram over (mu/L, c).\n"
                     "import csv\n"
                     "import matplotlib.pyplot as plt\n"
                     "import numpy as np\n"
                     "name = \"" + phase.front() + "\"\n"
                     "with open(name) as f:\n"
                     "    rows = [r for r in csv.DictReader(f) if r[\"beta_c\"] != \"nan\"]\n"
                     "ml = sorted({float(r[\"mu_over_L\"]) for r in rows})\n"
                     "cs = sorted({float(r[\"c\"]) for r in rows})\n"
                     "grid = np.full((len(cs), len(ml)), np.nan)\n"
                     "for r in rows:\n"
                     "    i = cs.index(float(r[\"c\"]))\n"
                     "    j = ml.index(float(r[\"mu_over_L\"]))\n"
                     "    grid[i, j] = float(r[\"beta_c\"])\n"
                     "fig, ax = plt.subplots()\n"
                     "pc = ax.pcolormesh(ml, cs, grid, shading=\"nearest\")\n"
                     "fig.colorbar(pc, ax=ax, label=\"beta_c\")\n"
                     "cont = ax.contour(ml, cs, grid, colors=\"k\", linewidths=0.5)\n"
                     "ax.clabel(cont, inline=True, fontsize=7)\n"
                     "ax.set_xlabel(\"mu / L\")\n"
                     "ax.set_ylabel(\"c\")\n"
                     "fig.savefig(\"phase.png\", dpi=150)\n");
        ++written;
    } else {
        notices << "skip plot_phase.py: no phase_sweep.csv or phase_cells.csv\n";
    }
    return written;
}

}  // namespace betamom
