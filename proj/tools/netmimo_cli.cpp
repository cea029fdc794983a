#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "netmimo/analytic.hpp"
#include "netmimo/beamforming.hpp"
#include "netmimo/channel.hpp"
#include "netmimo/config.hpp"
#include "netmimo/gamma_matching.hpp"
#include "netmimo/geometry.hpp"
#include "netmimo/hyp2f1.hpp"
#include "netmimo/montecarlo.hpp"
#include "netmimo/quadrature.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netmimo;

namespace {

struct CliOptions {
    std::string experiment;
    std::string config_path;
    std::string out_dir = "out";
    std::string method = "both";  // analytic | montecarlo | both
    std::uint64_t seed = 1;
    int topologies = 200;
    int fading = 20;
    int workers = 1;
    double quad_tol = 1e-4;
};

class CsvWriter {
  public:
    CsvWriter(const fs::path& path) : out_(path) {
        out_ << "experiment,curve,x,value,ci,method,seed,config_digest\n";
    }
    void row(const std::string& exp, const std::string& curve, double x, double value,
             double ci, const std::string& method, std::uint64_t seed, std::uint64_t digest) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%s,%.17g,%.17g,%.17g,%s,%llu,%016llx\n",
                      exp.c_str(), curve.c_str(), x, value, ci, method.c_str(),
                      static_cast<unsigned long long>(seed),
                      static_cast<unsigned long long>(digest));
        out_ << buf;
    }
    void error_row(const std::string& exp, const std::string& curve, double x,
                   const std::string& what, std::uint64_t seed, std::uint64_t digest) {
        out_ << exp << "," << curve << "," << x << ",nan,nan,error:" << what << "," << seed
             << "," << std::hex << digest << std::dec << "\n";
    }

  private:
    std::ofstream out_;
};

QuadratureSpec quad_from(const CliOptions& o) {
    QuadratureSpec q;
    q.rate_rel_tol = o.quad_tol;
    return q;
}

SimPlan plan_from(const CliOptions& o, double eta, double bbar) {
    SimPlan p;
    p.n_topologies = o.topologies;
    p.n_fading = o.fading;
    p.seed = o.seed;
    p.workers = o.workers;
    p.eta = eta;
    p.avg_bs_count = bbar;
    return p;
}

void write_manifest(const CliOptions& o, const SystemConfig& cfg,
                    const std::vector<std::string>& outputs) {
    json m;
    m["experiment"] = o.experiment;
    m["seed"] = o.seed;
    m["method"] = o.method;
    m["topologies"] = o.topologies;
    m["fading"] = o.fading;
    m["workers"] = o.workers;
    m["quad_tol"] = o.quad_tol;
    m["config"] = {{"lambda", cfg.lambda},        {"W", cfg.bandwidth_hz},
                   {"P_T", cfg.tx_power_dbm},     {"N_o", cfg.noise_psd_dbm_hz},
                   {"N_f", cfg.noise_figure_db},  {"gap", cfg.snr_gap_db},
                   {"alpha", cfg.alpha},          {"d_o", cfg.d_o},
                   {"M", cfg.antennas}};
    char dig[32];
    std::snprintf(dig, sizeof(dig), "%016llx",
                  static_cast<unsigned long long>(cfg.digest()));
    m["config_digest"] = dig;
    m["outputs"] = outputs;
    std::ofstream f(fs::path(o.out_dir) / (o.experiment + ".manifest.json"));
    f << m.dump(2) << "\n";
}

int run_fig2(const CliOptions& o, const SystemConfig& cfg) {
    CsvWriter csv(fs::path(o.out_dir) / "fig2-eta-cluster-sweep.csv");
    QuadratureSpec q = quad_from(o);
    auto dg = cfg.digest();
    const std::vector<double> etas{0.2, 0.4, 0.6, 0.8, 1.0};
    for (double eta : etas) {
        for (int bbar = 2; bbar <= 10; bbar += 2) {
            char curve[64];
            std::snprintf(curve, sizeof(curve), "eta=%.1f", eta);
            if (o.method != "montecarlo") {
                try {
                    auto p = AnalyticParams::from(cfg, eta, bbar);
                    auto r = per_bs_ergodic_sum_rate(p, q);
                    csv.row("fig2-eta-cluster-sweep", curve, bbar, r.value, 0.0, "analytic",
                            o.seed, dg);
                } catch (const std::exception& e) {
                    csv.error_row("fig2-eta-cluster-sweep", curve, bbar, e.what(), o.seed, dg);
                }
            }
            if (o.method != "analytic") {
                try {
                    auto r = run(plan_from(o, eta, bbar), cfg);
                    csv.row("fig2-eta-cluster-sweep", std::string(curve) + "-mc", bbar,
                            r.per_bs_rate, r.ci95, "monte-carlo", o.seed, dg);
                } catch (const std::exception& e) {
                    csv.error_row("fig2-eta-cluster-sweep", std::string(curve) + "-mc", bbar,
                                  e.what(), o.seed, dg);
                }
            }
        }
    }
    write_manifest(o, cfg, {"fig2-eta-cluster-sweep.csv"});
    return 0;
}

int run_fig3(const CliOptions& o, const SystemConfig& cfg) {
    CsvWriter csv(fs::path(o.out_dir) / "fig3-eta-sweep.csv");
    QuadratureSpec q = quad_from(o);
    auto dg = cfg.digest();
    for (double bbar : {4.0, 6.0}) {
        char curve[64];
        std::snprintf(curve, sizeof(curve), "Bbar=%g", bbar);
        for (int i = 1; i <= 20; ++i) {
            double eta = 0.05 * i;
            if (o.method != "montecarlo") {
                auto p = AnalyticParams::from(cfg, eta, bbar);
                csv.row("fig3-eta-sweep", curve, eta, per_bs_ergodic_sum_rate(p, q).value, 0.0,
                        "analytic", o.seed, dg);
            }
            if (o.method != "analytic") {
                auto r = run(plan_from(o, eta, bbar), cfg);
                csv.row("fig3-eta-sweep", std::string(curve) + "-mc", eta, r.per_bs_rate,
                        r.ci95, "monte-carlo", o.seed, dg);
            }
        }
    }
    write_manifest(o, cfg, {"fig3-eta-sweep.csv"});
    return 0;
}

int run_fig_scheduling(const CliOptions& o, const SystemConfig& cfg) {
    // Isolated cluster, eta = 1: ZF vs RZF (regularization 1/rho).
    CsvWriter csv(fs::path(o.out_dir) / "fig-scheduling-rzf.csv");
    auto dg = cfg.digest();
    for (int bbar = 1; bbar <= 8; ++bbar) {
        for (auto bf : {Beamformer::Zf, Beamformer::Rzf}) {
            SimPlan p = plan_from(o, 1.0, bbar);
            p.scenario = Scenario::IsolatedCluster;
            p.beamformer = bf;
            auto r = run(p, cfg);
            csv.row("fig-scheduling-rzf", bf == Beamformer::Zf ? "zf" : "rzf", bbar,
                    r.per_bs_rate, r.ci95, "monte-carlo", o.seed, dg);
        }
    }
    write_manifest(o, cfg, {"fig-scheduling-rzf.csv"});
    return 0;
}

int run_fig4(const CliOptions& o, const SystemConfig& cfg) {
    CsvWriter csv(fs::path(o.out_dir) / "fig4-cluster-scaling.csv");
    QuadratureSpec q = quad_from(o);
    auto dg = cfg.digest();
    const double eta = 0.6;
    {
        SimPlan p = plan_from(o, eta, 1.0);
        p.scenario = Scenario::SingleCellProcessing;
        auto r = run(p, cfg);
        csv.row("fig4-cluster-scaling", "single-cell", 1.0, r.per_bs_rate, r.ci95,
                "monte-carlo", o.seed, dg);
    }
    for (int bbar = 2; bbar <= 10; bbar += 2) {
        if (o.method != "montecarlo") {
            auto p = AnalyticParams::from(cfg, eta, bbar);
            csv.row("fig4-cluster-scaling", "analytic", bbar,
                    per_bs_ergodic_sum_rate(p, q).value, 0.0, "analytic", o.seed, dg);
        }
        if (o.method != "analytic") {
            for (auto bsm : {BsCountModel::Poisson, BsCountModel::FixedPerCluster}) {
                for (auto assoc : {Association::LocationBased, Association::ChannelBased}) {
                    SimPlan p = plan_from(o, eta, bbar);
                    p.bs_count_model = bsm;
                    p.association = assoc;
                    auto r = run(p, cfg);
                    std::string curve =
                        std::string(bsm == BsCountModel::Poisson ? "poisson" : "fixed") + "-" +
                        (assoc == Association::LocationBased ? "location" : "channel");
                    csv.row("fig4-cluster-scaling", curve, bbar, r.per_bs_rate, r.ci95,
                            "monte-carlo", o.seed, dg);
                }
            }
        }
    }
    write_manifest(o, cfg, {"fig4-cluster-scaling.csv"});
    return 0;
}

int run_fig5(const CliOptions& o, const SystemConfig& cfg) {
    CsvWriter csv(fs::path(o.out_dir) / "fig5-isolated-comparison.csv");
    QuadratureSpec q = quad_from(o);
    auto dg = cfg.digest();
    const double eta = 0.6;
    double iso_cell = isolated_cell_per_bs_rate(cfg, eta);
    csv.row("fig5-isolated-comparison", "isolated-cell", 1.0, iso_cell, 0.0, "analytic",
            o.seed, dg);
    for (double bbar : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0, 2000.0}) {
        auto p = AnalyticParams::from(cfg, eta, bbar);
        csv.row("fig5-isolated-comparison", "clustered", bbar,
                per_bs_ergodic_sum_rate(p, q).value, 0.0, "analytic", o.seed, dg);
        p.include_interference = false;
        csv.row("fig5-isolated-comparison", "isolated-cluster", bbar,
                per_bs_ergodic_sum_rate(p, q).value, 0.0, "analytic", o.seed, dg);
    }
    write_manifest(o, cfg, {"fig5-isolated-comparison.csv"});
    return 0;
}

int run_cdf(const CliOptions& o, const SystemConfig& cfg) {
    CsvWriter csv(fs::path(o.out_dir) / "cdf-user-rates.csv");
    auto dg = cfg.digest();
    auto emit = [&](const std::string& curve, std::vector<double> samples) {
        std::sort(samples.begin(), samples.end());
        int n = static_cast<int>(samples.size());
        for (int i = 0; i < n; ++i)
            csv.row("cdf-user-rates", curve, samples[i], (i + 1.0) / n, 0.0, "monte-carlo",
                    o.seed, dg);
    };
    for (double bbar : {4.0, 16.0}) {
        SimPlan p = plan_from(o, 0.6, bbar);
        auto r = user_rate_cdf(p, cfg);
        char curve[64];
        std::snprintf(curve, sizeof(curve), "network-mimo-Bbar=%g", bbar);
        emit(curve, r.user_rate_samples);
    }
    {
        SimPlan p = plan_from(o, 0.6, 1.0);
        p.scenario = Scenario::SingleCellProcessing;
        auto r = user_rate_cdf(p, cfg);
        emit("single-cell", r.user_rate_samples);
    }
    write_manifest(o, cfg, {"cdf-user-rates.csv"});
    return 0;
}

int run_validate(const CliOptions& o, const SystemConfig& cfg) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    // Moment matching preserves mean and variance.
    {
        GammaParams m = moment_match({{1.0, 1.0}, {2.0, 3.0}});
        check("moment-match mean/variance",
              std::abs(m.mean() - 7.0) < 1e-12 && std::abs(m.variance() - 19.0) < 1e-12);
    }
    // Shape deficiency bound.
    {
        GammaParams g = intended_channel_params({0.9, 0.1}, cfg.antennas);
        GammaParams e = intended_channel_params({0.5, 0.5}, cfg.antennas);
        check("shape bound k <= MB", g.shape < 2.0 * cfg.antennas &&
                                         std::abs(e.shape - 2.0 * cfg.antennas) < 1e-9);
    }
    // ZF orthogonality on a random instance.
    {
        Rng rng(o.seed);
        std::vector<Eigen::VectorXcd> G(3);
        for (auto& g : G) g = sample_fading(10, rng);
        BeamSet bs = zf_beams(G, 10);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                if (k != i)
                    worst = std::max(worst, std::norm(G[k].dot(bs.beams.col(i))) /
                                                G[k].squaredNorm());
        check("zf orthogonality < 1e-12", worst < 1e-12);
    }
    // 2F1 vs direct radial quadrature.
    {
        double alpha = cfg.alpha;
        double a = 2.5, u0 = 3.0, arg = 7.0;
        double lhs = hyp2f1_ratio_m1(a, -2.0 / alpha, -arg * std::pow(u0, -alpha));
        auto f = [&](double t) {
            return -std::expm1(-a * std::log1p(arg * std::pow(t, -alpha))) * t;
        };
        double rhs = 2.0 / (u0 * u0) * integrate(f, u0, 1e6, 1e-9, 1e-16);
        check("2F1 vs quadrature 1e-6", std::abs(lhs - rhs) < 1e-6 * std::abs(rhs));
    }
    // Logarithm as an exponential-kernel integral.
    {
        bool ok = true;
        for (double x : {0.1, 1.0, 10.0}) {
            auto f = [&](double t) {
                double z = std::exp(t);
                return std::exp(-z) * (-std::expm1(-x * z));
            };
            double v = integrate(f, -40.0, 5.0, 1e-10, 1e-16);
            ok = ok && std::abs(v - std::log1p(x)) < 1e-8;
        }
        check("log-integral identity 1e-8", ok);
    }
    // The asymptotic bound collapses to zero when fully loaded.
    {
        auto p = AnalyticParams::from(cfg, 1.0, 4.0);
        check("asymptotic bound zero at eta=1", asymptotic_upper_bound(p) == 0.0);
    }
    std::cout << (failures == 0 ? "validate: all checks passed\n"
                                : "validate: FAILURES\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered network MIMO rate engine: analytic evaluation and Monte Carlo simulation"};
    CliOptions o;
    app.add_option("--experiment", o.experiment,
                   "fig2-eta-cluster-sweep | fig3-eta-sweep | fig-scheduling-rzf | "
                   "fig4-cluster-scaling | fig5-isolated-comparison | cdf-user-rates | validate")
        ->required();
    app.add_option("--config", o.config_path, "key=value config file (defaults otherwise)");
    app.add_option("--seed", o.seed, "master RNG seed");
    app.add_option("--method", o.method, "analytic | montecarlo | both")
        ->check(CLI::IsMember({"analytic", "montecarlo", "both"}));
    app.add_option("--out-dir", o.out_dir, "output directory");
    app.add_option("--topologies", o.topologies, "Monte Carlo spatial topologies");
    app.add_option("--fading", o.fading, "fading realizations per topology");
    app.add_option("--quad-tol", o.quad_tol, "relative tolerance of the rate quadrature");
    app.add_option("--workers", o.workers, "worker threads for Monte Carlo");
    CLI11_PARSE(app, argc, argv);

    try {
        SystemConfig cfg = o.config_path.empty() ? SystemConfig{} : load_config(o.config_path);
        cfg.validate();
        fs::create_directories(o.out_dir);
        if (o.experiment == "fig2-eta-cluster-sweep") return run_fig2(o, cfg);
        if (o.experiment == "fig3-eta-sweep") return run_fig3(o, cfg);
        if (o.experiment == "fig-scheduling-rzf") return run_fig_scheduling(o, cfg);
        if (o.experiment == "fig4-cluster-scaling") return run_fig4(o, cfg);
        if (o.experiment == "fig5-isolated-comparison") return run_fig5(o, cfg);
        if (o.experiment == "cdf-user-rates") return run_cdf(o, cfg);
        if (o.experiment == "validate") return run_validate(o, cfg);
        std::cerr << "unknown experiment: " << o.experiment << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
