#include "netmimo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "netmimo/beamforming.hpp"
#include "netmimo/channel.hpp"

namespace netmimo {

namespace {

struct TopoOut {
    double per_bs_rate = 0.0;
    int redraws = 0;
    std::vector<double> user_rates;  // per-user long-run rates (CDF mode)
};

// Deterministic static partition over topology indices; results land in a
// vector ordered by index regardless of worker count.
template <typename Fn>
std::vector<TopoOut> parallel_topologies(int n, int workers, Fn fn) {
    std::vector<TopoOut> out(n);
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

int scheduled_users(double eta, int antennas, int bs_count, bool is_center) {
    if (bs_count <= 0) return 0;
    int k = static_cast<int>(std::lround(eta * antennas * bs_count));
    k = std::min(k, antennas * bs_count);
    if (is_center) k = std::max(1, k);
    return k;
}

struct ClusterState {
    std::vector<Point2D> users;
    std::vector<Eigen::VectorXcd> users_channels;
    BeamSet beams;
    bool active = false;
};

// One fading slot of the hexagonal-cluster network; returns the center
// cluster's sum rate. `interference` toggles the out-of-cluster terms.
double network_slot(const HexLattice& lattice,
                    const std::vector<std::vector<Point2D>>& cluster_bs,
                    const SimPlan& plan, const SystemConfig& cfg, Rng& rng,
                    bool interference, std::vector<double>* user_rates_out) {
    const int M = cfg.antennas;
    const double P_T = cfg.tx_power_watts();
    const double noise = cfg.noise_watts();
    const double gap = cfg.snr_gap_linear();
    const PathLossParams pl{cfg.d_o, cfg.alpha};
    const int n_clusters = lattice.count();
    const int center = lattice.center_index();

    std::vector<ClusterState> st(n_clusters);

    // Scheduled-user draw. Location-based association is equivalent to a
    // uniform draw inside each hexagon; channel-based needs a shared pool.
    if (plan.association == Association::LocationBased) {
        for (int j = 0; j < n_clusters; ++j) {
            int B = static_cast<int>(cluster_bs[j].size());
            int K = scheduled_users(plan.eta, M, B, j == center);
            if (K == 0) continue;
            st[j].users.reserve(K);
            for (int k = 0; k < K; ++k) st[j].users.push_back(lattice.sample_in_hex(j, rng));
        }
    } else {
        Topology topo;
        topo.lattice = lattice;
        topo.bs_of_cluster = {};
        for (int j = 0; j < n_clusters; ++j) {
            for (const auto& p : cluster_bs[j]) {
                topo.bs_points.push_back(p);
                topo.cluster_of_bs.push_back(j);
            }
        }
        int total_k = 0;
        std::vector<int> want(n_clusters);
        for (int j = 0; j < n_clusters; ++j) {
            want[j] = scheduled_users(plan.eta, M, static_cast<int>(cluster_bs[j].size()),
                                      j == center);
            total_k += want[j];
        }
        // Oversampled pool; each cluster schedules the first K_j associated.
        Rect box = lattice.bounding_box();
        int pool = 3 * std::max(total_k, 1);
        std::vector<Point2D> cand(pool);
        for (auto& u : cand) {
            do {
                u = {rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax)};
            } while (!lattice.cluster_of(u).has_value());
        }
        std::vector<int> assign = associate_users(topo, cand, cfg, plan.association);
        for (int i = 0; i < pool; ++i) {
            int j = assign[i];
            if (j >= 0 && static_cast<int>(st[j].users.size()) < want[j])
                st[j].users.push_back(cand[i]);
        }
    }

    // Beams per active cluster.
    for (int j = 0; j < n_clusters; ++j) {
        int B = static_cast<int>(cluster_bs[j].size());
        int K = static_cast<int>(st[j].users.size());
        if (B == 0 || K == 0) continue;
        std::vector<Eigen::VectorXcd> G(K);
        for (int k = 0; k < K; ++k)
            G[k] = composite_channel(st[j].users[k], cluster_bs[j], M, pl, rng).coeffs;
        double pw = B * P_T / K;
        for (int attempt = 0;; ++attempt) {
            try {
                if (plan.beamformer == Beamformer::Zf)
                    st[j].beams = zf_beams(G, M * B, pw);
                else
                    st[j].beams = rzf_beams(G, M * B, 1.0 / cfg.snr_rho(plan.eta), pw);
                break;
            } catch (const DegenerateChannelError&) {
                if (attempt >= 8) throw;
                for (int k = 0; k < K; ++k)
                    G[k] = composite_channel(st[j].users[k], cluster_bs[j], M, pl, rng).coeffs;
            }
        }
        st[j].active = true;
        // Keep the users' own channels: user k's intended channel is G[k].
        st[j].users_channels = std::move(G);
    }

    if (!st[center].active) return 0.0;

    double sum_rate = 0.0;
    const int Kc = static_cast<int>(st[center].users.size());
    for (int i = 0; i < Kc; ++i) {
        double sig = st[center].beams.per_beam_power *
                     std::norm(st[center].users_channels[i].dot(st[center].beams.beams.col(i))) /
                     noise;
        double intf = 0.0;
        if (interference) {
            for (int j = 0; j < n_clusters; ++j) {
                if (j == center || !st[j].active) continue;
                Eigen::VectorXcd f =
                    composite_channel(st[center].users[i], cluster_bs[j], M, pl, rng).coeffs;
                double acc = 0.0;
                for (int k = 0; k < st[j].beams.beams.cols(); ++k)
                    acc += std::norm(f.dot(st[j].beams.beams.col(k)));
                intf += st[j].beams.per_beam_power * acc / noise;
            }
        }
        double gamma = sig / (intf + 1.0);
        double rate = std::log2(1.0 + gamma / gap);
        sum_rate += rate;
        if (user_rates_out) user_rates_out->push_back(rate);
    }
    return sum_rate;
}

std::vector<std::vector<Point2D>> place_bs(const HexLattice& lattice, const SimPlan& plan,
                                           const SystemConfig& cfg, Rng& rng) {
    const int n = lattice.count();
    std::vector<std::vector<Point2D>> cluster_bs(n);
    if (plan.bs_count_model == BsCountModel::Poisson) {
        Rect window = lattice.bounding_box(lattice.side());
        auto pts = sample_ppp(cfg.lambda, window, rng);
        for (const auto& p : pts) {
            auto c = lattice.cluster_of(p);
            if (c) cluster_bs[*c].push_back(p);
        }
    } else {
        int per = std::max(1, static_cast<int>(std::lround(plan.avg_bs_count)));
        for (int j = 0; j < n; ++j)
            for (int b = 0; b < per; ++b)
                cluster_bs[j].push_back(lattice.sample_in_hex(j, rng));
    }
    return cluster_bs;
}

TopoOut run_network_topology(const SimPlan& plan, const SystemConfig& cfg, int topo_idx,
                             bool interference) {
    HexLattice lattice =
        build_hex_lattice(plan.avg_bs_count, cfg.lambda, plan.layers);
    TopoOut out;
    std::vector<std::vector<Point2D>> cluster_bs;
    int attempt = 0;
    for (;; ++attempt) {
        if (attempt > 1000) throw std::runtime_error("could not draw a non-empty center cluster");
        Rng rng = Rng::substream(plan.seed, topo_idx, attempt, 0);
        cluster_bs = place_bs(lattice, plan, cfg, rng);
        if (!cluster_bs[lattice.center_index()].empty()) break;
        ++out.redraws;
    }
    double acc = 0.0;
    int Bc = static_cast<int>(cluster_bs[lattice.center_index()].size());
    for (int slot = 0; slot < plan.n_fading; ++slot) {
        Rng rng = Rng::substream(plan.seed, topo_idx, attempt, slot + 1);
        acc += network_slot(lattice, cluster_bs, plan, cfg, rng, interference, nullptr);
    }
    out.per_bs_rate = acc / (plan.n_fading * Bc);
    // Redrawing empty centers samples the conditional law. The per-topology
    // statistic is exactly zero on the empty event, so scaling by the void
    // complement 1 - e^(-Bbar) restores the unconditional mean that the
    // closed-form rate expression targets.
    if (plan.bs_count_model == BsCountModel::Poisson)
        out.per_bs_rate *= -std::expm1(-plan.avg_bs_count);
    return out;
}

TopoOut run_isolated_cell_topology(const SimPlan& plan, const SystemConfig& cfg,
                                   int topo_idx) {
    const int M = cfg.antennas;
    const int K = std::max(1, static_cast<int>(std::lround(plan.eta * M)));
    const double R1 = std::sqrt(1.0 / (cfg.lambda * M_PI));
    const double noise = cfg.noise_watts();
    const double gap = cfg.snr_gap_linear();
    const double pw = cfg.tx_power_watts() / K;
    const PathLossParams pl{cfg.d_o, cfg.alpha};
    const std::vector<Point2D> bs{{0.0, 0.0}};

    TopoOut out;
    double acc = 0.0;
    for (int slot = 0; slot < plan.n_fading; ++slot) {
        Rng rng = Rng::substream(plan.seed, topo_idx, 0, slot + 1);
        std::vector<Eigen::VectorXcd> G(K);
        std::vector<Point2D> users(K);
        for (int k = 0; k < K; ++k) {
            double d = sample_user_distance(R1, rng);
            double th = rng.uniform(0.0, 2.0 * M_PI);
            users[k] = {d * std::cos(th), d * std::sin(th)};
            G[k] = composite_channel(users[k], bs, M, pl, rng).coeffs;
        }
        BeamSet beams = zf_beams(G, M, pw);
        for (int k = 0; k < K; ++k) {
            double sig = pw * std::norm(G[k].dot(beams.beams.col(k))) / noise;
            acc += std::log2(1.0 + sig / gap);
        }
    }
    out.per_bs_rate = acc / plan.n_fading;
    return out;
}

TopoOut run_single_cell_topology(const SimPlan& plan, const SystemConfig& cfg, int topo_idx,
                                 std::vector<double>* user_rates_out) {
    const int M = cfg.antennas;
    const int K = std::max(1, static_cast<int>(std::lround(plan.eta * M)));
    const double noise = cfg.noise_watts();
    const double gap = cfg.snr_gap_linear();
    const double pw = cfg.tx_power_watts() / K;
    const PathLossParams pl{cfg.d_o, cfg.alpha};
    const double R1 = std::sqrt(1.0 / (cfg.lambda * M_PI));
    const double hw = 7.0 * R1;
    const Rect window{-hw, -hw, hw, hw};

    TopoOut out;
    std::vector<Point2D> bs;
    int attempt = 0;
    for (;; ++attempt) {
        if (attempt > 1000) throw std::runtime_error("empty single-cell topology");
        Rng rng = Rng::substream(plan.seed, topo_idx, attempt, 0);
        bs = sample_ppp(cfg.lambda, window, rng);
        if (bs.size() >= 2) break;
        ++out.redraws;
    }
    const int nbs = static_cast<int>(bs.size());
    int meas = 0;
    for (int b = 1; b < nbs; ++b)
        if (std::hypot(bs[b].x, bs[b].y) < std::hypot(bs[meas].x, bs[meas].y)) meas = b;

    auto nearest = [&](const Point2D& p) {
        int best = 0;
        double bd = std::hypot(p.x - bs[0].x, p.y - bs[0].y);
        for (int b = 1; b < nbs; ++b) {
            double d = std::hypot(p.x - bs[b].x, p.y - bs[b].y);
            if (d < bd) {
                bd = d;
                best = b;
            }
        }
        return best;
    };

    double acc = 0.0;
    for (int slot = 0; slot < plan.n_fading; ++slot) {
        Rng rng = Rng::substream(plan.seed, topo_idx, attempt, slot + 1);
        // Users uniform in each BS's nearest-BS cell (local rejection draw).
        std::vector<std::vector<Point2D>> users(nbs);
        std::vector<BeamSet> beams(nbs);
        std::vector<std::vector<Eigen::VectorXcd>> chans(nbs);
        for (int b = 0; b < nbs; ++b) {
            for (int k = 0; k < K; ++k) {
                Point2D u{};
                bool found = false;
                for (int tries = 0; tries < 400; ++tries) {
                    double d = 3.0 * R1 * std::sqrt(rng.uniform());
                    double th = rng.uniform(0.0, 2.0 * M_PI);
                    u = {bs[b].x + d * std::cos(th), bs[b].y + d * std::sin(th)};
                    if (nearest(u) == b) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    double d = R1 * std::sqrt(rng.uniform());
                    double th = rng.uniform(0.0, 2.0 * M_PI);
                    u = {bs[b].x + d * std::cos(th), bs[b].y + d * std::sin(th)};
                }
                users[b].push_back(u);
            }
            chans[b].resize(K);
            std::vector<Point2D> own{bs[b]};
            for (int k = 0; k < K; ++k)
                chans[b][k] = composite_channel(users[b][k], own, M, pl, rng).coeffs;
            beams[b] = zf_beams(chans[b], M, pw);
        }
        for (int k = 0; k < K; ++k) {
            double sig = pw * std::norm(chans[meas][k].dot(beams[meas].beams.col(k))) / noise;
            double intf = 0.0;
            std::vector<Point2D> other(1);
            for (int b = 0; b < nbs; ++b) {
                if (b == meas) continue;
                other[0] = bs[b];
                Eigen::VectorXcd f =
                    composite_channel(users[meas][k], other, M, pl, rng).coeffs;
                double a2 = 0.0;
                for (int j = 0; j < K; ++j) a2 += std::norm(f.dot(beams[b].beams.col(j)));
                intf += pw * a2 / noise;
            }
            double rate = std::log2(1.0 + sig / (intf + 1.0) / gap);
            acc += rate;
            if (user_rates_out) user_rates_out->push_back(rate);
        }
    }
    out.per_bs_rate = acc / plan.n_fading;
    return out;
}

SimResult reduce(const std::vector<TopoOut>& outs) {
    SimResult r;
    r.per_topology_rates.reserve(outs.size());
    for (const auto& o : outs) {
        r.per_topology_rates.push_back(o.per_bs_rate);
        r.redraw_count += o.redraws;
    }
    int n = static_cast<int>(outs.size());
    double mean = std::accumulate(r.per_topology_rates.begin(), r.per_topology_rates.end(), 0.0) / n;
    double var = 0.0;
    for (double x : r.per_topology_rates) var += (x - mean) * (x - mean);
    var = n > 1 ? var / (n - 1) : 0.0;
    r.per_bs_rate = mean;
    r.ci95 = n > 1 ? 1.96 * std::sqrt(var / n) : 0.0;
    return r;
}

}  // namespace

SimResult run(const SimPlan& plan, const SystemConfig& cfg) {
    if (plan.n_topologies < 1 || plan.n_fading < 1)
        throw std::invalid_argument("simulation counts must be >= 1");
    cfg.validate();
    SimPlan p = plan;
    if (p.scenario == Scenario::IsolatedCluster) p.layers = 0;
    auto outs = parallel_topologies(p.n_topologies, p.workers, [&](int i) {
        switch (p.scenario) {
            case Scenario::IsolatedCell:
                return run_isolated_cell_topology(p, cfg, i);
            case Scenario::SingleCellProcessing:
                return run_single_cell_topology(p, cfg, i, nullptr);
            case Scenario::IsolatedCluster:
                return run_network_topology(p, cfg, i, /*interference=*/false);
            case Scenario::FullNetwork:
            default:
                return run_network_topology(p, cfg, i, /*interference=*/true);
        }
    });
    return reduce(outs);
}

std::vector<int> associate_users(const Topology& topo, const std::vector<Point2D>& users,
                                 const SystemConfig& cfg, Association mode) {
    const int n_clusters = topo.lattice.count();
    const PathLossParams pl{cfg.d_o, cfg.alpha};
    std::vector<int> out(users.size(), -1);
    for (std::size_t i = 0; i < users.size(); ++i) {
        auto loc = topo.lattice.cluster_of(users[i]);
        if (mode == Association::LocationBased) {
            out[i] = loc.value_or(-1);
            continue;
        }
        std::vector<double> score(n_clusters, 0.0);
        for (std::size_t b = 0; b < topo.bs_points.size(); ++b) {
            double r = std::hypot(users[i].x - topo.bs_points[b].x,
                                  users[i].y - topo.bs_points[b].y);
            score[topo.cluster_of_bs[b]] += path_loss(r, pl);
        }
        int best = loc.value_or(0);
        for (int j = 0; j < n_clusters; ++j)
            if (score[j] > score[best]) best = j;
        out[i] = best;
    }
    return out;
}

PowerSamples collect_power_samples(const std::vector<double>& signal_pathlosses,
                                   const std::vector<double>& interferer_pathlosses,
                                   int antennas, double eta, int n_samples,
                                   std::uint64_t seed) {
    const int B = static_cast<int>(signal_pathlosses.size());
    const int Bj = static_cast<int>(interferer_pathlosses.size());
    const int MB = antennas * B;
    const int K = std::max(1, static_cast<int>(std::lround(eta * MB)));
    const int MBj = antennas * Bj;
    const int Kj = std::max(1, static_cast<int>(std::lround(eta * MBj)));

    PowerSamples ps;
    ps.signal_params =
        signal_power_params(intended_channel_params(signal_pathlosses, antennas), antennas, B, eta);
    ps.interference_params = interference_beam_power_params(
        interference_channel_params(interferer_pathlosses, antennas), antennas, Bj);
    ps.signal.reserve(n_samples);
    ps.interference.reserve(n_samples);

    Rng rng = Rng::substream(seed, 0x9011ULL, 0, 0);
    auto scaled_channel = [&](const std::vector<double>& betas) {
        Eigen::VectorXcd g(antennas * betas.size());
        for (std::size_t b = 0; b < betas.size(); ++b)
            g.segment(b * antennas, antennas) =
                std::sqrt(betas[b]) * sample_fading(antennas, rng);
        return g;
    };

    for (int s = 0; s < n_samples; ++s) {
        // Signal side: user 0 measured.
        std::vector<Eigen::VectorXcd> G(K);
        for (int k = 0; k < K; ++k) G[k] = scaled_channel(signal_pathlosses);
        BeamSet beams = zf_beams(G, MB, 1.0);
        ps.signal.push_back(std::norm(G[0].dot(beams.beams.col(0))));

        // Interference side: one beam of an independently loaded cluster.
        std::vector<Eigen::VectorXcd> Gj(Kj);
        for (int k = 0; k < Kj; ++k) Gj[k] = scaled_channel(interferer_pathlosses);
        BeamSet bj = zf_beams(Gj, MBj, 1.0);
        Eigen::VectorXcd f = scaled_channel(interferer_pathlosses);
        ps.interference.push_back(std::norm(f.dot(bj.beams.col(0))));
    }
    return ps;
}

SimResult user_rate_cdf(const SimPlan& plan, const SystemConfig& cfg) {
    cfg.validate();
    if (plan.scenario == Scenario::SingleCellProcessing) {
        auto outs = parallel_topologies(plan.n_topologies, plan.workers, [&](int i) {
            TopoOut o;
            o = run_single_cell_topology(plan, cfg, i, &o.user_rates);
            return o;
        });
        SimResult r = reduce(outs);
        // Long-run rates: each user is scheduled every slot in this baseline.
        for (auto& o : outs)
            for (double x : o.user_rates) r.user_rate_samples.push_back(x / plan.n_fading);
        return r;
    }

    const int M = cfg.antennas;
    auto outs = parallel_topologies(plan.n_topologies, plan.workers, [&](int topo_idx) {
        HexLattice lattice = build_hex_lattice(plan.avg_bs_count, cfg.lambda, plan.layers);
        const int center = lattice.center_index();
        TopoOut out;
        std::vector<std::vector<Point2D>> cluster_bs;
        int attempt = 0;
        for (;; ++attempt) {
            Rng rng = Rng::substream(plan.seed, topo_idx, attempt, 0);
            cluster_bs = place_bs(lattice, plan, cfg, rng);
            if (!cluster_bs[center].empty()) break;
            ++out.redraws;
        }
        // Persistent pool at user_density_mult * lambda over the region.
        Rng rng_pool = Rng::substream(plan.seed, topo_idx, attempt, 0x5eed);
        Rect box = lattice.bounding_box();
        int n_pool = rng_pool.poisson(plan.user_density_mult * cfg.lambda *
                                      lattice.cell_area() * lattice.count());
        Topology topo;
        topo.lattice = lattice;
        for (int j = 0; j < lattice.count(); ++j)
            for (const auto& p : cluster_bs[j]) {
                topo.bs_points.push_back(p);
                topo.cluster_of_bs.push_back(j);
            }
        std::vector<Point2D> pool;
        pool.reserve(n_pool);
        while (static_cast<int>(pool.size()) < n_pool) {
            Point2D u{rng_pool.uniform(box.xmin, box.xmax), rng_pool.uniform(box.ymin, box.ymax)};
            if (lattice.cluster_of(u)) pool.push_back(u);
        }
        std::vector<int> assign = associate_users(topo, pool, cfg, plan.association);
        std::vector<std::vector<int>> members(lattice.count());
        for (int i = 0; i < n_pool; ++i)
            if (assign[i] >= 0) members[assign[i]].push_back(i);

        std::vector<double> accum(n_pool, 0.0);
        std::vector<int> rr_cursor(lattice.count(), 0);
        const double P_T = cfg.tx_power_watts();
        const double noise = cfg.noise_watts();
        const double gap = cfg.snr_gap_linear();
        const PathLossParams pl{cfg.d_o, cfg.alpha};

        for (int slot = 0; slot < plan.n_fading; ++slot) {
            Rng rng = Rng::substream(plan.seed, topo_idx, attempt, slot + 1);
            // Round-robin schedule per cluster.
            std::vector<ClusterState> st(lattice.count());
            std::vector<std::vector<int>> sched_ids(lattice.count());
            for (int j = 0; j < lattice.count(); ++j) {
                int B = static_cast<int>(cluster_bs[j].size());
                int K = scheduled_users(plan.eta, M, B, j == center);
                K = std::min<int>(K, members[j].size());
                for (int k = 0; k < K; ++k) {
                    int uid = members[j][rr_cursor[j] % members[j].size()];
                    rr_cursor[j]++;
                    sched_ids[j].push_back(uid);
                    st[j].users.push_back(pool[uid]);
                }
            }
            for (int j = 0; j < lattice.count(); ++j) {
                int B = static_cast<int>(cluster_bs[j].size());
                int K = static_cast<int>(st[j].users.size());
                if (B == 0 || K == 0) continue;
                st[j].users_channels.resize(K);
                for (int k = 0; k < K; ++k)
                    st[j].users_channels[k] =
                        composite_channel(st[j].users[k], cluster_bs[j], M, pl, rng).coeffs;
                st[j].beams = zf_beams(st[j].users_channels, M * B, B * P_T / K);
                st[j].active = true;
            }
            if (!st[center].active) continue;
            for (std::size_t i = 0; i < st[center].users.size(); ++i) {
                double sig = st[center].beams.per_beam_power *
                             std::norm(st[center].users_channels[i].dot(
                                 st[center].beams.beams.col(i))) /
                             noise;
                double intf = 0.0;
                for (int j = 0; j < lattice.count(); ++j) {
                    if (j == center || !st[j].active) continue;
                    Eigen::VectorXcd f =
                        composite_channel(st[center].users[i], cluster_bs[j], M, pl, rng).coeffs;
                    double a2 = 0.0;
                    for (int k = 0; k < st[j].beams.beams.cols(); ++k)
                        a2 += std::norm(f.dot(st[j].beams.beams.col(k)));
                    intf += st[j].beams.per_beam_power * a2 / noise;
                }
                accum[sched_ids[center][i]] += std::log2(1.0 + sig / (intf + 1.0) / gap);
            }
        }
        for (int uid : members[center]) out.user_rates.push_back(accum[uid] / plan.n_fading);
        int Bc = static_cast<int>(cluster_bs[center].size());
        double total = 0.0;
        for (int uid : members[center]) total += accum[uid] / plan.n_fading;
        out.per_bs_rate = total / Bc;
        return out;
    });
    SimResult r = reduce(outs);
    for (auto& o : outs)
        for (double x : o.user_rates) r.user_rate_samples.push_back(x);
    return r;
}

}  // namespace netmimo
