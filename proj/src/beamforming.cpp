#include "netmimo/beamforming.hpp"

#include <cmath>

namespace netmimo {

namespace {

Eigen::MatrixXcd normalized_matrix(const std::vector<Eigen::VectorXcd>& channels, int dim) {
    const int K = static_cast<int>(channels.size());
    Eigen::MatrixXcd G(dim, K);
    for (int i = 0; i < K; ++i) {
        double n = channels[i].norm();
        if (n == 0.0) throw DegenerateChannelError("zero channel vector");
        G.col(i) = channels[i] / n;
    }
    return G;
}

}  // namespace

BeamSet zf_beams(const std::vector<Eigen::VectorXcd>& channels, int dim,
                 double per_beam_power) {
    const int K = static_cast<int>(channels.size());
    if (K > dim) throw std::invalid_argument("zf_beams: K must be <= MB");
    Eigen::MatrixXcd G = normalized_matrix(channels, dim);
    BeamSet bs;
    bs.beams.resize(dim, K);
    bs.per_beam_power = per_beam_power;
    for (int i = 0; i < K; ++i) {
        Eigen::VectorXcd w = G.col(i);
        if (K > 1) {
            Eigen::MatrixXcd Gm(dim, K - 1);
            int c = 0;
            for (int k = 0; k < K; ++k)
                if (k != i) Gm.col(c++) = G.col(k);
            // Orthonormal basis of span(G_{-i}); project out.
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Gm);
            Eigen::MatrixXcd Q =
                qr.householderQ() * Eigen::MatrixXcd::Identity(dim, K - 1);
            w -= Q * (Q.adjoint() * w);
        }
        double n = w.norm();
        if (n < 1e-10) throw DegenerateChannelError("rank-deficient co-user channel matrix");
        bs.beams.col(i) = w / n;
    }
    return bs;
}

BeamSet zf_beams_pinv(const std::vector<Eigen::VectorXcd>& channels, int dim,
                      double per_beam_power) {
    const int K = static_cast<int>(channels.size());
    if (K > dim) throw std::invalid_argument("zf_beams_pinv: K must be <= MB");
    Eigen::MatrixXcd G = normalized_matrix(channels, dim);
    Eigen::MatrixXcd gram = G.adjoint() * G;
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    if (ldlt.info() != Eigen::Success)
        throw DegenerateChannelError("singular Gram matrix");
    Eigen::MatrixXcd W = G * ldlt.solve(Eigen::MatrixXcd::Identity(K, K));
    BeamSet bs;
    bs.beams.resize(dim, K);
    bs.per_beam_power = per_beam_power;
    for (int i = 0; i < K; ++i) {
        double n = W.col(i).norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw DegenerateChannelError("rank-deficient channel matrix");
        bs.beams.col(i) = W.col(i) / n;
    }
    return bs;
}

BeamSet rzf_beams(const std::vector<Eigen::VectorXcd>& channels, int dim, double reg,
                  double per_beam_power) {
    const int K = static_cast<int>(channels.size());
    if (K > dim) throw std::invalid_argument("rzf_beams: K must be <= MB");
    Eigen::MatrixXcd G(dim, K);
    for (int i = 0; i < K; ++i) G.col(i) = channels[i];
    Eigen::MatrixXcd gram = G.adjoint() * G;
    gram += reg * Eigen::MatrixXcd::Identity(K, K);
    Eigen::MatrixXcd W = G * gram.ldlt().solve(Eigen::MatrixXcd::Identity(K, K));
    BeamSet bs;
    bs.beams.resize(dim, K);
    bs.per_beam_power = per_beam_power;
    for (int i = 0; i < K; ++i) bs.beams.col(i) = W.col(i) / W.col(i).norm();
    return bs;
}

SinrSample sinr(const Eigen::VectorXcd& user_channel, const Eigen::VectorXcd& own_beam,
                double own_power_watts,
                const std::vector<std::pair<Eigen::VectorXcd, const BeamSet*>>& interferers,
                double noise_watts, double gap_linear) {
    SinrSample s;
    double g = std::norm(user_channel.dot(own_beam));
    s.signal_power = own_power_watts * g / noise_watts;
    for (const auto& [f, beams] : interferers) {
        double acc = 0.0;
        for (int k = 0; k < beams->beams.cols(); ++k)
            acc += std::norm(f.dot(beams->beams.col(k)));
        s.interference_power += beams->per_beam_power * acc / noise_watts;
    }
    s.gamma = s.signal_power / (s.interference_power + 1.0);
    s.rate = std::log2(1.0 + s.gamma / gap_linear);
    return s;
}

}  // namespace netmimo
