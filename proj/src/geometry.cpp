#include "netmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netmimo {

namespace {

// Pointy-top lattice: center(q, r) = (sqrt(3) s (q + r/2), 1.5 s r).
Point2D axial_center(int q, int r, double s) {
    return {std::sqrt(3.0) * s * (q + 0.5 * r), 1.5 * s * r};
}

int hex_distance(int q, int r) {
    int x = q, z = r, y = -x - z;
    return (std::abs(x) + std::abs(y) + std::abs(z)) / 2;
}

std::pair<int, int> axial_round(double qf, double rf) {
    double xf = qf, zf = rf, yf = -xf - zf;
    double rx = std::round(xf), ry = std::round(yf), rz = std::round(zf);
    double dx = std::abs(rx - xf), dy = std::abs(ry - yf), dz = std::abs(rz - zf);
    if (dx > dy && dx > dz) rx = -ry - rz;
    else if (dy > dz) ry = -rx - rz;
    else rz = -rx - ry;
    return {static_cast<int>(rx), static_cast<int>(rz)};
}

}  // namespace

HexLattice::HexLattice(double cell_area, int layers)
    : cell_area_(cell_area), layers_(layers) {
    if (!(cell_area > 0.0)) throw std::invalid_argument("hex cell area must be > 0");
    if (layers < 0) throw std::invalid_argument("layers must be >= 0");
    side_ = std::sqrt(cell_area / (1.5 * std::sqrt(3.0)));
    for (int q = -layers; q <= layers; ++q) {
        for (int r = -layers; r <= layers; ++r) {
            if (hex_distance(q, r) > layers) continue;
            axial_.push_back({q, r});
            centers_.push_back(axial_center(q, r, side_));
        }
    }
    for (int i = 0; i < static_cast<int>(axial_.size()); ++i) {
        index_of_axial_[axial_[i]] = i;
        if (axial_[i].first == 0 && axial_[i].second == 0) center_index_ = i;
    }
}

std::optional<int> HexLattice::cluster_of(const Point2D& p) const {
    double qf = (std::sqrt(3.0) / 3.0 * p.x - p.y / 3.0) / side_;
    double rf = (2.0 / 3.0 * p.y) / side_;
    auto [q0, r0] = axial_round(qf, rf);

    // Resolve against the rounded cell and its six neighbors by Euclidean
    // distance; ties go to the lexicographically smallest center.
    static const int dq[7] = {0, 1, 1, 0, -1, -1, 0};
    static const int dr[7] = {0, 0, -1, -1, 0, 1, 1};
    int best_q = q0, best_r = r0;
    double best_d = std::numeric_limits<double>::infinity();
    Point2D best_c{};
    for (int k = 0; k < 7; ++k) {
        int q = q0 + dq[k], r = r0 + dr[k];
        Point2D c = axial_center(q, r, side_);
        double d2 = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
        bool better = d2 < best_d;
        if (d2 == best_d) {
            better = (c.x < best_c.x) || (c.x == best_c.x && c.y < best_c.y);
        }
        if (better) {
            best_d = d2;
            best_q = q;
            best_r = r;
            best_c = c;
        }
    }
    auto it = index_of_axial_.find({best_q, best_r});
    if (it == index_of_axial_.end()) return std::nullopt;
    return it->second;
}

bool HexLattice::inside_hex(int idx, const Point2D& p) const {
    const Point2D& c = centers_.at(idx);
    double x = std::abs(p.x - c.x), y = std::abs(p.y - c.y);
    return x <= std::sqrt(3.0) * side_ / 2.0 + 1e-12 &&
           y <= side_ - x / std::sqrt(3.0) + 1e-12;
}

Point2D HexLattice::sample_in_hex(int idx, Rng& rng) const {
    const Point2D& c = centers_.at(idx);
    double hw = std::sqrt(3.0) * side_ / 2.0;
    for (;;) {
        double x = rng.uniform(-hw, hw);
        double y = rng.uniform(-side_, side_);
        if (std::abs(y) <= side_ - std::abs(x) / std::sqrt(3.0))
            return {c.x + x, c.y + y};
    }
}

Rect HexLattice::bounding_box(double pad) const {
    double hw = std::sqrt(3.0) * side_ / 2.0;
    Rect r{1e300, 1e300, -1e300, -1e300};
    for (const auto& c : centers_) {
        r.xmin = std::min(r.xmin, c.x - hw);
        r.xmax = std::max(r.xmax, c.x + hw);
        r.ymin = std::min(r.ymin, c.y - side_);
        r.ymax = std::max(r.ymax, c.y + side_);
    }
    r.xmin -= pad;
    r.ymin -= pad;
    r.xmax += pad;
    r.ymax += pad;
    return r;
}

std::vector<Point2D> sample_ppp(double density, const Rect& window, Rng& rng) {
    if (!(density > 0.0)) throw std::invalid_argument("PPP density must be > 0");
    if (!(window.area() > 0.0)) throw std::invalid_argument("PPP window must have positive area");
    int n = rng.poisson(density * window.area());
    std::vector<Point2D> pts(n);
    for (auto& p : pts) {
        p.x = rng.uniform(window.xmin, window.xmax);
        p.y = rng.uniform(window.ymin, window.ymax);
    }
    return pts;
}

HexLattice build_hex_lattice(double avg_cluster_size, double density, int layers) {
    if (!(avg_cluster_size >= 1.0)) throw std::invalid_argument("Bbar must be >= 1");
    if (!(density > 0.0)) throw std::invalid_argument("lambda must be > 0");
    return HexLattice(avg_cluster_size / density, layers);
}

double cluster_radius(double avg_cluster_size, double density) {
    if (!(avg_cluster_size >= 1.0)) throw std::invalid_argument("Bbar must be >= 1");
    if (!(density > 0.0)) throw std::invalid_argument("lambda must be > 0");
    return std::sqrt(avg_cluster_size / (density * M_PI));
}

double boundary_distance(double d, double theta, double R_c) {
    if (d < 0.0 || d > R_c) throw std::invalid_argument("boundary_distance requires 0 <= d <= R_c");
    double c = std::cos(theta);
    return std::sqrt(R_c * R_c - d * d * c * c) + d * std::sin(theta);
}

double sample_user_distance(double R_c, Rng& rng) {
    return R_c * std::sqrt(rng.uniform());
}

}  // namespace netmimo
