#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "netmimo/rng.hpp"

namespace netmimo {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

struct Rect {
    double xmin, ymin, xmax, ymax;
    double area() const { return (xmax - xmin) * (ymax - ymin); }
};

// Pointy-top hexagonal lattice tiling the plane; the first `1+3L(L+1)`
// hexagons (L rings around the origin) form the modeled region.
class HexLattice {
  public:
    HexLattice() = default;
    HexLattice(double cell_area, int layers);

    double cell_area() const { return cell_area_; }
    double side() const { return side_; }  // hexagon circumradius
    int layers() const { return layers_; }
    int count() const { return static_cast<int>(centers_.size()); }
    const std::vector<Point2D>& centers() const { return centers_; }
    int center_index() const { return center_index_; }

    // Index of the hexagon containing p, or nullopt outside the region.
    // Boundary points go to the lexicographically smallest center.
    std::optional<int> cluster_of(const Point2D& p) const;

    bool inside_hex(int idx, const Point2D& p) const;
    Point2D sample_in_hex(int idx, Rng& rng) const;

    // Tessellation bounding box, optionally padded.
    Rect bounding_box(double pad = 0.0) const;

  private:
    double cell_area_ = 0.0;
    double side_ = 0.0;
    int layers_ = 0;
    std::vector<Point2D> centers_;
    std::vector<std::pair<int, int>> axial_;  // (q, r) per center
    std::map<std::pair<int, int>, int> index_of_axial_;
    int center_index_ = 0;
};

struct ClusterGeometry {
    double radius = 0.0;     // R_c, equal-area circular radius
    double avg_bs_count = 0; // B-bar
};

struct Topology {
    std::vector<Point2D> bs_points;
    std::vector<int> cluster_of_bs;               // parallel to bs_points
    std::vector<std::vector<int>> bs_of_cluster;  // cluster -> BS indices
    HexLattice lattice;
};

// Homogeneous PPP: Poisson count, i.i.d. uniform positions.
std::vector<Point2D> sample_ppp(double density, const Rect& window, Rng& rng);

HexLattice build_hex_lattice(double avg_cluster_size, double density, int layers);

// R_c = sqrt(Bbar / (lambda * pi))
double cluster_radius(double avg_cluster_size, double density);

// Distance from a user at offset d from the cluster center to the circular
// cluster boundary along direction theta.
double boundary_distance(double d, double theta, double R_c);

// Inverse-CDF draw from f(d) = 2 d / R_c^2 on [0, R_c].
double sample_user_distance(double R_c, Rng& rng);

}  // namespace netmimo
