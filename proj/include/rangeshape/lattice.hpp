#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rangeshape/geom.hpp"

namespace rangeshape {

// Finite subset of Z^2 with cached membership grid and lazily built
// boundary structures. Sites are kept in row-major order (by y, then x).
class LatticeSet {
  public:
    LatticeSet() = default;
    explicit LatticeSet(std::vector<Pt> sites);

    static LatticeSet rectangle(int w, int h, Pt corner = {0, 0});

    const std::vector<Pt>& sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }
    const Box& bbox() const { return bbox_; }

    bool contains(Pt p) const {
        if (!bbox_.contains(p)) return false;
        return grid_[cell(p)] >= 0;
    }
    // index into sites(), or -1
    int index_of(Pt p) const {
        if (!bbox_.contains(p)) return -1;
        return grid_[cell(p)];
    }

    bool is_connected() const;
    bool complement_connected() const;
    // member of the admissible family: connected, co-connected, contains 0
    bool in_admissible_family() const;

    LatticeSet translated(Pt z) const;

    friend bool operator==(const LatticeSet& a, const LatticeSet& b) { return a.sites_ == b.sites_; }

  private:
    std::size_t cell(Pt p) const {
        return std::size_t(p.y - bbox_.y0) * bbox_.width() + (p.x - bbox_.x0);
    }

    std::vector<Pt> sites_;
    Box bbox_;
    std::vector<int> grid_;  // site index or -1, bbox-local
};

// Open dual path; vertex (i,j) stands for the plane point (i+1/2, j+1/2).
// For closed paths the first vertex is not repeated at the end.
struct DualPath {
    std::vector<Pt> vertices;
    bool closed = false;

    std::size_t edge_count() const {
        if (vertices.size() < 2) return 0;
        return closed ? vertices.size() : vertices.size() - 1;
    }
    // primal edges crossed, in traversal order
    std::vector<Edge> crossed_edges() const;
    bool is_nearest_neighbor_path() const;
    bool is_self_avoiding() const;
};

// primal edge crossed by the dual step a -> b (a,b dual nearest neighbors)
Edge dual_step_crossing(Pt a, Pt b);

// A with every finite component of its complement absorbed.
LatticeSet hull(const LatticeSet& a);
LatticeSet hull(const std::vector<Pt>& sites);

// all lattice edges with exactly one endpoint in s
std::vector<Edge> outer_edge_boundary(const LatticeSet& s);
// sites of s with a neighbor outside s
std::vector<Pt> inner_vertex_boundary(const LatticeSet& s);

// Simple closed dual cycle through the duals of the outer edge boundary,
// counterclockwise (interior on the left), starting at the lexicographically
// smallest dual vertex. Requires membership of the admissible family.
DualPath boundary_curve(const LatticeSet& s);

int intrinsic_diameter(const LatticeSet& s);
namespace reference {
int intrinsic_diameter_serial(const LatticeSet& s);
}

double confinement_scale(double t, double beta);

// Hausdorff distances (Euclidean metric).
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
double hausdorff_distance(const LatticeSet& a, const LatticeSet& b);

// Exhaustive enumeration of the admissible family near the origin.
// Calls visit for every finite connected S containing 0 with connected
// complement, |S| <= max_sites and (if >0) |outer boundary| <= max_boundary.
void enumerate_lattice_sets(int max_sites, int max_boundary,
                            const std::function<void(const LatticeSet&)>& visit);

// JSON site-list serialization, row-major ordering.
std::string to_json(const LatticeSet& s);
LatticeSet lattice_set_from_json(const std::string& text);

}  // namespace rangeshape
