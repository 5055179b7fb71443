#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rangeshape/environment.hpp"
#include "rangeshape/lattice.hpp"
#include "rangeshape/shape.hpp"

namespace rangeshape {

// L-skeleton of a boundary curve: ordered dual vertices x_0,...,x_{n-1} with
// consecutive l1 gaps >= L (the closing segment back to x_0 may be shorter).
struct SkeletonPolygon {
    int L = 0;
    std::vector<Pt> vertices;  // dual vertices; closing edge implicit

    std::size_t segment_count() const { return vertices.size(); }
    std::vector<Vec2> plane_vertices() const;  // with the (1/2,1/2) shift
    bool is_self_crossing() const;
};

// Trivial marker (n(S) = 1) is signalled by nullopt.
std::optional<SkeletonPolygon> extract_skeleton(const LatticeSet& s, int L);

// winding number of the closed polygon around x; x must not lie on the curve
int winding_number(const std::vector<Vec2>& closed_polygon, Vec2 x);
inline int winding_number(const SkeletonPolygon& p, Vec2 x) {
    return winding_number(p.plane_vertices(), x);
}

// interior = points of odd winding number, rasterized at the given spacing
std::vector<Vec2> interior_raster(const SkeletonPolygon& p, double spacing);

// V_L: open l1-neighborhood of radius L+3 of the convex hull of the skeleton
ShapeDomain v_neighborhood(const SkeletonPolygon& p, int L);
ShapeDomain convex_hull_domain(const std::vector<Vec2>& pts);

// sum of rho over skeleton segments (the perimeter of Int(P))
double skeleton_perimeter(const SkeletonPolygon& p, const NormSpec& rho);

struct SkeletonClassBound {
    SkeletonPolygon skeleton;
    double class_sum = 0.0;      // sum of e^{-beta H(S)} over enumerated members
    double tail_bound = 0.0;     // certified bound for members beyond the cap
    double bound = 0.0;          // e^{2 b beta L} exp{-(1-eps) sum rho(x_i - x_{i-1})}
    long long members = 0;
    bool holds = false;
    bool self_crossing = false;
};

struct SkeletonEnergyBoundReport {
    std::vector<SkeletonClassBound> classes;
    long long sets_enumerated = 0;
    bool all_hold = false;
    bool conclusive = false;  // false when the tail does not certify
};

// Resummation check: enumerates every admissible S containing 0 with
// |boundary| <= boundary_cap, groups them by L-skeleton and verifies the
// coarse-graining energy bound for each class.
SkeletonEnergyBoundReport skeleton_energy_bound_check(int L, double beta, const WeightField& field,
                                                      double epsilon, const NormSpec& rho,
                                                      int boundary_cap);

std::string to_json(const SkeletonPolygon& p);

}  // namespace rangeshape
