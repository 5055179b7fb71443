#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rangeshape/environment.hpp"
#include "rangeshape/geom.hpp"
#include "rangeshape/lattice.hpp"

namespace rangeshape {

// total weight of the primal edges crossed by a dual path
double path_energy(const DualPath& path, const WeightField& field);

// Single-source shortest paths on the dual lattice: vertices are dual points
// (i,j) with i in [box.x0, box.x1-1], j in [box.y0, box.y1-1], so that every
// crossed primal edge stays inside the field region.
class DistanceMap {
  public:
    DistanceMap(Pt source, const WeightField& field);

    double at(Pt dual) const;
    DualPath geodesic_to(Pt dual) const;  // from source to dual
    Pt source() const { return source_; }
    bool covers(Pt dual) const {
        return dual.x >= x0_ && dual.x <= x1_ && dual.y >= y0_ && dual.y <= y1_;
    }

  private:
    std::size_t index(Pt d) const { return std::size_t(d.y - y0_) * w_ + (d.x - x0_); }
    Pt source_;
    int x0_, y0_, x1_, y1_, w_;
    std::vector<double> dist_;
    std::vector<int> parent_;
};

// D(x,y) plus a geodesic achieving it. Points are primal; duals get the
// (1/2,1/2) shift.
std::pair<double, DualPath> fpp_distance(Pt x, Pt y, const WeightField& field);

// Exhaustive enumeration of self-avoiding dual paths from a dual start.
// The visitor sees every path prefix (endpoint, number of steps, energy,
// vertex sequence). Branches with energy above energy_cap (if >=0) are cut.
void for_each_self_avoiding_dual_path(
    Pt start_dual, int max_steps, const WeightField& field, double energy_cap,
    const std::function<void(Pt, int, double, const std::vector<Pt>&)>& visit);

namespace reference {
// brute-force oracle: min energy over all self-avoiding dual paths of
// length <= max_steps, or +inf when no such path reaches y
double fpp_distance_enumerated(Pt x, Pt y, int max_steps, const WeightField& field);
}

struct NormEstimate {
    Pt direction;
    std::vector<std::pair<int, double>> values;  // (n, D(0,n*dir)/n)
    double rho_hat = 0.0;                        // value at the largest n
    double lower_bound = 0.0;                    // a*|dir|_1
    double upper_bound = 0.0;                    // b*|dir|_1
};

std::vector<NormEstimate> estimate_norm(const std::vector<Pt>& directions,
                                        const std::vector<int>& schedule,
                                        const WeightField& field);

// Positively homogeneous interpolation of direction estimates: inside the
// cone of two adjacent estimated directions the value is the corresponding
// conic combination (the triangle-inequality interpolation).
class EstimatedNorm {
  public:
    EstimatedNorm(std::vector<Pt> directions, std::vector<double> values,
                  bool complete_by_lattice_symmetry);
    explicit EstimatedNorm(const std::vector<NormEstimate>& estimates,
                           bool complete_by_lattice_symmetry = true);

    double operator()(Vec2 v) const;
    double operator()(Pt v) const { return (*this)(Vec2{double(v.x), double(v.y)}); }

  private:
    std::vector<Vec2> dirs_;    // sorted by angle, covering the full circle
    std::vector<double> vals_;
};

// Monte Carlo estimate of max_{|x|,|y|<=n} |D(x,y)-rho(x-y)|/n using
// num_sources sampled sources (full distance maps, all targets scanned).
double uniform_norm_error(int n, int num_sources, const WeightField& field,
                          const EstimatedNorm& rho, std::uint64_t seed);
namespace reference {
double uniform_norm_error_serial(int n, int num_sources, const WeightField& field,
                                 const EstimatedNorm& rho, std::uint64_t seed);
}

struct GibbsPathSum {
    double distance = 0.0;        // D(x,y)
    double truncated_sum = 0.0;   // over enumerated paths of length <= cap
    double tail_bound = 0.0;      // certified bound on what the cap missed
    double lower = 0.0;           // e^{-beta D}
    double upper = 0.0;           // geometric-series upper bracket
    double beta_mid = 0.0;        // auxiliary temperature used in the bracket
    long long paths = 0;
    bool bracket_ok = false;
};

// Sum of e^{-beta d(gamma)} over self-avoiding dual paths between x and y,
// enumerated up to length_cap, with a certified geometric tail. Requires
// beta > log(4)/a so the tail converges.
GibbsPathSum gibbs_path_sum(Pt x, Pt y, double beta, const WeightField& field, int length_cap);

// Checks that every path with energy <= 2 D(x,y) stays within q |x-y|_2 of
// both endpoints. q <= 0 selects the default 2*sqrt(2)*b/a.
bool geodesic_confinement_check(Pt x, Pt y, const WeightField& field, double q = -1.0);

}  // namespace rangeshape
