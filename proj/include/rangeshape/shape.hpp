#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rangeshape/environment.hpp"
#include "rangeshape/fpp.hpp"
#include "rangeshape/geom.hpp"

namespace rangeshape {

// A norm on R^2: an analytic tag or a symmetric convex polygon B inducing
// rho(x) = sup{ x.y : y in B }.
class NormSpec {
  public:
    enum class Tag { L1, L2, Linf, WeightedL1, Ball };

    static NormSpec l1();
    static NormSpec l2();
    static NormSpec linf();
    static NormSpec weighted_l1(double wx, double wy);
    static NormSpec ball(std::vector<Vec2> polygon);

    double operator()(Vec2 v) const;
    double operator()(Pt v) const { return (*this)(Vec2{double(v.x), double(v.y)}); }

    // one-sided derivatives (theta-, theta+) of s -> rho(e + s e') at s=0;
    // analytic for the tags, symmetric difference quotients for Ball
    std::pair<double, double> one_sided_derivatives(Vec2 e, Vec2 eperp) const;

    Tag tag() const { return tag_; }
    std::string name() const;
    // generators of the symmetry subgroup of the lattice symmetries that
    // preserve this norm (each is a 2x2 matrix in row-major order)
    std::vector<std::array<double, 4>> symmetry_group() const;

  private:
    Tag tag_ = Tag::L1;
    double wx_ = 1.0, wy_ = 1.0;
    std::vector<Vec2> ball_;
};

// Bounded convex polygon, counterclockwise vertex order.
class ShapeDomain {
  public:
    ShapeDomain() = default;
    explicit ShapeDomain(std::vector<Vec2> vertices);

    static ShapeDomain rectangle(double w, double h, Vec2 center = {0, 0});
    static ShapeDomain regular_polygon(int k, double radius, Vec2 center = {0, 0});
    static ShapeDomain l1_ball(double radius, Vec2 center = {0, 0});
    // intersection of halfplanes { x . dir_i <= value_i }
    static ShapeDomain from_support(const std::vector<Vec2>& dirs, const std::vector<double>& values);

    const std::vector<Vec2>& vertices() const { return verts_; }
    bool contains(Vec2 p, double tol = 0.0) const;  // strict interior when tol 0
    bool contains_origin() const { return contains({0, 0}); }
    double area() const;
    double diameter() const;
    Vec2 centroid() const;
    double support(Vec2 dir) const;
    double distance_to_boundary(Vec2 p) const;  // unsigned distance to the boundary polyline

    ShapeDomain scaled(double s) const;
    ShapeDomain translated(Vec2 z) const;
    ShapeDomain transformed(const std::array<double, 4>& m) const;
    ShapeDomain minkowski_sum(const ShapeDomain& other) const;

    std::string to_json() const;
    static ShapeDomain from_json(const std::string& text);

  private:
    std::vector<Vec2> verts_;
};

// rho-perimeter of a polygon: sum of rho over edge vectors (equals the
// partition supremum for convex polygons).
double polygon_perimeter(const ShapeDomain& u, const NormSpec& rho);
double polygon_perimeter(const std::vector<Vec2>& closed_polygon, const NormSpec& rho);

// Principal Dirichlet eigenvalue of -Laplace on U: 5-point grid at spacing h,
// Richardson-extrapolated over {h, h/2}.
double continuum_eigenvalue(const ShapeDomain& u, double h);
// single-grid value (no extrapolation); also works for self-intersecting
// polygons via even-odd interior
double grid_eigenvalue(const ShapeDomain& u, double h);
double grid_eigenvalue(const std::vector<Vec2>& closed_polygon, double h);

struct FunctionalValue {
    double lambda = 0.0;
    double perimeter = 0.0;
    double value = 0.0;  // lambda + perimeter
};

FunctionalValue shape_functional(const ShapeDomain& u, const NormSpec& rho, double grid_h);

struct MinimizeConfig {
    int directions = 64;        // support-function resolution
    double search_h = 0.0;      // grid spacing during search; 0 = automatic
    double final_h = 1.0 / 128; // grid spacing (relative to unit scale) for the final value
    int budget = 4000;          // max eigenvalue evaluations
    std::uint64_t seed = 1;     // start-shape jitter
    bool verbose = false;
};

struct MinimizeResult {
    ShapeDomain domain;         // minimizer, centered so that -x in U0
    FunctionalValue best;       // evaluated at final_h with Richardson
    int evaluations = 0;
    bool converged = true;
};

MinimizeResult minimize_shape_functional(const NormSpec& rho, const MinimizeConfig& cfg = {});

// Checks sum rho(t_i e + u_i e') >= (sum t_i) rho(e) + (theta+ - theta-)/2 * sum |u_i|
// for segments (t_i, u_i) with sum u_i = 0.
bool facet_inequality_check(const NormSpec& rho, Vec2 e,
                            const std::vector<std::pair<double, double>>& segments,
                            double* slack = nullptr);

struct WitnessReport {
    double r = 0.0;
    double lambda_discrete = 0.0;      // lambda^1 of the witness set
    double hamiltonian = 0.0;          // H(S)
    double value = 0.0;                // r^2 lambda + H/r  ==  (r^2/t)(t lambda + beta H)
    double reference_min_f = 0.0;      // min F for comparison
    std::size_t witness_sites = 0;
    // Rayleigh-quotient test-function bound (cell-averaged smooth profile)
    double test_function_bound = 0.0;  // r^2 * Rayleigh(g) , upper bound on r^2 lambda_S
    double continuum_lambda = 0.0;     // lambda(U0)
};

// Builds the discrete witness for the partition-function lower bound:
// scaled polygon vertices joined by FPP geodesics, the enclosed component
// of the origin, filled.
WitnessReport lower_bound_witness(const ShapeDomain& u0, double t, double beta,
                                  const WeightField& field, double min_f_reference,
                                  double epsilon = 0.15);

// Hausdorff distances against polygons; the polygon side is sampled at the
// given resolution (documented O(resolution) error).
double hausdorff_distance(const std::vector<Vec2>& pts, const ShapeDomain& u, double resolution);
double hausdorff_distance(const ShapeDomain& a, const ShapeDomain& b, double resolution);
// infimum over translates x of dist_H(pts, x + U0), pattern search over x
double hausdorff_to_translates(const std::vector<Vec2>& pts, const ShapeDomain& u0, double resolution);

}  // namespace rangeshape
