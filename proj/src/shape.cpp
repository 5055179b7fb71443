#include "rangeshape/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "rangeshape/rng.hpp"
#include "rangeshape/skeleton.hpp"
#include "rangeshape/spectral.hpp"

namespace rangeshape {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double seg_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    double u = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 proj = a + u * ab;
    return norm2(p - proj);
}
}  // namespace

// ---------------------------------------------------------------- NormSpec

NormSpec NormSpec::l1() { return NormSpec{}; }

NormSpec NormSpec::l2() {
    NormSpec n;
    n.tag_ = Tag::L2;
    return n;
}

NormSpec NormSpec::linf() {
    NormSpec n;
    n.tag_ = Tag::Linf;
    return n;
}

NormSpec NormSpec::weighted_l1(double wx, double wy) {
    if (!(wx > 0.0) || !(wy > 0.0)) throw std::invalid_argument("weighted_l1: weights must be positive");
    NormSpec n;
    n.tag_ = Tag::WeightedL1;
    n.wx_ = wx;
    n.wy_ = wy;
    return n;
}

NormSpec NormSpec::ball(std::vector<Vec2> polygon) {
    if (polygon.size() < 3) throw std::invalid_argument("NormSpec::ball: need at least 3 vertices");
    // symmetry under x -> -x: every vertex needs its antipode
    for (const Vec2& v : polygon) {
        bool found = false;
        for (const Vec2& w : polygon)
            if (std::abs(v.x + w.x) < 1e-9 && std::abs(v.y + w.y) < 1e-9) found = true;
        if (!found) throw std::invalid_argument("NormSpec::ball: polygon is not symmetric under x -> -x");
    }
    NormSpec n;
    n.tag_ = Tag::Ball;
    n.ball_ = std::move(polygon);
    return n;
}

double NormSpec::operator()(Vec2 v) const {
    switch (tag_) {
        case Tag::L1: return std::abs(v.x) + std::abs(v.y);
        case Tag::L2: return std::hypot(v.x, v.y);
        case Tag::Linf: return std::max(std::abs(v.x), std::abs(v.y));
        case Tag::WeightedL1: return wx_ * std::abs(v.x) + wy_ * std::abs(v.y);
        case Tag::Ball: {
            double best = -kInf;
            for (const Vec2& w : ball_) best = std::max(best, dot(v, w));
            return best;
        }
    }
    return 0.0;
}

std::string NormSpec::name() const {
    switch (tag_) {
        case Tag::L1: return "l1";
        case Tag::L2: return "l2";
        case Tag::Linf: return "linf";
        case Tag::WeightedL1: return "weighted-l1";
        case Tag::Ball: return "ball";
    }
    return "?";
}

std::pair<double, double> NormSpec::one_sided_derivatives(Vec2 e, Vec2 eperp) const {
    auto abs_deriv = [](double a, double b, bool plus) {
        // one-sided derivative of s -> |a + s b| at 0
        if (a > 0.0) return b;
        if (a < 0.0) return -b;
        return plus ? std::abs(b) : -std::abs(b);
    };
    switch (tag_) {
        case Tag::L1:
        case Tag::WeightedL1: {
            double wx = tag_ == Tag::L1 ? 1.0 : wx_;
            double wy = tag_ == Tag::L1 ? 1.0 : wy_;
            double plus = wx * abs_deriv(e.x, eperp.x, true) + wy * abs_deriv(e.y, eperp.y, true);
            double minus = wx * abs_deriv(e.x, eperp.x, false) + wy * abs_deriv(e.y, eperp.y, false);
            return {minus, plus};
        }
        case Tag::L2: {
            double d = dot(e, eperp) / norm2(e);
            return {d, d};
        }
        case Tag::Linf: {
            double m = std::max(std::abs(e.x), std::abs(e.y));
            double plus = -kInf, minus = kInf;
            if (std::abs(std::abs(e.x) - m) < 1e-15) {
                plus = std::max(plus, abs_deriv(e.x, eperp.x, true));
                minus = std::min(minus, abs_deriv(e.x, eperp.x, false));
            }
            if (std::abs(std::abs(e.y) - m) < 1e-15) {
                plus = std::max(plus, abs_deriv(e.y, eperp.y, true));
                minus = std::min(minus, abs_deriv(e.y, eperp.y, false));
            }
            return {minus, plus};
        }
        case Tag::Ball: {
            // symmetric difference quotients at 1e-6 with one Richardson step
            auto quot = [&](double h) {
                return ((*this)(e + h * eperp) - (*this)(e)) / h;
            };
            double h = 1e-6;
            double plus = 2.0 * quot(h / 2) - quot(h);
            double minus = 2.0 * quot(-h / 2) - quot(-h);
            return {minus, plus};
        }
    }
    return {0.0, 0.0};
}

std::vector<std::array<double, 4>> NormSpec::symmetry_group() const {
    // generators among the lattice symmetries preserving the norm
    std::array<double, 4> rot90{0, -1, 1, 0};
    std::array<double, 4> reflect_x{-1, 0, 0, 1};
    std::array<double, 4> center{-1, 0, 0, -1};
    switch (tag_) {
        case Tag::L1:
        case Tag::L2:
        case Tag::Linf: return {rot90, reflect_x};
        case Tag::WeightedL1: return {reflect_x, std::array<double, 4>{1, 0, 0, -1}};
        case Tag::Ball: return {center};
    }
    return {center};
}

// ------------------------------------------------------------- ShapeDomain

ShapeDomain::ShapeDomain(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 3) throw std::invalid_argument("ShapeDomain: need at least 3 vertices");
    // drop consecutive duplicates
    std::vector<Vec2> clean;
    for (const Vec2& v : verts_) {
        if (!clean.empty() && norm2(v - clean.back()) < 1e-12) continue;
        clean.push_back(v);
    }
    while (clean.size() > 1 && norm2(clean.front() - clean.back()) < 1e-12) clean.pop_back();
    verts_ = std::move(clean);
    if (verts_.size() < 3) throw std::invalid_argument("ShapeDomain: degenerate polygon");
    double a2 = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Vec2& p = verts_[i];
        const Vec2& q = verts_[(i + 1) % verts_.size()];
        a2 += cross(p, q);
    }
    if (a2 < 0.0) std::reverse(verts_.begin(), verts_.end());
    if (std::abs(a2) < 1e-12) throw std::invalid_argument("ShapeDomain: degenerate polygon (zero area)");
    double scale = diameter();
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        Vec2 a = verts_[i];
        Vec2 b = verts_[(i + 1) % verts_.size()];
        Vec2 c = verts_[(i + 2) % verts_.size()];
        if (cross(b - a, c - b) < -1e-9 * scale * scale)
            throw std::invalid_argument("ShapeDomain: polygon is not convex");
    }
}

ShapeDomain ShapeDomain::rectangle(double w, double h, Vec2 c) {
    return ShapeDomain({{c.x - w / 2, c.y - h / 2},
                        {c.x + w / 2, c.y - h / 2},
                        {c.x + w / 2, c.y + h / 2},
                        {c.x - w / 2, c.y + h / 2}});
}

ShapeDomain ShapeDomain::regular_polygon(int k, double radius, Vec2 c) {
    if (k < 3) throw std::invalid_argument("regular_polygon: k < 3");
    std::vector<Vec2> v;
    for (int i = 0; i < k; ++i) {
        double a = 2.0 * kPi * i / k;
        v.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
    }
    return ShapeDomain(std::move(v));
}

ShapeDomain ShapeDomain::l1_ball(double radius, Vec2 c) {
    return ShapeDomain({{c.x + radius, c.y}, {c.x, c.y + radius}, {c.x - radius, c.y}, {c.x, c.y - radius}});
}

ShapeDomain ShapeDomain::from_support(const std::vector<Vec2>& dirs, const std::vector<double>& values) {
    if (dirs.size() != values.size() || dirs.size() < 3)
        throw std::invalid_argument("from_support: bad inputs");
    double big = 0.0;
    for (double v : values) big = std::max(big, std::abs(v));
    big = 4.0 * std::max(big, 1.0);
    std::vector<Vec2> poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        Vec2 u = dirs[k];
        double un = norm2(u);
        if (un <= 0.0) throw std::invalid_argument("from_support: zero direction");
        u = (1.0 / un) * u;
        double c = values[k] / un;
        // clip poly by { x . u <= c }
        std::vector<Vec2> next;
        std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 a = poly[i], b = poly[(i + 1) % n];
            double da = dot(a, u) - c, db = dot(b, u) - c;
            if (da <= 0.0) next.push_back(a);
            if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
                double s = da / (da - db);
                next.push_back(a + s * (b - a));
            }
        }
        poly = std::move(next);
        if (poly.size() < 3) throw std::invalid_argument("from_support: empty intersection");
    }
    return ShapeDomain(std::move(poly));
}

bool ShapeDomain::contains(Vec2 p, double tol) const {
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = verts_[i], b = verts_[(i + 1) % n];
        if (cross(b - a, p - a) <= tol) return false;
    }
    return true;
}

double ShapeDomain::area() const {
    double a2 = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        a2 += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
    return 0.5 * a2;
}

double ShapeDomain::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::size_t j = i + 1; j < verts_.size(); ++j)
            best = std::max(best, norm2(verts_[i] - verts_[j]));
    return best;
}

Vec2 ShapeDomain::centroid() const {
    double a2 = 0.0;
    Vec2 c{0, 0};
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p = verts_[i], q = verts_[(i + 1) % n];
        double w = cross(p, q);
        a2 += w;
        c.x += (p.x + q.x) * w;
        c.y += (p.y + q.y) * w;
    }
    return {c.x / (3.0 * a2), c.y / (3.0 * a2)};
}

double ShapeDomain::support(Vec2 dir) const {
    double best = -kInf;
    for (const Vec2& v : verts_) best = std::max(best, dot(v, dir));
    return best;
}

double ShapeDomain::distance_to_boundary(Vec2 p) const {
    double best = kInf;
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, seg_dist(p, verts_[i], verts_[(i + 1) % n]));
    return best;
}

ShapeDomain ShapeDomain::scaled(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
    std::vector<Vec2> v;
    for (Vec2 p : verts_) v.push_back(s * p);
    return ShapeDomain(std::move(v));
}

ShapeDomain ShapeDomain::translated(Vec2 z) const {
    std::vector<Vec2> v;
    for (Vec2 p : verts_) v.push_back(p + z);
    return ShapeDomain(std::move(v));
}

ShapeDomain ShapeDomain::transformed(const std::array<double, 4>& m) const {
    std::vector<Vec2> v;
    for (Vec2 p : verts_) v.push_back({m[0] * p.x + m[1] * p.y, m[2] * p.x + m[3] * p.y});
    return ShapeDomain(std::move(v));
}

ShapeDomain ShapeDomain::minkowski_sum(const ShapeDomain& other) const {
    // edge-vector merge by polar angle, starting from the two bottom vertices
    auto lowest = [](const std::vector<Vec2>& v) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].y < v[best].y || (v[i].y == v[best].y && v[i].x < v[best].x)) best = i;
        return best;
    };
    const auto& a = verts_;
    const auto& b = other.verts_;
    std::size_t ia = lowest(a), ib = lowest(b);
    std::size_t na = a.size(), nb = b.size();
    // edge angles increase monotonically in [0, 2pi) from the bottom vertex
    auto edge_angle = [](Vec2 e) {
        double ang = std::atan2(e.y, e.x);
        if (ang < -1e-12) ang += 2.0 * kPi;
        return ang;
    };
    std::vector<Vec2> out;
    Vec2 cur = a[ia] + b[ib];
    std::size_t sa = 0, sb = 0;
    while (sa < na || sb < nb) {
        out.push_back(cur);
        Vec2 ea = a[(ia + 1) % na] - a[ia % na];
        Vec2 eb = b[(ib + 1) % nb] - b[ib % nb];
        bool take_a;
        if (sa >= na) {
            take_a = false;
        } else if (sb >= nb) {
            take_a = true;
        } else {
            double da = edge_angle(ea), db = edge_angle(eb);
            if (std::abs(da - db) < 1e-12) {  // parallel edges advance together
                cur = cur + ea + eb;
                ++ia;
                ++ib;
                ++sa;
                ++sb;
                continue;
            }
            take_a = da < db;
        }
        if (take_a) {
            cur = cur + ea;
            ++ia;
            ++sa;
        } else {
            cur = cur + eb;
            ++ib;
            ++sb;
        }
    }
    return ShapeDomain(std::move(out));
}

std::string ShapeDomain::to_json() const {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (Vec2 v : verts_) j["vertices"].push_back({v.x, v.y});
    return j.dump();
}

ShapeDomain ShapeDomain::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Vec2> v;
    for (const auto& e : j.at("vertices")) v.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    return ShapeDomain(std::move(v));
}

// -------------------------------------------------------------- perimeter

double polygon_perimeter(const ShapeDomain& u, const NormSpec& rho) {
    return polygon_perimeter(u.vertices(), rho);
}

double polygon_perimeter(const std::vector<Vec2>& poly, const NormSpec& rho) {
    if (poly.size() < 3) throw std::invalid_argument("polygon_perimeter: degenerate polygon");
    double p = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) p += rho(poly[(i + 1) % poly.size()] - poly[i]);
    return p;
}

// ------------------------------------------------------------ eigenvalues

namespace {

LatticeSet rasterize(const std::function<bool(Vec2)>& inside, Vec2 lo, Vec2 hi, double h) {
    std::vector<Pt> pts;
    int x0 = int(std::floor(lo.x / h)) - 1, x1 = int(std::ceil(hi.x / h)) + 1;
    int y0 = int(std::floor(lo.y / h)) - 1, y1 = int(std::ceil(hi.y / h)) + 1;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (inside({x * h, y * h})) pts.push_back({x, y});
    return LatticeSet(std::move(pts));
}

double grid_eigenvalue_impl(const std::function<bool(Vec2)>& inside, Vec2 lo, Vec2 hi, double h) {
    LatticeSet s = rasterize(inside, lo, hi, h);
    if (s.empty()) throw std::invalid_argument("grid_eigenvalue: rasterization is empty");
    if (!s.is_connected()) throw std::invalid_argument("grid_eigenvalue: rasterization is disconnected");
    return principal_eigenvalue_only(s) / (h * h);
}

void poly_bounds(const std::vector<Vec2>& poly, Vec2& lo, Vec2& hi) {
    lo = hi = poly[0];
    for (Vec2 v : poly) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
}

}  // namespace

double grid_eigenvalue(const ShapeDomain& u, double h) {
    Vec2 lo, hi;
    poly_bounds(u.vertices(), lo, hi);
    return grid_eigenvalue_impl([&](Vec2 p) { return u.contains(p); }, lo, hi, h);
}

double grid_eigenvalue(const std::vector<Vec2>& poly, double h) {
    Vec2 lo, hi;
    poly_bounds(poly, lo, hi);
    return grid_eigenvalue_impl([&](Vec2 p) { return winding_number(poly, p) % 2 != 0; }, lo, hi, h);
}

double continuum_eigenvalue(const ShapeDomain& u, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("continuum_eigenvalue: h must be positive");
    double lam_h = grid_eigenvalue(u, h);
    double lam_h2 = grid_eigenvalue(u, h / 2);
    // first-order Richardson: boundary rasterization error dominates at O(h)
    return 2.0 * lam_h2 - lam_h;
}

FunctionalValue shape_functional(const ShapeDomain& u, const NormSpec& rho, double grid_h) {
    FunctionalValue f;
    f.lambda = continuum_eigenvalue(u, grid_h);
    f.perimeter = polygon_perimeter(u, rho);
    f.value = f.lambda + f.perimeter;
    return f;
}

// ---------------------------------------------------------- minimize_F

namespace {

struct SearchSpace {
    int k = 64;
    std::vector<Vec2> dirs;
    std::vector<std::vector<int>> orbits;  // direction indices identified by symmetry

    explicit SearchSpace(const NormSpec& rho, int k_) : k(k_) {
        for (int i = 0; i < k; ++i) {
            double a = 2.0 * kPi * i / k;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
        // orbit partition: apply group generators to direction indices until closed
        std::vector<std::array<double, 4>> gens = rho.symmetry_group();
        if (rho.tag() == NormSpec::Tag::L2) {
            // full rotation invariance: a single orbit
            orbits.push_back(std::vector<int>(std::size_t(k)));
            std::iota(orbits[0].begin(), orbits[0].end(), 0);
            return;
        }
        auto apply_to_index = [&](const std::array<double, 4>& m, int i) {
            Vec2 d = dirs[std::size_t(i)];
            Vec2 md{m[0] * d.x + m[1] * d.y, m[2] * d.x + m[3] * d.y};
            double ang = std::atan2(md.y, md.x);
            double step = 2.0 * kPi / k;
            int j = int(std::llround(ang / step));
            return ((j % k) + k) % k;
        };
        std::vector<int> orbit_of(std::size_t(k), -1);
        for (int i = 0; i < k; ++i) {
            if (orbit_of[std::size_t(i)] >= 0) continue;
            std::vector<int> orbit{i};
            orbit_of[std::size_t(i)] = int(orbits.size());
            for (std::size_t head = 0; head < orbit.size(); ++head) {
                for (const auto& g : gens) {
                    int j = apply_to_index(g, orbit[head]);
                    if (orbit_of[std::size_t(j)] < 0) {
                        orbit_of[std::size_t(j)] = int(orbits.size());
                        orbit.push_back(j);
                    }
                }
                // central symmetry is always part of the group
                int j = (orbit[head] + k / 2) % k;
                if (orbit_of[std::size_t(j)] < 0) {
                    orbit_of[std::size_t(j)] = int(orbits.size());
                    orbit.push_back(j);
                }
            }
            orbits.push_back(std::move(orbit));
        }
    }

    void set_orbit(std::vector<double>& sigma, std::size_t orbit, double value) const {
        for (int i : orbits[orbit]) sigma[std::size_t(i)] = value;
    }
};

// scale-free objective: minimizing lambda * P^2 is equivalent to minimizing
// F over scaled copies
double scale_free_objective(const ShapeDomain& u, const NormSpec& rho, double h) {
    double lam = grid_eigenvalue(u, h);
    double per = polygon_perimeter(u, rho);
    return lam * per * per;
}

}  // namespace

MinimizeResult minimize_shape_functional(const NormSpec& rho, const MinimizeConfig& cfg) {
    SearchSpace space(rho, cfg.directions);
    std::vector<double> sigma(std::size_t(space.k), 1.0);
    StreamRng rng(cfg.seed);
    for (std::size_t o = 0; o < space.orbits.size(); ++o)
        space.set_orbit(sigma, o, 1.0 + 0.05 * rng.u01());

    int evals = 0;
    double h = cfg.search_h > 0.0 ? cfg.search_h : 2.0 / 64.0;
    bool converged = false;
    // coarse pattern search, then a fine-grid polish from the found shape
    for (auto [grid, step0, floor] : {std::tuple{h, 0.15, 1e-3}, std::tuple{h / 2, 0.02, 2e-4}}) {
        auto evaluate = [&](const std::vector<double>& sg) {
            ++evals;
            return scale_free_objective(ShapeDomain::from_support(space.dirs, sg), rho, grid);
        };
        double best = evaluate(sigma);
        double step = step0;
        converged = false;
        while (evals < cfg.budget) {
            bool improved = false;
            for (std::size_t o = 0; o < space.orbits.size() && evals < cfg.budget; ++o) {
                double base = sigma[std::size_t(space.orbits[o][0])];
                for (double factor : {1.0 + step, 1.0 / (1.0 + step)}) {
                    std::vector<double> cand = sigma;
                    space.set_orbit(cand, o, base * factor);
                    double val = evaluate(cand);
                    if (val < best * (1.0 - 1e-12)) {
                        best = val;
                        sigma = std::move(cand);
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
                if (step < floor) {
                    converged = true;
                    break;
                }
            }
        }
    }

    ShapeDomain u = ShapeDomain::from_support(space.dirs, sigma);
    // exact one-dimensional scale optimization: F(sU) = lambda/s^2 + s P
    double lam = continuum_eigenvalue(u, h);
    double per = polygon_perimeter(u, rho);
    double s_star = std::cbrt(2.0 * lam / per);
    ShapeDomain u0 = u.scaled(s_star);
    // center so that -x in U0 holds (support construction is already symmetric)
    Vec2 c = u0.centroid();
    u0 = u0.translated({-c.x, -c.y});

    MinimizeResult res;
    res.domain = u0;
    res.best = shape_functional(u0, rho, cfg.final_h);
    res.evaluations = evals;
    res.converged = converged;
    return res;
}

// ------------------------------------------------------------ facet check

bool facet_inequality_check(const NormSpec& rho, Vec2 e,
                            const std::vector<std::pair<double, double>>& segments,
                            double* slack) {
    double su = 0.0;
    for (auto [t, u] : segments) su += u;
    if (std::abs(su) > 1e-9) throw std::invalid_argument("facet_inequality_check: sum of u_i must vanish");
    Vec2 eperp{-e.y, e.x};
    auto [minus, plus] = rho.one_sided_derivatives(e, eperp);
    double lhs = 0.0, st = 0.0, sau = 0.0;
    for (auto [t, u] : segments) {
        lhs += rho(t * e + u * eperp);
        st += t;
        sau += std::abs(u);
    }
    double rhs = st * rho(e) + 0.5 * (plus - minus) * sau;
    if (slack) *slack = lhs - rhs;
    return lhs >= rhs - 1e-9 * (std::abs(lhs) + std::abs(rhs) + 1.0);
}

// --------------------------------------------------------------- witness

WitnessReport lower_bound_witness(const ShapeDomain& u0, double t, double beta,
                                  const WeightField& field, double min_f_reference,
                                  double epsilon) {
    double r = confinement_scale(t, beta);
    WitnessReport rep;
    rep.r = r;
    rep.reference_min_f = min_f_reference;

    // geodesic cycle through the scaled polygon vertices
    std::vector<Pt> corners;
    for (Vec2 v : u0.vertices()) corners.push_back({int(std::lround(r * v.x)), int(std::lround(r * v.y))});
    std::vector<Vec2> cycle;  // dual plane points
    for (std::size_t i = 0; i < corners.size(); ++i) {
        auto [d, geo] = fpp_distance(corners[i], corners[(i + 1) % corners.size()], field);
        for (std::size_t j = 0; j + 1 < geo.vertices.size(); ++j) cycle.push_back(dual_to_plane(geo.vertices[j]));
        if (geo.vertices.size() == 1) cycle.push_back(dual_to_plane(geo.vertices[0]));
    }
    if (cycle.size() < 3) throw std::runtime_error("lower_bound_witness: geodesic cycle degenerate");

    // enclosed sites: odd winding number of the dual cycle
    Vec2 lo, hi;
    poly_bounds(cycle, lo, hi);
    std::vector<Pt> enclosed;
    for (int y = int(std::floor(lo.y)); y <= int(std::ceil(hi.y)); ++y)
        for (int x = int(std::floor(lo.x)); x <= int(std::ceil(hi.x)); ++x)
            if (winding_number(cycle, {double(x), double(y)}) % 2 != 0) enclosed.push_back({x, y});
    LatticeSet enc(std::move(enclosed));
    if (!enc.contains({0, 0})) {
        throw std::runtime_error(
            "lower_bound_witness: geodesic cycle fails to enclose the origin (cycle length " +
            std::to_string(cycle.size()) + ", enclosed sites " + std::to_string(enc.size()) + ")");
    }
    // connected component of the origin, holes filled
    std::vector<Pt> comp;
    {
        std::vector<char> seen(enc.size(), 0);
        std::vector<int> stack{enc.index_of({0, 0})};
        seen[std::size_t(stack[0])] = 1;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            comp.push_back(enc.sites()[std::size_t(i)]);
            for (Pt d : kNeighborStep) {
                int j = enc.index_of(enc.sites()[std::size_t(i)] + d);
                if (j >= 0 && !seen[std::size_t(j)]) {
                    seen[std::size_t(j)] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    LatticeSet witness = hull(LatticeSet(std::move(comp)));
    rep.witness_sites = witness.size();

    rep.lambda_discrete = principal_eigenvalue_only(witness);
    rep.hamiltonian = hamiltonian(witness, field);
    rep.value = r * r * rep.lambda_discrete + rep.hamiltonian / r;
    rep.continuum_lambda = continuum_eigenvalue(u0, u0.diameter() / 128.0);

    // cell-averaged test function: principal grid eigenfunction of the
    // shrunk domain, giving a Rayleigh upper bound on lambda1 of the witness
    double delta = std::min(0.055, 1.0 - 1.0 / std::sqrt(1.0 + 0.8 * epsilon));
    ShapeDomain inner = u0.scaled(1.0 - delta);
    double hg = inner.diameter() / 128.0;
    LatticeSet grid = rasterize([&](Vec2 p) { return inner.contains(p); },
                                {-inner.diameter(), -inner.diameter()},
                                {inner.diameter(), inner.diameter()}, hg);
    SpectralPair gp = principal_eigenpair(grid);
    PLInterpolation profile(grid, gp.h1);
    // g(x) = average of h((x+z)/r) over the unit cell, 2x2 Gauss points
    const double gq = 0.5 / std::sqrt(3.0);
    const double qx[4] = {0.5 - gq, 0.5 + gq, 0.5 - gq, 0.5 + gq};
    const double qy[4] = {0.5 - gq, 0.5 - gq, 0.5 + gq, 0.5 + gq};
    Box wb = witness.bbox().expanded(2);
    auto gval = [&](Pt p) {
        double acc = 0.0;
        for (int q = 0; q < 4; ++q) {
            Vec2 z{(p.x + qx[q]) / r, (p.y + qy[q]) / r};
            acc += profile.value({z.x / hg, z.y / hg});
        }
        return 0.25 * acc;
    };
    double num = 0.0, den = 0.0;
    bool support_ok = true;
    for (int y = wb.y0; y <= wb.y1; ++y)
        for (int x = wb.x0; x <= wb.x1; ++x) {
            double g = gval({x, y});
            double gx = gval({x + 1, y});
            double gy = gval({x, y + 1});
            num += (gx - g) * (gx - g) + (gy - g) * (gy - g);
            den += g * g;
            if (g != 0.0 && !witness.contains({x, y})) support_ok = false;
        }
    rep.test_function_bound = support_ok && den > 0.0 ? r * r * num / den
                                                      : std::numeric_limits<double>::infinity();
    return rep;
}

// ----------------------------------------------------- polygon Hausdorff

namespace {

// exact squared Euclidean distance transform (Felzenszwalb-Huttenlocher);
// empty cells carry a large finite sentinel, infinities would break the
// envelope recursion
constexpr double kFar = 1e20;

void edt_1d(std::vector<double>& f) {
    std::size_t n = f.size();
    if (n < 2) return;
    std::vector<int> v(n);
    std::vector<double> z(n + 1), out(n);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < int(n); ++q) {
        double s;
        while (true) {
            int p = v[std::size_t(k)];
            s = ((f[std::size_t(q)] + q * q) - (f[std::size_t(p)] + p * p)) / (2.0 * q - 2.0 * p);
            if (s <= z[std::size_t(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[std::size_t(k)] = q;
        z[std::size_t(k)] = s;
        z[std::size_t(k) + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < int(n); ++q) {
        while (z[std::size_t(k) + 1] < q) ++k;
        int p = v[std::size_t(k)];
        out[std::size_t(q)] = double(q - p) * (q - p) + f[std::size_t(p)];
    }
    f = std::move(out);
}

struct PointGridEdt {
    Vec2 origin;
    double res;
    int w = 0, h = 0;
    std::vector<double> dist2;

    PointGridEdt(const std::vector<Vec2>& pts, Vec2 lo, Vec2 hi, double res_) : res(res_) {
        origin = {lo.x, lo.y};
        w = int(std::ceil((hi.x - lo.x) / res)) + 1;
        h = int(std::ceil((hi.y - lo.y) / res)) + 1;
        dist2.assign(std::size_t(w) * h, kFar);
        for (const Vec2& p : pts) {
            int x = int(std::lround((p.x - origin.x) / res));
            int y = int(std::lround((p.y - origin.y) / res));
            if (x >= 0 && x < w && y >= 0 && y < h) dist2[std::size_t(y) * w + x] = 0.0;
        }
        std::vector<double> col(std::size_t(h), 0.0);
        for (int x = 0; x < w; ++x) {
            for (int y = 0; y < h; ++y) col[std::size_t(y)] = dist2[std::size_t(y) * w + x];
            edt_1d(col);
            for (int y = 0; y < h; ++y) dist2[std::size_t(y) * w + x] = col[std::size_t(y)];
        }
        std::vector<double> row(std::size_t(w), 0.0);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) row[std::size_t(x)] = dist2[std::size_t(y) * w + x];
            edt_1d(row);
            for (int x = 0; x < w; ++x) dist2[std::size_t(y) * w + x] = row[std::size_t(x)];
        }
    }

    double distance(Vec2 p) const {
        int x = int(std::lround((p.x - origin.x) / res));
        int y = int(std::lround((p.y - origin.y) / res));
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return res * std::sqrt(dist2[std::size_t(y) * w + x]);
    }
};

std::vector<Vec2> sample_polygon(const ShapeDomain& u, double res) {
    std::vector<Vec2> out;
    Vec2 lo, hi;
    poly_bounds(u.vertices(), lo, hi);
    for (double y = lo.y; y <= hi.y + res / 2; y += res)
        for (double x = lo.x; x <= hi.x + res / 2; x += res)
            if (u.contains({x, y})) out.push_back({x, y});
    // boundary samples, vertices included
    std::size_t n = u.vertices().size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = u.vertices()[i], b = u.vertices()[(i + 1) % n];
        double len = norm2(b - a);
        int m = std::max(1, int(std::ceil(len / res)));
        for (int j = 0; j < m; ++j) out.push_back(a + (double(j) / m) * (b - a));
    }
    return out;
}

double hausdorff_pts_polygon(const std::vector<Vec2>& pts, const ShapeDomain& u,
                             const std::vector<Vec2>& usample, const PointGridEdt& pts_edt,
                             Vec2 shift) {
    // sup over pts of distance to the shifted polygon
    double d1 = 0.0;
    for (const Vec2& p : pts) {
        Vec2 q = p - shift;
        if (!u.contains(q)) d1 = std::max(d1, u.distance_to_boundary(q));
    }
    // sup over polygon samples of distance to pts
    double d2 = 0.0;
    for (const Vec2& q : usample) d2 = std::max(d2, pts_edt.distance(q + shift));
    return std::max(d1, d2);
}

}  // namespace

double hausdorff_distance(const std::vector<Vec2>& pts, const ShapeDomain& u, double resolution) {
    if (pts.empty()) throw std::invalid_argument("hausdorff_distance: empty point set");
    Vec2 lo, hi;
    poly_bounds(u.vertices(), lo, hi);
    for (const Vec2& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    PointGridEdt edt(pts, lo - Vec2{resolution, resolution}, hi + Vec2{resolution, resolution}, resolution);
    return hausdorff_pts_polygon(pts, u, sample_polygon(u, resolution), edt, {0, 0});
}

double hausdorff_distance(const ShapeDomain& a, const ShapeDomain& b, double resolution) {
    // convex sets: both directed distances are attained on the boundaries
    auto boundary_samples = [&](const ShapeDomain& u) {
        std::vector<Vec2> out;
        std::size_t n = u.vertices().size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 p = u.vertices()[i], q = u.vertices()[(i + 1) % n];
            double len = norm2(q - p);
            int m = std::max(1, int(std::ceil(len / resolution)));
            for (int j = 0; j < m; ++j) out.push_back(p + (double(j) / m) * (q - p));
        }
        return out;
    };
    auto directed = [&](const ShapeDomain& from, const ShapeDomain& to) {
        double worst = 0.0;
        for (const Vec2& p : boundary_samples(from))
            if (!to.contains(p)) worst = std::max(worst, to.distance_to_boundary(p));
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double hausdorff_to_translates(const std::vector<Vec2>& pts, const ShapeDomain& u0, double resolution) {
    if (pts.empty()) throw std::invalid_argument("hausdorff_to_translates: empty point set");
    Vec2 clo, chi;
    poly_bounds(u0.vertices(), clo, chi);
    Vec2 plo = pts[0], phi = pts[0];
    Vec2 centroid{0, 0};
    for (const Vec2& p : pts) {
        plo.x = std::min(plo.x, p.x);
        plo.y = std::min(plo.y, p.y);
        phi.x = std::max(phi.x, p.x);
        phi.y = std::max(phi.y, p.y);
        centroid = centroid + p;
    }
    centroid = (1.0 / double(pts.size())) * centroid;
    double margin = u0.diameter() + resolution;
    PointGridEdt edt(pts, plo - Vec2{margin, margin}, phi + Vec2{margin, margin}, resolution);
    std::vector<Vec2> usample = sample_polygon(u0, resolution);
    Vec2 uc = u0.centroid();

    Vec2 shift = centroid - uc;
    double best = hausdorff_pts_polygon(pts, u0, usample, edt, shift);
    double step = std::max(resolution, 0.125 * u0.diameter());
    while (step > resolution / 4) {
        bool improved = false;
        for (Vec2 d : {Vec2{step, 0}, Vec2{-step, 0}, Vec2{0, step}, Vec2{0, -step},
                       Vec2{step, step}, Vec2{-step, step}, Vec2{step, -step}, Vec2{-step, -step}}) {
            double val = hausdorff_pts_polygon(pts, u0, usample, edt, shift + d);
            if (val < best - 1e-12) {
                best = val;
                shift = shift + d;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace rangeshape
