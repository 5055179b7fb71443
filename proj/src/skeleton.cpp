#include "rangeshape/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace rangeshape {

std::vector<Vec2> SkeletonPolygon::plane_vertices() const {
    std::vector<Vec2> out;
    out.reserve(vertices.size());
    for (Pt v : vertices) out.push_back(dual_to_plane(v));
    return out;
}

namespace {

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

bool SkeletonPolygon::is_self_crossing() const {
    std::vector<Vec2> v = plane_vertices();
    std::size_t n = v.size();
    if (n < 4) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
            if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return true;
        }
    return false;
}

std::optional<SkeletonPolygon> extract_skeleton(const LatticeSet& s, int L) {
    if (L <= 0) throw std::invalid_argument("extract_skeleton: L must be positive");
    DualPath curve = boundary_curve(s);
    const auto& verts = curve.vertices;  // starts at the lex-smallest, counterclockwise
    SkeletonPolygon p;
    p.L = L;
    p.vertices.push_back(verts[0]);
    Pt last = verts[0];
    for (std::size_t i = 1; i < verts.size(); ++i) {
        if (l1_norm(verts[i] - last) >= L) {
            p.vertices.push_back(verts[i]);
            last = verts[i];
        }
    }
    if (p.vertices.size() < 2) return std::nullopt;  // n(S) = 1, trivial marker
    return p;
}

int winding_number(const std::vector<Vec2>& poly, Vec2 x) {
    std::size_t n = poly.size();
    if (n < 2) throw std::invalid_argument("winding_number: degenerate polygon");
    int wind = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % n];
        // ray from x towards +infinity in x-direction, signed crossings
        double d = cross(b - a, x - a);
        double len = norm2(b - a);
        if (len > 0.0 && std::abs(d) / len < 1e-12 && dot(x - a, x - b) <= 1e-12)
            throw std::invalid_argument("winding_number: query point lies on the curve");
        if (a.y <= x.y && b.y > x.y && d > 0.0) ++wind;   // upward crossing, x left of edge
        if (b.y <= x.y && a.y > x.y && d < 0.0) --wind;   // downward crossing, x right of edge
    }
    return wind;
}

std::vector<Vec2> interior_raster(const SkeletonPolygon& p, double spacing) {
    std::vector<Vec2> poly = p.plane_vertices();
    double x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (Vec2 v : poly) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    std::vector<Vec2> out;
    for (double y = y0 + spacing / 2; y < y1; y += spacing)
        for (double x = x0 + spacing / 2; x < x1; x += spacing) {
            Vec2 q{x, y};
            try {
                if (winding_number(poly, q) % 2 != 0) out.push_back(q);
            } catch (const std::invalid_argument&) {
                // on-curve sample, skip
            }
        }
    return out;
}

ShapeDomain convex_hull_domain(const std::vector<Vec2>& pts) {
    if (pts.size() < 3) throw std::invalid_argument("convex_hull_domain: need at least 3 points");
    std::vector<Vec2> p = pts;
    std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    p.erase(std::unique(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a == b; }), p.end());
    auto half = [&](bool upper) {
        std::vector<Vec2> h;
        for (std::size_t k = 0; k < p.size(); ++k) {
            Vec2 q = p[upper ? p.size() - 1 - k : k];
            while (h.size() >= 2 && cross(h[h.size() - 1] - h[h.size() - 2], q - h[h.size() - 2]) <= 0)
                h.pop_back();
            h.push_back(q);
        }
        h.pop_back();
        return h;
    };
    std::vector<Vec2> hull = half(false), up = half(true);
    hull.insert(hull.end(), up.begin(), up.end());
    return ShapeDomain(std::move(hull));
}

ShapeDomain v_neighborhood(const SkeletonPolygon& p, int L) {
    if (p.vertices.empty()) throw std::invalid_argument("v_neighborhood: empty skeleton");
    double radius = L + 3.0;
    std::vector<Vec2> pts;
    for (Vec2 v : p.plane_vertices()) {
        pts.push_back({v.x + radius, v.y});
        pts.push_back({v.x - radius, v.y});
        pts.push_back({v.x, v.y + radius});
        pts.push_back({v.x, v.y - radius});
    }
    // hull of (skeleton points + diamond corners) = hull(skeleton) + l1 ball
    return convex_hull_domain(pts);
}

double skeleton_perimeter(const SkeletonPolygon& p, const NormSpec& rho) {
    double total = 0.0;
    std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        Pt d = p.vertices[(i + 1) % n] - p.vertices[i];
        total += rho(d);
    }
    return total;
}

namespace {

std::string skeleton_key(const SkeletonPolygon& p) {
    std::string key;
    for (Pt v : p.vertices) {
        key += std::to_string(v.x);
        key += ',';
        key += std::to_string(v.y);
        key += ';';
    }
    return key;
}

}  // namespace

SkeletonEnergyBoundReport skeleton_energy_bound_check(int L, double beta, const WeightField& field,
                                                      double epsilon, const NormSpec& rho,
                                                      int boundary_cap) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("skeleton_energy_bound_check: epsilon must be in (0,1)");
    SkeletonEnergyBoundReport rep;
    double kappa = field.a();
    double q = 4.0 * std::exp(-beta * kappa);
    rep.conclusive = q < 1.0;

    // every admissible S with |S| <= (cap/4)^2 by the isoperimetric inequality
    int max_sites = (boundary_cap / 4) * (boundary_cap / 4);
    std::map<std::string, SkeletonClassBound> classes;
    enumerate_lattice_sets(max_sites, boundary_cap, [&](const LatticeSet& s) {
        if (!s.in_admissible_family()) return;
        ++rep.sets_enumerated;
        auto skel = extract_skeleton(s, L);
        if (!skel) return;  // trivial marker, outside the skeleton families
        std::string key = skeleton_key(*skel);
        auto it = classes.find(key);
        if (it == classes.end()) {
            SkeletonClassBound cb;
            cb.skeleton = *skel;
            it = classes.emplace(key, std::move(cb)).first;
        }
        it->second.class_sum += std::exp(-beta * hamiltonian(s, field));
        it->second.members += 1;
    });

    // tail over boundary cycles longer than the cap: at most n 4^n cycles of
    // length n through the skeleton root, energy at least kappa n
    double tail = 0.0;
    if (rep.conclusive) {
        double n1 = double(boundary_cap) + 1.0;
        tail = std::pow(q, n1) * (n1 * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));
    }

    rep.all_hold = true;
    for (auto& [key, cb] : classes) {
        cb.tail_bound = tail;
        cb.self_crossing = cb.skeleton.is_self_crossing();
        double rho_sum = skeleton_perimeter(cb.skeleton, rho);
        cb.bound = std::exp(2.0 * field.b() * beta * L) * std::exp(-(1.0 - epsilon) * rho_sum);
        cb.holds = rep.conclusive && (cb.class_sum + cb.tail_bound <= cb.bound * (1.0 + 1e-12));
        if (!cb.holds) rep.all_hold = false;
        rep.classes.push_back(cb);
    }
    if (!rep.conclusive) rep.all_hold = false;
    return rep;
}

std::string to_json(const SkeletonPolygon& p) {
    nlohmann::json j;
    j["L"] = p.L;
    j["vertices"] = nlohmann::json::array();
    for (Pt v : p.vertices) j["vertices"].push_back({v.x, v.y});
    j["self_crossing"] = p.is_self_crossing();
    return j.dump();
}

}  // namespace rangeshape
