#include "rangeshape/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace rangeshape {

LatticeSet::LatticeSet(std::vector<Pt> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end(), [](Pt a, Pt b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;  // row-major
    });
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    for (Pt p : sites_) bbox_.absorb(p);
    if (!sites_.empty()) {
        grid_.assign(std::size_t(bbox_.width()) * bbox_.height(), -1);
        for (std::size_t i = 0; i < sites_.size(); ++i) grid_[cell(sites_[i])] = int(i);
    }
}

LatticeSet LatticeSet::rectangle(int w, int h, Pt corner) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("rectangle: nonpositive side");
    std::vector<Pt> pts;
    pts.reserve(std::size_t(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) pts.push_back({corner.x + x, corner.y + y});
    return LatticeSet(std::move(pts));
}

bool LatticeSet::is_connected() const {
    if (sites_.empty()) return false;
    std::vector<char> seen(sites_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Pt p = sites_[std::size_t(stack.back())];
        stack.pop_back();
        for (Pt d : kNeighborStep) {
            int j = index_of(p + d);
            if (j >= 0 && !seen[j]) {
                seen[j] = 1;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    return reached == sites_.size();
}

bool LatticeSet::complement_connected() const {
    if (sites_.empty()) return true;
    // flood the complement inside bbox+1 from the outer ring; complement is
    // connected iff every non-site cell of the expanded box gets reached
    Box eb = bbox_.expanded(1);
    int w = eb.width(), h = eb.height();
    std::vector<char> mark(std::size_t(w) * h, 0);
    auto at = [&](int x, int y) -> char& { return mark[std::size_t(y - eb.y0) * w + (x - eb.x0)]; };
    std::vector<Pt> stack{{eb.x0, eb.y0}};
    at(eb.x0, eb.y0) = 1;
    while (!stack.empty()) {
        Pt p = stack.back();
        stack.pop_back();
        for (Pt d : kNeighborStep) {
            Pt q = p + d;
            if (!eb.contains(q) || contains(q)) continue;
            if (!at(q.x, q.y)) {
                at(q.x, q.y) = 1;
                stack.push_back(q);
            }
        }
    }
    for (int y = eb.y0; y <= eb.y1; ++y)
        for (int x = eb.x0; x <= eb.x1; ++x)
            if (!contains({x, y}) && !at(x, y)) return false;
    return true;
}

bool LatticeSet::in_admissible_family() const {
    return !sites_.empty() && contains({0, 0}) && is_connected() && complement_connected();
}

LatticeSet LatticeSet::translated(Pt z) const {
    std::vector<Pt> pts;
    pts.reserve(sites_.size());
    for (Pt p : sites_) pts.push_back(p + z);
    return LatticeSet(std::move(pts));
}

LatticeSet hull(const std::vector<Pt>& sites) { return hull(LatticeSet(sites)); }

LatticeSet hull(const LatticeSet& a) {
    if (a.empty()) return a;
    Box eb = a.bbox().expanded(1);
    int w = eb.width(), h = eb.height();
    std::vector<char> outside(std::size_t(w) * h, 0);
    auto idx = [&](Pt p) { return std::size_t(p.y - eb.y0) * w + (p.x - eb.x0); };
    std::vector<Pt> stack{{eb.x0, eb.y0}};
    outside[idx({eb.x0, eb.y0})] = 1;
    while (!stack.empty()) {
        Pt p = stack.back();
        stack.pop_back();
        for (Pt d : kNeighborStep) {
            Pt q = p + d;
            if (!eb.contains(q) || a.contains(q)) continue;
            if (!outside[idx(q)]) {
                outside[idx(q)] = 1;
                stack.push_back(q);
            }
        }
    }
    std::vector<Pt> filled;
    for (int y = a.bbox().y0; y <= a.bbox().y1; ++y)
        for (int x = a.bbox().x0; x <= a.bbox().x1; ++x)
            if (!outside[idx({x, y})]) filled.push_back({x, y});
    return LatticeSet(std::move(filled));
}

std::vector<Edge> outer_edge_boundary(const LatticeSet& s) {
    std::vector<Edge> edges;
    for (Pt p : s.sites())
        for (Pt d : kNeighborStep) {
            Pt q = p + d;
            if (!s.contains(q)) edges.push_back(edge_between(p, q));
        }
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::vector<Pt> inner_vertex_boundary(const LatticeSet& s) {
    std::vector<Pt> out;
    for (Pt p : s.sites())
        for (Pt d : kNeighborStep)
            if (!s.contains(p + d)) {
                out.push_back(p);
                break;
            }
    return out;
}

Edge dual_step_crossing(Pt a, Pt b) {
    Pt d = b - a;
    if (std::abs(d.x) + std::abs(d.y) != 1) throw std::invalid_argument("dual_step_crossing: not a dual step");
    if (d.x == -1 || d.y == -1) std::swap(a, b);
    if (b.x - a.x == 1) return Edge{{a.x + 1, a.y}, 1};  // horizontal dual step crosses vertical edge
    return Edge{{a.x, a.y + 1}, 0};                      // vertical dual step crosses horizontal edge
}

std::vector<Edge> DualPath::crossed_edges() const {
    std::vector<Edge> out;
    std::size_t n = vertices.size();
    if (n < 2) return out;
    std::size_t m = edge_count();
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(dual_step_crossing(vertices[i], vertices[(i + 1) % n]));
    return out;
}

bool DualPath::is_nearest_neighbor_path() const {
    std::size_t n = vertices.size(), m = edge_count();
    for (std::size_t i = 0; i < m; ++i)
        if (l1_norm(vertices[(i + 1) % n] - vertices[i]) != 1) return false;
    return true;
}

bool DualPath::is_self_avoiding() const {
    std::vector<Pt> v = vertices;
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

DualPath boundary_curve(const LatticeSet& s) {
    if (!s.in_admissible_family()) {
        std::string why = s.empty()               ? "set is empty"
                          : !s.contains({0, 0})   ? "set does not contain the origin"
                          : !s.is_connected()     ? "set is not connected"
                                                  : "complement is not connected";
        throw std::invalid_argument("boundary_curve: " + why);
    }
    // dual edges of the outer boundary, stored as adjacency between dual vertices
    std::unordered_map<Pt, std::array<Pt, 2>, PtHash> nbr;
    std::unordered_map<Pt, int, PtHash> deg;
    auto add = [&](Pt u, Pt v) {
        int& d = deg[u];
        if (d >= 2) throw std::runtime_error("boundary_curve: dual vertex degree exceeds 2");
        nbr[u][std::size_t(d)] = v;
        ++d;
    };
    std::vector<Edge> boundary = outer_edge_boundary(s);
    for (const Edge& e : boundary) {
        Pt u, v;
        if (e.axis == 0) {  // horizontal primal edge -> vertical dual edge
            u = {e.a.x, e.a.y - 1};
            v = {e.a.x, e.a.y};
        } else {  // vertical primal edge -> horizontal dual edge
            u = {e.a.x - 1, e.a.y};
            v = {e.a.x, e.a.y};
        }
        add(u, v);
        add(v, u);
    }
    Pt start = nbr.begin()->first;
    for (const auto& kv : nbr)
        if (kv.first < start) start = kv.first;

    DualPath path;
    path.closed = true;
    path.vertices.reserve(boundary.size());
    Pt prev = start, cur = nbr[start][0];
    path.vertices.push_back(start);
    while (cur != start) {
        path.vertices.push_back(cur);
        const auto& nn = nbr[cur];
        Pt nxt = (nn[0] == prev) ? nn[1] : nn[0];
        prev = cur;
        cur = nxt;
    }
    if (path.vertices.size() != boundary.size())
        throw std::runtime_error("boundary_curve: dual edges do not form a single cycle");

    // orient counterclockwise: positive signed area keeps the interior on the left
    long long area2 = 0;
    std::size_t n = path.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        Pt p = path.vertices[i], q = path.vertices[(i + 1) % n];
        area2 += (long long)p.x * q.y - (long long)q.x * p.y;
    }
    if (area2 < 0) std::reverse(path.vertices.begin() + 1, path.vertices.end());
    return path;
}

namespace {

int eccentricity(const LatticeSet& s, int source, std::vector<int>& dist, std::vector<int>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(source);
    dist[std::size_t(source)] = 0;
    int ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int i = queue[head];
        Pt p = s.sites()[std::size_t(i)];
        for (Pt d : kNeighborStep) {
            int j = s.index_of(p + d);
            if (j >= 0 && dist[std::size_t(j)] < 0) {
                dist[std::size_t(j)] = dist[std::size_t(i)] + 1;
                ecc = std::max(ecc, dist[std::size_t(j)]);
                queue.push_back(j);
            }
        }
    }
    return ecc;
}

}  // namespace

namespace reference {

int intrinsic_diameter_serial(const LatticeSet& s) {
    if (s.empty()) throw std::invalid_argument("intrinsic_diameter: empty set");
    if (!s.is_connected()) throw std::invalid_argument("intrinsic_diameter: set is not connected");
    std::vector<int> dist(s.size()), queue;
    queue.reserve(s.size());
    int diam = 0;
    for (std::size_t i = 0; i < s.size(); ++i) diam = std::max(diam, eccentricity(s, int(i), dist, queue));
    return diam;
}

}  // namespace reference

int intrinsic_diameter(const LatticeSet& s) {
    if (s.empty()) throw std::invalid_argument("intrinsic_diameter: empty set");
    if (!s.is_connected()) throw std::invalid_argument("intrinsic_diameter: set is not connected");
    int n = int(s.size());
    int diam = 0;
#pragma omp parallel
    {
        std::vector<int> dist(s.size()), queue;
        queue.reserve(s.size());
        int local = 0;
#pragma omp for schedule(dynamic, 16) nowait
        for (int i = 0; i < n; ++i) local = std::max(local, eccentricity(s, i, dist, queue));
#pragma omp critical
        diam = std::max(diam, local);
    }
    return diam;
}

double confinement_scale(double t, double beta) {
    if (!(t > 0.0) || !(beta > 0.0)) throw std::invalid_argument("confinement_scale: need t>0 and beta>0");
    return std::cbrt(t / beta);
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty input");
    auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0.0;
        for (const Vec2& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& q : to) {
                double dx = p.x - q.x, dy = p.y - q.y;
                best = std::min(best, dx * dx + dy * dy);
                if (best == 0.0) break;
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const LatticeSet& a, const LatticeSet& b) {
    auto pts = [](const LatticeSet& s) {
        std::vector<Vec2> v;
        v.reserve(s.size());
        for (Pt p : s.sites()) v.push_back({double(p.x), double(p.y)});
        return v;
    };
    return hausdorff_distance(pts(a), pts(b));
}

namespace {

// Redelmeier-style growth rooted at the origin: every finite connected set
// containing 0 is generated exactly once.
struct Enumerator {
    int max_sites;
    int max_boundary;
    int radius;
    int width;
    const std::function<void(const LatticeSet&)>* visit;

    std::vector<char> seen;
    std::vector<int> frontier;
    std::vector<Pt> current;
    Box bbox;
    int boundary_edges = 0;

    int cell_of(Pt p) const { return (p.y + radius) * width + (p.x + radius); }
    bool inside(Pt p) const {
        return p.x >= -radius && p.x <= radius && p.y >= -radius && p.y <= radius;
    }

    void run() {
        seen.assign(std::size_t(width) * width, 0);
        frontier.clear();
        current.clear();
        bbox = Box{};
        Pt origin{0, 0};
        seen[std::size_t(cell_of(origin))] = 1;
        frontier.push_back(cell_of(origin));
        grow(0);
    }

    void emit() {
        LatticeSet s(current);
        if (!s.complement_connected()) return;
        if (max_boundary > 0) {
            int b = 0;
            for (Pt p : s.sites())
                for (Pt d : kNeighborStep)
                    if (!s.contains(p + d)) ++b;
            if (b > max_boundary) return;
        }
        (*visit)(s);
    }

    void grow(std::size_t from) {
        std::size_t limit = frontier.size();
        for (std::size_t k = from; k < limit; ++k) {
            int c = frontier[k];
            Pt p{c % width - radius, c / width - radius};

            Box nb = bbox;
            nb.absorb(p);
            // a set never has fewer boundary edges than twice its bbox half-perimeter
            if (max_boundary > 0 && 2 * (nb.width() + nb.height()) > max_boundary) continue;

            Box ob = bbox;
            bbox = nb;
            current.push_back(p);
            std::size_t pushed_from = frontier.size();
            if (int(current.size()) < max_sites) {
                for (Pt d : kNeighborStep) {
                    Pt q = p + d;
                    if (!inside(q)) continue;
                    char& m = seen[std::size_t(cell_of(q))];
                    if (!m) {
                        m = 1;
                        frontier.push_back(cell_of(q));
                    }
                }
            }
            emit();
            if (int(current.size()) < max_sites) grow(k + 1);
            for (std::size_t j = pushed_from; j < frontier.size(); ++j)
                seen[std::size_t(frontier[j])] = 0;
            frontier.resize(pushed_from);
            current.pop_back();
            bbox = ob;
        }
    }
};

}  // namespace

void enumerate_lattice_sets(int max_sites, int max_boundary,
                            const std::function<void(const LatticeSet&)>& visit) {
    if (max_sites <= 0) return;
    Enumerator e;
    e.max_sites = max_sites;
    e.max_boundary = max_boundary;
    e.radius = max_sites;  // connected sets containing 0 stay within this radius
    if (max_boundary > 0) e.radius = std::min(e.radius, max_boundary / 2);
    e.width = 2 * e.radius + 1;
    e.visit = &visit;
    e.run();
}

std::string to_json(const LatticeSet& s) {
    nlohmann::json j = nlohmann::json::array();
    for (Pt p : s.sites()) j.push_back({p.x, p.y});
    return j.dump();
}

LatticeSet lattice_set_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Pt> pts;
    for (const auto& e : j) pts.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return LatticeSet(std::move(pts));
}

}  // namespace rangeshape
