#include "rangeshape/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "rangeshape/rng.hpp"

namespace rangeshape {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double path_energy(const DualPath& path, const WeightField& field) {
    double e = 0.0;
    for (const Edge& edge : path.crossed_edges()) e += field.weight(edge);
    return e;
}

DistanceMap::DistanceMap(Pt source, const WeightField& field) : source_(source) {
    const Box& r = field.region();
    x0_ = r.x0;
    y0_ = r.y0;
    x1_ = r.x1 - 1;  // dual vertex (i,j) needs primal sites up to (i+1, j+1)
    y1_ = r.y1 - 1;
    if (x1_ < x0_ || y1_ < y0_) throw std::out_of_range("DistanceMap: region too small for any dual vertex");
    if (!covers(source)) throw std::out_of_range("DistanceMap: source outside field region");
    w_ = x1_ - x0_ + 1;
    std::size_t n = std::size_t(w_) * (y1_ - y0_ + 1);
    dist_.assign(n, kInf);
    parent_.assign(n, -1);

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    std::size_t s = index(source);
    dist_[s] = 0.0;
    heap.push({0.0, int(s)});
    while (!heap.empty()) {
        auto [d, i] = heap.top();
        heap.pop();
        if (d > dist_[std::size_t(i)]) continue;
        Pt u{x0_ + i % w_, y0_ + i / w_};
        for (Pt step : kNeighborStep) {
            Pt v = u + step;
            if (!covers(v)) continue;
            double nd = d + field.weight(dual_step_crossing(u, v));
            std::size_t j = index(v);
            if (nd < dist_[j]) {
                dist_[j] = nd;
                parent_[j] = i;
                heap.push({nd, int(j)});
            }
        }
    }
}

double DistanceMap::at(Pt dual) const {
    if (!covers(dual)) throw std::out_of_range("DistanceMap::at: dual vertex outside map");
    return dist_[index(dual)];
}

DualPath DistanceMap::geodesic_to(Pt dual) const {
    if (!covers(dual)) throw std::out_of_range("DistanceMap::geodesic_to: target outside map");
    if (dist_[index(dual)] == kInf) throw std::runtime_error("DistanceMap::geodesic_to: target unreachable");
    DualPath path;
    int i = int(index(dual));
    while (i >= 0) {
        path.vertices.push_back({x0_ + i % w_, y0_ + i / w_});
        i = parent_[std::size_t(i)];
    }
    std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
}

std::pair<double, DualPath> fpp_distance(Pt x, Pt y, const WeightField& field) {
    DistanceMap map(x, field);
    if (!map.covers(y)) throw std::out_of_range("fpp_distance: endpoint outside field region");
    return {map.at(y), map.geodesic_to(y)};
}

void for_each_self_avoiding_dual_path(
    Pt start_dual, int max_steps, const WeightField& field, double energy_cap,
    const std::function<void(Pt, int, double, const std::vector<Pt>&)>& visit) {
    if (max_steps < 0) return;
    int radius = max_steps + 1;
    int w = 2 * radius + 1;
    std::vector<char> onpath(std::size_t(w) * w, 0);
    std::vector<Pt> stack;
    stack.reserve(std::size_t(max_steps) + 1);
    auto cell = [&](Pt d) { return std::size_t(d.y - start_dual.y + radius) * w + (d.x - start_dual.x + radius); };

    struct Frame {
        Pt v;
        int dir;
        double energy;
    };
    std::vector<Frame> frames;
    frames.push_back({start_dual, 0, 0.0});
    onpath[cell(start_dual)] = 1;
    stack.push_back(start_dual);
    visit(start_dual, 0, 0.0, stack);
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.dir == 4 || int(frames.size()) - 1 == max_steps) {
            onpath[cell(f.v)] = 0;
            stack.pop_back();
            frames.pop_back();
            continue;
        }
        Pt u = f.v + kNeighborStep[f.dir++];
        if (onpath[cell(u)]) continue;
        double e = f.energy + field.weight(dual_step_crossing(f.v, u));
        if (energy_cap >= 0.0 && e > energy_cap) continue;
        onpath[cell(u)] = 1;
        stack.push_back(u);
        visit(u, int(frames.size()), e, stack);
        frames.push_back({u, 0, e});
    }
}

namespace reference {

double fpp_distance_enumerated(Pt x, Pt y, int max_steps, const WeightField& field) {
    double best = kInf;
    Pt target = y;  // dual identification: x maps to dual vertex x
    for_each_self_avoiding_dual_path(
        x, max_steps, field, -1.0,
        [&](Pt end, int, double energy, const std::vector<Pt>&) {
            if (end == target) best = std::min(best, energy);
        });
    return best;
}

}  // namespace reference

std::vector<NormEstimate> estimate_norm(const std::vector<Pt>& directions,
                                        const std::vector<int>& schedule,
                                        const WeightField& field) {
    if (schedule.empty()) throw std::invalid_argument("estimate_norm: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) throw std::invalid_argument("estimate_norm: schedule must increase");

    DistanceMap map({0, 0}, field);
    std::vector<NormEstimate> out(directions.size());
    for (std::size_t k = 0; k < directions.size(); ++k) {
        Pt dir = directions[k];
        NormEstimate& est = out[k];
        est.direction = dir;
        est.lower_bound = field.a() * l1_norm(dir);
        est.upper_bound = field.b() * l1_norm(dir);
        for (int n : schedule) {
            Pt target{n * dir.x, n * dir.y};
            if (!map.covers(target))
                throw std::out_of_range("estimate_norm: region smaller than max n*|x|");
            est.values.push_back({n, map.at(target) / n});
        }
        est.rho_hat = est.values.back().second;
    }
    return out;
}

EstimatedNorm::EstimatedNorm(std::vector<Pt> directions, std::vector<double> values,
                             bool complete_by_lattice_symmetry) {
    if (directions.size() != values.size() || directions.empty())
        throw std::invalid_argument("EstimatedNorm: bad direction/value lists");
    std::vector<std::pair<Vec2, double>> entries;
    for (std::size_t i = 0; i < directions.size(); ++i) {
        Pt d = directions[i];
        if (d.x == 0 && d.y == 0) throw std::invalid_argument("EstimatedNorm: zero direction");
        std::vector<Pt> images{d};
        if (complete_by_lattice_symmetry) {
            images = {{d.x, d.y},  {-d.x, d.y}, {d.x, -d.y},  {-d.x, -d.y},
                      {d.y, d.x},  {-d.y, d.x}, {d.y, -d.x},  {-d.y, -d.x}};
        }
        for (Pt g : images) entries.push_back({{double(g.x), double(g.y)}, values[i]});
    }
    std::sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) {
        return std::atan2(l.first.y, l.first.x) < std::atan2(r.first.y, r.first.x);
    });
    for (const auto& [d, v] : entries) {
        if (!dirs_.empty() && cross(dirs_.back(), d) == 0.0 && dot(dirs_.back(), d) > 0.0) continue;
        dirs_.push_back(d);
        vals_.push_back(v);
    }
    if (dirs_.size() < 3) throw std::invalid_argument("EstimatedNorm: directions do not span the plane");
}

EstimatedNorm::EstimatedNorm(const std::vector<NormEstimate>& estimates, bool complete)
    : EstimatedNorm([&] {
          std::vector<Pt> d;
          for (const auto& e : estimates) d.push_back(e.direction);
          return d;
      }(), [&] {
          std::vector<double> v;
          for (const auto& e : estimates) v.push_back(e.rho_hat);
          return v;
      }(), complete) {}

double EstimatedNorm::operator()(Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    std::size_t n = dirs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& d1 = dirs_[i];
        const Vec2& d2 = dirs_[(i + 1) % n];
        double det = cross(d1, d2);
        if (det <= 0.0) continue;  // wrap sector handled by another pair
        double alpha = cross(v, d2) / det;
        double beta = cross(d1, v) / det;
        if (alpha >= -1e-12 && beta >= -1e-12)
            return std::max(0.0, alpha) * vals_[i] + std::max(0.0, beta) * vals_[(i + 1) % n];
    }
    // wrap-around sector (from last to first direction through the cut)
    const Vec2& d1 = dirs_[n - 1];
    const Vec2& d2 = dirs_[0];
    double det = cross(d1, d2);
    if (det > 0.0) {
        double alpha = cross(v, d2) / det;
        double beta = cross(d1, v) / det;
        if (alpha >= -1e-12 && beta >= -1e-12)
            return std::max(0.0, alpha) * vals_[n - 1] + std::max(0.0, beta) * vals_[0];
    }
    throw std::logic_error("EstimatedNorm: no cone contains the query direction");
}

namespace {

double norm_error_for_source(Pt src, int n, const WeightField& field, const EstimatedNorm& rho) {
    DistanceMap map(src, field);
    double worst = 0.0;
    for (int y = -n; y <= n; ++y)
        for (int x = -n; x <= n; ++x) {
            Pt tgt{x, y};
            double d = map.at(tgt);
            double expect = rho(tgt - src);
            worst = std::max(worst, std::abs(d - expect));
        }
    return worst / n;
}

std::vector<Pt> sample_sources(int n, int num_sources, std::uint64_t seed) {
    std::vector<Pt> src;
    StreamRng rng(seed, 0xa11ce5);
    for (int s = 0; s < num_sources; ++s)
        src.push_back({int(rng.below(std::uint64_t(2 * n + 1))) - n, int(rng.below(std::uint64_t(2 * n + 1))) - n});
    return src;
}

}  // namespace

double uniform_norm_error(int n, int num_sources, const WeightField& field,
                          const EstimatedNorm& rho, std::uint64_t seed) {
    if (n <= 0 || num_sources <= 0) throw std::invalid_argument("uniform_norm_error: bad parameters");
    Box need{-n - 1, -n - 1, n + 1, n + 1};
    if (!field.region().contains({need.x0, need.y0}) || !field.region().contains({need.x1, need.y1}))
        throw std::out_of_range("uniform_norm_error: field region too small");
    std::vector<Pt> src = sample_sources(n, num_sources, seed);
    double worst = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
    for (int s = 0; s < num_sources; ++s)
        worst = std::max(worst, norm_error_for_source(src[std::size_t(s)], n, field, rho));
    return worst;
}

namespace reference {

double uniform_norm_error_serial(int n, int num_sources, const WeightField& field,
                                 const EstimatedNorm& rho, std::uint64_t seed) {
    std::vector<Pt> src = sample_sources(n, num_sources, seed);
    double worst = 0.0;
    for (int s = 0; s < num_sources; ++s)
        worst = std::max(worst, norm_error_for_source(src[std::size_t(s)], n, field, rho));
    return worst;
}

}  // namespace reference

GibbsPathSum gibbs_path_sum(Pt x, Pt y, double beta, const WeightField& field, int length_cap) {
    double kappa = field.a();
    double beta0 = std::log(4.0) / kappa;
    if (!(beta > beta0))
        throw std::invalid_argument("gibbs_path_sum: tail not certified, need beta > log(4)/a");
    if (length_cap < l1_norm(y - x))
        throw std::invalid_argument("gibbs_path_sum: cap below |x-y|_1, no path can reach");

    GibbsPathSum out;
    auto [dist, geo] = fpp_distance(x, y, field);
    out.distance = dist;

    for_each_self_avoiding_dual_path(
        x, length_cap, field, -1.0,
        [&](Pt end, int, double energy, const std::vector<Pt>&) {
            if (end == y) {
                out.truncated_sum += std::exp(-beta * energy);
                ++out.paths;
            }
        });

    // tail: at most n*4^n paths of length n, each of energy >= kappa*n
    double q = 4.0 * std::exp(-beta * kappa);
    double n1 = double(length_cap) + 1.0;
    out.tail_bound = std::pow(q, n1) * (n1 * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));

    // bracket at an intermediate temperature strictly between log(4)/kappa
    // and beta, where the geometric series converges
    out.beta_mid = 0.5 * (beta0 + beta);
    out.lower = std::exp(-beta * dist);
    out.upper = std::exp(-(beta - out.beta_mid) * dist) / (1.0 - 4.0 * std::exp(-out.beta_mid * kappa));
    // certified both ways: the truncated sum is a lower bound on the full
    // sum, truncated + tail an upper bound
    out.bracket_ok = (out.lower <= out.truncated_sum * (1.0 + 1e-12)) &&
                     (out.truncated_sum + out.tail_bound <= out.upper * (1.0 + 1e-12));
    return out;
}

bool geodesic_confinement_check(Pt x, Pt y, const WeightField& field, double q) {
    if (x == y) return true;
    if (q <= 0.0) q = 2.0 * std::sqrt(2.0) * field.b() / field.a();
    auto [dist, geo] = fpp_distance(x, y, field);
    double cap = 2.0 * dist;
    int max_steps = int(std::floor(cap / field.a() + 1e-9));
    double lim = q * l2_norm(y - x);
    bool ok = true;
    for_each_self_avoiding_dual_path(
        x, max_steps, field, cap,
        [&](Pt end, int, double, const std::vector<Pt>& verts) {
            if (end != y || !ok) return;
            for (Pt v : verts) {
                if (l2_norm(v - x) > lim || l2_norm(v - y) > lim) {
                    ok = false;
                    return;
                }
            }
        });
    return ok;
}

}  // namespace rangeshape
