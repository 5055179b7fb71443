#include "rangeshape/walk.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace rangeshape {

Pt WalkTrajectory::position_at(double s) const {
    if (s < 0.0 || s > horizon) throw std::invalid_argument("position_at: time outside [0, horizon]");
    std::size_t idx = std::size_t(std::upper_bound(jump_times.begin(), jump_times.end(), s) -
                                  jump_times.begin());
    return positions[idx];
}

std::unordered_map<Pt, double, PtHash> WalkTrajectory::local_times() const {
    std::unordered_map<Pt, double, PtHash> lt;
    double prev = 0.0;
    for (std::size_t i = 0; i < jump_times.size(); ++i) {
        lt[positions[i]] += jump_times[i] - prev;
        prev = jump_times[i];
    }
    lt[positions.back()] += horizon - prev;
    return lt;
}

std::vector<Pt> WalkTrajectory::visited() const {
    std::vector<Pt> v = positions;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

LatticeSet WalkTrajectory::range() const { return hull(visited()); }

WalkTrajectory simulate_free_walk(double t, std::uint64_t seed) {
    if (t < 0.0) throw std::invalid_argument("simulate_free_walk: negative horizon");
    StreamRng rng(seed);
    WalkTrajectory traj;
    traj.horizon = t;
    traj.positions.push_back({0, 0});
    double clock = rng.exponential(4.0);
    while (clock < t) {
        traj.jump_times.push_back(clock);
        traj.positions.push_back(traj.positions.back() + kNeighborStep[rng.below(4)]);
        clock += rng.exponential(4.0);
    }
    return traj;
}

// ------------------------------------------------------------ bridge law

namespace {

double log_factorial(int n) {
    static std::vector<double> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        table.resize(1 << 18);
        table[0] = 0.0;
        for (std::size_t i = 1; i < table.size(); ++i) table[i] = table[i - 1] + std::log(double(i));
    });
    if (n < int(table.size())) return table[std::size_t(n)];
    return std::lgamma(double(n) + 1.0);
}

}  // namespace

// Jump count of a rate-2 one-dimensional bridge with displacement delta over
// duration tau: P(n) proportional to tau^n / (k! (n-k)!) with k = (n+delta)/2.
int sample_bridge_jump_count_1d(double tau, int delta, StreamRng& rng) {
    int adelta = std::abs(delta);
    if (tau <= 0.0) {
        if (adelta != 0) throw std::logic_error("bridge: zero duration with nonzero displacement");
        return 0;
    }
    double mean = 2.0 * tau;
    int lo = adelta;
    int hi = std::max(lo, int(mean + 12.0 * std::sqrt(mean + 4.0) + 20.0));
    if (((hi - lo) & 1) != 0) ++hi;
    double ltau = std::log(tau);
    std::vector<double> logw;
    logw.reserve(std::size_t((hi - lo) / 2 + 1));
    double best = -1e300;
    for (int n = lo; n <= hi; n += 2) {
        int k = (n + delta) / 2;
        double lw = n * ltau - log_factorial(k) - log_factorial(n - k);
        logw.push_back(lw);
        best = std::max(best, lw);
    }
    double total = 0.0;
    for (double& lw : logw) {
        lw = std::exp(lw - best);
        total += lw;
    }
    double u = rng.u01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) {
        acc += logw[i];
        if (u <= acc) return lo + 2 * int(i);
    }
    return hi;
}

namespace {

struct Bridge1D {
    std::vector<int> steps;  // +1 / -1 per jump
};

// uniformly random arrangement of the up/down steps
Bridge1D sample_bridge_steps(double tau, int delta, StreamRng& rng) {
    int n = sample_bridge_jump_count_1d(tau, delta, rng);
    int ups = (n + delta) / 2;
    Bridge1D b;
    b.steps.reserve(std::size_t(n));
    int remaining = n;
    for (int i = 0; i < n; ++i) {
        double p = double(ups) / remaining;
        if (rng.u01() < p) {
            b.steps.push_back(1);
            --ups;
        } else {
            b.steps.push_back(-1);
        }
        --remaining;
    }
    return b;
}

}  // namespace

// exact bridge of the rate-4 walk: independent rate-2 coordinate bridges
BridgeSegment sample_free_bridge(Pt from, Pt to, double s1, double s2, StreamRng& rng) {
    double tau = s2 - s1;
    Bridge1D bx = sample_bridge_steps(tau, to.x - from.x, rng);
    Bridge1D by = sample_bridge_steps(tau, to.y - from.y, rng);
    std::vector<double> tx(bx.steps.size()), ty(by.steps.size());
    for (double& v : tx) v = rng.uniform(s1, s2);
    for (double& v : ty) v = rng.uniform(s1, s2);
    std::sort(tx.begin(), tx.end());
    std::sort(ty.begin(), ty.end());
    BridgeSegment w;
    std::size_t ix = 0, iy = 0;
    Pt cur = from;
    while (ix < tx.size() || iy < ty.size()) {
        bool takex = iy >= ty.size() || (ix < tx.size() && tx[ix] < ty[iy]);
        if (takex) {
            cur.x += bx.steps[ix];
            w.times.push_back(tx[ix++]);
        } else {
            cur.y += by.steps[iy];
            w.times.push_back(ty[iy++]);
        }
        w.positions.push_back(cur);
    }
    return w;
}

BridgeSegment sample_free_segment(Pt from, double s1, double s2, StreamRng& rng) {
    BridgeSegment w;
    Pt cur = from;
    double clock = s1 + rng.exponential(4.0);
    while (clock < s2) {
        cur = cur + kNeighborStep[rng.below(4)];
        w.times.push_back(clock);
        w.positions.push_back(cur);
        clock += rng.exponential(4.0);
    }
    return w;
}

// --------------------------------------------------------- path-space MCMC

PathSpaceChain::PathSpaceChain(double t, double beta, const WeightField& field, std::uint64_t seed,
                               double window_fraction)
    : t_(t), beta_(beta), field_(&field), rng_(seed), window_fraction_(window_fraction) {
    if (!(t > 0.0)) throw std::invalid_argument("PathSpaceChain: t must be positive");
    if (beta < 0.0) throw std::invalid_argument("PathSpaceChain: beta must be nonnegative");
    path_ = simulate_free_walk(t, counter_hash(seed, 0x1717));
    for (const Pt& p : path_.positions) ++occupancy_[p];
    refresh_range();
}

void PathSpaceChain::refresh_range() {
    std::vector<Pt> support;
    support.reserve(occupancy_.size());
    for (const auto& [p, c] : occupancy_)
        if (c > 0) support.push_back(p);
    range_ = hull(support);
    energy_ = 0.0;
    boundary_edges_ = 0;
    for (Pt p : range_.sites())
        for (Pt d : kNeighborStep) {
            Pt q = p + d;
            if (range_.contains(q)) continue;
            energy_ += field_->weight(edge_between(p, q));
            ++boundary_edges_;
        }
}

double PathSpaceChain::recompute_error() {
    double cached = energy_;
    occupancy_.clear();
    for (const Pt& p : path_.positions) ++occupancy_[p];
    refresh_range();
    return std::abs(cached - energy_);
}

void PathSpaceChain::step() {
    ++proposals_;
    double s1 = rng_.uniform(0.0, t_);
    // mixture of window scales: base, base/4, ..., base/256
    double scale = window_fraction_ * std::pow(0.25, double(rng_.below(5)));
    double s2 = s1 + rng_.uniform(0.0, t_ * scale);
    const auto& J = path_.jump_times;
    const auto& P = path_.positions;
    std::size_t jw0 = std::size_t(std::upper_bound(J.begin(), J.end(), s1) - J.begin());
    bool trailing = s2 >= t_;
    std::size_t jend = trailing
                           ? J.size()
                           : std::size_t(std::lower_bound(J.begin(), J.end(), s2) - J.begin());
    if (jend < jw0) jend = jw0;  // jump exactly at s1 with an empty window
    Pt a = P[jw0];
    BridgeSegment w = trailing ? sample_free_segment(a, s1, t_, rng_)
                               : sample_free_bridge(a, P[jend], s1, s2, rng_);

    // occupancy delta: positions entered by removed jumps leave, new ones come
    // in; sites whose visit count crosses zero are the only hull-relevant ones
    std::vector<Pt> removed(P.begin() + long(jw0) + 1,
                            trailing ? P.end() : P.begin() + long(jend) + 1);
    std::vector<Pt> toggled;
    for (const Pt& p : removed) {
        auto it = occupancy_.find(p);
        if (--(it->second) == 0) {
            occupancy_.erase(it);
            toggled.push_back(p);
        }
    }
    for (const Pt& p : w.positions)
        if (++occupancy_[p] == 1) toggled.push_back(p);

    // toggles strictly inside the current range leave the hull (and hence the
    // energy) unchanged: vanished interior sites become holes, fresh ones are
    // absorbed; such moves are free and always accepted
    bool interior_only = true;
    for (const Pt& p : toggled) {
        if (!range_.contains(p)) {
            interior_only = false;
            break;
        }
        for (Pt d : kNeighborStep)
            if (!range_.contains(p + d)) {
                interior_only = false;
                break;
            }
        if (!interior_only) break;
    }

    if (!interior_only) {
        std::vector<Pt> support;
        support.reserve(occupancy_.size());
        for (const auto& [p, c] : occupancy_) support.push_back(p);
        LatticeSet new_range = hull(support);
        double new_energy = 0.0;
        std::size_t new_boundary = 0;
        for (Pt p : new_range.sites())
            for (Pt d : kNeighborStep) {
                Pt q = p + d;
                if (new_range.contains(q)) continue;
                new_energy += field_->weight(edge_between(p, q));
                ++new_boundary;
            }

        double dh = new_energy - energy_;
        bool accept = dh <= 0.0 || rng_.u01() < std::exp(-beta_ * dh);
        if (!accept) {
            for (const Pt& p : w.positions) {
                auto it = occupancy_.find(p);
                if (--(it->second) == 0) occupancy_.erase(it);
            }
            for (const Pt& p : removed) ++occupancy_[p];
            return;
        }
        energy_ = new_energy;
        boundary_edges_ = new_boundary;
        range_ = std::move(new_range);
    }
    ++accepted_;
    std::vector<double> nj;
    std::vector<Pt> np;
    nj.reserve(jw0 + w.times.size() + (J.size() - jend));
    np.reserve(nj.capacity() + 1);
    nj.assign(J.begin(), J.begin() + long(jw0));
    nj.insert(nj.end(), w.times.begin(), w.times.end());
    np.assign(P.begin(), P.begin() + long(jw0) + 1);
    np.insert(np.end(), w.positions.begin(), w.positions.end());
    if (!trailing) {
        nj.insert(nj.end(), J.begin() + long(jend), J.end());
        // w ends at the old position P[jend]; keep the suffix after it
        np.insert(np.end(), P.begin() + long(jend) + 1, P.end());
    }
    path_.jump_times = std::move(nj);
    path_.positions = std::move(np);
}

std::vector<GibbsSample> mcmc_sample_gibbs(const GibbsSamplerConfig& cfg, const WeightField& field,
                                           GibbsDiagnostics* diag) {
    PathSpaceChain chain(cfg.t, cfg.beta, field, cfg.seed, cfg.window_fraction);
    std::vector<GibbsSample> samples;
    GibbsDiagnostics local;
    double max_err = 0.0;
    long long sweep = 0;
    auto do_sweep = [&]() {
        for (int w = 0; w < cfg.windows_per_sweep; ++w) chain.step();
        ++sweep;
        local.energy_trace.push_back(chain.energy());
        if (cfg.recheck_interval > 0 && sweep % cfg.recheck_interval == 0)
            max_err = std::max(max_err, chain.recompute_error());
    };
    bool ramp = cfg.annealed_init && cfg.beta > 0.5 && cfg.burn_in > 1;
    for (int i = 0; i < cfg.burn_in; ++i) {
        if (ramp) chain.set_beta(0.5 * std::pow(cfg.beta / 0.5, double(i) / (cfg.burn_in - 1)));
        do_sweep();
    }
    chain.set_beta(cfg.beta);
    for (int i = 0; i < cfg.sweeps; ++i) {
        do_sweep();
        if ((i + 1) % std::max(1, cfg.thinning) == 0) {
            GibbsSample s;
            s.energy = chain.energy();
            s.boundary_edges = chain.boundary_edges();
            s.range_sites = chain.range().size();
            s.sweep = sweep;
            s.acceptance_rate = chain.proposals() > 0
                                    ? double(chain.accepted()) / double(chain.proposals())
                                    : 0.0;
            if (cfg.keep_ranges) s.range = chain.range();
            samples.push_back(std::move(s));
        }
    }
    max_err = std::max(max_err, chain.recompute_error());
    if (diag) {
        diag->energy_trace = std::move(local.energy_trace);
        diag->acceptance_rate =
            chain.proposals() > 0 ? double(chain.accepted()) / double(chain.proposals()) : 0.0;
        diag->proposals = chain.proposals();
        diag->accepted = chain.accepted();
        diag->max_bookkeeping_error = max_err;
        // integrated autocorrelation of the energy trace, self-truncating sum
        const auto& e = diag->energy_trace;
        std::size_t n = e.size();
        double act = 1.0;
        if (n > 16) {
            double mean = 0.0;
            for (double v : e) mean += v;
            mean /= double(n);
            double var = 0.0;
            for (double v : e) var += (v - mean) * (v - mean);
            var /= double(n);
            if (var > 0.0) {
                for (std::size_t lag = 1; lag < n / 4; ++lag) {
                    double c = 0.0;
                    for (std::size_t i = 0; i + lag < n; ++i) c += (e[i] - mean) * (e[i + lag] - mean);
                    c /= double(n - lag) * var;
                    if (c <= 0.0) break;
                    act += 2.0 * c;
                }
            }
        }
        diag->autocorrelation_time = act;
    }
    return samples;
}

ShapeDistanceStats shape_distance_diagnostic(const std::vector<LatticeSet>& samples,
                                             const ShapeDomain& u0, double t, double beta) {
    ShapeDistanceStats stats;
    stats.scale = confinement_scale(t, beta);
    double r = stats.scale;
    stats.distances.resize(samples.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < (long long)samples.size(); ++i) {
        const LatticeSet& s = samples[std::size_t(i)];
        std::vector<Vec2> pts;
        pts.reserve(s.size());
        for (Pt p : s.sites()) pts.push_back({p.x / r, p.y / r});
        stats.distances[std::size_t(i)] = hausdorff_to_translates(pts, u0, 0.5 / r);
    }
    std::vector<double> sorted = stats.distances;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty()) {
        stats.median = sorted[sorted.size() / 2];
        double m = 0.0;
        for (double d : sorted) m += d;
        stats.mean = m / double(sorted.size());
    }
    return stats;
}

}  // namespace rangeshape
