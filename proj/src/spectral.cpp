#include "rangeshape/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rangeshape/rng.hpp"

namespace rangeshape {

namespace {

double dot_v(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    std::size_t n = a.size();
#pragma omp parallel for reduction(+ : s) schedule(static) if (n > 20000)
    for (long long i = 0; i < (long long)n; ++i) s += a[std::size_t(i)] * b[std::size_t(i)];
    return s;
}

double norm_v(const std::vector<double>& a) { return std::sqrt(dot_v(a, a)); }

void scale_v(std::vector<double>& a, double s) {
    for (double& x : a) x *= s;
}

void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
    std::size_t n = y.size();
#pragma omp parallel for schedule(static) if (n > 20000)
    for (long long i = 0; i < (long long)n; ++i) y[std::size_t(i)] += alpha * x[std::size_t(i)];
}

}  // namespace

DirichletOperator::DirichletOperator(const LatticeSet& s) : set_(&s), n_(s.size()) {
    nbr_.assign(4 * n_, -1);
    const auto& sites = s.sites();
    for (std::size_t i = 0; i < n_; ++i)
        for (int d = 0; d < 4; ++d) nbr_[4 * i + std::size_t(d)] = s.index_of(sites[i] + kNeighborStep[d]);
}

void DirichletOperator::apply(const double* x, double* y) const {
    long long n = (long long)n_;
#pragma omp parallel for schedule(static) if (n > 4000)
    for (long long i = 0; i < n; ++i) {
        const int* nb = &nbr_[4 * std::size_t(i)];
        double acc = 4.0 * x[i];
        if (nb[0] >= 0) acc -= x[nb[0]];
        if (nb[1] >= 0) acc -= x[nb[1]];
        if (nb[2] >= 0) acc -= x[nb[2]];
        if (nb[3] >= 0) acc -= x[nb[3]];
        y[i] = acc;
    }
}

namespace reference {

void dirichlet_apply_serial(const DirichletOperator& op, const double* x, double* y) {
    std::size_t n = op.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 4.0 * x[i];
        for (int d = 0; d < 4; ++d) {
            int j = op.neighbor(i, d);
            if (j >= 0) acc -= x[std::size_t(j)];
        }
        y[i] = acc;
    }
}

void dense_spectrum(const LatticeSet& s, std::vector<double>& values,
                    std::vector<std::vector<double>>& vectors) {
    std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("dense_spectrum: empty set");
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = 4.0;
        for (Pt d : kNeighborStep) {
            int j = s.index_of(s.sites()[i] + d);
            if (j >= 0) a[i * n + std::size_t(j)] = -1.0;
        }
    }
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    // cyclic Jacobi with threshold
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-28 * n * n) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
    values.resize(n);
    vectors.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = a[order[k] * n + order[k]];
        for (std::size_t i = 0; i < n; ++i) vectors[k][i] = v[i * n + order[k]];
    }
}

}  // namespace reference

namespace {

// CG for the SPD stencil; returns iterations used
int cg_solve(const DirichletOperator& op, const std::vector<double>& b, std::vector<double>& x,
             double rtol, int maxit) {
    std::size_t n = b.size();
    std::vector<double> r(n), p(n), ap(n);
    op.apply(x.data(), ap.data());
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    p = r;
    double rr = dot_v(r, r);
    double bnorm = norm_v(b);
    double stop = rtol * bnorm;
    int it = 0;
    for (; it < maxit && std::sqrt(rr) > stop; ++it) {
        op.apply(p.data(), ap.data());
        double alpha = rr / dot_v(p, ap);
        axpy(x, alpha, p);
        axpy(r, -alpha, ap);
        double rr2 = dot_v(r, r);
        double beta = rr2 / rr;
        rr = rr2;
        std::size_t m = n;
#pragma omp parallel for schedule(static) if (m > 20000)
        for (long long i = 0; i < (long long)m; ++i) p[std::size_t(i)] = r[std::size_t(i)] + beta * p[std::size_t(i)];
    }
    return it;
}

struct EigenSolveResult {
    double lambda = 0.0;
    std::vector<double> vec;
    double residual = 0.0;
};

// inexact inverse power iteration; deflate against an optional fixed vector
EigenSolveResult lowest_eigenpair(const DirichletOperator& op, std::vector<double> v0,
                                  const std::vector<double>* deflate, double tol) {
    std::size_t n = op.size();
    std::vector<double> v = std::move(v0), av(n), z(n);
    auto project = [&](std::vector<double>& w) {
        if (deflate) axpy(w, -dot_v(w, *deflate), *deflate);
    };
    project(v);
    scale_v(v, 1.0 / norm_v(v));
    double lambda = 0.0, resid = 1.0;
    for (int outer = 0; outer < 400; ++outer) {
        op.apply(v.data(), av.data());
        lambda = dot_v(v, av);
        double rs = 0.0;
        if (deflate) {
            // residual within the deflated subspace
            std::vector<double> rvec(n);
            for (std::size_t i = 0; i < n; ++i) rvec[i] = av[i] - lambda * v[i];
            project(rvec);
            rs = norm_v(rvec);
        } else {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = av[i] - lambda * v[i];
                s += d * d;
            }
            rs = std::sqrt(s);
        }
        resid = rs;
        if (resid <= tol) break;
        double rtol = std::clamp(0.01 * resid / std::max(lambda, 1e-12), 1e-14, 0.05);
        z = v;  // warm start
        cg_solve(op, v, z, rtol, int(20 * std::sqrt(double(n)) + 2000));
        project(z);
        double zn = norm_v(z);
        if (!(zn > 0.0)) throw std::runtime_error("eigensolver: lost the iterate");
        scale_v(z, 1.0 / zn);
        v.swap(z);
    }
    return {lambda, std::move(v), resid};
}

}  // namespace

SpectralPair principal_eigenpair(const LatticeSet& s) {
    if (s.empty()) throw std::invalid_argument("principal_eigenpair: empty set");
    if (!s.is_connected()) throw std::invalid_argument("principal_eigenpair: set is not connected");
    std::size_t n = s.size();
    SpectralPair out;
    if (n == 1) {
        out.lambda1 = out.lambda2 = 4.0;  // a single site carries one eigenvalue only
        out.h1 = {1.0};
        return out;
    }
    if (n <= 24) {
        std::vector<double> vals;
        std::vector<std::vector<double>> vecs;
        reference::dense_spectrum(s, vals, vecs);
        out.lambda1 = vals[0];
        out.lambda2 = vals[1];
        out.h1 = vecs[0];
    } else {
        DirichletOperator op(s);
        std::vector<double> ones(n, 1.0 / std::sqrt(double(n)));
        EigenSolveResult first = lowest_eigenpair(op, ones, nullptr, 1e-11);
        out.lambda1 = first.lambda;
        out.residual1 = first.residual;
        out.h1 = std::move(first.vec);

        // second eigenvector seed: odd profile along the wider axis
        std::vector<double> seed(n);
        const Box& bb = s.bbox();
        bool wide = bb.width() >= bb.height();
        double mid = wide ? 0.5 * (bb.x0 + bb.x1) : 0.5 * (bb.y0 + bb.y1);
        for (std::size_t i = 0; i < n; ++i) {
            Pt p = s.sites()[i];
            seed[i] = ((wide ? p.x : p.y) - mid) * out.h1[i];
        }
        if (norm_v(seed) < 1e-12) {
            StreamRng rng(12345);
            for (double& x : seed) x = rng.normal();
        }
        EigenSolveResult second = lowest_eigenpair(op, std::move(seed), &out.h1, 1e-10);
        out.lambda2 = second.lambda;
    }
    // principal eigenfunction is of one sign; fix it positive
    double mass = std::accumulate(out.h1.begin(), out.h1.end(), 0.0);
    if (mass < 0.0)
        for (double& x : out.h1) x = -x;
    double nn = norm_v(out.h1);
    scale_v(out.h1, 1.0 / nn);
    if (out.residual1 == 0.0 && n > 1) {
        DirichletOperator op(s);
        std::vector<double> av(n);
        op.apply(out.h1.data(), av.data());
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = av[i] - out.lambda1 * out.h1[i];
            r += d * d;
        }
        out.residual1 = std::sqrt(r);
    }
    return out;
}

double principal_eigenvalue_only(const LatticeSet& s) {
    if (s.empty()) throw std::invalid_argument("principal_eigenvalue_only: empty set");
    if (!s.is_connected()) throw std::invalid_argument("principal_eigenvalue_only: set is not connected");
    std::size_t n = s.size();
    if (n == 1) return 4.0;
    DirichletOperator op(s);
    std::vector<double> ones(n, 1.0 / std::sqrt(double(n)));
    return lowest_eigenpair(op, std::move(ones), nullptr, 1e-11).lambda;
}

double survival_probability(const LatticeSet& s, Pt x, double t, std::size_t dense_limit) {
    int ix = s.index_of(x);
    if (ix < 0) throw std::invalid_argument("survival_probability: start site outside the set");
    if (t < 0.0) throw std::invalid_argument("survival_probability: negative time");
    if (t == 0.0) return 1.0;
    double p = 0.0;
    if (s.size() <= dense_limit) {
        std::vector<double> vals;
        std::vector<std::vector<double>> vecs;
        reference::dense_spectrum(s, vals, vecs);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            double mass = std::accumulate(vecs[k].begin(), vecs[k].end(), 0.0);
            p += std::exp(-t * vals[k]) * vecs[k][std::size_t(ix)] * mass;
        }
    } else {
        SpectralPair sp = principal_eigenpair(s);
        double mass = std::accumulate(sp.h1.begin(), sp.h1.end(), 0.0);
        p = std::exp(-t * sp.lambda1) * sp.h1[std::size_t(ix)] * mass;
        // truncation remainder is bounded by |S|^{3/2} e^{-t lambda2}
    }
    return std::clamp(p, 0.0, 1.0);
}

double range_probability_upper_bound(const LatticeSet& s, double t) {
    SpectralPair sp = principal_eigenpair(s);
    return std::pow(double(s.size()), 1.5) * std::exp(-t * sp.lambda1);
}

DoobChain doob_chain(const LatticeSet& s) {
    DoobChain chain;
    chain.spectrum = principal_eigenpair(s);
    chain.states = s;
    chain.clock_rate = 4.0 - chain.spectrum.lambda1;
    std::size_t n = s.size();
    chain.step_prob.assign(n, {0.0, 0.0, 0.0, 0.0});
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hx = chain.spectrum.h1[i];
        double row = 0.0;
        for (int d = 0; d < 4; ++d) {
            int j = s.index_of(s.sites()[i] + kNeighborStep[d]);
            if (j < 0) continue;
            double p = chain.spectrum.h1[std::size_t(j)] / (chain.clock_rate * hx);
            chain.step_prob[i][std::size_t(d)] = p;
            row += p;
        }
        worst = std::max(worst, std::abs(row - 1.0));
    }
    chain.row_sum_error = worst;
    return chain;
}

WalkTrajectory simulate_conditioned_walk(const DoobChain& chain, Pt start, double t,
                                         std::uint64_t seed) {
    int idx = chain.states.index_of(start);
    if (idx < 0) throw std::invalid_argument("simulate_conditioned_walk: start outside the set");
    StreamRng rng(seed);
    WalkTrajectory traj;
    traj.horizon = t;
    traj.positions.push_back(start);
    double clock = rng.exponential(chain.clock_rate);
    while (clock < t) {
        const auto& probs = chain.step_prob[std::size_t(idx)];
        double total = probs[0] + probs[1] + probs[2] + probs[3];
        double u = rng.u01() * total;
        int d = 0;
        double acc = probs[0];
        while (d < 3 && u > acc) acc += probs[std::size_t(++d)];
        Pt next = traj.positions.back() + kNeighborStep[d];
        idx = chain.states.index_of(next);
        if (idx < 0) throw std::logic_error("conditioned walk left the set");
        traj.jump_times.push_back(clock);
        traj.positions.push_back(next);
        clock += rng.exponential(chain.clock_rate);
    }
    return traj;
}

EigenfunctionBoundsReport eigenfunction_bounds_report(const LatticeSet& s) {
    if (!s.contains({0, 0}))
        throw std::invalid_argument("eigenfunction_bounds_report: set must contain the origin");
    SpectralPair sp = principal_eigenpair(s);
    EigenfunctionBoundsReport r;
    std::size_t n = s.size();
    double h0 = sp.h1[std::size_t(s.index_of({0, 0}))];
    r.origin_mass = h0 * h0 * double(n);
    double hmax = 0.0, hmin = std::numeric_limits<double>::infinity();
    for (double v : sp.h1) {
        hmax = std::max(hmax, v);
        hmin = std::min(hmin, v);
    }
    r.max_mass = hmax * hmax * double(n);
    r.min_value = hmin;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (int d = 0; d < 4; ++d) {
            int j = s.index_of(s.sites()[i] + kNeighborStep[d]);
            if (j >= 0) ratio = std::min(ratio, sp.h1[std::size_t(j)] / sp.h1[i]);
        }
    r.min_neighbor_ratio = (n == 1) ? 1.0 : ratio;
    r.diameter = intrinsic_diameter(s);
    r.decay_rate = r.diameter > 0 ? -std::log(hmin) / r.diameter : 0.0;
    return r;
}

std::vector<GapScalingRow> spectral_gap_scaling(const ShapeDomain& u, const std::vector<int>& rs) {
    std::vector<GapScalingRow> rows;
    for (int r : rs) {
        if (r <= 0) throw std::invalid_argument("spectral_gap_scaling: r must be positive");
        std::vector<Pt> pts;
        Vec2 lo{u.vertices()[0]}, hi{lo};
        for (Vec2 v : u.vertices()) {
            lo.x = std::min(lo.x, v.x);
            lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x);
            hi.y = std::max(hi.y, v.y);
        }
        for (int y = int(std::floor(lo.y * r)) - 1; y <= int(std::ceil(hi.y * r)) + 1; ++y)
            for (int x = int(std::floor(lo.x * r)) - 1; x <= int(std::ceil(hi.x * r)) + 1; ++x)
                if (u.contains({double(x) / r, double(y) / r})) pts.push_back({x, y});
        LatticeSet s(std::move(pts));
        if (s.empty()) throw std::invalid_argument("spectral_gap_scaling: r too small, no lattice points");
        SpectralPair sp = principal_eigenpair(s);
        GapScalingRow row;
        row.r = r;
        row.sites = s.size();
        row.r2_lambda1 = double(r) * r * sp.lambda1;
        row.r2_gap = double(r) * r * (sp.lambda2 - sp.lambda1);
        rows.push_back(row);
    }
    return rows;
}

PLInterpolation::PLInterpolation(const LatticeSet& support, const std::vector<double>& values)
    : support_(support), values_(values) {
    if (support_.size() != values_.size())
        throw std::invalid_argument("PLInterpolation: value count does not match support");
    double l2 = 0.0, grad = 0.0, dl2 = 0.0, dgrad = 0.0;
    for (double v : values_) dl2 += v * v;
    Box eb = support_.bbox().expanded(1);
    for (int y = eb.y0; y <= eb.y1; ++y)
        for (int x = eb.x0; x <= eb.x1; ++x) {
            double a = f_at({x, y});
            double b = f_at({x + 1, y});
            double c = f_at({x + 1, y + 1});
            double d = f_at({x, y + 1});
            // cell split along the main diagonal; each triangle has area 1/2
            l2 += (a * a + b * b + c * c + a * b + b * c + c * a) / 12.0;
            l2 += (a * a + d * d + c * c + a * d + d * c + c * a) / 12.0;
            grad += 0.5 * ((b - a) * (b - a) + (c - b) * (c - b));
            grad += 0.5 * ((d - a) * (d - a) + (c - d) * (c - d));
            // discrete edges counted once: the +x and +y edge of each point
            dgrad += (b - a) * (b - a) + (d - a) * (d - a);
        }
    l2_ = std::sqrt(l2);
    grad_ = std::sqrt(grad);
    dl2_ = std::sqrt(dl2);
    dgrad_ = std::sqrt(dgrad);
}

double PLInterpolation::f_at(Pt p) const {
    int i = support_.index_of(p);
    return i < 0 ? 0.0 : values_[std::size_t(i)];
}

double PLInterpolation::value(Vec2 q) const {
    int cx = int(std::floor(q.x)), cy = int(std::floor(q.y));
    double fx = q.x - cx, fy = q.y - cy;
    double a = f_at({cx, cy});
    double c = f_at({cx + 1, cy + 1});
    if (fy <= fx) {
        double b = f_at({cx + 1, cy});
        return a + (b - a) * fx + (c - b) * fy;
    }
    double d = f_at({cx, cy + 1});
    return a + (c - d) * fx + (d - a) * fy;
}

double PLInterpolation::l2_norm() const { return l2_; }
double PLInterpolation::grad_l2_norm() const { return grad_; }
double PLInterpolation::discrete_l2_norm() const { return dl2_; }
double PLInterpolation::discrete_grad_norm() const { return dgrad_; }

PLInterpolation interpolate_to_continuum(const LatticeSet& support, const std::vector<double>& values) {
    return PLInterpolation(support, values);
}

EigenvalueComparisonReport eigenvalue_comparison(const LatticeSet& s, const SkeletonPolygon& p,
                                                 double grid_h, double override_c) {
    EigenvalueComparisonReport rep;
    SpectralPair sp = principal_eigenpair(s);
    rep.lambda1 = sp.lambda1;
    PLInterpolation interp(s, sp.h1);
    rep.interpolation_c = std::abs(interp.l2_norm() - interp.discrete_l2_norm()) /
                          std::max(interp.grad_l2_norm(), 1e-300);
    if (override_c >= 0.0) rep.interpolation_c = override_c;
    double margin = rep.interpolation_c * std::sqrt(sp.lambda1);
    if (margin >= 1.0) {
        rep.conclusive = false;  // comparison says nothing here
        return rep;
    }
    rep.conclusive = true;
    rep.lhs = sp.lambda1 / ((1.0 - margin) * (1.0 - margin));
    ShapeDomain v = v_neighborhood(p, p.L);
    rep.lambda_v = continuum_eigenvalue(v, grid_h);
    rep.holds = rep.lhs >= rep.lambda_v * (1.0 - 1e-9);
    return rep;
}

}  // namespace rangeshape
