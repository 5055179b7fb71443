// Acceptance suite: one line per criterion, exit nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "rangeshape/environment.hpp"
#include "rangeshape/fpp.hpp"
#include "rangeshape/lattice.hpp"
#include "rangeshape/rng.hpp"
#include "rangeshape/shape.hpp"
#include "rangeshape/skeleton.hpp"
#include "rangeshape/spectral.hpp"
#include "rangeshape/stats.hpp"
#include "rangeshape/walk.hpp"

using namespace rangeshape;

namespace {

int g_failed = 0;

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failed;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double rect_lambda(int m, int n, int ka, int kb) {
    return 4.0 - 2.0 * std::cos(M_PI * ka / (m + 1)) - 2.0 * std::cos(M_PI * kb / (n + 1));
}

LatticeSet random_blob(int target, StreamRng& rng) {
    std::vector<Pt> pts{{0, 0}};
    LatticeSet cur(pts);
    while (int(cur.size()) < target) {
        Pt p = cur.sites()[rng.below(cur.size())] + kNeighborStep[rng.below(4)];
        if (!cur.contains(p)) {
            pts.push_back(p);
            cur = LatticeSet(pts);
        }
    }
    return hull(cur);
}

// ---------------------------------------------------------------- criteria

void criterion_1() {
    double t0 = now();
    double worst = 0.0;
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : worst)
    for (int m = 1; m <= 30; ++m)
        for (int n = 1; n <= 30; ++n) {
            auto sp = principal_eigenpair(LatticeSet::rectangle(m, n));
            double e = std::abs(sp.lambda1 - rect_lambda(m, n, 1, 1));
            if (m * n >= 2) {
                double l2 = std::min(n >= 2 ? rect_lambda(m, n, 1, 2) : 1e300,
                                     m >= 2 ? rect_lambda(m, n, 2, 1) : 1e300);
                e = std::max(e, std::abs(sp.lambda2 - l2));
            }
            worst = std::max(worst, e);
        }
    double dt = now() - t0;
    report(1, "rectangle spectra vs separable formula", worst <= 1e-9 && dt < 10.0,
           fmt("worst error %.2e, %.1fs", worst, dt));
}

void criterion_2() {
    double target_sq = 2.0 * M_PI * M_PI;
    double j0 = 2.404825557695773;
    double target_disk = j0 * j0;
    ShapeDomain sq = ShapeDomain::rectangle(1, 1, {0.5, 0.5});
    ShapeDomain disk = ShapeDomain::regular_polygon(720, 1.0);
    double lam_sq = continuum_eigenvalue(sq, 1.0 / 128);
    double lam_disk = continuum_eigenvalue(disk, 1.0 / 128);
    double err_sq = std::abs(lam_sq - target_sq) / target_sq;
    double err_disk = std::abs(lam_disk - target_disk) / target_disk;
    ShapeDomain sq2 = ShapeDomain::rectangle(2, 2, {1.0, 1.0});
    double lam_sq2 = continuum_eigenvalue(sq2, 1.0 / 64);
    double err_scale = std::abs(4.0 * lam_sq2 - lam_sq) / lam_sq;
    report(2, "continuum eigenvalues (square, disk, scaling)",
           err_sq <= 0.005 && err_disk <= 0.01 && err_scale <= 0.02,
           fmt("square %.3e, disk %.3e, alpha-scaling %.3e", err_sq, err_disk, err_scale));
}

ShapeDomain g_u0_l1 = ShapeDomain::rectangle(1, 1);  // replaced by criterion 3

void criterion_3() {
    double side_target = std::pow(M_PI, 2.0 / 3.0);
    double f_target_l1 = 6.0 * side_target;
    double r_target = std::cbrt(2.404825557695773 * 2.404825557695773 / M_PI);
    double f_target_l2 = 3.0 * M_PI * r_target;

    MinimizeConfig cfg;
    cfg.final_h = 1.0 / 64;
    NormSpec l1 = NormSpec::l1();
    MinimizeResult a = minimize_shape_functional(l1, cfg);
    g_u0_l1 = a.domain;
    double side_x = 2.0 * a.domain.support({1, 0});
    double side_y = 2.0 * a.domain.support({0, 1});
    double side_err = std::max(std::abs(side_x - side_target), std::abs(side_y - side_target)) / side_target;
    double f_err_l1 = std::abs(a.best.value - f_target_l1) / f_target_l1;
    double sym_l1 = 0.0;
    for (const auto& g : l1.symmetry_group())
        sym_l1 = std::max(sym_l1, hausdorff_distance(a.domain, a.domain.transformed(g), 0.01));

    NormSpec l2 = NormSpec::l2();
    MinimizeResult b = minimize_shape_functional(l2, cfg);
    double radius = b.domain.support({1, 0});
    double rad_err = std::abs(radius - r_target) / r_target;
    double f_err_l2 = std::abs(b.best.value - f_target_l2) / f_target_l2;
    double ca = std::cos(0.9), sa = std::sin(0.9);
    double sym_l2 = hausdorff_distance(b.domain, b.domain.transformed({ca, -sa, sa, ca}), 0.01);

    bool pass = side_err <= 0.03 && f_err_l1 <= 0.005 && sym_l1 <= 0.02 * a.domain.diameter() &&
                rad_err <= 0.03 && f_err_l2 <= 0.005 && sym_l2 <= 0.02 * b.domain.diameter();
    report(3, "minimize F for l1 and l2",
           pass,
           fmt("l1: side err %.3f%%, F err %.3f%%; l2: radius err %.3f%%, F err %.3f%%",
               100 * side_err, 100 * f_err_l1, 100 * rad_err, 100 * f_err_l2));
}

void criterion_4() {
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, Box{-120, -120, 120, 120});
    DistanceMap map({0, 0}, unit);
    bool exact = true;
    for (int x = -20; x <= 20; ++x)
        for (int y = -20; y <= 20; ++y)
            if (map.at({x, y}) != double(std::abs(x) + std::abs(y))) exact = false;
    auto est = estimate_norm({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}, {5, 10, 20}, unit);
    for (const auto& e : est)
        for (auto [n, v] : e.values)
            if (v != double(l1_norm(e.direction))) exact = false;

    // decreasing median of the uniform-error diagnostic across 8 seeds
    std::vector<int> ns{25, 50, 100};
    std::vector<std::vector<double>> errs(ns.size());
    bool bracket = true;
    for (int seed = 0; seed < 8; ++seed) {
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 4000 + seed,
                                          Box{-135, -135, 135, 135});
        auto e = estimate_norm({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}},
                               {16, 32, 64, 128}, f);
        // D(0,nx)/n must sit inside [a,b] |x|_1 for every n
        for (const auto& d : e)
            for (auto [n, v] : d.values)
                if (v < d.lower_bound - 1e-12 || v > d.upper_bound + 1e-12) bracket = false;
        EstimatedNorm rho(e, true);
        for (std::size_t k = 0; k < ns.size(); ++k)
            errs[k].push_back(uniform_norm_error(ns[k], 8, f, rho, 77 + seed));
    }
    double m25 = median_of(errs[0]), m50 = median_of(errs[1]), m100 = median_of(errs[2]);
    bool mono = m25 > m50 && m50 > m100;
    report(4, "FPP exactness and uniform-error trend", exact && bracket && mono,
           fmt("unit exact %d, bracket %d, medians %.4f > %.4f > %.4f", int(exact), int(bracket),
               m25, m50, m100));
}

void criterion_5() {
    double t0 = now();
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, Box{-20, -20, 20, 20});
    bool all_ok = true;
    long long pairs = 0;
    for (double beta : {3.0, 4.0})
        for (int x = -3; x <= 3; ++x)
            for (int y = -3; y <= 3; ++y) {
                if (std::abs(x) + std::abs(y) > 3) continue;
                GibbsPathSum s = gibbs_path_sum({0, 0}, {x, y}, beta, unit, 12);
                all_ok = all_ok && s.bracket_ok;
                ++pairs;
            }
    double dt = now() - t0;
    report(5, "path-sum sandwich (cap 12, certified tail)", all_ok && dt < 60.0,
           fmt("%lld pair/beta combinations, %.1fs", pairs, dt));
}

void criterion_6() {
    // all admissible S with |S| <= 4
    std::vector<LatticeSet> sets;
    enumerate_lattice_sets(4, 0, [&](const LatticeSet& s) { sets.push_back(s); });
    std::map<std::string, std::size_t> index;
    auto key_of = [](const LatticeSet& s) {
        std::string k;
        for (Pt p : s.sites()) {
            k += std::to_string(p.x);
            k += ',';
            k += std::to_string(p.y);
            k += ';';
        }
        return k;
    };
    for (std::size_t i = 0; i < sets.size(); ++i) index[key_of(sets[i])] = i;
    std::vector<double> bound1(sets.size()), bound2(sets.size()), bound3(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        double lam = principal_eigenpair(sets[i]).lambda1;
        double pre = std::pow(double(sets[i].size()), 1.5);
        bound1[i] = pre * std::exp(-0.5 * lam);
        bound2[i] = pre * std::exp(-1.0 * lam);
        bound3[i] = pre * std::exp(-2.0 * lam);
    }

    const int N = 1000000;
    std::vector<long long> c1(sets.size(), 0), c2(sets.size(), 0), c3(sets.size(), 0);
#pragma omp parallel
    {
        std::vector<long long> l1(sets.size(), 0), l2(sets.size(), 0), l3(sets.size(), 0);
#pragma omp for schedule(dynamic, 1024) nowait
        for (int i = 0; i < N; ++i) {
            auto w = simulate_free_walk(2.0, 600000 + std::uint64_t(i));
            auto record = [&](double t, std::vector<long long>& ctr) {
                std::vector<Pt> visited;
                for (std::size_t j = 0; j < w.positions.size(); ++j) {
                    if (j > 0 && w.jump_times[j - 1] > t) break;
                    visited.push_back(w.positions[j]);
                }
                LatticeSet r = hull(visited);
                if (r.size() > 4) return;
                auto it = index.find(key_of(r));
                if (it != index.end()) ++ctr[it->second];
            };
            record(0.5, l1);
            record(1.0, l2);
            record(2.0, l3);
        }
#pragma omp critical
        for (std::size_t k = 0; k < sets.size(); ++k) {
            c1[k] += l1[k];
            c2[k] += l2[k];
            c3[k] += l3[k];
        }
    }
    bool ok = true;
    double worst_margin = 1e300;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        auto checkone = [&](long long c, double bound) {
            double p = double(c) / N;
            double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / N);
            if (p > bound + 3.0 * sigma) ok = false;
            worst_margin = std::min(worst_margin, bound + 3.0 * sigma - p);
        };
        checkone(c1[k], bound1[k]);
        checkone(c2[k], bound2[k]);
        checkone(c3[k], bound3[k]);
    }
    report(6, "range-probability upper bound vs Monte Carlo", ok,
           fmt("%zu sets, worst margin %.2e", sets.size(), worst_margin));
}

void criterion_7() {
    LatticeSet sq = LatticeSet::rectangle(3, 3, {-1, -1});
    bool ok = true;
    std::string detail;
    for (double t : {0.5, 1.0}) {
        double formula = survival_probability(sq, {0, 0}, t);
        const int N = 1000000;
        long long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 1024)
        for (int i = 0; i < N; ++i) {
            auto w = simulate_free_walk(t, 810000 + std::uint64_t(i));
            bool inside = true;
            for (Pt p : w.positions) inside = inside && sq.contains(p);
            hits += inside ? 1 : 0;
        }
        double mc = double(hits) / N;
        double sigma = std::sqrt(formula * (1.0 - formula) / N);
        if (std::abs(mc - formula) > 3.0 * sigma) ok = false;
        detail += fmt("t=%.1f: |%.5f-%.5f|=%.1f sigma; ", t, mc, formula,
                      std::abs(mc - formula) / sigma);
    }
    report(7, "survival probability vs Monte Carlo (3x3)", ok, detail);
}

void criterion_8() {
    StreamRng rng(31);
    bool rows_ok = true, ratio_ok = true;
    for (int i = 0; i < 100; ++i) {
        LatticeSet s = random_blob(2 + int(rng.below(40)), rng);
        DoobChain chain = doob_chain(s);
        if (chain.row_sum_error > 1e-10) rows_ok = false;
        auto rep = eigenfunction_bounds_report(s);
        if (rep.min_neighbor_ratio < 0.25 - 1e-12) ratio_ok = false;
    }

    // occupation law of the conditioned chain on the 5x5 square
    LatticeSet sq = LatticeSet::rectangle(5, 5, {-2, -2});
    DoobChain chain = doob_chain(sq);
    std::vector<double> occupation(sq.size(), 0.0);
    StreamRng crng(77);
    int idx = sq.index_of({0, 0});
    const long long steps = 1000000;
    for (long long k = 0; k < steps; ++k) {
        const auto& pr = chain.step_prob[std::size_t(idx)];
        double total = pr[0] + pr[1] + pr[2] + pr[3];
        double u = crng.u01() * total;
        int d = 0;
        double acc = pr[0];
        while (d < 3 && u > acc) acc += pr[std::size_t(++d)];
        idx = sq.index_of(sq.sites()[std::size_t(idx)] + kNeighborStep[d]);
        occupation[std::size_t(idx)] += 1.0;
    }
    std::vector<double> target(sq.size());
    for (std::size_t i = 0; i < sq.size(); ++i) {
        target[i] = chain.spectrum.h1[i] * chain.spectrum.h1[i];
        occupation[i] /= double(steps);
    }
    double tv = total_variation(occupation, target);

    // stopped martingale mean over 1e5 discrete runs
    std::vector<double> vals;
    std::vector<std::vector<double>> vecs;
    reference::dense_spectrum(sq, vals, vecs);
    std::vector<double> h = vecs[0];
    double hm = 0.0;
    for (double v : h) hm += v;
    if (hm < 0)
        for (double& v : h) v = -v;
    double h0 = h[std::size_t(sq.index_of({0, 0}))];
    bool mart_ok = true;
    double worst_z = 0.0;
    for (int n : {1, 3, 7, 15, 31}) {
        const int runs = 100000;
        double sum = 0.0, sum2 = 0.0;
#pragma omp parallel for reduction(+ : sum, sum2)
        for (int r = 0; r < runs; ++r) {
            StreamRng wrng(counter_hash(5151, std::uint64_t(r) * 40 + std::uint64_t(n)));
            Pt y{0, 0};
            double m = 0.0;
            for (int k = 1; k <= n; ++k) {
                y = y + kNeighborStep[wrng.below(4)];
                int id = sq.index_of(y);
                if (id < 0) {
                    m = 0.0;
                    break;
                }
                if (k == n) m = h[std::size_t(id)] * std::pow(1.0 - vals[0] / 4.0, -k);
            }
            sum += m;
            sum2 += m * m;
        }
        double mean = sum / runs;
        double se = std::sqrt(std::max(sum2 / runs - mean * mean, 0.0) / runs);
        double z = std::abs(mean - h0) / (se + 1e-10);
        worst_z = std::max(worst_z, z);
        if (std::abs(mean - h0) > 3.0 * se + 1e-9) mart_ok = false;
    }

    report(8, "Doob chain: rows, ratios, occupation, martingale",
           rows_ok && ratio_ok && tv <= 0.02 && mart_ok,
           fmt("rows %d, ratios %d, TV %.4f, worst martingale z %.2f", int(rows_ok),
               int(ratio_ok), tv, worst_z));
}

void criterion_9() {
    double t0 = now();
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, Box{-24, -24, 24, 24});
    auto rep = skeleton_energy_bound_check(2, 3.0, unit, 0.5, NormSpec::l1(), 16);
    double dt = now() - t0;
    report(9, "skeleton energy resummation bound (|dS| <= 16)",
           rep.conclusive && rep.all_hold && dt < 600.0,
           fmt("%lld sets, %zu classes, %.1fs", rep.sets_enumerated, rep.classes.size(), dt));
}

void criterion_10() {
    bool ok = true;
    std::string detail;
    for (int r : {20, 30, 40}) {
        LatticeSet s = LatticeSet::rectangle(r, r);
        auto sk = extract_skeleton(s, 5);
        if (!sk) {
            ok = false;
            continue;
        }
        auto rep = eigenvalue_comparison(s, *sk, 0.5);
        if (!rep.conclusive || !rep.holds) ok = false;
        detail += fmt("r=%d: %.4f >= %.4f; ", r, rep.lhs, rep.lambda_v);
    }
    report(10, "discrete-to-continuum eigenvalue comparison", ok, detail);
}

void criterion_11() {
    StreamRng rng(213);
    bool grad_ok = true;
    double cmax = 0.0;
    for (int i = 0; i < 100; ++i) {
        LatticeSet s = random_blob(3 + int(rng.below(60)), rng);
        std::vector<double> f(s.size());
        for (double& v : f) v = rng.normal();
        PLInterpolation pl(s, f);
        if (std::abs(pl.grad_l2_norm() - pl.discrete_grad_norm()) > 1e-10) grad_ok = false;
        if (pl.discrete_grad_norm() > 0)
            cmax = std::max(cmax, std::abs(pl.l2_norm() - pl.discrete_l2_norm()) / pl.discrete_grad_norm());
    }
    report(11, "interpolation identities (100 random f)", grad_ok && cmax <= 1.0,
           fmt("gradient identity %d, measured C %.4f <= 1", int(grad_ok), cmax));
}

void criterion_12() {
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, Box{-900, -900, 900, 900});

    // (a) beta = 0 anchors the free law: KS on range sizes
    std::vector<double> mcmc_sizes, free_sizes;
    for (int c = 0; c < 16; ++c) {
        GibbsSamplerConfig cfg;
        cfg.t = 1.0;
        cfg.beta = 0.0;
        cfg.burn_in = 40;
        cfg.sweeps = 2500;
        cfg.thinning = 4;
        cfg.seed = 7000 + std::uint64_t(c);
        for (const auto& s : mcmc_sample_gibbs(cfg, unit)) mcmc_sizes.push_back(double(s.range_sites));
    }
    for (int i = 0; i < 10000; ++i)
        free_sizes.push_back(double(simulate_free_walk(1.0, 90000 + std::uint64_t(i)).range().size()));
    double ks_p = ks_two_sample_p(mcmc_sizes, free_sizes);

    // (b) tiny-t reweighting oracle
    double t_small = 0.3, beta_small = 1.5;
    std::vector<double> chain_single, chain_domino;
    for (int c = 0; c < 16; ++c) {
        GibbsSamplerConfig cfg;
        cfg.t = t_small;
        cfg.beta = beta_small;
        cfg.burn_in = 100;
        cfg.sweeps = 2400;
        cfg.thinning = 2;
        cfg.seed = 8100 + std::uint64_t(c);
        double p1 = 0.0, p2 = 0.0;
        auto samples = mcmc_sample_gibbs(cfg, unit);
        for (const auto& s : samples) {
            p1 += s.range_sites == 1 ? 1.0 : 0.0;
            p2 += s.range_sites == 2 ? 1.0 : 0.0;
        }
        chain_single.push_back(p1 / double(samples.size()));
        chain_domino.push_back(p2 / double(samples.size()));
    }
    double mc_single = mean_of(chain_single);
    double mc_domino = mean_of(chain_domino);
    double se_single = stddev_of(chain_single) / std::sqrt(16.0);
    double se_domino = stddev_of(chain_domino) / std::sqrt(16.0);

    const int M = 1000000;
    const int batches = 20;
    std::vector<double> b_single, b_domino;
    for (int b = 0; b < batches; ++b) {
        double num1 = 0.0, num2 = 0.0, den = 0.0;
#pragma omp parallel for reduction(+ : num1, num2, den) schedule(dynamic, 1024)
        for (int i = 0; i < M / batches; ++i) {
            auto w = simulate_free_walk(t_small, 100000 + std::uint64_t(b) * (M / batches) + std::uint64_t(i));
            LatticeSet r = w.range();
            double wt = std::exp(-beta_small * hamiltonian(r, unit));
            den += wt;
            if (r.size() == 1) num1 += wt;
            if (r.size() == 2) num2 += wt;
        }
        b_single.push_back(num1 / den);
        b_domino.push_back(num2 / den);
    }
    double is_single = mean_of(b_single), is_domino = mean_of(b_domino);
    double se_is1 = stddev_of(b_single) / std::sqrt(double(batches));
    double se_is2 = stddev_of(b_domino) / std::sqrt(double(batches));
    double z1 = std::abs(mc_single - is_single) / std::sqrt(se_single * se_single + se_is1 * se_is1);
    double z2 = std::abs(mc_domino - is_domino) / std::sqrt(se_domino * se_domino + se_is2 * se_is2);

    // (c) boundary-size medians decrease in beta at t = 5000
    std::vector<double> betas{0.5, 1.0, 2.0, 5.0};
    std::vector<double> medians;
    for (double beta : betas) {
        std::vector<double> boundary;
        const int chains = 12;
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < chains; ++c) {
            GibbsSamplerConfig cfg;
            cfg.t = 5000.0;
            cfg.beta = beta;
            cfg.burn_in = 350;
            cfg.sweeps = 150;
            cfg.thinning = 10;
            cfg.seed = 9200 + std::uint64_t(c) * 131 + std::uint64_t(beta * 1000);
            auto samples = mcmc_sample_gibbs(cfg, unit);
#pragma omp critical
            for (const auto& s : samples) boundary.push_back(double(s.boundary_edges));
        }
        medians.push_back(median_of(boundary));
    }
    bool mono = medians[0] > medians[1] && medians[1] > medians[2] && medians[2] > medians[3];

    report(12, "Gibbs sampler anchors (KS, reweighting, boundary trend)",
           ks_p > 0.01 && z1 <= 3.0 && z2 <= 3.0 && mono,
           fmt("KS p %.3f; z1 %.2f z2 %.2f; medians %g > %g > %g > %g", ks_p, z1, z2, medians[0],
               medians[1], medians[2], medians[3]));
}

void criterion_13() {
    double side = std::pow(M_PI, 2.0 / 3.0);
    double f_star = 6.0 * side;
    ShapeDomain u0 = ShapeDomain::rectangle(side, side);
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, Box{-160, -160, 160, 160});
    std::vector<double> gaps;
    double v20 = 0.0;
    for (int r : {10, 20, 40}) {
        double beta = 2.0, t = beta * double(r) * r * r;
        WitnessReport rep = lower_bound_witness(u0, t, beta, unit, f_star);
        gaps.push_back(std::abs(rep.value - f_star) / f_star);
        if (r == 20) v20 = rep.value;
    }
    bool ok = gaps[1] <= 0.15 && gaps[0] > gaps[1] && gaps[1] > gaps[2];
    report(13, "partition-function witness value", ok,
           fmt("value(r=20) %.4f vs %.4f; gaps %.4f > %.4f > %.4f", v20, f_star, gaps[0], gaps[1],
               gaps[2]));
}

void criterion_14() {
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, Box{-900, -900, 900, 900});
    double t = 5000.0;
    auto run_beta = [&](double beta) {
        std::vector<LatticeSet> finals(32);
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < 32; ++c) {
            GibbsSamplerConfig cfg;
            cfg.t = t;
            cfg.beta = beta;
            cfg.burn_in = 400;
            cfg.sweeps = 10;
            cfg.thinning = 10;
            cfg.keep_ranges = true;
            cfg.seed = 10000 + std::uint64_t(c) * 997 + std::uint64_t(beta * 100);
            auto samples = mcmc_sample_gibbs(cfg, unit);
            finals[std::size_t(c)] = samples.back().range;
        }
        auto stats = shape_distance_diagnostic(finals, g_u0_l1, t, beta);
        return stats.median;
    };
    double med_low = run_beta(0.5);
    double med_high = run_beta(5.0);
    report(14, "shape-distance trend (beta 5 vs beta 0.5)", med_high < med_low,
           fmt("median at beta=5: %.4f < median at beta=0.5: %.4f", med_high, med_low));
}

}  // namespace

int main() {
    double t0 = now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    std::printf("%d of 14 criteria passed in %.0fs\n", 14 - g_failed, now() - t0);
    return g_failed == 0 ? 0 : 1;
}
