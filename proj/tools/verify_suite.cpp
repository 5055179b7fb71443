#include "verify_suite.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "rangeshape/environment.hpp"
#include "rangeshape/fpp.hpp"
#include "rangeshape/lattice.hpp"
#include "rangeshape/rng.hpp"
#include "rangeshape/shape.hpp"
#include "rangeshape/skeleton.hpp"
#include "rangeshape/spectral.hpp"
#include "rangeshape/stats.hpp"
#include "rangeshape/walk.hpp"

namespace {

using namespace rangeshape;

int g_failures = 0;

void check(const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string err;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        err = e.what();
    }
    std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAIL", name.c_str(), err.empty() ? "" : ": ",
                err.c_str());
    if (!ok) ++g_failures;
}

LatticeSet random_blob(int target, StreamRng& rng) {
    std::vector<Pt> pts{{0, 0}};
    LatticeSet cur(pts);
    while (int(cur.size()) < target) {
        Pt p = cur.sites()[rng.below(cur.size())];
        Pt q = p + kNeighborStep[rng.below(4)];
        if (!cur.contains(q)) {
            pts.push_back(q);
            cur = LatticeSet(pts);
        }
    }
    return hull(cur);
}

double rect_lambda(int m, int n, int ka, int kb) {
    return 4.0 - 2.0 * std::cos(M_PI * ka / (m + 1)) - 2.0 * std::cos(M_PI * kb / (n + 1));
}

}  // namespace

int run_verify_suite() {
    g_failures = 0;

    check("lattice: hull examples and idempotence", [] {
        std::vector<Pt> ring;
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                if (!(x == 1 && y == 1)) ring.push_back({x, y});
        if (hull(ring).size() != 9) return false;
        if (hull(LatticeSet({{0, 0}})).size() != 1) return false;
        LatticeSet two({{0, 0}, {5, 5}});
        if (!(hull(two) == two)) return false;
        return hull(hull(ring)) == hull(ring);
    });

    check("lattice: exhaustive |S|<=8 boundary curve simple, isoperimetry, diameter", [] {
        bool ok = true;
        enumerate_lattice_sets(8, 0, [&](const LatticeSet& s) {
            if (!ok || !s.in_admissible_family()) return;
            auto curve = boundary_curve(s);
            auto edges = outer_edge_boundary(s);
            if (curve.vertices.size() != edges.size() || !curve.is_self_avoiding() ||
                !curve.is_nearest_neighbor_path())
                ok = false;
            if (double(edges.size()) < 4.0 * std::sqrt(double(s.size()))) ok = false;
            if (int(edges.size()) < intrinsic_diameter(s)) ok = false;
        });
        return ok;
    });

    check("environment: weight bounds, determinism, tile stationarity", [] {
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 7, Box{-60, -60, 60, 60});
        StreamRng rng(3);
        double sum = 0.0;
        int n = 100000;
        for (int i = 0; i < n; ++i) {
            Edge e{{int(rng.below(100)) - 50, int(rng.below(100)) - 50}, int(rng.below(2))};
            double w = f.weight(e);
            if (w < 0.5 || w > 1.5 || w != f.weight(e)) return false;
            sum += w;
        }
        double meanw = sum / n;
        if (std::abs(meanw - 1.0) > 3.0 * (1.0 / std::sqrt(12.0)) / std::sqrt(double(n))) return false;
        WeightField tile = build_environment(LawDescriptor::periodic({{1, 2}, {2, 1}}), 1, Box{-60, -60, 60, 60});
        for (int x = -10; x < 10; ++x)
            for (int y = -10; y < 10; ++y)
                for (int axis = 0; axis < 2; ++axis)
                    if (tile.weight({{x, y}, axis}) != tile.weight({{x + 2, y + 2}, axis})) return false;
        return true;
    });

    check("environment: a|dS| <= H(S) <= b|dS|", [] {
        StreamRng rng(11);
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 3, Box{-80, -80, 80, 80});
        for (int i = 0; i < 20; ++i) {
            LatticeSet s = random_blob(3 + int(rng.below(40)), rng);
            double h = hamiltonian(s, f);
            double edges = double(outer_edge_boundary(s).size());
            if (h < 0.5 * edges - 1e-9 || h > 1.5 * edges + 1e-9) return false;
        }
        return true;
    });

    check("fpp: dijkstra equals exhaustive enumeration on 5x5 window", [] {
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 42, Box{-7, -7, 7, 7});
        for (int x = -2; x <= 2; ++x)
            for (int y = -2; y <= 2; ++y) {
                auto [d, g] = fpp_distance({0, 0}, {x, y}, f);
                if (std::abs(d - reference::fpp_distance_enumerated({0, 0}, {x, y}, 10, f)) > 1e-12)
                    return false;
            }
        return true;
    });

    check("fpp: triangle inequality and l1 bracket on sampled pairs", [] {
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 9, Box{-24, -24, 24, 24});
        DistanceMap m({0, 0}, f);
        StreamRng rng(5);
        for (int i = 0; i < 300; ++i) {
            Pt y{int(rng.below(31)) - 15, int(rng.below(31)) - 15};
            Pt z{int(rng.below(31)) - 15, int(rng.below(31)) - 15};
            double dy = m.at(y), dz = m.at(z);
            DistanceMap mz(z, f);
            if (dy > dz + mz.at(y) + 1e-9) return false;
            if (dy < 0.5 * l1_norm(y) - 1e-9 || dy > 1.5 * l1_norm(y) + 1e-9) return false;
        }
        return true;
    });

    check("fpp: unit weights give the l1 norm exactly", [] {
        WeightField f = build_environment(LawDescriptor::constant(1.0), 1, Box{-44, -44, 44, 44});
        auto est = estimate_norm({{1, 0}, {1, 1}, {2, 1}}, {1, 2, 5, 10, 20}, f);
        for (const auto& e : est)
            for (auto [n, v] : e.values)
                if (std::abs(v - l1_norm(e.direction)) > 1e-12) return false;
        EstimatedNorm rho(est, true);
        return uniform_norm_error(10, 4, f, rho, 3) == 0.0;
    });

    check("fpp: path-sum sandwich and geodesic confinement", [] {
        WeightField f = build_environment(LawDescriptor::constant(1.0), 1, Box{-20, -20, 20, 20});
        for (Pt y : {Pt{1, 0}, Pt{1, 1}, Pt{2, 1}}) {
            if (!gibbs_path_sum({0, 0}, y, 3.0, f, 11).bracket_ok) return false;
            if (!geodesic_confinement_check({0, 0}, y, f)) return false;
        }
        return true;
    });

    check("spectral: rectangles match the separable formula (m,n <= 12)", [] {
        for (int m = 1; m <= 12; ++m)
            for (int n = m; n <= 12; ++n) {
                auto sp = principal_eigenpair(LatticeSet::rectangle(m, n));
                if (std::abs(sp.lambda1 - rect_lambda(m, n, 1, 1)) > 1e-9) return false;
                if (m * n >= 2) {
                    double l2 = std::min(n >= 2 ? rect_lambda(m, n, 1, 2) : 1e9,
                                         m >= 2 ? rect_lambda(m, n, 2, 1) : 1e9);
                    if (std::abs(sp.lambda2 - l2) > 1e-9) return false;
                }
            }
        return true;
    });

    check("spectral: iterative matches dense solve on random sets", [] {
        StreamRng rng(21);
        for (int i = 0; i < 5; ++i) {
            LatticeSet s = random_blob(30 + int(rng.below(60)), rng);
            auto sp = principal_eigenpair(s);
            std::vector<double> vals;
            std::vector<std::vector<double>> vecs;
            reference::dense_spectrum(s, vals, vecs);
            if (std::abs(sp.lambda1 - vals[0]) > 1e-8) return false;
            if (std::abs(sp.lambda2 - vals[1]) > 1e-8) return false;
        }
        return true;
    });

    check("spectral: Ky Fan sum and eigenvalue monotonicity", [] {
        LatticeSet small = LatticeSet::rectangle(6, 5);
        std::vector<double> vals;
        std::vector<std::vector<double>> vecs;
        reference::dense_spectrum(small, vals, vecs);
        auto sp = principal_eigenpair(small);
        if (std::abs((sp.lambda1 + sp.lambda2) - (vals[0] + vals[1])) > 1e-8) return false;
        StreamRng rng(31);
        for (int i = 0; i < 5; ++i) {
            LatticeSet s = random_blob(20 + int(rng.below(20)), rng);
            LatticeSet bigger = hull(LatticeSet([&] {
                auto pts = s.sites();
                for (Pt p : inner_vertex_boundary(s))
                    for (Pt d : kNeighborStep) pts.push_back(p + d);
                return pts;
            }()));
            if (principal_eigenpair(s).lambda1 < principal_eigenpair(bigger).lambda1 - 1e-12) return false;
        }
        return true;
    });

    check("spectral: doob chain rows and conditioned trajectory stays inside", [] {
        StreamRng rng(41);
        for (int i = 0; i < 10; ++i) {
            LatticeSet s = random_blob(5 + int(rng.below(30)), rng);
            DoobChain chain = doob_chain(s);
            if (chain.row_sum_error > 1e-10) return false;
            auto traj = simulate_conditioned_walk(chain, {0, 0}, 50.0, 1234 + i);
            for (Pt p : traj.positions)
                if (!s.contains(p)) return false;
        }
        return true;
    });

    check("interpolation: gradient identity and L2 bound constant", [] {
        StreamRng rng(55);
        double cmax = 0.0;
        for (int i = 0; i < 100; ++i) {
            LatticeSet s = random_blob(4 + int(rng.below(40)), rng);
            std::vector<double> vals(s.size());
            for (double& v : vals) v = rng.normal();
            PLInterpolation pl(s, vals);
            if (std::abs(pl.grad_l2_norm() - pl.discrete_grad_norm()) > 1e-10) return false;
            if (pl.discrete_grad_norm() > 0)
                cmax = std::max(cmax, std::abs(pl.l2_norm() - pl.discrete_l2_norm()) / pl.discrete_grad_norm());
        }
        return cmax <= 1.0;
    });

    check("skeleton: translation covariance and perimeter comparisons", [] {
        StreamRng rng(66);
        NormSpec l1 = NormSpec::l1();
        for (int i = 0; i < 10; ++i) {
            LatticeSet s = random_blob(20 + int(rng.below(30)), rng);
            auto sk = extract_skeleton(s, 3);
            Pt z{int(rng.below(9)) - 4, int(rng.below(9)) - 4};
            auto sk2 = extract_skeleton(s.translated(z), 3);
            if (sk.has_value() != sk2.has_value()) return false;
            if (!sk) continue;
            if (sk->vertices.size() != sk2->vertices.size()) return false;
            for (std::size_t k = 0; k < sk->vertices.size(); ++k)
                if (!(sk->vertices[k] + z == sk2->vertices[k])) return false;
            // hull perimeter below the vertex-sum perimeter
            if (sk->vertices.size() >= 3) {
                auto hull_dom = convex_hull_domain(sk->plane_vertices());
                if (polygon_perimeter(hull_dom, l1) > skeleton_perimeter(*sk, l1) + 1e-9) return false;
            }
        }
        return true;
    });

    check("shape: Minkowski perimeter additivity and monotonicity", [] {
        NormSpec l1 = NormSpec::l1();
        ShapeDomain sq = ShapeDomain::rectangle(1, 1);
        ShapeDomain di = ShapeDomain::l1_ball(1.0);
        double lhs = polygon_perimeter(sq.minkowski_sum(di), l1);
        double rhs = polygon_perimeter(sq, l1) + polygon_perimeter(di, l1);
        if (std::abs(lhs - rhs) > 1e-9) return false;
        ShapeDomain big = ShapeDomain::rectangle(3, 2);
        ShapeDomain small = ShapeDomain::rectangle(2, 1);
        return polygon_perimeter(small, l1) <= polygon_perimeter(big, l1) + 1e-12;
    });

    check("shape: Faber-Krahn ordering at unit area", [] {
        double h = 1.0 / 48;
        double disk = continuum_eigenvalue(ShapeDomain::regular_polygon(256, 1.0 / std::sqrt(M_PI)), h);
        double square = continuum_eigenvalue(ShapeDomain::rectangle(1, 1), h);
        double rect = continuum_eigenvalue(ShapeDomain::rectangle(std::sqrt(2.0), 1.0 / std::sqrt(2.0)), h);
        return disk < square && square < rect;
    });

    check("shape: facet inequality for l1 and l2", [] {
        NormSpec l1 = NormSpec::l1(), l2 = NormSpec::l2();
        StreamRng rng(77);
        for (int i = 0; i < 200; ++i) {
            std::vector<std::pair<double, double>> segs;
            double su = 0.0;
            for (int k = 0; k < 4; ++k) {
                double t = rng.uniform(-1.0, 2.0), u = rng.uniform(-1.0, 1.0);
                segs.push_back({t, u});
                su += u;
            }
            segs.push_back({rng.uniform(0.0, 1.0), -su});
            Vec2 e{1, 0};
            if (!facet_inequality_check(l1, e, segs)) return false;
            if (!facet_inequality_check(l2, e, segs)) return false;
        }
        return true;
    });

    check("walk: local-time conservation, jump rate, admissible range", [] {
        double mean_jumps = 0.0;
        for (int i = 0; i < 10000; ++i) {
            auto w = simulate_free_walk(1.0, 1000 + i);
            mean_jumps += double(w.jump_times.size());
            if (i < 200) {
                double tot = 0.0;
                for (auto& [p, lt] : w.local_times()) tot += lt;
                if (std::abs(tot - 1.0) > 1e-9) return false;
                if (!w.range().in_admissible_family()) return false;
            }
        }
        mean_jumps /= 10000.0;
        return std::abs(mean_jumps - 4.0) <= 3.0 * 2.0 / 100.0;
    });

    check("walk: incremental energy bookkeeping matches recomputation", [] {
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 5, Box{-200, -200, 200, 200});
        GibbsSamplerConfig cfg;
        cfg.t = 2.0;
        cfg.beta = 1.0;
        cfg.sweeps = 200;
        cfg.recheck_interval = 10;
        GibbsDiagnostics diag;
        mcmc_sample_gibbs(cfg, f, &diag);
        return diag.max_bookkeeping_error <= 1e-9;
    });

    return g_failures;
}
