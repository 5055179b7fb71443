#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "rangeshape/environment.hpp"
#include "rangeshape/fpp.hpp"
#include "rangeshape/lattice.hpp"
#include "rangeshape/shape.hpp"
#include "rangeshape/spectral.hpp"
#include "rangeshape/walk.hpp"

using namespace rangeshape;

namespace {

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void row(const char* name, double serial, double parallel, bool equal) {
    std::printf("%-34s %9.3fs %9.3fs %6.2fx  %s\n", name, serial, parallel, serial / parallel,
                equal ? "results match" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("%-34s %10s %10s %7s\n", "kernel", "serial", "openmp", "speedup");

    {  // 5-point stencil application on a large disk raster
        std::vector<Pt> pts;
        int R = 260;
        for (int y = -R; y <= R; ++y)
            for (int x = -R; x <= R; ++x)
                if (x * x + y * y < R * R) pts.push_back({x, y});
        LatticeSet disk(pts);
        DirichletOperator op(disk);
        std::vector<double> x(disk.size(), 1.0), y1(disk.size()), y2(disk.size());
        int reps = 100;
        double t0 = now();
        for (int i = 0; i < reps; ++i) reference::dirichlet_apply_serial(op, x.data(), y1.data());
        double t1 = now();
        for (int i = 0; i < reps; ++i) op.apply(x.data(), y2.data());
        double t2 = now();
        bool same = true;
        for (std::size_t i = 0; i < disk.size(); ++i)
            if (y1[i] != y2[i]) same = false;
        row("dirichlet apply (212k sites)", t1 - t0, t2 - t1, same);
    }

    {  // all-pairs BFS diameter
        LatticeSet sq = LatticeSet::rectangle(64, 64);
        double t0 = now();
        int d1 = reference::intrinsic_diameter_serial(sq);
        double t1 = now();
        int d2 = intrinsic_diameter(sq);
        double t2 = now();
        row("intrinsic diameter (64x64)", t1 - t0, t2 - t1, d1 == d2);
    }

    {  // batched distance maps for the norm-error diagnostic
        WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 3, Box{-64, -64, 64, 64});
        auto est = estimate_norm({{1, 0}, {1, 1}}, {8, 16, 32}, f);
        EstimatedNorm rho(est, true);
        double t0 = now();
        double a = reference::uniform_norm_error_serial(40, 8, f, rho, 7);
        double t1 = now();
        double b = uniform_norm_error(40, 8, f, rho, 7);
        double t2 = now();
        row("uniform norm error (8 maps)", t1 - t0, t2 - t1, a == b);
    }

    {  // free-walk ensemble, counter-seeded so order does not matter
        int n = 40000;
        double t = 3.0;
        std::vector<float> e1(std::size_t(n), 0.f), e2(std::size_t(n), 0.f);
        double t0 = now();
        for (int i = 0; i < n; ++i) e1[std::size_t(i)] = float(simulate_free_walk(t, 100 + i).range().size());
        double t1 = now();
#pragma omp parallel for schedule(dynamic, 256)
        for (int i = 0; i < n; ++i) e2[std::size_t(i)] = float(simulate_free_walk(t, 100 + i).range().size());
        double t2 = now();
        row("free-walk ensemble (40k walks)", t1 - t0, t2 - t1, e1 == e2);
    }

    {  // independent Gibbs chains
        WeightField f = build_environment(LawDescriptor::constant(1.0), 1, Box{-400, -400, 400, 400});
        auto run = [&](int chain) {
            GibbsSamplerConfig cfg;
            cfg.t = 100.0;
            cfg.beta = 1.0;
            cfg.sweeps = 60;
            cfg.burn_in = 20;
            cfg.seed = 1000 + std::uint64_t(chain);
            auto s = mcmc_sample_gibbs(cfg, f);
            return s.back().energy;
        };
        int chains = 8;
        std::vector<double> r1(std::size_t(chains), 0.0), r2(std::size_t(chains), 0.0);
        double t0 = now();
        for (int c = 0; c < chains; ++c) r1[std::size_t(c)] = run(c);
        double t1 = now();
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < chains; ++c) r2[std::size_t(c)] = run(c);
        double t2 = now();
        row("gibbs chains (8 x t=100)", t1 - t0, t2 - t1, r1 == r2);
    }

    return 0;
}
