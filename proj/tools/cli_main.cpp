#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "rangeshape/config.hpp"
#include "rangeshape/environment.hpp"
#include "rangeshape/fpp.hpp"
#include "rangeshape/lattice.hpp"
#include "rangeshape/shape.hpp"
#include "rangeshape/skeleton.hpp"
#include "rangeshape/spectral.hpp"
#include "rangeshape/stats.hpp"
#include "rangeshape/walk.hpp"
#include "verify_suite.hpp"

using namespace rangeshape;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& outdir, const std::string& out, const std::string& payload) {
    if (out.empty() || out == "-") {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::string path = (out.front() == '/') ? out : outdir + "/" + out;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << payload;
}

// environment from config keys: env-file wins, else law/a/b/p/tile/field-seed
WeightField field_from_config(const ExperimentConfig& cfg, Box fallback_region) {
    std::string envfile = cfg.get("env");
    if (!envfile.empty()) return WeightField::from_json(slurp(envfile));
    std::string law = cfg.get("law", "constant");
    double a = cfg.get_double("a", 1.0);
    double b = cfg.get_double("b", std::max(1.0, a));
    std::uint64_t seed = std::uint64_t(cfg.get_int("field-seed", 1));
    Box region = fallback_region;
    if (cfg.has("region")) {
        auto r = cfg.get_double_list("region");
        if (r.size() != 4) throw std::invalid_argument("region: expected x0,y0,x1,y1");
        region = Box{int(r[0]), int(r[1]), int(r[2]), int(r[3])};
    }
    if (law == "constant") return build_environment(LawDescriptor::constant(a), seed, region);
    if (law == "iid-uniform") return build_environment(LawDescriptor::iid_uniform(a, b), seed, region);
    if (law == "iid-two-point")
        return build_environment(LawDescriptor::iid_two_point(a, b, cfg.get_double("p", 0.5)), seed, region);
    if (law == "periodic") {
        std::vector<std::vector<double>> tile;
        std::stringstream rows(cfg.get("tile", "1,2;2,1"));
        std::string row;
        while (std::getline(rows, row, ';')) {
            std::vector<double> r;
            std::stringstream cols(row);
            std::string c;
            while (std::getline(cols, c, ',')) r.push_back(std::stod(c));
            tile.push_back(r);
        }
        return build_environment(LawDescriptor::periodic(tile), seed, region);
    }
    throw std::invalid_argument("unknown law: " + law);
}

NormSpec norm_from_config(const ExperimentConfig& cfg) {
    std::string n = cfg.get("norm", "l1");
    if (n == "l1") return NormSpec::l1();
    if (n == "l2") return NormSpec::l2();
    if (n == "linf") return NormSpec::linf();
    if (n.rfind("weighted:", 0) == 0) {
        double wx, wy;
        if (std::sscanf(n.c_str() + 9, "%lf,%lf", &wx, &wy) != 2)
            throw std::invalid_argument("norm weighted:<wx>,<wy>");
        return NormSpec::weighted_l1(wx, wy);
    }
    if (n.rfind("ball:", 0) == 0) {
        ShapeDomain ball = ShapeDomain::from_json(slurp(n.substr(5)));
        return NormSpec::ball(ball.vertices());
    }
    throw std::invalid_argument("unknown norm spec: " + n);
}

int cmd_sample(const ExperimentConfig& cfg, const std::string& outdir, const std::string& out) {
    double t = cfg.get_double("t", 1.0);
    int margin = int(10.0 * std::sqrt(t)) + 100;
    WeightField field = field_from_config(cfg, Box{-margin, -margin, margin, margin});
    GibbsSamplerConfig sc;
    sc.t = t;
    sc.beta = cfg.get_double("beta", 0.0);
    sc.sweeps = int(cfg.get_int("sweeps", 200));
    sc.burn_in = int(cfg.get_int("burn-in", 50));
    sc.thinning = int(cfg.get_int("thinning", 1));
    sc.seed = std::uint64_t(cfg.get_int("seed", 1));
    sc.window_fraction = cfg.get_double("window-fraction", 0.25);
    sc.windows_per_sweep = int(cfg.get_int("windows-per-sweep", 8));
    sc.keep_ranges = cfg.get_int("emit-range", 0) != 0;
    GibbsDiagnostics diag;
    auto samples = mcmc_sample_gibbs(sc, field, &diag);

    std::ostringstream os;
    json header;
    header["kind"] = "sample";
    header["config"] = json::parse(cfg.to_json());
    os << header.dump() << "\n";
    for (const auto& s : samples) {
        json j;
        j["sweep"] = s.sweep;
        j["boundary"] = s.boundary_edges;
        j["energy"] = s.energy;
        j["sites"] = s.range_sites;
        j["acceptance"] = s.acceptance_rate;
        if (sc.keep_ranges) j["range"] = json::parse(to_json(s.range));
        os << j.dump() << "\n";
    }
    json d;
    d["kind"] = "diagnostics";
    d["acceptance_rate"] = diag.acceptance_rate;
    d["autocorrelation_time"] = diag.autocorrelation_time;
    d["max_bookkeeping_error"] = diag.max_bookkeeping_error;
    d["proposals"] = diag.proposals;
    os << d.dump() << "\n";
    emit(outdir, out, os.str());
    return 0;
}

int cmd_norm(const ExperimentConfig& cfg, const std::string& outdir, const std::string& out) {
    std::vector<Pt> dirs;
    {
        std::stringstream ss(cfg.get("dirs", "1,0;1,1;2,1;1,2;0,1"));
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            int x, y;
            if (std::sscanf(tok.c_str(), "%d,%d", &x, &y) != 2)
                throw std::invalid_argument("dirs: expected x,y;x,y;...");
            dirs.push_back({x, y});
        }
    }
    std::vector<int> schedule;
    for (double v : cfg.get_double_list("schedule")) schedule.push_back(int(v));
    if (schedule.empty()) schedule = {5, 10, 20, 40, 80};
    int reach = 0;
    for (Pt d : dirs) reach = std::max(reach, schedule.back() * l1_norm(d));
    int margin = reach + 4;
    WeightField field = field_from_config(cfg, Box{-margin, -margin, margin, margin});
    auto est = estimate_norm(dirs, schedule, field);

    std::ostringstream os;
    os << "# config: " << cfg.to_json() << "\n";
    os << "dir_x,dir_y,n,distance_over_n,lower_bound,upper_bound,rho_hat\n";
    for (const auto& e : est)
        for (auto [n, v] : e.values)
            os << e.direction.x << "," << e.direction.y << "," << n << "," << v << ","
               << e.lower_bound << "," << e.upper_bound << "," << e.rho_hat << "\n";
    emit(outdir, out, os.str());
    return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg, const std::string& outdir, const std::string& out) {
    std::string sites = cfg.get("sites");
    if (sites.empty()) throw std::invalid_argument("spectrum: missing sites file (key 'sites')");
    LatticeSet s = lattice_set_from_json(slurp(sites));
    SpectralPair sp = principal_eigenpair(s);
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["lambda1"] = sp.lambda1;
    j["lambda2"] = sp.lambda2;
    j["gap"] = sp.lambda2 - sp.lambda1;
    j["residual1"] = sp.residual1;
    if (s.contains({0, 0})) {
        auto rep = eigenfunction_bounds_report(s);
        j["bounds"] = {{"origin_mass", rep.origin_mass},
                       {"max_mass", rep.max_mass},
                       {"min_neighbor_ratio", rep.min_neighbor_ratio},
                       {"min_value", rep.min_value},
                       {"diameter", rep.diameter},
                       {"decay_rate", rep.decay_rate}};
    }
    emit(outdir, out, j.dump(2) + "\n");
    return 0;
}

int cmd_skeleton(const ExperimentConfig& cfg, const std::string& outdir, const std::string& out) {
    std::string sites = cfg.get("sites");
    if (sites.empty()) throw std::invalid_argument("skeleton: missing sites file (key 'sites')");
    int L = int(cfg.get_int("L", 2));
    LatticeSet s = lattice_set_from_json(slurp(sites));
    auto sk = extract_skeleton(s, L);
    json j;
    j["config"] = json::parse(cfg.to_json());
    if (!sk) {
        j["trivial"] = true;
    } else {
        j["trivial"] = false;
        j["skeleton"] = json::parse(to_json(*sk));
        j["perimeter"] = {{"l1", skeleton_perimeter(*sk, NormSpec::l1())},
                          {"l2", skeleton_perimeter(*sk, NormSpec::l2())},
                          {"linf", skeleton_perimeter(*sk, NormSpec::linf())}};
        if (sk->vertices.size() >= 3) {
            ShapeDomain v = v_neighborhood(*sk, L);
            j["v_neighborhood"] = json::parse(v.to_json());
            j["v_perimeter_l1"] = polygon_perimeter(v, NormSpec::l1());
        }
    }
    emit(outdir, out, j.dump(2) + "\n");
    return 0;
}

int cmd_shape(const ExperimentConfig& cfg, const std::string& outdir, const std::string& out) {
    NormSpec rho = norm_from_config(cfg);
    MinimizeConfig mc;
    mc.directions = int(cfg.get_int("k", 64));
    mc.final_h = cfg.get_double("h", 1.0 / 64);
    mc.budget = int(cfg.get_int("budget", 4000));
    mc.seed = std::uint64_t(cfg.get_int("seed", 1));
    MinimizeResult res = minimize_shape_functional(rho, mc);
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["norm"] = rho.name();
    j["minimizer"] = json::parse(res.domain.to_json());
    j["lambda"] = res.best.lambda;
    j["perimeter"] = res.best.perimeter;
    j["F"] = res.best.value;
    j["evaluations"] = res.evaluations;
    j["converged"] = res.converged;
    if (!res.converged) std::fprintf(stderr, "warning: search budget exhausted before stationarity\n");
    emit(outdir, out, j.dump(2) + "\n");
    return 0;
}

int cmd_witness(const ExperimentConfig& cfg, const std::string& outdir, const std::string& out) {
    double t = cfg.get_double("t", 5000.0);
    double beta = cfg.get_double("beta", 5.0);
    double r = confinement_scale(t, beta);
    int margin = int(3.0 * r) + 16;
    WeightField field = field_from_config(cfg, Box{-margin, -margin, margin, margin});

    ShapeDomain u0;
    double min_f = 0.0;
    std::string u0file = cfg.get("u0");
    NormSpec rho = norm_from_config(cfg);
    if (!u0file.empty()) {
        u0 = ShapeDomain::from_json(slurp(u0file));
        min_f = shape_functional(u0, rho, cfg.get_double("h", 1.0 / 64)).value;
    } else {
        MinimizeConfig mc;
        mc.budget = int(cfg.get_int("budget", 2000));
        MinimizeResult res = minimize_shape_functional(rho, mc);
        u0 = res.domain;
        min_f = res.best.value;
    }
    WitnessReport rep = lower_bound_witness(u0, t, beta, field, min_f, cfg.get_double("epsilon", 0.15));
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["r"] = rep.r;
    j["witness_sites"] = rep.witness_sites;
    j["lambda_discrete"] = rep.lambda_discrete;
    j["hamiltonian"] = rep.hamiltonian;
    j["value"] = rep.value;
    j["min_F"] = rep.reference_min_f;
    j["relative_gap"] = (rep.value - rep.reference_min_f) / rep.reference_min_f;
    j["test_function_bound"] = rep.test_function_bound;
    j["continuum_lambda"] = rep.continuum_lambda;
    emit(outdir, out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rangeshape: lattice range, FPP norm, Dirichlet spectra and shape-functional workbench"};
    app.require_subcommand(1);

    std::string config_file, outdir = ExperimentConfig::default_output_dir(), out;
    int threads = 0;
    app.add_option("--config", config_file, "flat key-value config file");
    app.add_option("--outdir", outdir, "output directory (default: $RANGESHAPE_OUTDIR or .)");
    app.add_option("--threads", threads, "OpenMP worker count (0 = library default)");

    // every subcommand takes free-form key=value overrides plus --out
    std::map<std::string, std::vector<std::string>> kvs;
    std::map<std::string, std::string> outs;
    for (const char* name : {"sample", "norm", "spectrum", "skeleton", "shape", "witness", "verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--out", outs[name], "output file (relative to outdir; default stdout)");
        sub->add_option("set", kvs[name], "key=value parameters (see README)");
    }

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        ExperimentConfig cfg;
        if (!config_file.empty()) cfg = ExperimentConfig::from_file(config_file);
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        for (const std::string& kv : kvs[name]) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("expected key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        cfg.set("subcommand", name);

        if (name == "verify") {
            int failures = run_verify_suite();
            std::printf("%s (%d failures)\n", failures == 0 ? "verify: all checks passed" : "verify: FAILED",
                        failures);
            return failures == 0 ? 0 : 1;
        }
        if (name == "sample") return cmd_sample(cfg, outdir, outs[name]);
        if (name == "norm") return cmd_norm(cfg, outdir, outs[name]);
        if (name == "spectrum") return cmd_spectrum(cfg, outdir, outs[name]);
        if (name == "skeleton") return cmd_skeleton(cfg, outdir, outs[name]);
        if (name == "shape") return cmd_shape(cfg, outdir, outs[name]);
        if (name == "witness") return cmd_witness(cfg, outdir, outs[name]);
        throw std::logic_error("unhandled subcommand");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
