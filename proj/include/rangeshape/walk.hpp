#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rangeshape/environment.hpp"
#include "rangeshape/lattice.hpp"
#include "rangeshape/rng.hpp"
#include "rangeshape/shape.hpp"

namespace rangeshape {

// Continuous-time nearest-neighbor trajectory on [0, horizon].
struct WalkTrajectory {
    double horizon = 0.0;
    std::vector<double> jump_times;  // strictly increasing, in (0, horizon)
    std::vector<Pt> positions;       // one longer than jump_times

    Pt position_at(double s) const;
    std::unordered_map<Pt, double, PtHash> local_times() const;
    std::vector<Pt> visited() const;          // distinct sites
    LatticeSet range() const;                 // hull of the visited set
};

// rate-4 simple random walk from the origin
WalkTrajectory simulate_free_walk(double t, std::uint64_t seed);

// Window piece of a trajectory: jump times in (s1,s2) plus the positions
// entered, the last one being the window's right endpoint state.
struct BridgeSegment {
    std::vector<double> times;
    std::vector<Pt> positions;
};

// exact free-walk bridge between fixed endpoint states (coordinates are
// independent rate-2 walks, so the bridge factorizes)
BridgeSegment sample_free_bridge(Pt from, Pt to, double s1, double s2, StreamRng& rng);
// billiard fold of a trajectory into the box [-R, R]^2; steps stay
// nearest-neighbor, so the result is a valid (compactly confined) path
WalkTrajectory folded_into_box(const WalkTrajectory& w, int R);
// unconditioned continuation on (s1, s2)
BridgeSegment sample_free_segment(Pt from, double s1, double s2, StreamRng& rng);
// jump count of the rate-2 one-dimensional bridge (exposed for its tests)
int sample_bridge_jump_count_1d(double tau, int delta, StreamRng& rng);

struct GibbsSample {
    double energy = 0.0;          // H(R(t))
    std::size_t boundary_edges = 0;
    std::size_t range_sites = 0;
    long long sweep = 0;
    double acceptance_rate = 0.0;  // running, over the whole chain so far
    LatticeSet range;              // filled when keep_ranges is set
};

struct GibbsSamplerConfig {
    double t = 1.0;
    double beta = 0.0;
    int sweeps = 100;              // one sweep = window_per_sweep proposals
    int burn_in = 0;
    int thinning = 1;
    std::uint64_t seed = 1;
    // longest window scale; each proposal draws its length from a mixture
    // of scales window_fraction * 4^-k so that compact states at large beta
    // still accept local moves
    double window_fraction = 0.25;
    int windows_per_sweep = 8;
    // ramp beta geometrically from 0.5 to the target across the burn-in;
    // direct quenches freeze at large beta
    bool annealed_init = true;
    bool keep_ranges = false;
    int recheck_interval = 100;    // full energy recompute every this many sweeps
};

struct GibbsDiagnostics {
    double acceptance_rate = 0.0;
    std::vector<double> energy_trace;     // per sweep
    double autocorrelation_time = 1.0;    // integrated, from the energy trace
    double max_bookkeeping_error = 0.0;   // incremental vs recomputed energy
    long long proposals = 0;
    long long accepted = 0;
};

// Metropolis chain on path space targeting the Gibbs measure at (t, beta):
// proposals redraw a uniformly chosen time window from the free bridge law
// (free end law for windows touching the horizon) and are accepted with
// probability min(1, e^{-beta (H' - H)}).
std::vector<GibbsSample> mcmc_sample_gibbs(const GibbsSamplerConfig& cfg, const WeightField& field,
                                           GibbsDiagnostics* diag = nullptr);

// Exact window resampling of the free law (used by the sampler internals and
// exposed for the beta = 0 anchor tests).
class PathSpaceChain {
  public:
    PathSpaceChain(double t, double beta, const WeightField& field, std::uint64_t seed,
                   double window_fraction = 0.25);

    void step();                      // one window proposal
    // tempering support: retarget the chain (used by annealed initialization)
    void set_beta(double beta) { beta_ = beta; }
    void set_window_fraction(double wf) { window_fraction_ = wf; }
    double beta() const { return beta_; }
    const WalkTrajectory& path() const { return path_; }
    double energy() const { return energy_; }
    std::size_t boundary_edges() const { return boundary_edges_; }
    const LatticeSet& range() const { return range_; }
    long long proposals() const { return proposals_; }
    long long accepted() const { return accepted_; }
    double recompute_error();         // refreshes cached energy, returns |delta|

  private:
    void refresh_range();

    double t_;
    double beta_;
    const WeightField* field_;
    StreamRng rng_;
    double window_fraction_;
    WalkTrajectory path_;
    std::unordered_map<Pt, int, PtHash> occupancy_;
    LatticeSet range_;
    double energy_ = 0.0;
    std::size_t boundary_edges_ = 0;
    long long proposals_ = 0;
    long long accepted_ = 0;
};

struct ShapeDistanceStats {
    std::vector<double> distances;  // one per sample: inf-translate Hausdorff
    double median = 0.0;
    double mean = 0.0;
    double scale = 0.0;             // r(t, beta) used for the rescaling
};

// For each sampled range R computes inf_x dist_H(r^{-1} R, x + U0).
ShapeDistanceStats shape_distance_diagnostic(const std::vector<LatticeSet>& samples,
                                             const ShapeDomain& u0, double t, double beta);

}  // namespace rangeshape
