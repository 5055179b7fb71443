#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rangeshape/geom.hpp"
#include "rangeshape/lattice.hpp"

namespace rangeshape {

enum class LawKind { Constant, IidUniform, IidTwoPoint, Periodic };

std::string law_name(LawKind k);
LawKind law_from_name(const std::string& name);

struct LawDescriptor {
    LawKind kind = LawKind::Constant;
    double a = 1.0;  // lower weight bound, must be > 0
    double b = 1.0;  // upper weight bound, >= a
    double p = 0.5;                          // two-point: probability of value a
    std::vector<std::vector<double>> tile;   // periodic: tile[row][col]

    static LawDescriptor constant(double w);
    static LawDescriptor iid_uniform(double a, double b);
    static LawDescriptor iid_two_point(double a, double b, double p);
    static LawDescriptor periodic(std::vector<std::vector<double>> tile);
};

// Immutable edge-weight environment. Weights are regenerated on demand from
// (law, seed, edge id) with a counter hash, so the field extends beyond its
// declared region deterministically.
class WeightField {
  public:
    WeightField() = default;
    WeightField(LawDescriptor law, std::uint64_t seed, Box region);

    double weight(const Edge& e) const;
    double a() const { return law_.a; }
    double b() const { return law_.b; }
    const Box& region() const { return region_; }
    const LawDescriptor& law() const { return law_; }
    std::uint64_t seed() const { return seed_; }

    bool edge_in_region(const Edge& e) const {
        return region_.contains(e.a) && region_.contains(e.other());
    }

    std::string to_json() const;
    static WeightField from_json(const std::string& text);

  private:
    LawDescriptor law_;
    std::uint64_t seed_ = 0;
    Box region_;
};

WeightField build_environment(const LawDescriptor& law, std::uint64_t seed, Box region);

// H(S): total weight of the outer edge boundary of s.
double hamiltonian(const LatticeSet& s, const WeightField& field);

}  // namespace rangeshape
