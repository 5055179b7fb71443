#include "doctest.h"

#include <cmath>

#include "rangeshape/environment.hpp"
#include "rangeshape/rng.hpp"

using namespace rangeshape;

namespace {
const Box kBox{-50, -50, 50, 50};
}

TEST_CASE("constant field") {
    WeightField f = build_environment(LawDescriptor::constant(1.0), 9, kBox);
    CHECK(f.weight(edge_between({0, 0}, {1, 0})) == 1.0);
    CHECK(f.weight(edge_between({-3, 7}, {-3, 8})) == 1.0);
}

TEST_CASE("iid uniform weights stay in the support and are deterministic") {
    WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 1234, kBox);
    StreamRng rng(5);
    for (int i = 0; i < 2000; ++i) {
        Edge e{{int(rng.below(80)) - 40, int(rng.below(80)) - 40}, int(rng.below(2))};
        double w = f.weight(e);
        CHECK(w >= 0.5);
        CHECK(w <= 1.5);
        CHECK(f.weight(e) == w);
    }
    // regeneration from the serialized header is bit-identical
    WeightField g = WeightField::from_json(f.to_json());
    for (int i = 0; i < 500; ++i) {
        Edge e{{int(rng.below(80)) - 40, int(rng.below(80)) - 40}, int(rng.below(2))};
        CHECK(f.weight(e) == g.weight(e));
    }
}

TEST_CASE("periodic tile repeats with its period") {
    WeightField f = build_environment(LawDescriptor::periodic({{1, 2}, {2, 1}}), 1, kBox);
    CHECK(f.weight(edge_between({0, 0}, {1, 0})) == 1.0);
    for (int x = -6; x < 6; ++x)
        for (int y = -6; y < 6; ++y)
            for (int axis = 0; axis < 2; ++axis) {
                Edge e{{x, y}, axis};
                Edge shifted{{x + 2, y - 4}, axis};
                CHECK(f.weight(e) == f.weight(shifted));
            }
}

TEST_CASE("inadmissible laws are rejected") {
    CHECK_THROWS_AS(build_environment(LawDescriptor::iid_uniform(0.0, 1.0), 1, kBox), std::invalid_argument);
    CHECK_THROWS_AS(build_environment(LawDescriptor::iid_uniform(-0.5, 1.0), 1, kBox), std::invalid_argument);
    CHECK_THROWS_AS(build_environment(LawDescriptor::iid_uniform(2.0, 1.0), 1, kBox), std::invalid_argument);
}

TEST_CASE("hamiltonian examples") {
    WeightField unit = build_environment(LawDescriptor::constant(1.0), 1, kBox);
    CHECK(hamiltonian(LatticeSet::rectangle(2, 2), unit) == doctest::Approx(8.0));
    CHECK(hamiltonian(LatticeSet({{0, 0}}), unit) == doctest::Approx(4.0));

    WeightField tile = build_environment(LawDescriptor::periodic({{1, 2}, {2, 1}}), 1, kBox);
    // the four boundary edges of {0}: east tile(0,0)=1, north tile(0,0)=1,
    // west tile(-1,0)=2, south tile(0,-1)=2
    CHECK(hamiltonian(LatticeSet({{0, 0}}), tile) == doctest::Approx(6.0));
}

TEST_CASE("hamiltonian names the missing edge when the region is too small") {
    WeightField f = build_environment(LawDescriptor::constant(1.0), 1, Box{0, 0, 1, 1});
    CHECK_THROWS_WITH_AS(hamiltonian(LatticeSet::rectangle(2, 2), f),
                         doctest::Contains("outside field region"), std::out_of_range);
}

TEST_CASE("empirical mean of iid-uniform weights") {
    WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 777, Box{-600, -600, 600, 600});
    double sum = 0.0;
    int n = 100000;
    StreamRng rng(8);
    for (int i = 0; i < n; ++i) {
        Edge e{{int(rng.below(1000)) - 500, int(rng.below(1000)) - 500}, int(rng.below(2))};
        sum += f.weight(e);
    }
    double mean = sum / n;
    double sigma = (1.0 / std::sqrt(12.0)) / std::sqrt(double(n));
    CHECK(std::abs(mean - 1.0) <= 3.0 * sigma);
}
