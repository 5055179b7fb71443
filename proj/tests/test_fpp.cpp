#include "doctest.h"

#include <cmath>

#include "rangeshape/fpp.hpp"

using namespace rangeshape;

namespace {
WeightField unit_field(int r = 40) {
    return build_environment(LawDescriptor::constant(1.0), 1, Box{-r, -r, r, r});
}
}  // namespace

TEST_CASE("path energy") {
    WeightField f = unit_field();
    DualPath empty;
    CHECK(path_energy(empty, f) == 0.0);

    DualPath three;
    three.vertices = {{0, 0}, {1, 0}, {1, 1}, {2, 1}};
    CHECK(path_energy(three, f) == doctest::Approx(3.0));

    WeightField tile = build_environment(LawDescriptor::periodic({{1, 2}, {2, 1}}), 1, Box{-40, -40, 40, 40});
    DualPath four;
    four.vertices = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}};
    double expected = 0.0;
    for (const Edge& e : four.crossed_edges()) expected += tile.weight(e);
    CHECK(path_energy(four, tile) == doctest::Approx(expected));
}

TEST_CASE("fpp distance under unit weights is the l1 distance") {
    WeightField f = unit_field();
    auto [d, geo] = fpp_distance({0, 0}, {2, 1}, f);
    CHECK(d == doctest::Approx(3.0));
    CHECK(geo.vertices.front() == Pt{0, 0});
    CHECK(geo.vertices.back() == Pt{2, 1});
    CHECK(geo.is_self_avoiding());
    CHECK(path_energy(geo, f) == doctest::Approx(d));
    CHECK(fpp_distance({0, 0}, {0, 0}, f).first == 0.0);
}

TEST_CASE("fpp distance equals the exhaustive path oracle on a 5x5 window") {
    WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 42, Box{-7, -7, 7, 7});
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y) {
            auto [d, geo] = fpp_distance({0, 0}, {x, y}, f);
            double oracle = reference::fpp_distance_enumerated({0, 0}, {x, y}, 10, f);
            CHECK(d == doctest::Approx(oracle).epsilon(1e-12));
        }
}

TEST_CASE("norm estimation under unit weights is exact") {
    WeightField f = unit_field(44);
    auto est = estimate_norm({{1, 0}, {1, 1}}, {1, 2, 4, 8, 16}, f);
    for (auto [n, v] : est[0].values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(est[0].rho_hat == doctest::Approx(1.0));
    CHECK(est[1].rho_hat == doctest::Approx(2.0));
}

TEST_CASE("norm estimate respects the a,b bracket for iid weights") {
    WeightField f = build_environment(LawDescriptor::iid_uniform(0.5, 1.5), 3, Box{-110, -110, 110, 110});
    auto est = estimate_norm({{1, 0}}, {10, 50, 100}, f);
    for (auto [n, v] : est[0].values) {
        CHECK(v >= 0.5);
        CHECK(v <= 1.5);
    }
}

TEST_CASE("norm estimation errors") {
    WeightField f = unit_field(10);
    CHECK_THROWS_AS(estimate_norm({{1, 0}}, {5, 50}, f), std::out_of_range);
    CHECK_THROWS_AS(estimate_norm({{1, 0}}, {5, 5}, f), std::invalid_argument);
    CHECK_THROWS_AS(estimate_norm({{1, 0}}, {}, f), std::invalid_argument);
}

TEST_CASE("uniform norm error vanishes for unit weights") {
    WeightField f = unit_field(30);
    auto est = estimate_norm({{1, 0}, {1, 1}, {2, 1}, {1, 2}}, {4, 8}, f);
    EstimatedNorm rho(est, true);
    CHECK(uniform_norm_error(12, 6, f, rho, 9) == 0.0);
    CHECK(reference::uniform_norm_error_serial(12, 6, f, rho, 9) == 0.0);
}

TEST_CASE("gibbs path sum") {
    WeightField f = unit_field(20);

    SUBCASE("x = y counts only the empty path") {
        GibbsPathSum s = gibbs_path_sum({0, 0}, {0, 0}, 3.0, f, 11);
        CHECK(s.truncated_sum == doctest::Approx(1.0));
        CHECK(s.paths == 1);
        CHECK(s.distance == 0.0);
        CHECK(s.bracket_ok);
    }

    SUBCASE("nearest neighbors at beta 3") {
        GibbsPathSum s = gibbs_path_sum({0, 0}, {1, 0}, 3.0, f, 11);
        CHECK(s.truncated_sum >= std::exp(-3.0));
        CHECK(s.bracket_ok);
    }

    SUBCASE("l1 distance 3 at beta 3") {
        GibbsPathSum s = gibbs_path_sum({0, 0}, {2, 1}, 3.0, f, 11);
        CHECK(s.bracket_ok);
    }

    SUBCASE("refuses temperatures below the certification threshold") {
        CHECK_THROWS_AS(gibbs_path_sum({0, 0}, {1, 0}, 1.0, f, 11), std::invalid_argument);
        CHECK_THROWS_AS(gibbs_path_sum({0, 0}, {2, 1}, 3.0, f, 2), std::invalid_argument);
    }
}

TEST_CASE("geodesic confinement") {
    WeightField f = unit_field(20);
    CHECK(geodesic_confinement_check({0, 0}, {2, 1}, f));
    CHECK(geodesic_confinement_check({0, 0}, {0, 0}, f));
    WeightField iid = build_environment(LawDescriptor::iid_uniform(0.8, 1.2), 11, Box{-20, -20, 20, 20});
    CHECK(geodesic_confinement_check({0, 0}, {1, 1}, iid));
}

TEST_CASE("estimated norm interpolates by conic combinations") {
    WeightField f = unit_field(30);
    auto est = estimate_norm({{1, 0}, {1, 1}}, {2, 4}, f);
    EstimatedNorm rho(est, true);
    CHECK(rho(Pt{3, -2}) == doctest::Approx(5.0));
    CHECK(rho(Pt{-7, 0}) == doctest::Approx(7.0));
    CHECK(rho(Vec2{0.5, 0.25}) == doctest::Approx(0.75));
    CHECK(rho(Vec2{0, 0}) == 0.0);
}
