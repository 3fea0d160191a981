#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ucwfp/error.hpp"
#include "ucwfp/mappings.hpp"
#include "ucwfp/spaces.hpp"

using namespace ucwfp;

namespace {

std::shared_ptr<EuclideanBall> disk() { return std::make_shared<EuclideanBall>(2, 1.0); }

double coord(const Point& p, std::size_t i) { return p.as<VectorPoint>().coords.at(i); }

} // namespace

TEST_CASE("rotation") {
    auto space = disk();
    auto rot = make_rotation(space, std::numbers::pi / 2);
    const Point x = space->make({1, 0});
    const Point tx = rot->apply(x);
    CHECK(std::abs(coord(tx, 0)) <= 1e-16);
    CHECK(coord(tx, 1) == doctest::Approx(1.0));
    CHECK(oracle::distance(rot->power(4, x), x) <= 1e-15);
    CHECK(rot->power(0, x) == x);
    CHECK(rot->k(1) == 0.0);
    CHECK(rot->vanishing_k_up_to(100));
    REQUIRE(rot->known_fixed_points().size() == 1);
    CHECK(rot->apply(rot->known_fixed_points()[0]) == rot->known_fixed_points()[0]);

    CHECK_THROWS_AS(make_rotation(std::make_shared<EuclideanBall>(3, 1.0), 1.0), ConfigError);
}

TEST_CASE("contraction") {
    auto space = disk();
    const Point q = space->make({0.2, -0.1});
    auto c = make_contraction(space, 0.5, q);
    CHECK(c->apply(q) == q);
    const Point x = space->make({-0.6, 0.5});
    const double d0 = oracle::distance(x, q);
    for (std::uint64_t n = 1; n <= 20; ++n)
        CHECK(oracle::distance(c->power(n, x), q) <= std::pow(0.5, n) * d0 + 1e-12);
    CHECK_THROWS_AS(make_contraction(space, 1.0, q), ConfigError);
    CHECK_THROWS_AS(make_contraction(space, 0.0, q), ConfigError);
}

TEST_CASE("goebelKirk weights and k sequence") {
    auto space = std::make_shared<SparseL2Ball>();
    auto gk = make_goebel_kirk(space);

    CHECK(gk->k(1) == 1.0);
    for (std::uint64_t n = 1; n <= 60; ++n) {
        INFO("n = " << n);
        CHECK(gk->k(n) == doctest::Approx(oracle::gk_k(n)).epsilon(1e-12));
        CHECK(gk->k(n + 1) <= gk->k(n));
    }
    for (double eps : {0.5, 0.1, 1e-3, 1e-6, 1e-9}) {
        const std::uint64_t w = gk->k_witness(eps);
        for (std::uint64_t n = w; n < w + 50; ++n) CHECK(gk->k(n) <= eps);
    }
}

TEST_CASE("goebelKirk image agrees with the direct formula") {
    auto space = std::make_shared<SparseL2Ball>();
    auto gk = make_goebel_kirk(space);

    const Point e1 = SparseL2Ball::unit(1);
    const Point te1 = gk->apply(e1);
    CHECK(te1.as<SparsePoint>().value_at(1) == 0.0);
    CHECK(te1.as<SparsePoint>().value_at(2) == 1.0);
    CHECK(te1.as<SparsePoint>().norm() == 1.0);

    auto expected = oracle::dense(e1.as<SparsePoint>());
    for (int n = 1; n <= 3; ++n) expected = oracle::gk_apply(expected);
    const Point p3 = gk->power(3, e1);
    for (const auto& [i, v] : expected) CHECK(p3.as<SparsePoint>().value_at(i) == doctest::Approx(v).epsilon(1e-15));
    CHECK(p3.as<SparsePoint>().value_at(4) == doctest::Approx(oracle::gk_weight(2) * oracle::gk_weight(3)));

    for (std::uint64_t s = 0; s < 200; ++s) {
        const Point x = space->sample(s);
        const auto want = oracle::gk_apply(oracle::dense(x.as<SparsePoint>()));
        const Point got = gk->apply(x);
        CHECK(got.as<SparsePoint>().support_size() <= want.size());
        for (const auto& [i, v] : want) CHECK(got.as<SparsePoint>().value_at(i) == doctest::Approx(v).epsilon(1e-15));
    }
    CHECK(gk->apply(space->anchor()) == space->anchor());
}

TEST_CASE("treeFold") {
    auto space = std::make_shared<StarTree>(3, 1.0);
    auto f = make_tree_fold(space, 0.25, 1);
    const Point x = space->at(1, 0.8);
    const Point fx = f->apply(x);
    CHECK(fx.as<TreePoint>().leg == 2);
    CHECK(fx.as<TreePoint>().offset == doctest::Approx(0.6));
    CHECK(f->apply(StarTree::hub()) == Point{StarTree::hub()});
    CHECK_THROWS_AS(make_tree_fold(space, 0.0, 0), ConfigError);
    CHECK_THROWS_AS(make_tree_fold(std::make_shared<EuclideanBall>(2, 1.0), 0.5), ConfigError);
}

TEST_CASE("make_map dispatch and errors") {
    auto e = disk();
    CHECK(make_map(e, {{"map", "rotation"}, {"angle", 1.0}})->name() == "rotation");
    CHECK(make_map(e, {{"map", "contraction"}, {"c", 0.3}})->name() == "contraction");
    auto s = std::make_shared<SparseL2Ball>();
    CHECK(make_map(s, {{"map", "goebelKirk"}})->name() == "goebelkirk");
    auto t = std::make_shared<StarTree>(4, 1.0);
    CHECK(make_map(t, {{"map", "treefold"}, {"c", 0.5}, {"shift", 2}})->name() == "treefold");

    CHECK_THROWS_AS(make_map(e, {{"map", "shear"}}), ConfigError);
    CHECK_THROWS_AS(make_map(e, {{"map", "rotation"}}), ConfigError);
    CHECK_THROWS_AS(make_map(e, {{"map", "goebelKirk"}}), ConfigError);
    CHECK_THROWS_AS(make_map(s, {{"map", "goebelKirk"}, {"ratio", 1.5}}), ConfigError);

    const auto m = make_map(e, {{"map", "contraction"}, {"c", 0.3}, {"target", {0.1, 0.2}}});
    const auto again = make_map(e, m->describe());
    CHECK(again->describe() == m->describe());
}

TEST_CASE("asymptotic bound verification") {
    auto e = disk();
    const MapReport r = verify_asymptotic_bound(*make_rotation(e, 0.7), *e, 20, 500, 1);
    CHECK(r.max_violation <= 1e-12);
    CHECK(r.pass(1e-12));

    auto s = std::make_shared<SparseL2Ball>();
    const MapReport g = verify_asymptotic_bound(*make_goebel_kirk(s), *s, 20, 1000, 1);
    CHECK(g.max_violation <= 1e-9);
    CHECK(g.witness_violation <= 0.0);
    CHECK(g.pass(1e-9));

    // A map that claims k_n = 0 while expanding distances.
    auto stretch = std::make_shared<AsymptoticMap>(
        "stretch",
        [](const Point& x) {
            const auto& c = x.as<VectorPoint>().coords;
            return Point{VectorPoint{{std::clamp(1.5 * c[0], -0.7, 0.7), 0.5 * c[1]}}};
        },
        [](std::uint64_t) { return 0.0; }, [](double) { return std::uint64_t{1}; });
    const MapReport bad = verify_asymptotic_bound(*stretch, *e, 3, 500, 1);
    CHECK_FALSE(bad.pass(1e-9));
}
