#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ucwfp/error.hpp"
#include "ucwfp/spaces.hpp"

using namespace ucwfp;

TEST_CASE("space configs build the four models") {
    const SpacePtr e = make_space(nlohmann::json{{"model", "euclidean"}, {"n", 2}, {"R", 1}});
    CHECK(e->model() == "euclidean");
    CHECK(e->diameter_bound() == 2.0);

    const SpacePtr t = make_space(nlohmann::json{{"model", "startree"}, {"k", 3}, {"L", 1}});
    CHECK(t->diameter_bound() == 2.0);
    const auto& tree = dynamic_cast<const StarTree&>(*t);
    CHECK(t->distance(tree.at(1, 0.4), tree.at(2, 0.7)) == doctest::Approx(1.1).epsilon(1e-15));

    const SpacePtr h = make_space(nlohmann::json{{"model", "hyperboloid"}, {"rho", 1}});
    const auto& disk = dynamic_cast<const HyperboloidDisk&>(*h);
    for (double theta : {0.0, 1.0, 2.5, 4.0}) {
        const Point edge = disk.polar(1.0, theta);
        CHECK(std::abs(h->distance(h->anchor(), edge) - 1.0) <= 1e-9);
        CHECK(std::abs(oracle::distance(h->anchor(), edge) - 1.0) <= 1e-9);
    }
    CHECK(h->diameter_bound() == 2.0);

    const SpacePtr s = make_space(nlohmann::json{{"model", "sparse-l2"}});
    CHECK(s->diameter_bound() == 2.0);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(make_space(nlohmann::json{{"model", "klein"}}), ConfigError);
    CHECK_THROWS_AS(make_space(nlohmann::json{{"model", "euclidean"}, {"n", 0}}), ConfigError);
    CHECK_THROWS_AS(make_space(nlohmann::json{{"model", "startree"}, {"k", 2}, {"L", 1}}), ConfigError);
    CHECK_THROWS_AS(make_space(nlohmann::json{{"model", "hyperboloid"}, {"rho", -1}}), ConfigError);
    CHECK_THROWS_AS(make_space(nlohmann::json::array()), ConfigError);
}

TEST_CASE("describe round-trips through make_space") {
    for (const auto& cfg : {nlohmann::json{{"model", "euclidean"}, {"n", 3}, {"R", 0.5}},
                            nlohmann::json{{"model", "sparse-l2"}, {"n", 5}},
                            nlohmann::json{{"model", "hyperboloid"}, {"rho", 0.7}},
                            nlohmann::json{{"model", "startree"}, {"k", 4}, {"L", 2}}}) {
        const SpacePtr a = make_space(cfg);
        const SpacePtr b = make_space(a->describe());
        CHECK(a->describe() == b->describe());
        CHECK(a->sample(9) == b->sample(9));
    }
}

TEST_CASE("sampling is deterministic and stays inside the space") {
    for (const auto& cfg : {nlohmann::json{{"model", "euclidean"}, {"n", 2}, {"R", 1}},
                            nlohmann::json{{"model", "sparse-l2"}, {"n", 8}},
                            nlohmann::json{{"model", "hyperboloid"}, {"rho", 1}},
                            nlohmann::json{{"model", "startree"}, {"k", 3}, {"L", 1}}}) {
        const SpacePtr s = make_space(cfg);
        CHECK(s->sample(0) == s->sample(0));
        for (std::uint64_t seed = 0; seed < 2000; ++seed) {
            const Point p = s->sample(seed);
            REQUIRE(s->owns(p));
            CHECK(s->excess(p) == 0.0);
        }
    }
}

TEST_CASE("hyperboloid samples lie within rho of the center") {
    HyperboloidDisk disk(1.0);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const Point p = disk.sample(seed);
        worst = std::max(worst, oracle::distance(disk.anchor(), p));
        CHECK(std::abs(HyperboloidDisk::sheet_defect(p.as<LorentzPoint>())) <= 1e-12);
    }
    CHECK(worst <= 1.0 + 1e-12);
}

TEST_CASE("hyperboloid distance agrees with the long double arccosh") {
    HyperboloidDisk disk(1.5);
    for (std::uint64_t s = 0; s < 500; ++s) {
        const Point a = disk.sample(2 * s);
        const Point b = disk.sample(2 * s + 1);
        CHECK(std::abs(disk.distance(a, b) - oracle::distance(a, b)) <= 1e-12);
        CHECK(disk.distance(a, b) == disk.distance(b, a));
    }
}

TEST_CASE("hyperboloid midpoint is equidistant") {
    HyperboloidDisk disk(1.0);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Point x = disk.sample(2 * s);
        const Point y = disk.sample(2 * s + 1);
        const Point h = disk.midpoint(x, y);
        const double d = oracle::distance(x, y);
        CHECK(std::abs(oracle::distance(x, h) - d / 2) <= 1e-12);
        CHECK(std::abs(oracle::distance(y, h) - d / 2) <= 1e-12);
    }
}

TEST_CASE("off-center hyperboloid disk") {
    const LorentzPoint c = HyperboloidDisk::lift(0.4, -0.3);
    HyperboloidDisk disk(0.5, c);
    CHECK(disk.anchor() == Point{c});
    for (std::uint64_t s = 0; s < 500; ++s) CHECK(oracle::distance(Point{c}, disk.sample(s)) <= 0.5 + 1e-12);
    CHECK(disk.distance(Point{c}, Point{disk.polar(0.5, 1.0)}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sparse l2 ball") {
    SparseL2Ball ball;
    const Point e1 = SparseL2Ball::unit(1);
    const Point minus = SparseL2Ball::unit(1, -1.0);
    const Point mid = ball.midpoint(e1, minus);
    CHECK(mid.as<SparsePoint>().support_size() == 0);
    CHECK(mid == ball.anchor());
    CHECK(ball.distance(e1, minus) == 2.0);

    const Point a = SparseL2Ball::make({{3, 0.5}, {1, -0.25}, {7, 1e-301}});
    CHECK(a.as<SparsePoint>().support_size() == 2);
    CHECK(a.as<SparsePoint>().value_at(3) == 0.5);
    CHECK(a.as<SparsePoint>().value_at(2) == 0.0);

    for (std::uint64_t s = 0; s < 300; ++s) {
        const Point x = ball.sample(2 * s);
        const Point y = ball.sample(2 * s + 1);
        CHECK(ball.distance(x, y) == doctest::Approx(oracle::distance(x, y)).epsilon(1e-14));
    }

    CHECK(ball.from_json(nlohmann::json{{"2", 0.5}}) == Point{SparseL2Ball::unit(2, 0.5)});
    CHECK_THROWS_AS(ball.from_json(nlohmann::json{{"0", 0.5}}), ConfigError);
    CHECK_THROWS_AS(ball.from_json(nlohmann::json{{"1", 0.9}, {"2", 0.9}}), DomainError);
}

TEST_CASE("star tree geodesics pass through the hub") {
    StarTree tree(3, 1.0);
    const Point a = tree.at(1, 1.0);
    const Point b = tree.at(2, 1.0);
    const Point mid = tree.midpoint(a, b);
    CHECK(mid == Point{StarTree::hub()});
    CHECK(tree.distance(a, b) == 2.0);

    const Point q = tree.combine(a, b, 0.25);
    CHECK(q.as<TreePoint>().leg == 1);
    CHECK(q.as<TreePoint>().offset == doctest::Approx(0.5));
    const Point r = tree.combine(a, b, 0.75);
    CHECK(r.as<TreePoint>().leg == 2);
    CHECK(r.as<TreePoint>().offset == doctest::Approx(0.5));

    const Point same = tree.combine(tree.at(3, 0.2), tree.at(3, 0.8), 0.5);
    CHECK(same.as<TreePoint>().leg == 3);
    CHECK(same.as<TreePoint>().offset == doctest::Approx(0.5));

    for (std::uint64_t s = 0; s < 1000; ++s) {
        const Point x = tree.sample(2 * s);
        const Point y = tree.sample(2 * s + 1);
        CHECK(tree.distance(x, y) == oracle::distance(x, y));
        const double off = x.as<TreePoint>().offset;
        CHECK(off >= 0.0);
        CHECK(off <= 1.0);
    }
    CHECK_THROWS_AS(tree.at(4, 0.5), DomainError);
    CHECK_THROWS_AS(tree.from_json(nlohmann::json{{"leg", 1}, {"offset", 1.5}}), DomainError);
}
