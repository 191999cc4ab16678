#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holonorm/criteria.hpp"
#include "holonorm/error.hpp"
#include "holonorm/generators.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace holonorm;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = oracle::inf;

CanonicalCoordinate unit(double log_a = 0.0) { return CanonicalCoordinate(log_a, 0, {}); }
CanonicalCoordinate single_zero(double t, double theta, double log_a = 0.0) {
    return CanonicalCoordinate(log_a, 0, {{LogPoint(t, theta), 1}});
}

Curve one_z() { return Curve({unit(), CanonicalCoordinate(0.0, 1, {})}); }

std::function<double(double)> envelope_fn(const Curve& c) {
    return [&c](double t) {
        double v = -inf;
        for (const auto& g : c.coordinates()) v = std::max(v, oracle::counting_sum(g, t));
        return v;
    };
}

Curve shifted_log_a(const Curve& c, double shift) {
    std::vector<CanonicalCoordinate> coords;
    for (const auto& g : c.coordinates()) coords.push_back(g.with_log_a(g.log_a() + shift));
    return Curve(coords);
}

} // namespace

TEST_CASE("second condition examples") {
    const Curve c = one_z();
    const DefectResult r = second_condition(c, 2.0, {-5, 5});
    CHECK(r.value == 2.0);
    CHECK(r.value == doctest::Approx(oracle::grid_sup_defect(envelope_fn(c), 2.0, -5, 5, 1001)).epsilon(1e-9));
    CHECK(second_condition(c, 2.0, {-5, 5}, true).value == 2.0);

    const Curve flat({unit(), unit()});
    CHECK(second_condition(flat, 1.0, {-5, 5}).value == 0.0);
    CHECK_THROWS_AS(second_condition(c, 0.0, {-5, 5}), Error);

    // The geometric pair settles once the window covers its zeros.
    const Curve g = geometric_pair(10);
    const double ln2 = std::numbers::ln2;
    double previous = -1.0;
    for (double margin : {2.0, 4.0, 8.0}) {
        const Window w{-margin, 10 * ln2 + margin};
        const double v = second_condition(g, 1.0, w).value;
        const double grid = oracle::grid_sup_defect(envelope_fn(g), 1.0, w.lo, w.hi, 4001);
        CHECK(grid <= v + 1e-9);
        CHECK(v - grid <= 1e-2);
        if (previous >= 0.0) CHECK(v == doctest::Approx(previous).epsilon(1e-12));
        previous = v;
    }
}

TEST_CASE("quadratic condition") {
    CHECK(quadratic_condition(Curve({unit(), unit(1.0)}), {-5, 5}) == 0.0);
    const Curve c = one_z();
    const double v = quadratic_condition(c, {-5, 5});
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(oracle::grid_quadratic_constant(envelope_fn(c), -5, 5, 2001)).epsilon(1e-4));

    support::Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Curve rc = random_curve(2, 0.6, {-4, 4}, 1000 + trial);
        double last = 0.0;
        for (double half : {1.0, 2.0, 4.0, 6.0}) {
            const double q = quadratic_condition(rc, {-half, half});
            CHECK(q >= last - 1e-12);
            last = q;
        }
    }
}

TEST_CASE("cluster regions examples") {
    const Curve apart({single_zero(0, 0), single_zero(0, pi)});
    const auto regions = cluster_regions(apart, 0.5);
    REQUIRE(regions.size() == 2);
    CHECK(regions[0].subset == std::vector<int>{0});
    CHECK(regions[1].subset == std::vector<int>{1});
    for (const auto& r : regions) {
        REQUIRE(r.intervals.size() == 1);
        CHECK(r.intervals[0].first == -0.5);
        CHECK(r.intervals[0].second == 0.5);
    }

    CHECK(cluster_regions(Curve({unit(), unit(2.0)}), 0.5).empty());
    CHECK_THROWS_AS(cluster_regions(apart, 0.0), Error);
    CHECK_THROWS_AS(cluster_regions(apart, 1.6), Error);
}

TEST_CASE("two-disc lens against a polygon") {
    const Curve near({single_zero(0, 0), single_zero(0.2, 0)});
    const auto regions = cluster_regions(near, 0.5);
    const ClusterRegion* both = nullptr;
    for (const auto& r : regions)
        if (r.subset == std::vector<int>{0, 1}) both = &r;
    REQUIRE(both != nullptr);
    REQUIRE(both->intervals.size() == 1);
    const auto [lo, hi] = both->intervals[0];
    CHECK(lo >= -0.3 - 1e-12);
    CHECK(hi <= 0.7 + 1e-12);

    // vertices of a fine polygon inscribed in each circle, kept if inside the other disc
    double plo = inf, phi = -inf;
    const int sides = 200000;
    for (const auto& [c, other] : {std::pair{0.0, 0.2}, std::pair{0.2, 0.0}})
        for (int i = 0; i < sides; ++i) {
            const double a = 2 * pi * i / sides;
            const double t = c + 0.5 * std::cos(a), th = 0.5 * std::sin(a);
            if ((t - other) * (t - other) + th * th <= 0.25) {
                plo = std::min(plo, t);
                phi = std::max(phi, t);
            }
        }
    CHECK(lo == doctest::Approx(plo).epsilon(1e-6));
    CHECK(hi == doctest::Approx(phi).epsilon(1e-6));
}

TEST_CASE("cluster region soundness") {
    for (int seed = 0; seed < 15; ++seed) {
        const Curve c = random_curve(2, 0.7, {-3, 3}, 500 + seed);
        const double delta = 0.4;
        for (const auto& region : cluster_regions(c, delta))
            for (const auto& [lo, hi] : region.intervals) {
                if (hi - lo < 1e-5) continue;
                for (int k = 0; k <= 40; ++k) {
                    const double t = lo + 1e-6 + (hi - lo - 2e-6) * k / 40;
                    // candidate angles: where some disc boundary meets the circle |w| = e^t
                    std::vector<double> thetas;
                    for (int j : region.subset)
                        for (const auto& z : c.coordinate(j).zeros()) {
                            const double dt = std::abs(z.point.t - t);
                            if (dt > delta) continue;
                            const double w = std::sqrt(delta * delta - dt * dt) * (1 - 1e-9);
                            for (double th : {z.point.theta, z.point.theta + w, z.point.theta - w})
                                thetas.push_back(th);
                        }
                    bool found = false;
                    for (double th : thetas) {
                        bool all = true;
                        for (int j : region.subset) {
                            bool near = false;
                            for (const auto& z : c.coordinate(j).zeros())
                                near = near || oracle::cyl_dist(z.point, LogPoint(t, th)) <= delta;
                            all = all && near;
                        }
                        found = found || all;
                    }
                    CHECK(found);
                }
            }
    }
}

TEST_CASE("third condition examples") {
    const Curve three({single_zero(0, 0), single_zero(0, pi), unit()});
    const auto r = third_condition(three, 0.5, {-5, 5});
    CHECK(r.value == 0.0);
    CHECK(oracle::sampled_third_condition(three, 0.5, -5, 5, 2001).value == 0.0);

    const Curve clash({single_zero(0, 0), single_zero(0.3, 0.1)});
    const auto rc = third_condition(clash, 0.5, {-5, 5});
    CHECK(rc.value == inf);
    REQUIRE(rc.has_witness);
    CHECK(rc.subset == std::vector<int>{0, 1});

    // one coordinate with zeros, the other zero-free far below
    std::vector<Zero> zs = {{LogPoint(-1.5, 0.3), 1}, {LogPoint(0.4, -2.0), 2}, {LogPoint(1.7, 1.0), 1}};
    const CanonicalCoordinate g0(0.0, 0, zs);
    const Curve lone({g0, unit(-10.0)});
    const double delta = 0.3;
    double hand = 0.0;
    for (const auto& z : zs)
        for (double t : {z.point.t - delta, z.point.t + delta})
            hand = std::max(hand, oracle::counting_sum(g0, t) + 10.0);
    CHECK(third_condition(lone, delta, {-5, 5}).value == doctest::Approx(hand).epsilon(1e-14));
}

TEST_CASE("third condition against the sampling oracle") {
    for (int seed = 0; seed < 8; ++seed) {
        const Curve c = random_curve(1 + seed % 3, 0.5, {-4, 4}, 700 + seed);
        for (double delta : {0.1, 0.3}) {
            const double exact = third_condition(c, delta, {-4, 4}).value;
            const auto sampled = oracle::sampled_third_condition(c, delta, -4, 4, 4001);
            if (exact == inf) {
                CHECK(sampled.value == inf);
                continue;
            }
            CHECK(sampled.value <= exact + 1e-9);
            CHECK(exact - sampled.value <= 1e-2);
        }
    }
}

TEST_CASE("Ostrowski conditions") {
    const Curve g = geometric_pair(10);
    const OstrowskiReport o = ostrowski_check(g, {-3, 10});
    CHECK(o.a_bound == 1);
    CHECK(o.b_bound == 1);
    CHECK(o.c_min_dist == doctest::Approx(pi).epsilon(1e-15));
    CHECK(o.d_constant == 0.0);

    const OstrowskiReport free = ostrowski_check(Curve({unit(0.5), unit(-1.0)}), {-3, 3});
    CHECK(free.a_bound == 0);
    CHECK(free.b_bound == 0);
    CHECK(free.c_min_dist == inf);
    CHECK(free.d_constant == 0.0);  // no zeros to compare at

    const Curve col = colliding_pair(19, [](int k) { return 1.0 / (k + 1); });
    CHECK(ostrowski_check(col, {0, 25}).c_min_dist == doctest::Approx(1.0 / 20).epsilon(1e-12));
    const Curve shallow = colliding_pair(9, [](int k) { return 1.0 / (k + 1); });
    CHECK(ostrowski_check(shallow, {0, 25}).c_min_dist == doctest::Approx(1.0 / 10).epsilon(1e-12));

    CHECK_THROWS_AS(ostrowski_check(normal_counterexample(1), {-1, 10}), Error);
}

TEST_CASE("ring counts") {
    const CanonicalCoordinate c(0.0, 0, {{LogPoint(0.0, 0), 1}, {LogPoint(0.5, 1), 2}, {LogPoint(0.6, 2), 1}, {LogPoint(2.0, 0), 1}});
    CHECK(max_ring_count(c, {-1, 3}, std::numbers::ln2) == 4);
    CHECK(max_ring_count(c, {-1, 3}, 0.05) == 2);
    CHECK(max_ring_count(c, {1, 3}, 0.5) == 1);
}

TEST_CASE("monotonicity and scale invariance") {
    for (int seed = 0; seed < 20; ++seed) {
        const Curve c = random_curve(1 + seed % 2, 0.6, {-3, 3}, 900 + seed);
        const Window w{-5, 5};
        double prev = 0.0;
        for (double a : {0.25, 0.5, 1.0, 2.0, 3.0}) {
            const double v = second_condition(c, a, w).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
        prev = 0.0;
        for (double delta : {0.05, 0.1, 0.2, 0.4, 0.8, 1.2}) {
            const double v = third_condition(c, delta, w).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
        const Curve s = shifted_log_a(c, 3.7);
        CHECK(second_condition(s, 1.0, w).value == doctest::Approx(second_condition(c, 1.0, w).value).epsilon(1e-12).scale(1.0));
        CHECK(quadratic_condition(s, w) == doctest::Approx(quadratic_condition(c, w)).epsilon(1e-12).scale(1.0));
        const double t1 = third_condition(s, 0.3, w).value, t0 = third_condition(c, 0.3, w).value;
        if (t0 == inf)
            CHECK(t1 == inf);
        else
            CHECK(t1 == doctest::Approx(t0).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("third condition flips when a gap closes") {
    const double delta = 0.1;
    auto gap = [](int k) { return 1.0 / (k + 1); };
    int first_inf = 0;
    for (int K = 1; K <= 8 && first_inf == 0; ++K)
        if (third_condition(colliding_pair(K, gap), delta, {0, 12}).value == inf) first_inf = K;
    int expected = 0;
    for (int k = 1; expected == 0; ++k)
        if (gap(k) <= 2 * delta) expected = k;
    CHECK(first_inf == expected);
}

TEST_CASE("finite cluster constant implies separated zeros") {
    for (int seed = 0; seed < 40; ++seed) {
        const Curve c = random_curve(1, 0.8, {-3, 3}, 1300 + seed);
        const double v = third_condition(c, 0.2, {-5, 5}).value;
        if (v == inf) continue;
        const OstrowskiReport o = ostrowski_check(c, {-5, 5});
        CHECK(o.c_min_dist > 0.4 - 1e-9);
        CHECK(std::isfinite(o.d_constant));
    }
}

TEST_CASE("analyze and its report") {
    AnalyzeParams p;
    p.a = 1.0;
    p.delta = 0.3;
    p.window = {-3, 10};
    const CriteriaReport good = analyze(geometric_pair(10), p);
    CHECK(good.pass);
    CHECK(good.c_of_delta == 0.0);
    REQUIRE(good.ostrowski.has_value());
    CHECK(good.ostrowski->a_bound == 1);
    CHECK(good.warnings.empty());

    p.delta = 0.5;
    p.window = {0, 25};
    const Curve col = colliding_pair(19, [](int k) { return 1.0 / (k + 1); });
    const CriteriaReport bad = analyze(col, p);
    CHECK_FALSE(bad.pass);
    CHECK(bad.c_of_delta == inf);
    const std::string text = report_to_json(bad, p, col.label());
    CHECK(text == report_to_json(analyze(col, p), p, col.label()));
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["C_of_delta"] == "inf");
    CHECK(doc["verdict"] == "fail");
    CHECK(doc["witness_third"]["I"] == nlohmann::json::array({0, 1}));
    CHECK(doc["window"] == nlohmann::json::array({0, 25}));

    p.window = {-1, 2.5};
    const CriteriaReport truncated = analyze(geometric_pair(10), p);
    CHECK_FALSE(truncated.warnings.empty());

    p.window = {-3, 10};
    p.delta = 0.3;
    p.threshold_a = 1e-3;
    CHECK_FALSE(analyze(geometric_pair(10), p).pass);
}
