#include "holonorm/generators.hpp"

#include "holonorm/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace holonorm {

namespace {

constexpr double pi = std::numbers::pi;

double power_of_four(int k) { return std::ldexp(1.0, 2 * k); }

} // namespace

Curve geometric_pair(int K, double base, double theta0, double theta1) {
    if (K < 1) invalid_parameter("K must be at least 1");
    if (!(base > 1.0)) invalid_parameter("base must exceed 1");
    if (LogPoint(0.0, theta0) == LogPoint(0.0, theta1))
        invalid_parameter("theta0 == theta1 puts common zeros on every circle");
    const double step = std::log(base);
    std::vector<Zero> z0, z1;
    for (int k = 0; k <= K; ++k) {
        z0.push_back({LogPoint(k * step, theta0), 1});
        z1.push_back({LogPoint(k * step, theta1), 1});
    }
    return Curve({CanonicalCoordinate(0.0, 0, std::move(z0)), CanonicalCoordinate(0.0, 0, std::move(z1))},
                 "geometric_pair(K=" + std::to_string(K) + ")");
}

CanonicalCoordinate slow_growth_coordinate(int K) {
    if (K < 1) invalid_parameter("K must be at least 1");
    if (K > 10) invalid_parameter("K above 10 is out of range");
    std::vector<Zero> zs;
    for (int k = 1; k <= K; ++k) {
        const double t = power_of_four(k) * std::numbers::ln2;
        for (int i = 0; i < k; ++i) zs.push_back({LogPoint(t, 0.5 * pi + 2.0 * pi * i / k), 1});
    }
    return CanonicalCoordinate(0.0, 0, std::move(zs));
}

int counterexample_pair_depth(int K) {
    if (K < 1 || K > 10) invalid_parameter("K must lie in [1, 10]");
    return (1 << (2 * K)) + 32;
}

Curve normal_counterexample(int K) {
    const Curve pair = geometric_pair(counterexample_pair_depth(K), 2.0, 0.0, pi);
    return Curve({pair.coordinate(0), pair.coordinate(1), slow_growth_coordinate(K)},
                 "normal_counterexample(K=" + std::to_string(K) + ")");
}

Curve colliding_pair(int K, const GapSchedule& gap) {
    if (K < 1) invalid_parameter("K must be at least 1");
    std::vector<Zero> z0, z1;
    for (int k = 1; k <= K; ++k) {
        const double eps = gap(k);
        if (!(eps > 0.0) || !std::isfinite(eps))
            invalid_parameter("gap must be positive (a zero gap is a common zero)");
        z0.push_back({LogPoint(k, 0.0), 1});
        z1.push_back({LogPoint(k + eps, 0.0), 1});
    }
    return Curve({CanonicalCoordinate(0.0, 0, std::move(z0)), CanonicalCoordinate(0.0, 0, std::move(z1))},
                 "colliding_pair(K=" + std::to_string(K) + ")");
}

Curve random_curve(int n, double density, Window window, std::uint64_t seed) {
    if (n < 1) invalid_parameter("n must be at least 1");
    if (!(density > 0.0)) invalid_parameter("density must be positive");
    if (!(window.lo < window.hi)) invalid_parameter("window must be nondegenerate");

    std::mt19937_64 rng(seed);
    std::poisson_distribution<int> count(density * window.length());
    std::uniform_real_distribution<double> t_dist(window.lo, window.hi);
    std::uniform_real_distribution<double> theta_dist(-pi, pi);
    std::uniform_real_distribution<double> a_dist(-2.0, 2.0);
    const std::string label = "random_curve(n=" + std::to_string(n) + ", seed=" + std::to_string(seed) + ")";

    for (;;) {
        std::vector<CanonicalCoordinate> coords;
        for (int j = 0; j <= n; ++j) {
            const int k = count(rng);
            std::vector<Zero> zs;
            for (int i = 0; i < k; ++i) {
                const double t = t_dist(rng);
                zs.push_back({LogPoint(t, theta_dist(rng)), 1});
            }
            coords.emplace_back(a_dist(rng), 0, std::move(zs));
        }
        try {
            return Curve(std::move(coords), label);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::violated_invariant) throw;
            // common zero: draw again from the continuing stream
        }
    }
}

} // namespace holonorm
