#ifndef HOLONORM_GENERATORS_HPP
#define HOLONORM_GENERATORS_HPP

#include "holonorm/curve.hpp"
#include "holonorm/plc.hpp"

#include <cstdint>
#include <functional>
#include <numbers>

namespace holonorm {

// g0 with zeros at base^k e^{i theta0}, g1 at base^k e^{i theta1}, k = 0..K.
Curve geometric_pair(int K, double base = 2.0, double theta0 = 0.0, double theta1 = std::numbers::pi);

// Clusters of k zeros at |z| = 2^{4^k}, k = 1..K, spread over k angles.
// Ring counts reach K while N(t) stays o(t^{3/2}).
CanonicalCoordinate slow_growth_coordinate(int K);

// Depth of the geometric pair used with slow_growth_coordinate(K), chosen so
// the pair's zeros cover every cluster with room to spare.
int counterexample_pair_depth(int K);

// (g0, g1, g2): the geometric pair at base 2 plus slow_growth_coordinate(K).
Curve normal_counterexample(int K);

using GapSchedule = std::function<double(int)>;

// g0 zeros at (k, 0), g1 at (k + gap(k), 0), k = 1..K.
Curve colliding_pair(int K, const GapSchedule& gap);

// Poisson(density * window length) zeros per coordinate, uniform in the
// window and in angle, log|A| uniform in [-2, 2], all m = 0. Deterministic in
// seed.
Curve random_curve(int n, double density, Window window, std::uint64_t seed);

} // namespace holonorm

#endif
