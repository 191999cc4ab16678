// Seeded generators shared by the unit tests.
#ifndef HOLONORM_TESTS_SUPPORT_HPP
#define HOLONORM_TESTS_SUPPORT_HPP

#include "holonorm/curve.hpp"
#include "holonorm/generators.hpp"
#include "holonorm/plc.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

namespace support {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Up to max_knots knots in [-5, 5], jumps 1..3, first slope in [-3, 3].
inline holonorm::PLConvex random_plc(Rng& rng, int max_knots = 8) {
    const int k = uniform_int(rng, 0, max_knots);
    std::vector<double> knots;
    for (int i = 0; i < k; ++i) knots.push_back(uniform(rng, -5.0, 5.0));
    std::sort(knots.begin(), knots.end());
    std::vector<int> slopes{uniform_int(rng, -3, 3)};
    for (int i = 0; i < k; ++i) slopes.push_back(slopes.back() + uniform_int(rng, 1, 3));
    return holonorm::PLConvex::from_pieces(knots, slopes, uniform(rng, -2.0, 2.0), uniform(rng, -3.0, 3.0));
}

// <= max_zeros zeros with tau in [-5, 5], log|A| in [-2, 2], m in {0, 1, 2}.
inline holonorm::CanonicalCoordinate random_coordinate(Rng& rng, int max_zeros = 20) {
    const int k = uniform_int(rng, 0, max_zeros);
    std::vector<holonorm::Zero> zs;
    for (int i = 0; i < k; ++i)
        zs.push_back({holonorm::LogPoint(uniform(rng, -5.0, 5.0), uniform(rng, -std::numbers::pi, std::numbers::pi)),
                      uniform_int(rng, 1, 2)});
    return holonorm::CanonicalCoordinate(uniform(rng, -2.0, 2.0), uniform_int(rng, 0, 2), std::move(zs));
}

// t in [lo, hi] at least `gap` away from every zero modulus of c (falls back
// to lo when the draw budget runs out).
inline double t_away_from_zeros(Rng& rng, const holonorm::CanonicalCoordinate& c, double lo, double hi,
                                double gap) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double t = uniform(rng, lo, hi);
        bool ok = true;
        for (const auto& z : c.zeros())
            if (std::abs(z.point.t - t) < gap) ok = false;
        if (ok) return t;
    }
    return lo;
}

// The seeded corpus: random curves with n cycling through 1..3, about ten
// zeros per coordinate on [-5, 5]; seeds giving a coordinate more than 20
// zeros are passed over.
inline std::vector<holonorm::Curve> seeded_corpus(int count = 100) {
    std::vector<holonorm::Curve> out;
    for (std::uint64_t seed = 1000; static_cast<int>(out.size()) < count; ++seed) {
        holonorm::Curve c = holonorm::random_curve(1 + static_cast<int>(out.size()) % 3, 1.0, {-5.0, 5.0}, seed);
        bool small = true;
        for (const auto& g : c.coordinates()) small = small && g.zeros().size() <= 20;
        if (small) out.push_back(std::move(c));
    }
    return out;
}

} // namespace support

#endif
