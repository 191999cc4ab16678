#include "holonorm/curve.hpp"

#include "holonorm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace holonorm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

bool point_less(const LogPoint& a, const LogPoint& b) {
    return a.t < b.t || (a.t == b.t && a.theta < b.theta);
}

// log|1 - e^{x + i phi}| and arg(1 - e^{x + i phi}).
LogValue log_one_minus_exp(double x, double phi) {
    if (x > 0.0) {
        // 1 - w = -w (1 - 1/w)
        LogValue inner = log_one_minus_exp(-x, -phi);
        if (!std::isfinite(inner.log_modulus)) return {-inf, 0.0};
        return {x + inner.log_modulus, wrap_angle(phi + pi + inner.arg)};
    }
    // 1 - e^{x + i phi} = -(expm1(x) cos phi - 2 sin^2(phi/2)) - i e^x sin phi
    const double half = std::sin(0.5 * phi);
    const double re = -(std::expm1(x) * std::cos(phi) - 2.0 * half * half);
    const double im = -std::exp(x) * std::sin(phi);
    if (re == 0.0 && im == 0.0) return {-inf, 0.0};
    return {std::log(std::hypot(re, im)), std::atan2(im, re)};
}

// log|1 - e^{x + i phi}| alone, from |1 - w|^2 = expm1(x)^2 + 4 e^x sin^2(phi/2).
double log_abs_one_minus_exp(double x, double phi) {
    if (x > 0.0) return x + log_abs_one_minus_exp(-x, -phi);
    const double e = std::expm1(x);
    const double half = std::sin(0.5 * phi);
    return 0.5 * std::log(e * e + 4.0 * (1.0 + e) * half * half);
}

} // namespace

double wrap_angle(double theta) {
    if (-pi < theta && theta <= pi) return theta;
    double r = std::remainder(theta, 2.0 * pi);  // in [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

double cylinder_distance(LogPoint p, LogPoint q) {
    const double dt = p.t - q.t;
    const double dtheta = std::abs(std::remainder(p.theta - q.theta, 2.0 * pi));
    return std::hypot(dt, dtheta);
}

CanonicalCoordinate::CanonicalCoordinate(double log_a, int m, std::vector<Zero> zeros, double arg_a)
    : log_a_(log_a), arg_a_(wrap_angle(arg_a)), m_(m) {
    if (!std::isfinite(log_a)) invalid_parameter("log|A| must be finite");
    for (const auto& z : zeros) {
        if (z.multiplicity < 1) invalid_parameter("zero multiplicity must be at least 1");
        if (!std::isfinite(z.point.t) || !std::isfinite(z.point.theta))
            invalid_parameter("zero coordinates must be finite");
    }
    std::sort(zeros.begin(), zeros.end(),
              [](const Zero& a, const Zero& b) { return point_less(a.point, b.point); });
    for (const auto& z : zeros) {
        if (!zeros_.empty() && zeros_.back().point == z.point)
            zeros_.back().multiplicity += z.multiplicity;
        else
            zeros_.push_back(z);
    }
}

int CanonicalCoordinate::total_multiplicity() const noexcept {
    return std::accumulate(zeros_.begin(), zeros_.end(), 0,
                           [](int acc, const Zero& z) { return acc + z.multiplicity; });
}

CanonicalCoordinate CanonicalCoordinate::with_m(int m) const {
    CanonicalCoordinate c = *this;
    c.m_ = m;
    return c;
}

CanonicalCoordinate CanonicalCoordinate::with_log_a(double log_a) const {
    CanonicalCoordinate c = *this;
    c.log_a_ = log_a;
    return c;
}

bool operator==(const CanonicalCoordinate& a, const CanonicalCoordinate& b) {
    if (a.log_a_ != b.log_a_ || a.arg_a_ != b.arg_a_ || a.m_ != b.m_) return false;
    return std::equal(a.zeros_.begin(), a.zeros_.end(), b.zeros_.begin(), b.zeros_.end(),
                      [](const Zero& x, const Zero& y) {
                          return x.point == y.point && x.multiplicity == y.multiplicity;
                      });
}

PLConvex counting_function(const CanonicalCoordinate& c) {
    int left_slope = c.m();
    std::vector<double> knots;
    std::vector<int> jumps;
    for (const auto& z : c.zeros()) {
        if (z.point.t < 0.0) left_slope -= z.multiplicity;
        knots.push_back(z.point.t);
        jumps.push_back(z.multiplicity);
    }
    std::vector<int> slopes{left_slope};
    for (int j : jumps) slopes.push_back(slopes.back() + j);
    return PLConvex::from_pieces(std::move(knots), std::move(slopes), 0.0, c.log_a());
}

int zero_count_in_annulus(const CanonicalCoordinate& c, double t1, double t2) {
    if (t1 > t2) invalid_parameter("annulus needs t1 <= t2");
    int count = 0;
    for (const auto& z : c.zeros())
        if (t1 < z.point.t && z.point.t <= t2) count += z.multiplicity;
    return count;
}

LogValue evaluate_coordinate_log(const CanonicalCoordinate& c, LogPoint z) {
    double log_mod = c.log_a() + c.m() * z.t;
    double arg = c.arg_a() + c.m() * z.theta;
    for (const auto& zero : c.zeros()) {
        const LogPoint& p = zero.point;
        // outer factor 1 - z/z_k, inner factor 1 - z_k/z
        const LogValue f = p.t >= 0.0 ? log_one_minus_exp(z.t - p.t, z.theta - p.theta)
                                      : log_one_minus_exp(p.t - z.t, p.theta - z.theta);
        if (!std::isfinite(f.log_modulus)) return {-inf, 0.0};
        log_mod += zero.multiplicity * f.log_modulus;
        arg += zero.multiplicity * f.arg;
    }
    return {log_mod, wrap_angle(arg)};
}

double log_abs_coordinate(const CanonicalCoordinate& c, LogPoint z) {
    double log_mod = c.log_a() + c.m() * z.t;
    for (const auto& zero : c.zeros()) {
        const LogPoint& p = zero.point;
        const double f = p.t >= 0.0 ? log_abs_one_minus_exp(z.t - p.t, z.theta - p.theta)
                                    : log_abs_one_minus_exp(p.t - z.t, p.theta - z.theta);
        if (f == -inf) return -inf;
        log_mod += zero.multiplicity * f;
    }
    return log_mod;
}

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.coords.size() != q.coords.size())
        invalid_parameter("projective points of different dimension");
    // |p|^2 |q|^2 - |<p,q>|^2 = sum_{i<j} |p_i q_j - p_j q_i|^2 (Lagrange),
    // which avoids cancellation for nearby points.
    double np = 0.0, nq = 0.0, cross = 0.0;
    const std::size_t n = p.coords.size();
    for (std::size_t i = 0; i < n; ++i) {
        np += std::norm(p.coords[i]);
        nq += std::norm(q.coords[i]);
        for (std::size_t j = i + 1; j < n; ++j)
            cross += std::norm(p.coords[i] * q.coords[j] - p.coords[j] * q.coords[i]);
    }
    if (np == 0.0 || nq == 0.0) invalid_parameter("projective point with all coordinates zero");
    return std::min(1.0, std::sqrt(cross / (np * nq)));
}

Curve::Curve(std::vector<CanonicalCoordinate> coordinates, std::string label,
             double zero_tolerance)
    : coords_(std::move(coordinates)), label_(std::move(label)) {
    if (coords_.size() < 2) invalid_parameter("a curve needs at least two coordinates");
    int min_m = coords_[0].m();
    for (const auto& c : coords_) min_m = std::min(min_m, c.m());
    if (min_m != 0) violated_invariant("min_j m_j must be 0 (got " + std::to_string(min_m) + ")");

    // Common zeros: every coordinate has a zero within the tolerance of a
    // zero of the sparsest coordinate.
    std::size_t sparse = 0;
    for (std::size_t j = 1; j < coords_.size(); ++j)
        if (coords_[j].zeros().size() < coords_[sparse].zeros().size()) sparse = j;
    const double radius = 2.0 * zero_tolerance;
    for (const auto& z : coords_[sparse].zeros()) {
        bool common = true;
        for (std::size_t j = 0; j < coords_.size() && common; ++j) {
            if (j == sparse) continue;
            const auto zs = coords_[j].zeros();
            auto it = std::lower_bound(zs.begin(), zs.end(), z.point.t - radius,
                                       [](const Zero& a, double t) { return a.point.t < t; });
            bool found = false;
            for (; it != zs.end() && it->point.t <= z.point.t + radius; ++it)
                if (cylinder_distance(it->point, z.point) <= radius) found = true;
            common = found;
        }
        if (common)
            violated_invariant("coordinates share a common zero near t=" + std::to_string(z.point.t) +
                               ", theta=" + std::to_string(z.point.theta));
    }

    counting_.reserve(coords_.size());
    for (const auto& c : coords_) counting_.push_back(counting_function(c));
    envelope_ = max_envelope(counting_);
}

bool Curve::zero_t_range(double& lo, double& hi) const {
    bool any = false;
    for (const auto& c : coords_) {
        if (c.zeros().empty()) continue;
        const double a = c.zeros().front().point.t;
        const double b = c.zeros().back().point.t;
        lo = any ? std::min(lo, a) : a;
        hi = any ? std::max(hi, b) : b;
        any = true;
    }
    return any;
}

Curve Curve::with_label(std::string label) const {
    Curve c = *this;
    c.label_ = std::move(label);
    return c;
}

ProjectivePoint evaluate_curve(const Curve& curve, LogPoint z) {
    std::vector<LogValue> values;
    values.reserve(curve.size());
    double top = -inf;
    for (const auto& c : curve.coordinates()) {
        values.push_back(evaluate_coordinate_log(c, z));
        top = std::max(top, values.back().log_modulus);
    }
    if (!std::isfinite(top)) violated_invariant("all coordinates vanish (common zero)");
    ProjectivePoint p;
    p.coords.reserve(values.size());
    for (const auto& v : values) {
        if (!std::isfinite(v.log_modulus)) {
            p.coords.emplace_back(0.0, 0.0);
            continue;
        }
        const double r = v.log_modulus == top ? 1.0 : std::exp(v.log_modulus - top);
        p.coords.push_back(std::polar(r, v.arg));
    }
    return p;
}

} // namespace holonorm
