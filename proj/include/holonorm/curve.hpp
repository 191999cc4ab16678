#ifndef HOLONORM_CURVE_HPP
#define HOLONORM_CURVE_HPP

#include "holonorm/plc.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace holonorm {

// Zeros closer than this (cylinder distance) count as coincident.
inline constexpr double default_zero_tolerance = 1e-9;

// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

// A point of C* in cylinder coordinates: t = log|z|, theta = arg z.
struct LogPoint {
    double t = 0.0;
    double theta = 0.0;

    LogPoint() = default;
    LogPoint(double t_, double theta_) : t(t_), theta(wrap_angle(theta_)) {}

    friend bool operator==(const LogPoint&, const LogPoint&) = default;
};

// Geodesic distance for |dz|/|z|: the flat cylinder of circumference 2 pi.
double cylinder_distance(LogPoint p, LogPoint q);

struct Zero {
    LogPoint point;
    int multiplicity = 1;
};

// One homogeneous coordinate in canonical product form,
//
//   g(z) = A z^m prod_{|z_k| < 1} (1 - z_k / z) prod_{|z_k| >= 1} (1 - z / z_k),
//
// stored as log|A|, arg A, m and the zeros. A zero with t == 0 sits on the
// unit circle and belongs to the second product.
class CanonicalCoordinate {
public:
    CanonicalCoordinate() = default;
    // Sorts zeros by (t, theta) and merges identical points.
    CanonicalCoordinate(double log_a, int m, std::vector<Zero> zeros, double arg_a = 0.0);

    double log_a() const noexcept { return log_a_; }
    double arg_a() const noexcept { return arg_a_; }
    int m() const noexcept { return m_; }
    std::span<const Zero> zeros() const noexcept { return zeros_; }
    int total_multiplicity() const noexcept;

    CanonicalCoordinate with_m(int m) const;
    CanonicalCoordinate with_log_a(double log_a) const;

    friend bool operator==(const CanonicalCoordinate&, const CanonicalCoordinate&);

private:
    double log_a_ = 0.0;
    double arg_a_ = 0.0;
    int m_ = 0;
    std::vector<Zero> zeros_;
};

// N(t, g) = (1/2pi) int log|g(e^{t + i theta})| d theta, built from the zero
// data (Jensen): log|A| + m t + sum_outer mult max(0, t - tau)
//                            + sum_inner mult max(0, tau - t).
PLConvex counting_function(const CanonicalCoordinate& c);

// Total multiplicity of zeros with t1 < tau <= t2.
int zero_count_in_annulus(const CanonicalCoordinate& c, double t1, double t2);

struct LogValue {
    double log_modulus = 0.0;  // -inf at a zero
    double arg = 0.0;          // in (-pi, pi]; 0 at a zero
};

// log|g(z)| and arg g(z), summed factor by factor in log space.
LogValue evaluate_coordinate_log(const CanonicalCoordinate& c, LogPoint z);

// The log_modulus part of evaluate_coordinate_log, without the angle work.
double log_abs_coordinate(const CanonicalCoordinate& c, LogPoint z);

// A point of P^n with max |coordinate| == 1.
struct ProjectivePoint {
    std::vector<std::complex<double>> coords;
};

// Chordal Fubini-Study distance in [0, 1].
double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// f = (g_0 : ... : g_n) with n >= 1, min m_j = 0 and no common zeros.
class Curve {
public:
    // Validates both invariants. zero_tolerance is the common-zero radius; a
    // negative value skips the common-zero check.
    Curve(std::vector<CanonicalCoordinate> coordinates, std::string label = {},
          double zero_tolerance = default_zero_tolerance);

    std::span<const CanonicalCoordinate> coordinates() const noexcept { return coords_; }
    const CanonicalCoordinate& coordinate(std::size_t j) const { return coords_.at(j); }
    std::size_t size() const noexcept { return coords_.size(); }
    // n in P^n
    std::size_t dimension() const noexcept { return coords_.size() - 1; }
    const std::string& label() const noexcept { return label_; }

    // Counting function of each coordinate, cached at construction.
    std::span<const PLConvex> counting_functions() const noexcept { return counting_; }
    // N(t, F) = max_j N(t, g_j)
    const PLConvex& envelope() const noexcept { return envelope_; }

    // Smallest and largest zero log-modulus over all coordinates; nullopt-like
    // (false) when there are no zeros.
    bool zero_t_range(double& lo, double& hi) const;

    Curve with_label(std::string label) const;

    friend bool operator==(const Curve& a, const Curve& b) {
        return a.label_ == b.label_ && a.coords_ == b.coords_;
    }

private:
    std::vector<CanonicalCoordinate> coords_;
    std::string label_;
    std::vector<PLConvex> counting_;
    PLConvex envelope_;
};

// Homogeneous coordinates at z, scaled so the largest has modulus 1.
// Throws violated-invariant if every coordinate vanishes at z.
ProjectivePoint evaluate_curve(const Curve& curve, LogPoint z);

} // namespace holonorm

#endif
