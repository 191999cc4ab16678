#ifndef HOLONORM_CRITERIA_HPP
#define HOLONORM_CRITERIA_HPP

#include "holonorm/curve.hpp"
#include "holonorm/plc.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace holonorm {

// Closed t-interval [lo, hi].
using Interval = std::pair<double, double>;

// Projection onto the t-axis of {w : every j in subset has a zero within
// delta of w}.
struct ClusterRegion {
    std::vector<int> subset;  // sorted, nonempty
    std::vector<Interval> intervals;  // disjoint, sorted
};

// t-range of the intersection of discs of radius delta around the given
// centers, measured on the cylinder. Requires delta <= pi/2. Empty when the
// discs have no common point.
std::optional<Interval> disc_intersection_t_range(std::span<const LogPoint> centers, double delta);

// delta must lie in (0, pi/2].
std::vector<ClusterRegion> cluster_regions(const Curve& curve, double delta);

// Sup of the tangent defect of the envelope over |t - s| <= a. With
// interior_only the window is shrunk by a on both sides.
DefectResult second_condition(const Curve& curve, double a, Window window,
                              bool interior_only = false);

// Smallest C1 with defect <= C1 (1 + (t - s)^2) on the window.
double quadratic_condition(const Curve& curve, Window window);

struct ThirdConditionResult {
    // +inf when some region has every coordinate clustered.
    double value = 0.0;
    bool has_witness = false;
    double t = 0.0;
    std::vector<int> subset;
};

// Smallest C with N(t, F) <= max_{j not in I} N(t, g_j) + C over every
// cluster region (I, t) inside the window.
ThirdConditionResult third_condition(const Curve& curve, double delta, Window window);

struct OstrowskiReport {
    int a_bound = 0;       // zero-count imbalance between g0 and g1 over rings
    int b_bound = 0;       // most zeros of one coordinate in a ring r < |z| < 2r
    double c_min_dist = std::numeric_limits<double>::infinity();
    double d_constant = 0.0;
};

// Most zeros (with multiplicity) of c whose log-moduli fit in an open
// interval of the given width, among zeros inside the window.
int max_ring_count(const CanonicalCoordinate& c, Window window, double width);

// The four classical n = 1 conditions evaluated on the zeros in the window.
OstrowskiReport ostrowski_check(const Curve& curve, Window window);

struct AnalyzeParams {
    double a = 1.0;
    double delta = 0.3;
    Window window{-5.0, 5.0};
    bool interior_only = true;
    double threshold_a = std::numeric_limits<double>::infinity();
    double threshold_delta = std::numeric_limits<double>::infinity();
};

struct CriteriaReport {
    double c_of_a = 0.0;
    double c1 = 0.0;
    double c_of_delta = 0.0;
    DefectWitness witness_second;
    std::optional<std::pair<double, std::vector<int>>> witness_third;
    std::optional<OstrowskiReport> ostrowski;
    bool pass = false;
    std::vector<std::string> warnings;
};

CriteriaReport analyze(const Curve& curve, const AnalyzeParams& params);

// Fixed-key-order JSON with numbers at 12 significant digits.
std::string report_to_json(const CriteriaReport& report, const AnalyzeParams& params,
                           const std::string& label = {}, int m_shift = 0);

} // namespace holonorm

#endif
