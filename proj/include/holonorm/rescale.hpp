#ifndef HOLONORM_RESCALE_HPP
#define HOLONORM_RESCALE_HPP

#include "holonorm/curve.hpp"
#include "holonorm/plc.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace holonorm {

// h(z) = exp(-c) z^{-p}, with c and p the value and right slope of the
// rescaled envelope at t = 0. Zero-free because p is an integer.
struct Normalizer {
    double c = 0.0;
    int p = 0;

    // log|h| at log-modulus t
    double log_modulus(double t) const noexcept { return -c - p * t; }
};

// Normalizer for z -> F(lambda z), lambda = e^{log_lambda} (arg lambda = 0).
Normalizer normalizer(const Curve& curve, double log_lambda);

// Envelope of the rescaled family member after the normalizer: value and right
// slope at t = 0 are both 0.
PLConvex normalized_envelope(const Curve& curve, double log_lambda);

struct Grid {
    int n_t = 32;
    int n_theta = 32;
};

// n_t equally spaced t-values spanning the annulus (ends included) times
// n_theta angles -pi + 2 pi m / n_theta, wrapped into (-pi, pi]. Row-major
// in t.
std::vector<LogPoint> annulus_grid(Window annulus, Grid grid);

enum class TraceClass { convergent, vanishing, undecided };

const char* to_string(TraceClass c);

struct TraceConfig {
    // Log-scale level below which a normalized coordinate counts as gone.
    double threshold_vanish = 5.0;
    // Largest change between consecutive ladder steps for convergence.
    double tol_conv = 1e-3;
    // Number of trailing ladder steps the classification looks at.
    int tail = 3;
};

struct CoordinateTrace {
    int j = 0;
    TraceClass cls = TraceClass::undecided;
    // Per ladder step, over the grid; -inf samples (zeros) are skipped.
    std::vector<double> sup;
    std::vector<double> inf;
};

struct FamilyTrace {
    std::vector<double> lambdas;  // log|lambda_k|
    Window annulus{};
    Grid grid{};
    TraceConfig config{};
    std::vector<CoordinateTrace> coordinates;
    double h_step = 0.0;
    double l_max = 0.0;
    std::vector<double> l_per_lambda;
};

// Samples log|h_k g_j(lambda_k z)| over the annulus grid for every ladder
// step and classifies each coordinate from the trailing steps:
// VANISHING when the sup decreases strictly and ends below
// -threshold_vanish, CONVERGENT when consecutive samples agree to tol_conv
// wherever they exceed -threshold_vanish.
FamilyTrace normalized_trace(const Curve& curve, std::span<const double> log_lambdas,
                             Window annulus, Grid grid, const TraceConfig& config = {});

struct EquicontinuityResult {
    double l_max = 0.0;
    std::vector<double> per_lambda;
};

// Largest ratio fs_distance(f(lambda z), f(lambda z')) / h_step over grid
// points z and their four neighbours z' at cylinder distance h_step.
EquicontinuityResult equicontinuity_probe(const Curve& curve, std::span<const double> log_lambdas,
                                          Window annulus, Grid grid, double h_step = 0.01);

// One member h_k F_k of the rescaled family sampled at centers, together
// with the zeros of each coordinate in the rescaled variable.
struct SampledMember {
    std::vector<LogPoint> centers;
    std::vector<std::vector<double>> log_values;  // [j][center]
    std::vector<std::vector<LogPoint>> zeros;     // [j]
};

SampledMember sample_member(const Curve& curve, double log_lambda, Window annulus, Grid grid);

struct ClusterBoundViolation {
    LogPoint center;
    std::vector<int> subset;  // coordinates with a zero within delta
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ClusterBoundResult {
    bool pass = true;
    // min over checked centers of rhs - lhs; +inf when nothing was checked
    double min_slack = 0.0;
    std::optional<ClusterBoundViolation> violation;
};

// At each center z0, with I the coordinates having a zero within delta:
//   max_j log|h g_j(z0)| <= max_{j not in I} log|h g_j(z0)| + C.
// C = +inf passes vacuously.
ClusterBoundResult cluster_bound_probe(const SampledMember& member, double delta, double C);

struct ProductBound {
    double lhs = 0.0;  // max over 4096 angles of log|g| on |z| = 1
    double rhs = 0.0;  // log|A| + int n(t) / (1 + e^{|t|}) dt
    bool ok = true;
};

// Requires m == 0.
ProductBound product_bound_check(const CanonicalCoordinate& c);

std::string trace_to_json(const FamilyTrace& trace);
// log_lambda,L,sup_g0,...,sup_gn
std::string trace_to_csv(const FamilyTrace& trace);

} // namespace holonorm

#endif
