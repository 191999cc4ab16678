#include "holonorm/rescale.hpp"

#include "holonorm/error.hpp"
#include "holonorm/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holonorm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

void check_grid(Window annulus, Grid grid) {
    if (!(annulus.lo < annulus.hi) || !std::isfinite(annulus.lo) || !std::isfinite(annulus.hi))
        invalid_parameter("annulus must be nondegenerate");
    if (grid.n_t < 8 || grid.n_theta < 8) invalid_parameter("grid must be at least 8x8");
}

bool classify_vanishing(const std::vector<double>& sup, const TraceConfig& cfg) {
    const std::size_t k = sup.size();
    const std::size_t tail = std::min<std::size_t>(static_cast<std::size_t>(cfg.tail), k);
    if (tail < 2) return false;
    for (std::size_t i = k - tail + 1; i < k; ++i)
        if (!(sup[i] < sup[i - 1])) return false;
    return sup.back() < -cfg.threshold_vanish;
}

bool classify_convergent(const std::vector<std::vector<double>>& values, const TraceConfig& cfg) {
    const std::size_t k = values.size();
    const std::size_t tail = std::min<std::size_t>(static_cast<std::size_t>(cfg.tail), k);
    if (tail < 2) return false;
    for (std::size_t step = k - tail + 1; step < k; ++step) {
        const auto& a = values[step - 1];
        const auto& b = values[step];
        double worst = 0.0, worst_any = 0.0;
        bool seen = false, seen_any = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!std::isfinite(a[i]) || !std::isfinite(b[i])) continue;
            const double d = std::abs(a[i] - b[i]);
            worst_any = std::max(worst_any, d);
            seen_any = true;
            if (a[i] > -cfg.threshold_vanish && b[i] > -cfg.threshold_vanish) {
                worst = std::max(worst, d);
                seen = true;
            }
        }
        // A coordinate sitting entirely below the threshold is judged on all
        // of its finite samples.
        if (seen ? worst >= cfg.tol_conv : (!seen_any || worst_any >= cfg.tol_conv)) return false;
    }
    return true;
}

} // namespace

const char* to_string(TraceClass c) {
    switch (c) {
    case TraceClass::convergent: return "CONVERGENT";
    case TraceClass::vanishing: return "VANISHING";
    case TraceClass::undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

Normalizer normalizer(const Curve& curve, double log_lambda) {
    // N(t, F_k) = N(t + log lambda, F)
    const PLConvex& env = curve.envelope();
    return {env.eval(log_lambda), env.right_derivative(log_lambda)};
}

PLConvex normalized_envelope(const Curve& curve, double log_lambda) {
    const Normalizer h = normalizer(curve, log_lambda);
    return subtract_linear(shift(curve.envelope(), log_lambda), LinearFn{h.p, h.c});
}

std::vector<LogPoint> annulus_grid(Window annulus, Grid grid) {
    check_grid(annulus, grid);
    std::vector<LogPoint> pts;
    pts.reserve(static_cast<std::size_t>(grid.n_t) * static_cast<std::size_t>(grid.n_theta));
    for (int i = 0; i < grid.n_t; ++i) {
        const double t = i + 1 == grid.n_t
                             ? annulus.hi
                             : annulus.lo + (annulus.hi - annulus.lo) * i / (grid.n_t - 1);
        for (int m = 0; m < grid.n_theta; ++m)
            pts.emplace_back(t, -pi + 2.0 * pi * m / grid.n_theta);
    }
    return pts;
}

FamilyTrace normalized_trace(const Curve& curve, std::span<const double> log_lambdas,
                             Window annulus, Grid grid, const TraceConfig& config) {
    if (log_lambdas.empty()) invalid_parameter("empty lambda ladder");
    const auto pts = annulus_grid(annulus, grid);

    FamilyTrace trace;
    trace.lambdas.assign(log_lambdas.begin(), log_lambdas.end());
    trace.annulus = annulus;
    trace.grid = grid;
    trace.config = config;

    for (std::size_t j = 0; j < curve.size(); ++j) {
        CoordinateTrace ct;
        ct.j = static_cast<int>(j);
        std::vector<std::vector<double>> values;
        for (double ll : log_lambdas) {
            const Normalizer h = normalizer(curve, ll);
            std::vector<double> v(pts.size());
            double hi = -inf, lo = inf;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                v[i] = log_abs_coordinate(curve.coordinate(j), {pts[i].t + ll, pts[i].theta}) + h.log_modulus(pts[i].t);
                if (!std::isfinite(v[i])) continue;
                hi = std::max(hi, v[i]);
                lo = std::min(lo, v[i]);
            }
            ct.sup.push_back(hi);
            ct.inf.push_back(lo);
            values.push_back(std::move(v));
        }
        if (classify_vanishing(ct.sup, config))
            ct.cls = TraceClass::vanishing;
        else if (classify_convergent(values, config))
            ct.cls = TraceClass::convergent;
        trace.coordinates.push_back(std::move(ct));
    }
    return trace;
}

EquicontinuityResult equicontinuity_probe(const Curve& curve, std::span<const double> log_lambdas,
                                          Window annulus, Grid grid, double h_step) {
    if (!(h_step > 0.0)) invalid_parameter("h_step must be positive");
    const auto pts = annulus_grid(annulus, grid);
    EquicontinuityResult result;
    for (double ll : log_lambdas) {
        double worst = 0.0;
        for (const auto& z : pts) {
            const ProjectivePoint p = evaluate_curve(curve, {z.t + ll, z.theta});
            const LogPoint neighbours[] = {{z.t + ll + h_step, z.theta},
                                           {z.t + ll - h_step, z.theta},
                                           {z.t + ll, z.theta + h_step},
                                           {z.t + ll, z.theta - h_step}};
            for (const auto& w : neighbours)
                worst = std::max(worst, fs_distance(p, evaluate_curve(curve, w)) / h_step);
        }
        result.per_lambda.push_back(worst);
        result.l_max = std::max(result.l_max, worst);
    }
    return result;
}

SampledMember sample_member(const Curve& curve, double log_lambda, Window annulus, Grid grid) {
    SampledMember m;
    m.centers = annulus_grid(annulus, grid);
    const Normalizer h = normalizer(curve, log_lambda);
    for (const auto& c : curve.coordinates()) {
        std::vector<double> v;
        v.reserve(m.centers.size());
        for (const auto& z : m.centers)
            v.push_back(log_abs_coordinate(c, {z.t + log_lambda, z.theta}) + h.log_modulus(z.t));
        m.log_values.push_back(std::move(v));
        std::vector<LogPoint> zs;
        for (const auto& z : c.zeros()) zs.emplace_back(z.point.t - log_lambda, z.point.theta);
        m.zeros.push_back(std::move(zs));
    }
    return m;
}

ClusterBoundResult cluster_bound_probe(const SampledMember& member, double delta, double C) {
    if (!(delta > 0.0)) invalid_parameter("delta must be positive");
    const std::size_t n = member.log_values.size();
    if (member.zeros.size() != n) invalid_parameter("zeros and values disagree on the coordinate count");
    ClusterBoundResult result;
    result.min_slack = inf;
    if (C == inf) return result;

    for (std::size_t i = 0; i < member.centers.size(); ++i) {
        const LogPoint& z0 = member.centers[i];
        std::vector<int> subset;
        double lhs = -inf, rhs = -inf;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = member.log_values[j][i];
            lhs = std::max(lhs, v);
            bool near = false;
            for (const auto& z : member.zeros[j])
                if (cylinder_distance(z, z0) <= delta) {
                    near = true;
                    break;
                }
            if (near)
                subset.push_back(static_cast<int>(j));
            else
                rhs = std::max(rhs, v);
        }
        if (subset.empty()) continue;
        rhs += C;
        const double slack = rhs - lhs;
        result.min_slack = std::min(result.min_slack, std::isnan(slack) ? -inf : slack);
        if (!(lhs <= rhs) && result.pass) {
            result.pass = false;
            result.violation = ClusterBoundViolation{z0, subset, lhs, rhs};
        }
    }
    return result;
}

ProductBound product_bound_check(const CanonicalCoordinate& c) {
    if (c.m() != 0) invalid_parameter("product bound needs a normalized coordinate (m = 0)");
    constexpr int samples = 4096;
    ProductBound b;
    b.lhs = -inf;
    for (int i = 0; i < samples; ++i) {
        const double v = log_abs_coordinate(c, {0.0, -pi + 2.0 * pi * i / samples});
        b.lhs = std::max(b.lhs, v);
    }
    // n(t) counts zeros with 0 <= tau <= t for t > 0 and t < tau < 0 for
    // t < 0; each zero contributes int_{|tau|}^inf ds / (1 + e^s).
    b.rhs = c.log_a();
    for (const auto& z : c.zeros())
        b.rhs += z.multiplicity * std::log1p(std::exp(-std::abs(z.point.t)));
    b.ok = b.lhs <= b.rhs + 1e-9;
    return b;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig12(x);
}

ojson nums(const std::vector<double>& xs) {
    ojson a = ojson::array();
    for (double x : xs) a.push_back(num(x));
    return a;
}

} // namespace

std::string trace_to_json(const FamilyTrace& trace) {
    ojson doc;
    doc["lambdas"] = nums(trace.lambdas);
    doc["annulus"] = {num(trace.annulus.lo), num(trace.annulus.hi)};
    doc["grid"] = {trace.grid.n_t, trace.grid.n_theta};
    ojson coords = ojson::array();
    for (const auto& c : trace.coordinates)
        coords.push_back({{"j", c.j}, {"class", to_string(c.cls)}, {"sup", nums(c.sup)}, {"inf", nums(c.inf)}});
    doc["coordinates"] = std::move(coords);
    doc["L_max"] = num(trace.l_max);
    doc["L_per_lambda"] = nums(trace.l_per_lambda);
    doc["config"] = {{"threshold_vanish", num(trace.config.threshold_vanish)},
                     {"tol_conv", num(trace.config.tol_conv)},
                     {"tail", trace.config.tail},
                     {"h_step", num(trace.h_step)}};
    return doc.dump(2) + "\n";
}

std::string trace_to_csv(const FamilyTrace& trace) {
    std::string out = "log_lambda,L";
    for (const auto& c : trace.coordinates) out += ",sup_g" + std::to_string(c.j);
    out += '\n';
    for (std::size_t k = 0; k < trace.lambdas.size(); ++k) {
        out += format_sig12(trace.lambdas[k]);
        out += ',';
        out += k < trace.l_per_lambda.size() ? format_sig12(trace.l_per_lambda[k]) : std::string();
        for (const auto& c : trace.coordinates) {
            out += ',';
            out += format_sig12(c.sup[k]);
        }
        out += '\n';
    }
    return out;
}

} // namespace holonorm
