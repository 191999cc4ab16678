#include "holonorm/criteria.hpp"

#include "holonorm/error.hpp"
#include "holonorm/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace holonorm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
// Slack for points on disc boundaries; tangent discs still intersect.
constexpr double disc_slack = 1e-10;

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end());
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.first <= out.back().second)
            out.back().second = std::max(out.back().second, iv.second);
        else
            out.push_back(iv);
    }
    return out;
}

// Zeros with |t - t0| <= radius.
std::span<const Zero> zeros_near(const CanonicalCoordinate& c, double t0, double radius) {
    const auto zs = c.zeros();
    auto lo = std::lower_bound(zs.begin(), zs.end(), t0 - radius,
                               [](const Zero& z, double t) { return z.point.t < t; });
    auto hi = std::upper_bound(lo, zs.end(), t0 + radius,
                               [](double t, const Zero& z) { return t < z.point.t; });
    return {lo, hi};
}

void collect_tuples(const Curve& curve, const std::vector<int>& subset, double delta,
                    std::vector<LogPoint>& chosen, std::vector<Interval>& out) {
    const std::size_t depth = chosen.size();
    if (depth == subset.size()) {
        if (auto r = disc_intersection_t_range(chosen, delta)) out.push_back(*r);
        return;
    }
    const auto& c = curve.coordinate(static_cast<std::size_t>(subset[depth]));
    const double reach = 2.0 * delta + disc_slack;
    const auto candidates = depth == 0 ? c.zeros() : zeros_near(c, chosen[0].t, reach);
    for (const auto& z : candidates) {
        bool close = true;
        for (const auto& p : chosen)
            if (cylinder_distance(p, z.point) > reach) close = false;
        if (!close) continue;
        chosen.push_back(z.point);
        collect_tuples(curve, subset, delta, chosen, out);
        chosen.pop_back();
    }
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool window_ok(Window w) {
    return std::isfinite(w.lo) && std::isfinite(w.hi) && w.lo < w.hi;
}

} // namespace

std::optional<Interval> disc_intersection_t_range(std::span<const LogPoint> centers, double delta) {
    if (centers.empty()) return std::nullopt;
    // Lift every center to the strip copy nearest the first one; discs of
    // radius <= pi/2 then behave as planar discs.
    std::vector<std::pair<double, double>> c;
    c.reserve(centers.size());
    const double theta0 = centers[0].theta;
    for (const auto& p : centers)
        c.emplace_back(p.t, theta0 + std::remainder(p.theta - theta0, 2.0 * pi));

    const double reach = delta + disc_slack;
    auto feasible = [&](double t, double th) {
        for (const auto& [ct, cth] : c)
            if (std::hypot(t - ct, th - cth) > reach) return false;
        return true;
    };

    double lo = inf, hi = -inf;
    auto take = [&](double t, double th) {
        if (!feasible(t, th)) return;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    };
    for (std::size_t i = 0; i < c.size(); ++i) {
        take(c[i].first - delta, c[i].second);
        take(c[i].first + delta, c[i].second);
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double dt = c[j].first - c[i].first;
            const double dth = c[j].second - c[i].second;
            const double d = std::hypot(dt, dth);
            if (d > 2.0 * delta + disc_slack) return std::nullopt;
            if (d == 0.0) continue;
            const double h = std::sqrt(std::max(0.0, delta * delta - 0.25 * d * d));
            const double mt = c[i].first + 0.5 * dt;
            const double mth = c[i].second + 0.5 * dth;
            take(mt - h * dth / d, mth + h * dt / d);
            take(mt + h * dth / d, mth - h * dt / d);
        }
    }
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

std::vector<ClusterRegion> cluster_regions(const Curve& curve, double delta) {
    if (!(delta > 0.0) || delta > pi / 2)
        invalid_parameter("delta must lie in (0, pi/2]");
    const std::size_t n = curve.size();
    if (n > 20) invalid_parameter("too many coordinates for subset enumeration");

    std::vector<ClusterRegion> regions;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        std::vector<int> subset;
        bool all_have_zeros = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (1ul << j))) continue;
            subset.push_back(static_cast<int>(j));
            if (curve.coordinate(j).zeros().empty()) all_have_zeros = false;
        }
        if (!all_have_zeros) continue;

        std::vector<Interval> raw;
        if (subset.size() == 1) {
            for (const auto& z : curve.coordinate(static_cast<std::size_t>(subset[0])).zeros())
                raw.emplace_back(z.point.t - delta, z.point.t + delta);
        } else {
            std::vector<LogPoint> chosen;
            collect_tuples(curve, subset, delta, chosen, raw);
        }
        if (raw.empty()) continue;
        regions.push_back({std::move(subset), merge_intervals(std::move(raw))});
    }
    std::sort(regions.begin(), regions.end(),
              [](const ClusterRegion& a, const ClusterRegion& b) { return lex_less(a.subset, b.subset); });
    return regions;
}

DefectResult second_condition(const Curve& curve, double a, Window window, bool interior_only) {
    if (!(a > 0.0)) invalid_parameter("a must be positive");
    if (interior_only) {
        window = {window.lo + a, window.hi - a};
        if (!window_ok(window))
            invalid_parameter("window too short for --interior-only with this a");
    }
    return sup_tangent_defect(curve.envelope(), a, window);
}

double quadratic_condition(const Curve& curve, Window window) {
    return min_quadratic_constant(curve.envelope(), window);
}

ThirdConditionResult third_condition(const Curve& curve, double delta, Window window) {
    if (!window_ok(window)) invalid_parameter("window must be nondegenerate");
    const auto regions = cluster_regions(curve, delta);
    const PLConvex& env = curve.envelope();
    const std::size_t n = curve.size();

    ThirdConditionResult best;
    best.value = -inf;
    auto consider = [&](double value, double t, const std::vector<int>& subset) {
        const double tol = std::isfinite(value) ? 1e-12 * std::max(1.0, std::abs(value)) : 0.0;
        const bool better = !best.has_witness || value > best.value + tol;
        const bool tie = best.has_witness && !better && !(value < best.value - tol);
        if (better || (tie && (t < best.t || (t == best.t && lex_less(subset, best.subset))))) {
            best.value = better ? value : std::max(value, best.value);
            best.has_witness = true;
            best.t = t;
            best.subset = subset;
        }
    };

    for (const auto& region : regions) {
        std::vector<PLConvex> rest;
        for (std::size_t j = 0; j < n; ++j)
            if (!std::binary_search(region.subset.begin(), region.subset.end(), static_cast<int>(j)))
                rest.push_back(curve.counting_functions()[j]);
        const std::optional<PLConvex> rest_env =
            rest.empty() ? std::nullopt : std::optional<PLConvex>(max_envelope(rest));

        for (const auto& [ilo, ihi] : region.intervals) {
            const double lo = std::max(ilo, window.lo);
            const double hi = std::min(ihi, window.hi);
            if (lo > hi) continue;
            if (!rest_env) {
                consider(inf, lo, region.subset);
                continue;
            }
            auto defect = [&](double t) { return env.eval(t) - rest_env->eval(t); };
            consider(defect(lo), lo, region.subset);
            consider(defect(hi), hi, region.subset);
            for (const PLConvex* f : {&env, &*rest_env}) {
                const auto ks = f->knots();
                for (auto it = std::upper_bound(ks.begin(), ks.end(), lo); it != ks.end() && *it < hi; ++it)
                    consider(defect(*it), *it, region.subset);
            }
        }
    }
    if (!best.has_witness) best.value = 0.0;
    best.value = std::max(best.value, 0.0);
    return best;
}

int max_ring_count(const CanonicalCoordinate& c, Window window, double width) {
    // Floating knots like k * log 2 may sit a few ulps inside the width.
    constexpr double tol = 1e-9;
    std::vector<Zero> zs;
    for (const auto& z : c.zeros())
        if (window.contains(z.point.t)) zs.push_back(z);
    int best = 0, count = 0;
    std::size_t end = 0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (end < i) {
            end = i;
            count = 0;
        }
        while (end < zs.size() && zs[end].point.t - zs[i].point.t < width - tol)
            count += zs[end++].multiplicity;
        best = std::max(best, count);
        count -= zs[i].multiplicity;
    }
    return best;
}

OstrowskiReport ostrowski_check(const Curve& curve, Window window) {
    if (curve.size() != 2) invalid_parameter("Ostrowski conditions need exactly two coordinates (n = 1)");
    if (!window_ok(window)) invalid_parameter("window must be nondegenerate");
    OstrowskiReport r;

    std::vector<Zero> in_window[2];
    for (int j = 0; j < 2; ++j)
        for (const auto& z : curve.coordinate(j).zeros())
            if (window.contains(z.point.t)) in_window[j].push_back(z);

    // a) running zero-minus-pole count, zeros taken one at a time in order of
    // modulus (ties: g0 first); the spread of the prefix sums bounds the
    // imbalance over rings.
    struct Event {
        double t;
        int j;
        int mult;
    };
    std::vector<Event> events;
    for (int j = 0; j < 2; ++j)
        for (const auto& z : in_window[j]) events.push_back({z.point.t, j, z.multiplicity});
    std::stable_sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
        return x.t < y.t || (x.t == y.t && x.j < y.j);
    });
    int prefix = 0, lo = 0, hi = 0;
    for (const auto& e : events) {
        prefix += e.j == 0 ? e.mult : -e.mult;
        lo = std::min(lo, prefix);
        hi = std::max(hi, prefix);
    }
    r.a_bound = hi - lo;

    // b) rings r < |z| < 2r
    r.b_bound = std::max(max_ring_count(curve.coordinate(0), window, std::numbers::ln2),
                         max_ring_count(curve.coordinate(1), window, std::numbers::ln2));

    // c) closest zero of g0 to a zero of g1
    for (const auto& z0 : in_window[0]) {
        for (const auto& z1 : in_window[1]) {
            if (std::abs(z1.point.t - z0.point.t) >= r.c_min_dist) continue;
            r.c_min_dist = std::min(r.c_min_dist, cylinder_distance(z0.point, z1.point));
        }
    }

    // d) N(|w|, g_j) <= N(|w|, g_{1-j}) + C at the zeros w of g_j
    const auto n = curve.counting_functions();
    for (int j = 0; j < 2; ++j)
        for (const auto& z : in_window[j])
            r.d_constant = std::max(r.d_constant, n[j].eval(z.point.t) - n[1 - j].eval(z.point.t));
    return r;
}

CriteriaReport analyze(const Curve& curve, const AnalyzeParams& params) {
    if (!window_ok(params.window)) invalid_parameter("window must be nondegenerate");
    CriteriaReport report;

    Window inner = params.window;
    if (params.interior_only) inner = {params.window.lo + params.a, params.window.hi - params.a};
    const DefectResult second = second_condition(curve, params.a, params.window, params.interior_only);
    report.c_of_a = second.value;
    report.witness_second = second.witness;
    report.c1 = quadratic_condition(curve, inner);

    const ThirdConditionResult third = third_condition(curve, params.delta, params.window);
    report.c_of_delta = third.value;
    if (third.has_witness) report.witness_third = std::make_pair(third.t, third.subset);

    if (curve.size() == 2) report.ostrowski = ostrowski_check(curve, params.window);

    double zlo = 0.0, zhi = 0.0;
    if (curve.zero_t_range(zlo, zhi) && (zlo < params.window.lo || zhi > params.window.hi))
        report.warnings.push_back("zeros outside the window: constants reflect truncation");

    report.pass = report.c_of_a <= params.threshold_a && std::isfinite(report.c_of_delta) &&
                  report.c_of_delta <= params.threshold_delta;
    return report;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson number_or_inf(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig12(x);
}

} // namespace

std::string report_to_json(const CriteriaReport& report, const AnalyzeParams& params,
                           const std::string& label, int m_shift) {
    ojson doc;
    doc["C_of_a"] = number_or_inf(report.c_of_a);
    doc["a"] = number_or_inf(params.a);
    doc["C1"] = number_or_inf(report.c1);
    doc["C_of_delta"] = number_or_inf(report.c_of_delta);
    doc["delta"] = number_or_inf(params.delta);
    doc["witness_second"] = {{"s", number_or_inf(report.witness_second.s)},
                             {"t", number_or_inf(report.witness_second.t)},
                             {"s_left_limit", report.witness_second.s_left_limit}};
    if (report.witness_third)
        doc["witness_third"] = {{"t", number_or_inf(report.witness_third->first)},
                                {"I", report.witness_third->second}};
    else
        doc["witness_third"] = nullptr;
    if (report.ostrowski) {
        const auto& o = *report.ostrowski;
        doc["ostrowski"] = {{"a_bound", o.a_bound},
                            {"b_bound", o.b_bound},
                            {"c_min_dist", number_or_inf(o.c_min_dist)},
                            {"d_constant", number_or_inf(o.d_constant)}};
    } else {
        doc["ostrowski"] = nullptr;
    }
    doc["verdict"] = report.pass ? "pass" : "fail";
    doc["window"] = {number_or_inf(params.window.lo), number_or_inf(params.window.hi)};
    doc["label"] = label;
    doc["interior_only"] = params.interior_only;
    doc["thresholds"] = {{"a", number_or_inf(params.threshold_a)},
                         {"delta", number_or_inf(params.threshold_delta)}};
    doc["m_shift"] = m_shift;
    doc["warnings"] = report.warnings;
    return doc.dump(2) + "\n";
}

} // namespace holonorm
