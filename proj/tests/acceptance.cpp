// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "holonorm/criteria.hpp"
#include "holonorm/generators.hpp"
#include "holonorm/jensen.hpp"
#include "holonorm/rescale.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace holonorm;

namespace {

constexpr double inf = oracle::inf;
const double ln2 = std::numbers::ln2;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Window padded_window(const Curve& c, double pad) {
    double lo = 0.0, hi = 0.0;
    if (!c.zero_t_range(lo, hi)) return {-5.0, 5.0};
    return {lo - pad, hi + pad};
}

bool within_relative(double x, double y, double rel) {
    if (x == y) return true;
    return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y));
}

Outcome jensen_consistency(const std::vector<Curve>& corpus) {
    const auto start = Clock::now();
    JensenOptions jo;
    jo.t_points = 21;
    jo.nodes = 2048;
    double worst = 0.0;
    int circles = 0;
    for (const auto& c : corpus) {
        const JensenReport r = jensen_check(c, {-6.0, 6.0}, jo);
        worst = std::max(worst, r.max_error);
        circles += r.checked;
    }
    const double secs = seconds_since(start);
    std::ostringstream d;
    d << "max error " << worst << " over " << circles << " circles on " << corpus.size() << " curves, " << secs
      << " s";
    return {worst <= 1e-6 && secs <= 10.0, d.str()};
}

Outcome third_condition_oracle() {
    const auto start = Clock::now();
    bool ok = true;
    double worst_gap = 0.0, worst_excess = -inf;
    long fewest_centers = -1;
    int infinite = 0;
    for (int i = 0; i < 50; ++i) {
        const Curve c = random_curve(1 + i % 3, 0.5, {-4, 4}, 5000 + static_cast<std::uint64_t>(i));
        for (double delta : {0.1, 0.3, 0.5}) {
            const double lo = -4.0 - delta, hi = 4.0 + delta;
            const double exact = third_condition(c, delta, {lo, hi}).value;
            const auto s = oracle::sampled_third_condition(c, delta, lo, hi, 200001, 4);
            fewest_centers = fewest_centers < 0 ? s.centers : std::min(fewest_centers, s.centers);
            if (exact == inf || s.value == inf) {
                ok = ok && exact == s.value;
                ++infinite;
                continue;
            }
            worst_excess = std::max(worst_excess, s.value - exact);
            worst_gap = std::max(worst_gap, exact - s.value);
            ok = ok && s.value <= exact + 1e-9 && exact - s.value <= 1e-3;
        }
    }
    const double secs = seconds_since(start);
    std::ostringstream d;
    d << "max exact-sampled " << worst_gap << ", max sampled-exact " << worst_excess << ", " << infinite
      << " infinite cases agree, >= " << fewest_centers << " centers per case, " << secs << " s";
    return {ok && fewest_centers >= 100000 && secs <= 60.0, d.str()};
}

Outcome ostrowski_geometric() {
    const Curve g = geometric_pair(10, 2.0, 0.0, std::numbers::pi);
    AnalyzeParams p;
    p.a = 1.0;
    p.delta = 0.3;
    p.window = padded_window(g, 4.0);
    const CriteriaReport r = analyze(g, p);
    const OstrowskiReport& o = *r.ostrowski;
    std::ostringstream d;
    d << "a=" << o.a_bound << " b=" << o.b_bound << " c=" << o.c_min_dist << " d=" << o.d_constant
      << ", C(delta=0.3)=" << r.c_of_delta << ", verdict " << (r.pass ? "pass" : "fail");
    const bool ok = o.a_bound == 1 && o.b_bound == 1 && std::abs(o.c_min_dist - std::numbers::pi) <= 1e-12 &&
                    o.d_constant == 0.0 && r.pass && r.c_of_delta == 0.0;
    return {ok, d.str()};
}

Outcome counterexample_stability() {
    AnalyzeParams p;
    p.a = 1.0;
    p.delta = 0.3;
    CriteriaReport reports[2];
    int rings[2] = {0, 0};
    bool pass = true;
    for (int i = 0; i < 2; ++i) {
        const int K = 5 + i;
        const Curve c = normal_counterexample(K);
        p.window = {-4.0, (std::ldexp(1.0, 2 * K) + 16) * ln2};
        reports[i] = analyze(c, p);
        pass = pass && reports[i].pass;
        rings[i] = max_ring_count(c.coordinate(2), p.window, ln2);
    }
    const bool stable = within_relative(reports[0].c_of_a, reports[1].c_of_a, 0.05) &&
                        within_relative(reports[0].c1, reports[1].c1, 0.05) &&
                        within_relative(reports[0].c_of_delta, reports[1].c_of_delta, 0.05);
    std::ostringstream d;
    d << "K=5: C(a)=" << reports[0].c_of_a << " C1=" << reports[0].c1 << " C(delta)=" << reports[0].c_of_delta
      << " rings=" << rings[0] << "; K=6: C(a)=" << reports[1].c_of_a << " C1=" << reports[1].c1
      << " C(delta)=" << reports[1].c_of_delta << " rings=" << rings[1];
    return {pass && stable && rings[0] == 5 && rings[1] == 6, d.str()};
}

Outcome violation_detection() {
    const double delta = 0.5;
    // The schedule 1/k is a valid curve only at K = 1 (eps_1 = 1 puts g1's zero
    // on g0's second zero); 1/(k+1) is the same family from its second term.
    auto first_infinite = [](const GapSchedule& gap, double d, int max_k) {
        for (int K = 1; K <= max_k; ++K)
            if (third_condition(colliding_pair(K, gap), d, {0.0, K + 2.0}).value == inf) return K;
        return 0;
    };
    auto first_below = [](const GapSchedule& gap, double bound) {
        for (int k = 1;; ++k)
            if (gap(k) <= bound) return k;
    };
    const GapSchedule literal = [](int k) { return 1.0 / k; };
    const GapSchedule shifted = [](int k) { return 1.0 / (k + 1); };
    const int lit = first_infinite(literal, delta, 1);
    const int small = first_infinite(shifted, 0.1, 10);
    const bool flips = lit == first_below(literal, 2 * delta) && small == first_below(shifted, 0.2);

    const Curve c = colliding_pair(20, shifted);
    std::vector<double> lls;
    for (int k = 1; k <= 20; ++k) lls.push_back(k);
    const auto eq = equicontinuity_probe(c, lls, {-0.5, 0.5}, {201, 64});
    const double growth = eq.per_lambda.back() / eq.per_lambda.front();
    std::ostringstream d;
    d << "C(0.5)=inf first at k=" << lit << " (1/k); C(0.1)=inf first at k=" << small << " (1/(k+1)); L from "
      << eq.per_lambda.front() << " to " << eq.per_lambda.back() << " (x" << growth << ")";
    return {flips && growth >= 10.0, d.str()};
}

Outcome lemma4_dichotomy(const std::vector<Curve>& corpus) {
    int passing = 0, undecided = 0, not_flat = 0;
    AnalyzeParams p;
    p.a = 1.0;
    p.delta = 0.3;
    const Window annulus{-1.0, 1.0};
    for (const auto& c : corpus) {
        p.window = padded_window(c, 4.0);
        if (!analyze(c, p).pass) continue;
        ++passing;
        double lo = 0.0, hi = 0.0;
        c.zero_t_range(lo, hi);
        std::vector<double> lls;
        for (int k = 0; k < 10; ++k) lls.push_back(hi + 12.0 - annulus.lo + 2.0 * k);
        const FamilyTrace tr = normalized_trace(c, lls, annulus, {32, 32});
        for (const auto& ct : tr.coordinates)
            if (ct.cls == TraceClass::undecided) ++undecided;
        for (double ll : lls) {
            const PLConvex e = normalized_envelope(c, ll);
            if (e.eval(0.0) != 0.0 || e.right_derivative(0.0) != 0) ++not_flat;
        }
    }
    std::ostringstream d;
    d << passing << " of " << corpus.size() << " corpus curves pass analyze; " << undecided
      << " UNDECIDED coordinates; " << not_flat << " normalized envelopes off (0, 0) at t=0";
    return {passing > 0 && undecided == 0 && not_flat == 0, d.str()};
}

Outcome product_bound_guard() {
    support::Rng rng(20240607);
    int bad = 0;
    double tightest = inf;
    for (int i = 0; i < 100; ++i) {
        const CanonicalCoordinate c = support::random_coordinate(rng).with_m(0);
        const ProductBound b = product_bound_check(c);
        if (!b.ok) ++bad;
        tightest = std::min(tightest, b.rhs - b.lhs);
    }
    std::ostringstream d;
    d << bad << " violations in 100 coordinates; smallest rhs-lhs " << tightest;
    return {bad == 0, d.str()};
}

Outcome plc_invariants(const std::vector<Curve>& corpus) {
    const auto start = Clock::now();
    support::Rng rng(99);
    int failures = 0;
    double worst_ratio = 0.0;
    for (const auto& c : corpus) {
        const PLConvex& e = c.envelope();
        std::vector<const PLConvex*> fs{&e};
        for (const auto& n : c.counting_functions()) fs.push_back(&n);
        for (const PLConvex* f : fs) {
            const auto knots = f->knots();
            const auto slopes = f->slopes();
            for (std::size_t i = 1; i < knots.size(); ++i) failures += !(knots[i - 1] < knots[i]);
            for (std::size_t i = 1; i < slopes.size(); ++i) failures += !(slopes[i - 1] < slopes[i]);
        }
        for (int k = 0; k < 200; ++k) {
            const double t = support::uniform(rng, -7, 7);
            double top = -inf;
            for (std::size_t j = 0; j < c.size(); ++j) {
                const double v = c.counting_functions()[j].eval(t);
                top = std::max(top, v);
                if (std::abs(v - oracle::counting_sum(c.coordinate(j), t)) > 1e-9) ++failures;
            }
            if (std::abs(e.eval(t) - top) > 1e-9 * std::max(1.0, std::abs(top))) ++failures;
            const double s = support::uniform(rng, -7, 7);
            if (tangent_defect(e, s, t, Side::right) < -1e-9) ++failures;
            if (tangent_defect(e, s, t, Side::left) < -1e-9) ++failures;
        }
        const Window w{-6.0, 6.0};
        const int n = 6001;
        const double h = w.length() / (n - 1);
        const double exact = sup_tangent_defect(e, 1.0, w).value;
        const auto direct = [&](double t) {
            double v = -inf;
            for (const auto& g : c.coordinates()) v = std::max(v, oracle::counting_sum(g, t));
            return v;
        };
        const double grid = oracle::grid_sup_defect(direct, 1.0, w.lo, w.hi, n);
        // the defect is Lipschitz with constant 2 * max|slope| in t, and the
        // sup over s within a piece sits at its ends
        const double tol = 3.0 * e.max_abs_slope() * h + 1e-9;
        if (grid > exact + 1e-9 || exact - grid > tol) ++failures;
        if (tol > 1e-9) worst_ratio = std::max(worst_ratio, (exact - grid) / tol);
    }
    const double secs = seconds_since(start);
    std::ostringstream d;
    d << failures << " failures on " << corpus.size() << " curves; grid gap at most " << worst_ratio
      << " of its resolution bound; " << secs << " s";
    return {failures == 0 && secs <= 30.0, d.str()};
}

} // namespace

int main() {
    const std::vector<Curve> corpus = support::seeded_corpus(100);
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 Jensen consistency", [&] { return jensen_consistency(corpus); }},
        {"2 cluster condition vs sampling oracle", third_condition_oracle},
        {"3 Ostrowski cross-check on the geometric pair", ostrowski_geometric},
        {"4 counterexample stability", counterexample_stability},
        {"5 violation detection", violation_detection},
        {"6 normalized family dichotomy", [&] { return lemma4_dichotomy(corpus); }},
        {"7 product bound guard", product_bound_guard},
        {"8 PLC engine invariants", [&] { return plc_invariants(corpus); }},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
