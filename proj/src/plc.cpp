#include "holonorm/plc.hpp"

#include "holonorm/error.hpp"
#include "holonorm/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace holonorm {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool window_ok(Window w) {
    return std::isfinite(w.lo) && std::isfinite(w.hi) && w.lo < w.hi;
}

} // namespace

PLConvex::PLConvex() : slopes_{0} {}

PLConvex PLConvex::from_pieces(std::vector<double> knots, std::vector<int> slopes,
                               double anchor_t, double anchor_value) {
    if (slopes.size() != knots.size() + 1)
        violated_invariant("piecewise-linear function needs one more slope than knots");
    if (!std::isfinite(anchor_t) || !std::isfinite(anchor_value))
        violated_invariant("anchor must be finite");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i])) violated_invariant("knots must be finite");
        if (i > 0 && knots[i] < knots[i - 1]) violated_invariant("knots must be sorted");
    }

    // Merge close knots; the surviving knot keeps the leftmost position.
    std::vector<double> merged_knots;
    std::vector<int> merged_slopes{slopes[0]};
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!merged_knots.empty() && knots[i] - merged_knots.back() <= knot_tolerance) {
            merged_slopes.back() = slopes[i + 1];
            continue;
        }
        merged_knots.push_back(knots[i]);
        merged_slopes.push_back(slopes[i + 1]);
    }

    PLConvex f;
    f.slopes_ = {merged_slopes[0]};
    for (std::size_t i = 0; i < merged_knots.size(); ++i) {
        const int after = merged_slopes[i + 1];
        if (after == f.slopes_.back()) continue;  // zero jump
        if (after < f.slopes_.back()) violated_invariant("slopes must increase (convexity)");
        f.knots_.push_back(merged_knots[i]);
        f.slopes_.push_back(after);
    }
    f.t0_ = anchor_t;
    f.v0_ = anchor_value;
    f.cache_knot_values();
    return f;
}

PLConvex PLConvex::linear(int slope, double intercept) {
    return from_pieces({}, {slope}, 0.0, intercept);
}

PLConvex PLConvex::ramp_right(double knot, int jump) {
    // max(0, jump (t - knot))
    return from_pieces({knot}, {0, jump}, knot, 0.0);
}

PLConvex PLConvex::ramp_left(double knot, int jump) {
    // max(0, jump (knot - t))
    return from_pieces({knot}, {-jump, 0}, knot, 0.0);
}

void PLConvex::cache_knot_values() {
    knot_values_.assign(knots_.size(), 0.0);
    if (knots_.empty()) return;
    const std::size_t idx = piece_index(t0_);
    if (idx > 0) {
        knot_values_[idx - 1] = v0_ - slopes_[idx] * (t0_ - knots_[idx - 1]);
        for (std::size_t i = idx - 1; i > 0; --i)
            knot_values_[i - 1] = knot_values_[i] - slopes_[i] * (knots_[i] - knots_[i - 1]);
    }
    if (idx < knots_.size()) {
        knot_values_[idx] = v0_ + slopes_[idx] * (knots_[idx] - t0_);
        for (std::size_t i = idx; i + 1 < knots_.size(); ++i)
            knot_values_[i + 1] = knot_values_[i] + slopes_[i + 1] * (knots_[i + 1] - knots_[i]);
    }
}

std::size_t PLConvex::piece_index(double t, Side side) const {
    auto it = side == Side::right ? std::upper_bound(knots_.begin(), knots_.end(), t)
                                  : std::lower_bound(knots_.begin(), knots_.end(), t);
    return static_cast<std::size_t>(it - knots_.begin());
}

double PLConvex::eval(double t) const {
    if (knots_.empty()) return v0_ + slopes_[0] * (t - t0_);
    const std::size_t i = piece_index(t);
    if (i == 0) return knot_values_[0] - slopes_[0] * (knots_[0] - t);
    return knot_values_[i - 1] + slopes_[i] * (t - knots_[i - 1]);
}

int PLConvex::slope_at(double t, Side side) const { return slopes_[piece_index(t, side)]; }

bool PLConvex::is_linear_on(Window w) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), w.lo);
    return it == knots_.end() || *it >= w.hi;
}

int PLConvex::max_abs_slope() const noexcept {
    return std::max(std::abs(slopes_.front()), std::abs(slopes_.back()));
}

PLConvex max_envelope(std::span<const PLConvex> fs) {
    if (fs.empty()) invalid_parameter("max_envelope needs at least one function");

    std::vector<double> breaks;
    for (const auto& f : fs) breaks.insert(breaks.end(), f.knots().begin(), f.knots().end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    struct Line {
        int slope;
        double value;  // at the interval's reference point
    };
    std::vector<Line> lines(fs.size());
    std::vector<double> knots;
    std::vector<int> slopes;

    for (std::size_t piece = 0; piece <= breaks.size(); ++piece) {
        const double lo = piece == 0 ? -inf : breaks[piece - 1];
        const double hi = piece == breaks.size() ? inf : breaks[piece];
        const double ref = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const int s = std::isfinite(lo)   ? fs[j].slope_at(lo, Side::right)
                          : std::isfinite(hi) ? fs[j].slope_at(hi, Side::left)
                                              : fs[j].slopes()[0];
            lines[j] = {s, fs[j].eval(ref)};
        }

        std::size_t cur = 0;
        for (std::size_t j = 1; j < lines.size(); ++j) {
            const Line& a = lines[j];
            const Line& b = lines[cur];
            const bool better = std::isfinite(lo)
                                    ? (a.value > b.value || (a.value == b.value && a.slope > b.slope))
                                    : (a.slope < b.slope || (a.slope == b.slope && a.value > b.value));
            if (better) cur = j;
        }

        if (piece == 0) {
            slopes.push_back(lines[cur].slope);
        } else if (lines[cur].slope != slopes.back()) {
            knots.push_back(lo);
            slopes.push_back(lines[cur].slope);
        }

        double x = lo;
        for (;;) {
            std::size_t next = lines.size();
            double next_x = inf;
            for (std::size_t j = 0; j < lines.size(); ++j) {
                if (lines[j].slope <= lines[cur].slope) continue;
                double xj = ref + (lines[cur].value - lines[j].value) /
                                      static_cast<double>(lines[j].slope - lines[cur].slope);
                xj = std::max(xj, x);
                if (xj < next_x || (xj == next_x && lines[j].slope > lines[next].slope)) {
                    next_x = xj;
                    next = j;
                }
            }
            if (next == lines.size() || next_x >= hi) break;
            knots.push_back(next_x);
            slopes.push_back(lines[next].slope);
            cur = next;
            x = next_x;
        }
    }

    double v0 = -inf;
    for (const auto& f : fs) v0 = std::max(v0, f.eval(0.0));
    return PLConvex::from_pieces(std::move(knots), std::move(slopes), 0.0, v0);
}

PLConvex shift(const PLConvex& f, double delta) {
    std::vector<double> knots(f.knots().begin(), f.knots().end());
    for (double& k : knots) k -= delta;
    return PLConvex::from_pieces(std::move(knots), {f.slopes().begin(), f.slopes().end()}, 0.0,
                                 f.eval(delta));
}

PLConvex subtract_linear(const PLConvex& f, const LinearFn& l) {
    std::vector<int> slopes(f.slopes().begin(), f.slopes().end());
    for (int& s : slopes) s -= l.slope;
    return PLConvex::from_pieces({f.knots().begin(), f.knots().end()}, std::move(slopes),
                                 f.anchor_t(), f.anchor_value() - l(f.anchor_t()));
}

LinearFn tangent_at(const PLConvex& f, double s) {
    const int slope = f.right_derivative(s);
    return {slope, f.eval(s) - slope * s};
}

double tangent_defect(const PLConvex& f, double s, double t, Side s_side) {
    return f.eval(t) - f.eval(s) - f.slope_at(s, s_side) * (t - s);
}

DefectResult sup_tangent_defect(const PLConvex& f, double a, Window window) {
    if (!(a > 0.0) || !std::isfinite(a)) invalid_parameter("a must be positive");
    if (!window_ok(window)) invalid_parameter("window must be nondegenerate");

    // For fixed s the defect is convex in t, so t sits at an end of
    // [s - a, s + a] clipped to the window. Between consecutive breakpoints
    // in s the resulting function is convex (or constant), so s ranges over
    // breakpoints, taken both exactly and as left limits.
    std::vector<double> ss{window.lo, window.hi};
    for (double k : f.knots())
        if (window.lo < k && k < window.hi) ss.push_back(k);
    for (double p : {window.lo + a, window.hi - a})
        if (window.lo < p && p < window.hi) ss.push_back(p);
    std::sort(ss.begin(), ss.end());

    DefectResult best{-inf, {}};
    auto consider = [&](double value, double s, double t, bool left) {
        const double tol = 1e-12 * std::max(1.0, std::abs(best.value));
        if (value > best.value + tol) {
            best = {value, {s, t, left}};
            return;
        }
        if (value < best.value - tol) return;
        const auto& w = best.witness;
        if (t < w.t || (t == w.t && (s < w.s || (s == w.s && !left && w.s_left_limit))))
            best = {std::max(value, best.value), {s, t, left}};
    };

    for (double s : ss) {
        const double fs = f.eval(s);
        const double t_lo = std::max(window.lo, s - a);
        const double t_hi = std::min(window.hi, s + a);
        const double f_lo = f.eval(t_lo);
        const double f_hi = f.eval(t_hi);
        for (Side side : {Side::right, Side::left}) {
            if (side == Side::left && s <= window.lo) continue;
            const int slope = f.slope_at(s, side);
            const bool left = side == Side::left && slope != f.slope_at(s, Side::right);
            if (side == Side::left && !left) continue;
            consider(f_lo - fs - slope * (t_lo - s), s, t_lo, left);
            consider(f_hi - fs - slope * (t_hi - s), s, t_hi, left);
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

namespace {

// max of (alpha + beta u) / (1 + u^2) over u in [u0, u1]
double max_ratio_on_segment(double alpha, double beta, double u0, double u1) {
    auto r = [&](double u) { return (alpha + beta * u) / (1.0 + u * u); };
    double best = std::max(r(u0), r(u1));
    // Stationary points solve beta u^2 + 2 alpha u - beta = 0.
    if (beta == 0.0) {
        if (u0 < 0.0 && 0.0 < u1) best = std::max(best, r(0.0));
    } else {
        const double root = std::hypot(alpha, beta);
        for (double u : {(-alpha + root) / beta, (-alpha - root) / beta})
            if (u0 < u && u < u1) best = std::max(best, r(u));
    }
    return best;
}

} // namespace

double min_quadratic_constant(const PLConvex& f, Window window) {
    if (!window_ok(window)) invalid_parameter("window must be nondegenerate");

    std::vector<double> q{window.lo};
    for (double k : f.knots())
        if (window.lo < k && k < window.hi) q.push_back(k);
    q.push_back(window.hi);
    std::vector<double> fq(q.size());
    std::vector<int> sigma(q.size() - 1);
    for (std::size_t i = 0; i < q.size(); ++i) fq[i] = f.eval(q[i]);
    for (std::size_t i = 0; i + 1 < q.size(); ++i) sigma[i] = f.right_derivative(q[i]);

    // The defect depends on s only through the piece containing it, so for
    // each piece s is the end nearest to t: its left end (right slope) or
    // its right end approached from below.
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        for (std::size_t end : {i, i + 1}) {
            const double s = q[end];
            const double fs = fq[end];
            const int slope = sigma[i];
            for (std::size_t m = 0; m + 1 < q.size(); ++m) {
                if (m == i) continue;  // defect vanishes on its own piece
                const double alpha = fq[m] - fs + sigma[m] * (s - q[m]);
                const double beta = static_cast<double>(sigma[m] - slope);
                best = std::max(best, max_ratio_on_segment(alpha, beta, q[m] - s, q[m + 1] - s));
            }
        }
    }
    return best;
}

std::string to_csv(const PLConvex& f, Window window) {
    std::string out = "t,value,right_slope\n";
    auto row = [&](double t) {
        out += format_sig12(t);
        out += ',';
        out += format_sig12(f.eval(t));
        out += ',';
        out += std::to_string(f.right_derivative(t));
        out += '\n';
    };
    row(window.lo);
    for (double k : f.knots())
        if (window.lo < k && k < window.hi) row(k);
    if (window.hi > window.lo) row(window.hi);
    return out;
}

} // namespace holonorm
