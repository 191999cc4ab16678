#ifndef HOLONORM_PLC_HPP
#define HOLONORM_PLC_HPP

#include <span>
#include <string>
#include <vector>

namespace holonorm {

// Knots closer than this are merged and their jumps added.
inline constexpr double knot_tolerance = 1e-12;

// Which one-sided slope to read at a point. At a knot, `right` gives the
// slope of the piece starting there and `left` the piece ending there.
enum class Side { left, right };

struct Window {
    double lo;
    double hi;

    double length() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
};

// t -> slope * t + intercept with an integer slope.
struct LinearFn {
    int slope = 0;
    double intercept = 0.0;

    double operator()(double t) const noexcept { return slope * t + intercept; }
};

// Piecewise-linear convex function of one real variable with integer slopes.
//
// Stored as sorted knots, one slope per piece (knots + 1 of them, strictly
// increasing) and an anchor (t0, v0). The representation is canonical: no
// knot carries a zero jump and no two knots are within knot_tolerance.
// Values at knots are cached so evaluation is a binary search.
class PLConvex {
public:
    // Constant zero.
    PLConvex();

    // Validates and canonicalizes. Throws violated-invariant if the slopes
    // are not nondecreasing, or the lengths disagree.
    static PLConvex from_pieces(std::vector<double> knots, std::vector<int> slopes,
                                double anchor_t, double anchor_value);
    static PLConvex linear(int slope, double intercept);
    // max(0, slope * (t - knot)) style ramps are common enough to name.
    static PLConvex ramp_right(double knot, int jump = 1);
    static PLConvex ramp_left(double knot, int jump = 1);

    double eval(double t) const;
    int slope_at(double t, Side side = Side::right) const;
    int right_derivative(double t) const { return slope_at(t, Side::right); }

    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const int> slopes() const noexcept { return slopes_; }
    // Values at knots, parallel to knots().
    std::span<const double> knot_values() const noexcept { return knot_values_; }
    double anchor_t() const noexcept { return t0_; }
    double anchor_value() const noexcept { return v0_; }

    bool is_linear() const noexcept { return knots_.empty(); }
    // True when no knot lies strictly inside the window.
    bool is_linear_on(Window w) const;
    int max_abs_slope() const noexcept;

    // Index of the piece containing t (0 .. knots().size()).
    std::size_t piece_index(double t, Side side = Side::right) const;

private:
    void cache_knot_values();

    std::vector<double> knots_;
    std::vector<int> slopes_;
    std::vector<double> knot_values_;
    double t0_ = 0.0;
    double v0_ = 0.0;
};

// Pointwise maximum; the result's anchor is (0, max_j f_j(0)).
PLConvex max_envelope(std::span<const PLConvex> fs);

// t -> f(t + delta).
PLConvex shift(const PLConvex& f, double delta);

// t -> f(t) - l(t).
PLConvex subtract_linear(const PLConvex& f, const LinearFn& l);

// Supporting line at s built from the right derivative.
LinearFn tangent_at(const PLConvex& f, double s);

struct DefectWitness {
    double s = 0.0;
    double t = 0.0;
    // The slope at s was taken from the left, i.e. the supremum is a limit
    // as s approaches a knot from below.
    bool s_left_limit = false;
};

struct DefectResult {
    double value = 0.0;
    DefectWitness witness;
};

// f(t) - f(s) - f'(s) (t - s), with f' the right derivative (or the left one
// when `s_side` is left).
double tangent_defect(const PLConvex& f, double s, double t, Side s_side = Side::right);

// Exact supremum of the tangent defect over s, t in the window with
// |t - s| <= a. Ties go to the smallest t, then the smallest s.
DefectResult sup_tangent_defect(const PLConvex& f, double a, Window window);

// Smallest C1 with defect(s, t) <= C1 (1 + (t - s)^2) for all s, t in the
// window.
double min_quadratic_constant(const PLConvex& f, Window window);

// CSV with header `t,value,right_slope`; rows at every knot inside the
// window plus both window ends, 12 significant digits.
std::string to_csv(const PLConvex& f, Window window);

} // namespace holonorm

#endif
