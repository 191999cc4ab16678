#include "holonorm/jensen.hpp"

#include "holonorm/error.hpp"
#include "holonorm/format.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

namespace holonorm {

JensenReport jensen_check(const Curve& curve, Window window, const JensenOptions& options) {
    if (!(window.lo < window.hi)) invalid_parameter("window must be nondegenerate");
    if (options.t_points < 2 || options.nodes < 8) invalid_parameter("t_points >= 2 and nodes >= 8 required");
    constexpr double pi = std::numbers::pi;

    JensenReport report;
    for (std::size_t j = 0; j < curve.size(); ++j) {
        const CanonicalCoordinate& c = curve.coordinate(j);
        const PLConvex& n = curve.counting_functions()[j];
        for (int i = 0; i < options.t_points; ++i) {
            const double t = window.lo + window.length() * i / (options.t_points - 1);
            bool near = false;
            for (const auto& z : c.zeros()) near = near || std::abs(z.point.t - t) < options.exclusion;
            if (near) {
                report.skipped.emplace_back(static_cast<int>(j), t);
                continue;
            }
            // Neumaier summation keeps rounding well below the quadrature error
            double sum = 0.0, carry = 0.0;
            for (int k = 0; k < options.nodes; ++k) {
                const double v = log_abs_coordinate(c, {t, -pi + 2.0 * pi * (k + 0.5) / options.nodes});
                const double next = sum + v;
                carry += std::abs(sum) >= std::abs(v) ? (sum - next) + v : (v - next) + sum;
                sum = next;
            }
            report.max_error = std::max(report.max_error, std::abs((sum + carry) / options.nodes - n.eval(t)));
            ++report.checked;
        }
    }
    return report;
}

std::string jensen_to_json(const JensenReport& report, Window window, const JensenOptions& options,
                           double tolerance) {
    nlohmann::ordered_json doc;
    doc["max_error"] = round_sig12(report.max_error);
    doc["tolerance"] = round_sig12(tolerance);
    doc["ok"] = report.max_error <= tolerance;
    doc["checked"] = report.checked;
    nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
    for (const auto& [j, t] : report.skipped) skipped.push_back({{"j", j}, {"t", round_sig12(t)}});
    doc["skipped"] = std::move(skipped);
    doc["window"] = {round_sig12(window.lo), round_sig12(window.hi)};
    doc["t_points"] = options.t_points;
    doc["nodes"] = options.nodes;
    doc["exclusion"] = round_sig12(options.exclusion);
    return doc.dump(2) + "\n";
}

} // namespace holonorm
