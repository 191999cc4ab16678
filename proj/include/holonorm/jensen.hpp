#ifndef HOLONORM_JENSEN_HPP
#define HOLONORM_JENSEN_HPP

#include "holonorm/curve.hpp"
#include "holonorm/plc.hpp"

#include <string>
#include <vector>

namespace holonorm {

struct JensenOptions {
    int t_points = 101;
    int nodes = 4096;
    double exclusion = 0.01;  // skip circles this close to a zero modulus
};

struct JensenReport {
    double max_error = 0.0;
    int checked = 0;
    // (coordinate, t) pairs left out because a zero sits near the circle
    std::vector<std::pair<int, double>> skipped;
};

// Compares the circle mean of log|g_j| (midpoint rule) against the counting
// function on a uniform t-grid over the window, for every coordinate.
JensenReport jensen_check(const Curve& curve, Window window, const JensenOptions& options = {});

std::string jensen_to_json(const JensenReport& report, Window window, const JensenOptions& options,
                           double tolerance);

} // namespace holonorm

#endif
