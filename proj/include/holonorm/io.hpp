#ifndef HOLONORM_IO_HPP
#define HOLONORM_IO_HPP

#include "holonorm/curve.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace holonorm {

struct LoadedCurve {
    Curve curve;
    // Amount subtracted from every m_j to bring min_j m_j to 0.
    int m_shift = 0;
};

// Parses the curve specification format:
//   {"label": str, "coordinates": [{"logA": num, "argA": num?, "m": int,
//     "zeros": [{"t": num, "theta": num, "mult": int?}]}]}
// Malformed JSON throws parse_error with line and column; invariant
// violations throw violated_invariant.
LoadedCurve parse_curve(std::string_view text, double zero_tolerance = default_zero_tolerance);
LoadedCurve load_curve(const std::filesystem::path& path,
                       double zero_tolerance = default_zero_tolerance);

// Inverse of parse_curve; doubles are written with round-trip precision.
std::string curve_to_json(const Curve& curve);

// Writes via a temporary file in the same directory and renames over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

} // namespace holonorm

#endif
