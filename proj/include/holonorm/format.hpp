#ifndef HOLONORM_FORMAT_HPP
#define HOLONORM_FORMAT_HPP

#include <string>

namespace holonorm {

// Decimal text with 12 significant digits (printf %.12g).
std::string format_sig12(double x);

// x rounded to 12 significant digits; JSON writers print the result with the
// shortest round-trip representation, which then has at most 12 digits.
double round_sig12(double x);

} // namespace holonorm

#endif
