#pragma once

#include <cmath>
#include <limits>

#include "berge/errors.hpp"

// Extended-real arithmetic on double. Values live in R u {+inf, -inf}; the
// undefined combinations raise DomainError instead of propagating NaN:
//   (+inf) + (-inf), 0 * (+-inf), 0/0, inf/inf, log(a <= 0), sqrt(a < 0),
//   and any power whose IEEE result is NaN.
// Division by zero resolves by the sign of the numerator, not IEEE zero signs.

namespace berge::ext {

inline constexpr double pos_inf = std::numeric_limits<double>::infinity();
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline bool is_finite(double a) { return std::isfinite(a); }

double add(double a, double b);
double sub(double a, double b);
double mul(double a, double b);
double div(double a, double b);
double pow(double a, double b);
double log(double a);
double sqrt(double a);
double exp(double a);

}  // namespace berge::ext
