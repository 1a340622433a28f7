#ifndef OPLAB_CXMATH_HPP
#define OPLAB_CXMATH_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace oplab {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Largest Re(log f) we exponentiate before signalling overflow.
inline constexpr double kExpOverflow = 709.0;

inline bool is_finite(Cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Throws std::invalid_argument when z has a NaN/Inf component.
void require_finite(Cx z, const char* who);

// log(exp(la) + exp(lb)) for complex logarithms, stable when the real
// parts are large.  Either argument may have Re = -inf (a zero term).
Cx log_sum_exp(Cx la, Cx lb);

inline Cx iy(double y) { return Cx(0.0, y); }

}  // namespace oplab

#endif
