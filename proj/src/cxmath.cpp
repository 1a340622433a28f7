#include "oplab/cxmath.hpp"

#include <sstream>
#include <stdexcept>

namespace oplab {

void require_finite(Cx z, const char* who) {
  if (!is_finite(z)) {
    std::ostringstream os;
    os << who << ": non-finite complex argument (" << z.real() << ", " << z.imag() << ")";
    throw std::invalid_argument(os.str());
  }
}

Cx log_sum_exp(Cx la, Cx lb) {
  const double inf = std::numeric_limits<double>::infinity();
  if (la.real() == -inf) return lb;
  if (lb.real() == -inf) return la;
  if (la.real() < lb.real()) std::swap(la, lb);
  const Cx w = std::exp(lb - la);  // |w| <= 1
  const Cx one_plus = Cx(1.0, 0.0) + w;
  if (one_plus == Cx(0.0, 0.0)) return Cx(-inf, 0.0);
  return la + std::log(one_plus);
}

}  // namespace oplab
