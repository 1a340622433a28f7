#include "oplab/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oplab {

namespace {

constexpr double kDiagonalSwitch = 1e-10;
const Cx kMinusTwoPiI(0.0, -2.0 * kPi);

void require_upper(Cx z, const char* who) {
  require_finite(z, who);
  if (!(z.imag() > 0.0)) {
    std::ostringstream os;
    os << who << ": point (" << z.real() << ", " << z.imag()
       << ") is not in the open upper half-plane";
    throw std::domain_error(os.str());
  }
}

}  // namespace

Cx hardy_kernel(Cx z, Cx w) {
  require_upper(z, "hardy_kernel");
  require_upper(w, "hardy_kernel");
  const Cx den = z - std::conj(w);
  if (den == Cx(0.0, 0.0))
    throw std::domain_error("hardy_kernel: z equals conj(w)");
  return 1.0 / (kMinusTwoPiI * den);
}

Cx model_kernel(const InnerFn& chi, Cx z, Cx w) {
  require_upper(z, "model_kernel");
  require_upper(w, "model_kernel");
  const Cx den = z - std::conj(w);
  if (den == Cx(0.0, 0.0))
    throw std::domain_error("model_kernel: z equals conj(w)");
  return (Cx(1.0, 0.0) - std::conj(chi.eval(w)) * chi.eval(z)) / (kMinusTwoPiI * den);
}

Cx db_kernel(const HermiteBiehlerFn& E, Cx z, Cx w) {
  require_finite(z, "db_kernel");
  require_finite(w, "db_kernel");
  const Cx wbar = std::conj(w);
  const Cx cEw = std::conj(E.eval(w));
  const Cx cEsw = std::conj(E.star(w));
  if (std::abs(z - wbar) < kDiagonalSwitch) {
    // L'Hopital limit of the quotient at z = conj(w).
    return (E.derivative(wbar) * cEw - E.star_derivative(wbar) * cEsw) / kMinusTwoPiI;
  }
  return (E.eval(z) * cEw - E.star(z) * cEsw) / (kMinusTwoPiI * (z - wbar));
}

// -------------------------------------------------------------- KernelKind

KernelKind KernelKind::hardy() { return KernelKind(); }

KernelKind KernelKind::model(InnerFn chi) {
  KernelKind k;
  k.tag_ = Tag::model;
  k.chi_ = std::move(chi);
  return k;
}

KernelKind KernelKind::de_branges(HermiteBiehlerFn E) {
  KernelKind k;
  k.tag_ = Tag::de_branges;
  k.hb_ = std::move(E);
  return k;
}

const InnerFn& KernelKind::chi() const {
  if (!chi_) throw std::logic_error("KernelKind: no inner function attached");
  return *chi_;
}

const HermiteBiehlerFn& KernelKind::hb() const {
  if (!hb_) throw std::logic_error("KernelKind: no Hermite-Biehler function attached");
  return *hb_;
}

Cx KernelKind::eval(Cx z, Cx w) const {
  switch (tag_) {
    case Tag::hardy: return hardy_kernel(z, w);
    case Tag::model: return model_kernel(*chi_, z, w);
    case Tag::de_branges: return db_kernel(*hb_, z, w);
  }
  throw std::logic_error("KernelKind: bad tag");
}

double kernel_norm_sq(const KernelKind& kind, Cx z) {
  Cx k;
  switch (kind.tag()) {
    case KernelKind::Tag::hardy:
      require_upper(z, "kernel_norm_sq");
      return 1.0 / (4.0 * kPi * z.imag());
    case KernelKind::Tag::model: {
      require_upper(z, "kernel_norm_sq");
      const double la = kind.chi().log_abs(z);
      const double mod_sq = std::exp(2.0 * la);
      return (1.0 - mod_sq) / (4.0 * kPi * z.imag());
    }
    case KernelKind::Tag::de_branges:
      k = db_kernel(kind.hb(), z, z);
      break;
  }
  const double scale = std::abs(k);
  if (std::abs(k.imag()) > 1e-10 * scale + 1e-300) {
    std::ostringstream os;
    os << "kernel_norm_sq: diagonal value has imaginary part " << k.imag()
       << " against magnitude " << scale;
    throw ConsistencyError(os.str());
  }
  if (k.real() < -1e-10 * scale - 1e-300) {
    std::ostringstream os;
    os << "kernel_norm_sq: diagonal value " << k.real() << " is negative";
    throw ConsistencyError(os.str());
  }
  return std::max(k.real(), 0.0);
}

KernelMatrix gram(const KernelKind& kind, const std::vector<Cx>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("gram: empty point set");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(points[i] - points[j]) <= 1e-12) {
        std::ostringstream os;
        os << "gram: points " << i << " and " << j << " coincide within 1e-12";
        throw std::invalid_argument(os.str());
      }
  KernelMatrix km;
  km.points = points;
  km.entries = CMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      km.entries.at(i, j) = kind.eval(points[i], points[j]);
  km.entries.hermitize();
  return km;
}

Cx positivity_kernel_L(const InnerFn& chi, const SymbolMap& phi, double lambda,
                       Cx z, Cx w) {
  if (!(lambda > 0.0)) throw std::invalid_argument("positivity_kernel_L: lambda must be > 0");
  return lambda * hardy_kernel(z, w) - model_kernel(chi, phi.eval(z), phi.eval(w));
}

KernelMatrix positivity_gram_L(const InnerFn& chi, const SymbolMap& phi,
                               double lambda, const std::vector<Cx>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("positivity_gram_L: empty point set");
  KernelMatrix km;
  km.points = points;
  km.entries = CMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      km.entries.at(i, j) = positivity_kernel_L(chi, phi, lambda, points[i], points[j]);
  km.entries.hermitize();
  return km;
}

FnEvaluator kernel_section(const HermiteBiehlerFn& E, Cx w) {
  require_finite(w, "kernel_section");
  const Cx c1 = std::conj(E.eval(w));
  const Cx c2 = std::conj(E.star(w));
  const Cx wbar = std::conj(w);
  FnEvaluator e;
  e.value = [E, w](Cx z) { return db_kernel(E, z, w); };
  e.log_value = [E, c1, c2, wbar](Cx z) {
    const Cx lc1 = c1 == Cx(0.0, 0.0)
        ? Cx(-std::numeric_limits<double>::infinity(), 0.0) : std::log(c1);
    const Cx lc2m = c2 == Cx(0.0, 0.0)
        ? Cx(-std::numeric_limits<double>::infinity(), 0.0) : std::log(-c2);
    const Cx lnum = log_sum_exp(E.log_eval(z) + lc1, E.star_log(z) + lc2m);
    return lnum - std::log(kMinusTwoPiI * (z - wbar));
  };
  return e;
}

}  // namespace oplab
