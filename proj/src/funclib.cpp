#include "oplab/funclib.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oplab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Cx checked_exp(Cx logval, Cx z, const char* who) {
  if (logval.real() > kExpOverflow) {
    std::ostringstream os;
    os << who << ": value overflows at |z| = " << std::abs(z);
    throw RangeError(os.str(), std::abs(z));
  }
  return std::exp(logval);
}

Cx log_or_neg_inf(Cx v) {
  if (v == Cx(0.0, 0.0)) return Cx(-kInf, 0.0);
  return std::log(v);
}

}  // namespace

// ------------------------------------------------------ HermiteBiehlerFn

HermiteBiehlerFn HermiteBiehlerFn::exponential(Cx e0, Cx d) {
  require_finite(e0, "HermiteBiehlerFn::exponential e0");
  require_finite(d, "HermiteBiehlerFn::exponential d");
  if (e0 == Cx(0.0, 0.0))
    throw std::invalid_argument("HermiteBiehlerFn::exponential: e0 must be nonzero");
  if (!(d.real() > 0.0))
    throw std::invalid_argument("HermiteBiehlerFn::exponential: Re(d) must be > 0");
  return HermiteBiehlerFn(Exponential{e0, d});
}

HermiteBiehlerFn HermiteBiehlerFn::polynomial(Cx leading, std::vector<Cx> roots) {
  require_finite(leading, "HermiteBiehlerFn::polynomial leading");
  if (leading == Cx(0.0, 0.0))
    throw std::invalid_argument("HermiteBiehlerFn::polynomial: leading must be nonzero");
  for (const Cx& r : roots) {
    require_finite(r, "HermiteBiehlerFn::polynomial root");
    if (!(r.imag() < 0.0))
      throw std::invalid_argument(
          "HermiteBiehlerFn::polynomial: every root must lie strictly in the lower half-plane");
  }
  return HermiteBiehlerFn(Polynomial{leading, std::move(roots)});
}

HermiteBiehlerFn HermiteBiehlerFn::polynomial_unchecked(Cx leading, std::vector<Cx> roots) {
  require_finite(leading, "HermiteBiehlerFn::polynomial leading");
  if (leading == Cx(0.0, 0.0))
    throw std::invalid_argument("HermiteBiehlerFn::polynomial: leading must be nonzero");
  for (const Cx& r : roots) require_finite(r, "HermiteBiehlerFn::polynomial root");
  return HermiteBiehlerFn(Polynomial{leading, std::move(roots)});
}

HermiteBiehlerFn HermiteBiehlerFn::product(std::vector<HermiteBiehlerFn> factors) {
  if (factors.empty())
    throw std::invalid_argument("HermiteBiehlerFn::product: needs at least one factor");
  return HermiteBiehlerFn(Product{std::move(factors)});
}

Cx HermiteBiehlerFn::eval(Cx z) const {
  require_finite(z, "HermiteBiehlerFn::eval");
  if (const auto* e = std::get_if<Exponential>(&node_)) {
    return checked_exp(std::log(e->e0) + Cx(0.0, -1.0) * e->d * z, z,
                       "HermiteBiehlerFn::eval");
  }
  if (const auto* p = std::get_if<Polynomial>(&node_)) {
    Cx acc = p->leading;
    for (const Cx& r : p->roots) acc *= (z - r);
    if (!is_finite(acc))
      throw RangeError("HermiteBiehlerFn::eval: polynomial overflow", std::abs(z));
    return acc;
  }
  const auto& factors = std::get<Product>(node_).factors;
  Cx lacc(0.0, 0.0);
  for (const auto& f : factors) lacc += f.log_eval(z);
  if (lacc.real() == -kInf) return Cx(0.0, 0.0);
  return checked_exp(lacc, z, "HermiteBiehlerFn::eval");
}

Cx HermiteBiehlerFn::log_eval(Cx z) const {
  require_finite(z, "HermiteBiehlerFn::log_eval");
  if (const auto* e = std::get_if<Exponential>(&node_)) {
    return std::log(e->e0) + Cx(0.0, -1.0) * e->d * z;
  }
  if (const auto* p = std::get_if<Polynomial>(&node_)) {
    Cx acc = std::log(p->leading);
    for (const Cx& r : p->roots) {
      const Cx l = log_or_neg_inf(z - r);
      if (l.real() == -kInf) return Cx(-kInf, 0.0);
      acc += l;
    }
    return acc;
  }
  const auto& factors = std::get<Product>(node_).factors;
  Cx acc(0.0, 0.0);
  for (const auto& f : factors) {
    const Cx l = f.log_eval(z);
    if (l.real() == -kInf) return Cx(-kInf, 0.0);
    acc += l;
  }
  return acc;
}

Cx HermiteBiehlerFn::derivative(Cx z) const {
  require_finite(z, "HermiteBiehlerFn::derivative");
  if (const auto* e = std::get_if<Exponential>(&node_)) {
    return Cx(0.0, -1.0) * e->d * eval(z);
  }
  if (const auto* p = std::get_if<Polynomial>(&node_)) {
    // Product-rule sum; no division, so roots are safe evaluation points.
    const std::size_t m = p->roots.size();
    Cx acc(0.0, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      Cx term = p->leading;
      for (std::size_t j = 0; j < m; ++j)
        if (j != k) term *= (z - p->roots[j]);
      acc += term;
    }
    return acc;
  }
  const auto& factors = std::get<Product>(node_).factors;
  Cx acc(0.0, 0.0);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Cx term = factors[k].derivative(z);
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != k) term *= factors[j].eval(z);
    acc += term;
  }
  return acc;
}

Cx HermiteBiehlerFn::star(Cx z) const { return std::conj(eval(std::conj(z))); }
Cx HermiteBiehlerFn::star_log(Cx z) const { return std::conj(log_eval(std::conj(z))); }
Cx HermiteBiehlerFn::star_derivative(Cx z) const {
  return std::conj(derivative(std::conj(z)));
}

std::string HermiteBiehlerFn::describe() const {
  std::ostringstream os;
  if (const auto* e = std::get_if<Exponential>(&node_)) {
    os << "E(z) = (" << e->e0.real() << "+" << e->e0.imag() << "i) exp(-i ("
       << e->d.real() << "+" << e->d.imag() << "i) z)";
  } else if (const auto* p = std::get_if<Polynomial>(&node_)) {
    os << "polynomial, degree " << p->roots.size();
  } else {
    os << "product of " << std::get<Product>(node_).factors.size() << " factors";
  }
  return os.str();
}

HbValidation validate_hb(const HermiteBiehlerFn& E, const std::vector<Cx>& grid) {
  if (grid.empty()) throw std::invalid_argument("validate_hb: empty grid");
  HbValidation rep;
  rep.worst_ratio = -kInf;
  for (const Cx& z : grid) {
    require_finite(z, "validate_hb");
    if (!(z.imag() > 0.0))
      throw std::invalid_argument("validate_hb: grid points must have Im > 0");
    const double num = E.log_eval(std::conj(z)).real();
    const double den = E.log_eval(z).real();
    const double ratio = std::exp(num - den);
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.witness = z;
    }
  }
  rep.samples = grid.size();
  rep.pass = rep.worst_ratio < 1.0;
  return rep;
}

// ---------------------------------------------------------------- InnerFn

InnerFn InnerFn::parametric(double alpha_exp, std::vector<Cx> zeros, Cx unimodular) {
  if (!(alpha_exp >= 0.0))
    throw std::invalid_argument("InnerFn::parametric: alpha_exp must be >= 0");
  for (const Cx& a : zeros) {
    require_finite(a, "InnerFn::parametric zero");
    if (!(a.imag() > 0.0))
      throw std::invalid_argument("InnerFn::parametric: Blaschke zeros must have Im > 0");
  }
  require_finite(unimodular, "InnerFn::parametric unimodular");
  if (std::abs(std::abs(unimodular) - 1.0) > 1e-14)
    throw std::invalid_argument("InnerFn::parametric: |unimodular| must be 1 within 1e-14");
  return InnerFn(Parametric{alpha_exp, std::move(zeros), unimodular});
}

InnerFn InnerFn::quotient(HermiteBiehlerFn E) { return InnerFn(Quotient{std::move(E)}); }

Cx InnerFn::eval(Cx z) const {
  require_finite(z, "InnerFn::eval");
  if (const auto* p = std::get_if<Parametric>(&node_)) {
    Cx acc = p->unimodular;
    for (const Cx& a : p->zeros) {
      const Cx den = z - std::conj(a);
      if (den == Cx(0.0, 0.0)) {
        std::ostringstream os;
        os << "InnerFn::eval: z coincides with the pole conj(" << a.real() << "+"
           << a.imag() << "i)";
        throw std::domain_error(os.str());
      }
      acc *= (z - a) / den;
    }
    const Cx lexp = Cx(0.0, 1.0) * p->alpha_exp * z;
    acc *= checked_exp(lexp, z, "InnerFn::eval");
    return acc;
  }
  const auto& E = std::get<Quotient>(node_).base;
  const Cx le = E.log_eval(z);
  if (le.real() == -kInf)
    throw std::domain_error("InnerFn::eval: quotient base E vanishes at the evaluation point");
  return checked_exp(E.star_log(z) - le, z, "InnerFn::eval");
}

double InnerFn::log_abs(Cx z) const {
  require_finite(z, "InnerFn::log_abs");
  if (const auto* p = std::get_if<Parametric>(&node_)) {
    double acc = -p->alpha_exp * z.imag();
    for (const Cx& a : p->zeros) {
      const double num = std::abs(z - a);
      const double den = std::abs(z - std::conj(a));
      if (den == 0.0) throw std::domain_error("InnerFn::log_abs: pole");
      acc += (num == 0.0 ? -kInf : std::log(num)) - std::log(den);
    }
    return acc;
  }
  const auto& E = std::get<Quotient>(node_).base;
  const Cx le = E.log_eval(z);
  if (le.real() == -kInf)
    throw std::domain_error("InnerFn::log_abs: quotient base E vanishes");
  return E.star_log(z).real() - le.real();
}

InnerFn inner_from_hb(const HermiteBiehlerFn& E) { return InnerFn::quotient(E); }

// -------------------------------------------------------------- SymbolMap

SymbolMap SymbolMap::affine(double a, Cx b) {
  require_finite(b, "SymbolMap::affine b");
  if (!(a > 0.0)) throw std::invalid_argument("SymbolMap::affine: a must be > 0");
  if (!(b.imag() >= 0.0)) throw std::invalid_argument("SymbolMap::affine: Im(b) must be >= 0");
  return SymbolMap(Affine{a, b});
}

SymbolMap SymbolMap::moebius(double a, double b, double c, double d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    throw std::invalid_argument("SymbolMap::moebius: coefficients must be finite");
  if (!(a * d - b * c > 0.0))
    throw std::invalid_argument("SymbolMap::moebius: need ad - bc > 0");
  return SymbolMap(Moebius{a, b, c, d});
}

SymbolMap SymbolMap::sqrt_branch() { return SymbolMap(SqrtBranch{}); }

Cx SymbolMap::eval(Cx z) const {
  require_finite(z, "SymbolMap::eval");
  if (const auto* aff = std::get_if<Affine>(&node_)) {
    return aff->a * z + aff->b;
  }
  if (const auto* mo = std::get_if<Moebius>(&node_)) {
    const Cx den = mo->c * z + mo->d;
    if (std::abs(den) < 1e-300)
      throw std::domain_error("SymbolMap::eval: Moebius pole hit on the real axis");
    return (mo->a * z + mo->b) / den;
  }
  if (!(z.imag() > 0.0))
    throw std::domain_error("SymbolMap::eval: sqrt branch requires Im z > 0");
  return std::sqrt(z);
}

bool SymbolMap::entire() const { return std::holds_alternative<Affine>(node_); }

const SymbolMap::Affine* SymbolMap::as_affine() const {
  return std::get_if<Affine>(&node_);
}

std::string SymbolMap::describe() const {
  std::ostringstream os;
  if (const auto* aff = std::get_if<Affine>(&node_)) {
    os << "phi(z) = " << aff->a << " z + (" << aff->b.real() << "+" << aff->b.imag() << "i)";
  } else if (const auto* mo = std::get_if<Moebius>(&node_)) {
    os << "phi(z) = (" << mo->a << " z + " << mo->b << ")/(" << mo->c << " z + " << mo->d << ")";
  } else {
    os << "phi(z) = sqrt(z), principal branch";
  }
  return os.str();
}

// ------------------------------------------------------------ GrowthLadder

GrowthLadder GrowthLadder::geometric(double y_min, double y_max, int per_decade, int window) {
  if (!(y_min > 0.0) || !(y_min < y_max))
    throw std::invalid_argument("GrowthLadder: need 0 < y_min < y_max");
  if (per_decade < 1) throw std::invalid_argument("GrowthLadder: per_decade must be >= 1");
  GrowthLadder l;
  const int steps = std::max(1, static_cast<int>(
      std::ceil(per_decade * std::log10(y_max / y_min) - 1e-9)));
  for (int k = 0; k <= steps; ++k) {
    double y = y_min * std::pow(10.0, static_cast<double>(k) / per_decade);
    if (y > y_max) y = y_max;
    l.heights.push_back(y);
  }
  l.extrapolation_window = window;
  l.validate();
  return l;
}

GrowthLadder GrowthLadder::standard() { return geometric(1.0, 1e6, 4, 4); }

void GrowthLadder::validate() const {
  if (heights.size() < 2) throw std::invalid_argument("GrowthLadder: need >= 2 heights");
  if (extrapolation_window < 2)
    throw std::invalid_argument("GrowthLadder: extrapolation_window must be >= 2");
  double prev = 0.0;
  for (double y : heights) {
    if (!(y > prev) || !std::isfinite(y))
      throw std::invalid_argument("GrowthLadder: heights must be positive and strictly ascending");
    prev = y;
  }
}

// ------------------------------------------------------------ FnEvaluator

double FnEvaluator::log_abs(Cx z) const {
  if (log_value) return log_value(z).real();
  const double a = std::abs(value(z));
  return a == 0.0 ? -kInf : std::log(a);
}

FnEvaluator fn_from(std::function<Cx(Cx)> f) {
  FnEvaluator e;
  e.value = std::move(f);
  return e;
}

FnEvaluator fn_const(Cx c) {
  FnEvaluator e;
  e.value = [c](Cx) { return c; };
  e.log_value = [lc = log_or_neg_inf(c)](Cx) { return lc; };
  e.derivative = [](Cx) { return Cx(0.0, 0.0); };
  return e;
}

FnEvaluator fn_from_hb(const HermiteBiehlerFn& E) {
  FnEvaluator e;
  e.value = [E](Cx z) { return E.eval(z); };
  e.log_value = [E](Cx z) { return E.log_eval(z); };
  e.derivative = [E](Cx z) { return E.derivative(z); };
  return e;
}

FnEvaluator fn_star(const FnEvaluator& f) {
  FnEvaluator e;
  e.value = [v = f.value](Cx z) { return std::conj(v(std::conj(z))); };
  if (f.log_value)
    e.log_value = [l = f.log_value](Cx z) { return std::conj(l(std::conj(z))); };
  if (f.derivative)
    e.derivative = [d = f.derivative](Cx z) { return std::conj(d(std::conj(z))); };
  return e;
}

FnEvaluator fn_sum(const FnEvaluator& f, const FnEvaluator& g) {
  FnEvaluator e;
  e.value = [fv = f.value, gv = g.value](Cx z) { return fv(z) + gv(z); };
  if (f.log_value && g.log_value)
    e.log_value = [fl = f.log_value, gl = g.log_value](Cx z) {
      return log_sum_exp(fl(z), gl(z));
    };
  if (f.derivative && g.derivative)
    e.derivative = [fd = f.derivative, gd = g.derivative](Cx z) { return fd(z) + gd(z); };
  return e;
}

FnEvaluator fn_product(const FnEvaluator& f, const FnEvaluator& g) {
  FnEvaluator e;
  e.value = [fv = f.value, gv = g.value](Cx z) { return fv(z) * gv(z); };
  if (f.log_value && g.log_value)
    e.log_value = [fl = f.log_value, gl = g.log_value](Cx z) { return fl(z) + gl(z); };
  if (f.derivative && g.derivative)
    e.derivative = [fv = f.value, gv = g.value, fd = f.derivative, gd = g.derivative](Cx z) {
      return fd(z) * gv(z) + fv(z) * gd(z);
    };
  return e;
}

FnEvaluator fn_quotient(const FnEvaluator& f, const FnEvaluator& g) {
  FnEvaluator e;
  e.value = [fv = f.value, gv = g.value](Cx z) { return fv(z) / gv(z); };
  if (f.log_value && g.log_value)
    e.log_value = [fl = f.log_value, gl = g.log_value](Cx z) { return fl(z) - gl(z); };
  if (f.derivative && g.derivative)
    e.derivative = [fv = f.value, gv = g.value, fd = f.derivative, gd = g.derivative](Cx z) {
      const Cx gz = gv(z);
      return (fd(z) * gz - fv(z) * gd(z)) / (gz * gz);
    };
  return e;
}

FnEvaluator fn_scale(const FnEvaluator& f, Cx c) {
  if (c == Cx(0.0, 0.0)) return fn_const(Cx(0.0, 0.0));
  FnEvaluator e;
  e.value = [fv = f.value, c](Cx z) { return c * fv(z); };
  if (f.log_value)
    e.log_value = [fl = f.log_value, lc = std::log(c)](Cx z) { return fl(z) + lc; };
  if (f.derivative)
    e.derivative = [fd = f.derivative, c](Cx z) { return c * fd(z); };
  return e;
}

Cx eval_star(const std::function<Cx(Cx)>& f, Cx z) {
  require_finite(z, "eval_star");
  return std::conj(f(std::conj(z)));
}

FnEvaluator companion_A(const HermiteBiehlerFn& E) {
  FnEvaluator e;
  e.value = [E](Cx z) { return 0.5 * (E.eval(z) + E.star(z)); };
  e.log_value = [E, lhalf = std::log(Cx(0.5, 0.0))](Cx z) {
    return log_sum_exp(E.log_eval(z), E.star_log(z)) + lhalf;
  };
  e.derivative = [E](Cx z) { return 0.5 * (E.derivative(z) + E.star_derivative(z)); };
  return e;
}

// --------------------------------------------------------- backward_shift

BackwardShiftResult backward_shift(const FnEvaluator& f, Cx z0, Cx xi) {
  require_finite(z0, "backward_shift z0");
  require_finite(xi, "backward_shift xi");
  BackwardShiftResult res;
  const bool exact_diag = (xi == z0);
  const bool near_diag = !exact_diag && std::abs(xi - z0) < 1e-9;
  if (!exact_diag && !near_diag) {
    res.value = (f.value(xi) - f.value(z0)) / (xi - z0);
    return res;
  }
  res.derivative_branch = true;
  res.near_diagonal_warning = near_diag;
  if (f.derivative) {
    res.value = f.derivative(z0);
    return res;
  }
  // 5-point central difference (Richardson-extrapolated 2-point stencil).
  const double h = 1e-5 * (1.0 + std::abs(z0));
  const Cx f2p = f.value(z0 + 2.0 * h);
  const Cx f1p = f.value(z0 + h);
  const Cx f1m = f.value(z0 - h);
  const Cx f2m = f.value(z0 - 2.0 * h);
  res.value = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
  return res;
}

// -------------------------------------------------- growth-rate estimators

double mean_type(const FnEvaluator& f, const GrowthLadder& ladder) {
  ladder.validate();
  std::vector<double> usable;
  usable.reserve(ladder.heights.size());
  for (double y : ladder.heights) {
    const double la = f.log_abs(iy(y));
    if (la == -kInf) continue;  // probe landed on a zero
    if (!std::isfinite(la))
      throw RangeError("mean_type: non-finite log-magnitude probe", y);
    usable.push_back(la / y);
  }
  if (usable.empty())
    throw std::runtime_error("mean_type: function vanishes at every probe height");
  const std::size_t w =
      std::min<std::size_t>(usable.size(), static_cast<std::size_t>(ladder.extrapolation_window));
  return *std::max_element(usable.end() - w, usable.end());
}

ExponentialTypeResult exponential_type(const FnEvaluator& f, const GrowthLadder& ladder) {
  ExponentialTypeResult r;
  r.mt_plus = mean_type(f, ladder);
  r.mt_minus = mean_type(fn_star(f), ladder);
  r.value = std::max(r.mt_plus, r.mt_minus);
  r.mt_sum_ok = (r.mt_plus + r.mt_minus) >= -2e-3;
  return r;
}

}  // namespace oplab
