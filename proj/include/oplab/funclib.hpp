#ifndef OPLAB_FUNCLIB_HPP
#define OPLAB_FUNCLIB_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oplab/cxmath.hpp"
#include "oplab/errors.hpp"

namespace oplab {

/**
 * Entire function E with |E(conj z)| < |E(z)| on the open upper half-plane.
 *
 * Three parametric families are supported:
 *   - exponential:  E(z) = e0 * exp(-i d z) with Re(d) > 0,
 *   - polynomial:   E(z) = leading * prod (z - r_k), every root in the
 *                   open lower half-plane,
 *   - product:      a finite product of the above.
 *
 * Evaluation carries log-magnitude + phase internally so growth probes at
 * heights up to 1e6 do not overflow.
 */
class HermiteBiehlerFn {
 public:
  struct Exponential {
    Cx e0;
    Cx d;
  };
  struct Polynomial {
    Cx leading;
    std::vector<Cx> roots;
  };
  struct Product {
    std::vector<HermiteBiehlerFn> factors;
  };

  static HermiteBiehlerFn exponential(Cx e0, Cx d);
  static HermiteBiehlerFn polynomial(Cx leading, std::vector<Cx> roots);
  // Skips the lower-half-plane root check; for feeding validate_hb with
  // deliberately broken inputs.
  static HermiteBiehlerFn polynomial_unchecked(Cx leading, std::vector<Cx> roots);
  static HermiteBiehlerFn product(std::vector<HermiteBiehlerFn> factors);

  /// E(z).  Throws RangeError when the value overflows a double.
  Cx eval(Cx z) const;
  /// log E(z); the real part is log|E(z)| and never overflows.
  Cx log_eval(Cx z) const;
  /// Analytic derivative from the parametric form (no finite differences).
  Cx derivative(Cx z) const;

  /// E#(z) = conj(E(conj z)) and friends.
  Cx star(Cx z) const;
  Cx star_log(Cx z) const;
  Cx star_derivative(Cx z) const;

  const std::variant<Exponential, Polynomial, Product>& node() const { return node_; }
  std::string describe() const;

 private:
  explicit HermiteBiehlerFn(std::variant<Exponential, Polynomial, Product> node)
      : node_(std::move(node)) {}
  std::variant<Exponential, Polynomial, Product> node_;
};

struct HbValidation {
  double worst_ratio = 0.0;  // max |E(conj z)| / |E(z)| over the grid
  Cx witness{0.0, 0.0};      // where the worst ratio occurred
  bool pass = false;         // worst_ratio < 1
  std::size_t samples = 0;
};

/// Samples |E(conj z)|/|E(z)| over a grid in the upper half-plane.
HbValidation validate_hb(const HermiteBiehlerFn& E, const std::vector<Cx>& grid);

/**
 * Inner function on the upper half-plane: either a finite Blaschke product
 * times a unimodular constant times exp(i alpha z), or the quotient E#/E of
 * a Hermite-Biehler function.
 */
class InnerFn {
 public:
  struct Parametric {
    double alpha_exp;       // >= 0
    std::vector<Cx> zeros;  // each in the open upper half-plane
    Cx unimodular;          // |u| = 1 within 1e-14
  };
  struct Quotient {
    HermiteBiehlerFn base;  // chi = base# / base
  };

  static InnerFn parametric(double alpha_exp, std::vector<Cx> zeros, Cx unimodular);
  static InnerFn quotient(HermiteBiehlerFn E);

  /// chi(z).  Throws std::domain_error at a Blaschke pole (z = conj a_k)
  /// or where a quotient base vanishes.
  Cx eval(Cx z) const;
  /// log|chi(z)| without overflow; -inf at a zero.
  double log_abs(Cx z) const;

  const std::variant<Parametric, Quotient>& node() const { return node_; }

 private:
  explicit InnerFn(std::variant<Parametric, Quotient> node) : node_(std::move(node)) {}
  std::variant<Parametric, Quotient> node_;
};

/// chi = E#/E for a validated Hermite-Biehler function.
InnerFn inner_from_hb(const HermiteBiehlerFn& E);

/**
 * Analytic self-map of the upper half-plane.  Affine and Moebius symbols are
 * entire/meromorphic and also accept real arguments; the principal square
 * root is admitted only for negative tests and insists on Im z > 0.
 */
class SymbolMap {
 public:
  struct Affine {
    double a;  // > 0
    Cx b;      // Im(b) >= 0
  };
  struct Moebius {
    double a, b, c, d;  // reals, ad - bc > 0
  };
  struct SqrtBranch {};

  static SymbolMap affine(double a, Cx b);
  static SymbolMap moebius(double a, double b, double c, double d);
  static SymbolMap sqrt_branch();

  Cx eval(Cx z) const;
  bool entire() const;
  /// Non-null only for the affine variant.
  const Affine* as_affine() const;
  std::string describe() const;

  const std::variant<Affine, Moebius, SqrtBranch>& node() const { return node_; }

 private:
  explicit SymbolMap(std::variant<Affine, Moebius, SqrtBranch> node)
      : node_(std::move(node)) {}
  std::variant<Affine, Moebius, SqrtBranch> node_;
};

/// Probe heights for growth-rate (mean type) estimation, used as z = iy.
struct GrowthLadder {
  std::vector<double> heights;    // positive, strictly ascending
  int extrapolation_window = 4;   // >= 2; the max is taken over this many top heights

  static GrowthLadder geometric(double y_min, double y_max, int per_decade, int window);
  /// 1 .. 1e6, four heights per decade, window 4.
  static GrowthLadder standard();
  void validate() const;
};

/**
 * A function usable by the growth/shift estimators.  `value` is required;
 * `log_value` (log f(z), real part = log|f|) and `derivative` are optional
 * channels that the combinators propagate when available.
 */
struct FnEvaluator {
  std::function<Cx(Cx)> value;
  std::function<Cx(Cx)> log_value;
  std::function<Cx(Cx)> derivative;

  bool has_log() const { return static_cast<bool>(log_value); }
  bool has_derivative() const { return static_cast<bool>(derivative); }
  /// log|f(z)| through whichever channel exists.
  double log_abs(Cx z) const;
};

FnEvaluator fn_from(std::function<Cx(Cx)> f);
FnEvaluator fn_const(Cx c);
FnEvaluator fn_from_hb(const HermiteBiehlerFn& E);
FnEvaluator fn_star(const FnEvaluator& f);
FnEvaluator fn_sum(const FnEvaluator& f, const FnEvaluator& g);
FnEvaluator fn_product(const FnEvaluator& f, const FnEvaluator& g);
FnEvaluator fn_quotient(const FnEvaluator& f, const FnEvaluator& g);
FnEvaluator fn_scale(const FnEvaluator& f, Cx c);

/// f#(z) = conj(f(conj z)) for a plain evaluator.
Cx eval_star(const std::function<Cx(Cx)>& f, Cx z);

/// A(z) = (E(z) + E#(z))/2; real on the real axis.
FnEvaluator companion_A(const HermiteBiehlerFn& E);

struct BackwardShiftResult {
  Cx value;
  bool derivative_branch = false;      // xi collided with z0
  bool near_diagonal_warning = false;  // |xi - z0| < 1e-9 but xi != z0
};

/// (f(xi) - f(z0)) / (xi - z0), with the derivative on the diagonal.
BackwardShiftResult backward_shift(const FnEvaluator& f, Cx z0, Cx xi);

/**
 * limsup (1/y) log|f(iy)| estimated as the max over the top
 * `extrapolation_window` usable ladder heights.  Heights where f vanishes
 * are skipped; if every height vanishes a std::runtime_error is thrown.
 */
double mean_type(const FnEvaluator& f, const GrowthLadder& ladder);

struct ExponentialTypeResult {
  double value;      // max(mt_plus, mt_minus)
  double mt_plus;    // mean type of f
  double mt_minus;   // mean type of f#
  bool mt_sum_ok;    // mt_plus + mt_minus >= -2e-3
};

ExponentialTypeResult exponential_type(const FnEvaluator& f, const GrowthLadder& ladder);

}  // namespace oplab

#endif
