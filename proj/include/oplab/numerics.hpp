#ifndef OPLAB_NUMERICS_HPP
#define OPLAB_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "oplab/cxmath.hpp"
#include "oplab/errors.hpp"

namespace oplab {

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), data_(n * n, Cx(0.0, 0.0)) {}

  std::size_t size() const { return n_; }
  Cx& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Cx& at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  /// m <- (m + m^H)/2.
  void hermitize();
  double trace_real() const;
  double frobenius() const;
  /// ||m - m^H||_F.
  double hermiticity_defect() const;

  static CMatrix identity(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<Cx> data_;
};

/**
 * Log-spaced heights crossed with linear x-offsets inside the sector
 * |x| <= kappa * y, ordered by (y, x).  Deterministic.
 */
struct SectorGrid {
  double kappa = 1.0;
  double y_min = 1e-2;
  double y_max = 1e6;
  int points_per_decade = 4;
  int x_samples = 3;

  void validate() const;
};

std::vector<Cx> sector_points(const SectorGrid& grid);

/// Adaptive quadrature over the whole real line via t = tan(theta).
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_refinement_depth = 40;  // >= 10

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

/**
 * Integrates f over (-inf, inf).  Non-finite integrand values throw a
 * ConsistencyError naming the offending t; failure to converge is reported
 * through the flag, not an exception.
 */
QuadratureResult integrate_line(const std::function<double(double)>& f,
                                const QuadratureSpec& spec);

/**
 * All sign-change roots of f on [lo, hi], bracketed at `resolution` and
 * polished by bisection.  Tangential zeros are out of contract.
 */
std::vector<double> real_roots(const std::function<double(double)>& f,
                               double lo, double hi, double resolution);

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  double residual = 0.0;            // max ||A v - lambda v|| / ||A||_F
  CMatrix vectors;                  // columns match eigenvalue order
};

/// Cyclic complex Jacobi for Hermitian matrices (dimension <= 200).
EigenResult herm_eig(const CMatrix& m);

/**
 * Largest lambda with m v = lambda g v, via Cholesky of
 * g + jitter*trace(g)/n * I and a Hermitian eigensolve of the whitened m.
 * `jitter` is the starting relative scale; it escalates x10 up to 1e-8
 * before a ConditioningError is thrown.  Jitter only shrinks the result,
 * so the returned value keeps lower-bound semantics.
 */
double gen_eig_max(const CMatrix& m, const CMatrix& g, double jitter = 1e-12);

struct PsdReport {
  bool verdict = false;
  double min_eigenvalue = 0.0;
  std::optional<std::vector<Cx>> witness;  // eigenvector on failure
};

/// verdict = (min eigenvalue >= -tol_scale * trace).
PsdReport psd_check(const CMatrix& m, double tol_scale);

}  // namespace oplab

#endif
