#ifndef OPLAB_CRITERIA_HPP
#define OPLAB_CRITERIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "oplab/kernels.hpp"

namespace oplab {

inline constexpr double kDefaultCap = 1e6;

/**
 * Verdict + evidence for one supremum-style hypothesis.  A sampled grid can
 * never prove finiteness, so the report carries the sup, a tail (top-decade)
 * limsup estimate, and growth diagnostics across grid decades:
 *   - decade_growth_max:      max sup ratio between consecutive decades,
 *   - two_decade_growth_max:  max sup ratio across a two-decade window,
 *   - divergence_detected:    cap exceeded, a consecutive-decade ratio > 10,
 *                             or sups growing >= 1.5x across each of the
 *                             last three decade boundaries.
 */
struct CriterionReport {
  std::string quantity_name;
  double sup_estimate = 0.0;
  Cx arg_sup{0.0, 0.0};
  double limsup_estimate = 0.0;
  std::string verdict;  // "satisfied" | "violated" | "indeterminate"
  std::size_t samples_used = 0;
  bool divergence_detected = false;
  double decade_growth_max = 1.0;
  double two_decade_growth_max = 1.0;
};

struct JcQuantities {
  double sup_ratio = 0.0;            // sup Im z / Im phi(z) over the grid
  double limsup_ratio = 0.0;         // same sup over the top decade
  double angular_derivative = 0.0;   // lim z/phi(z) along iy, extrapolated;
                                     // +inf sentinel when it diverges
  std::size_t samples_used = 0;
};

JcQuantities jc_quantities(const SymbolMap& phi, const SectorGrid& grid);

struct ModelBoundedness {
  CriterionReport necessary;   // Q2 = (Im z/Im phi)(1 - |chi(phi)|^2)
  CriterionReport sufficient;  // Q1 = Im z/Im phi
  double sup_chi_phi = 0.0;
  std::string combined_verdict;  // bounded | unbounded | bounded-iff-Q1 | indeterminate
};

ModelBoundedness model_boundedness(const InnerFn& chi, const SymbolMap& phi,
                                   const SectorGrid& grid, double cap = kDefaultCap);

struct DbSufficient {
  double ratio_sup = 0.0;       // sup |E(phi(z))/E(z)| over grid + real samples
  double q1_sup = 0.0;          // sup Im z / Im phi(z) over the grid
  bool verdict = false;         // both suprema below the cap
  double ratio_rel_variance = 0.0;  // population variance / mean^2 of the ratio
  std::size_t samples_used = 0;
};

/// Requires an entire symbol; the square-root branch is rejected.
DbSufficient db_sufficient(const HermiteBiehlerFn& E, const SymbolMap& phi,
                           const SectorGrid& grid, int real_samples,
                           double cap = kDefaultCap);

/// Q3 over Lambda = {|E(phi(z))| >= 1e-300}; indeterminate when Lambda
/// misses the whole grid.
CriterionReport db_necessary(const HermiteBiehlerFn& E, const SymbolMap& phi,
                             const SectorGrid& grid, double cap = kDefaultCap);

struct NormEstimate {
  double lower_bound = 0.0;
  std::optional<double> upper_bound;
  std::size_t points_used = 0;
  bool converged = false;         // relative increase over the last doubling < 1e-3
  bool image_duplicates = false;  // phi collapsed some points; convergence indeterminate
};

/**
 * Restriction of C_phi* to span{K_z} over the given points:
 * sqrt of the top eigenvalue of the pencil (M, G) with
 *   - hardy:      G = Hardy Gram at points,      M = Hardy Gram at images,
 *   - model:      G = Hardy Gram at points,      M = model Gram at images,
 *   - de_branges: G = de Branges Gram at points, M = de Branges Gram at images.
 */
NormEstimate norm_lower_bound(const KernelKind& space, const SymbolMap& phi,
                              const std::vector<Cx>& points, double jitter = 1e-12);

/// (alpha / sqrt a) exp(sigma Im b) with alpha = sup_R |E(at+b)/E(t)| and
/// sigma the exponential type of E.
double norm_upper_bound_affine(const HermiteBiehlerFn& E, double a, Cx b,
                               int real_samples, const GrowthLadder& ladder);

struct CompactnessProbe {
  std::vector<double> sequence_values;
  double limsup_estimate = 0.0;
  double lower_constant_d = 1e-6;
  std::string verdict;  // "not_compact" | "inconclusive"
  double max_branch_rel_gap = 0.0;  // de Branges probe: worst |direct-branch|/direct
};

/// r(z) = (Im z/Im phi)(1 - |chi(phi(z))|^2) along the grid;
/// not compact when the tail limsup stays above d.
CompactnessProbe compactness_probe_model(const InnerFn& chi, const SymbolMap& phi,
                                         const SectorGrid& grid, double d = 1e-6);

/**
 * r_n = ||k_{phi(t_n)}||^2 / ||k_{t_n}||^2 over the zeros t_n of
 * A = (E + E#)/2 in [lo, hi], computed both as the direct kernel-diagonal
 * ratio and by the closed branch formulas; the two must agree to 1e-9
 * relative (ConsistencyError otherwise).  Needs at least five roots.
 */
CompactnessProbe compactness_probe_db(const HermiteBiehlerFn& E, const SymbolMap& phi,
                                      double root_lo, double root_hi,
                                      double resolution, double d = 1e-6);

struct RegularityReport {
  double integral_value = 0.0;
  bool converged = false;
  bool regular = false;
};

/// integral over R of 1/(|E(t)|^2 * 4 pi^2 (t^2+1)) dt; regular iff it
/// converges to a finite value.
RegularityReport regularity_check(const HermiteBiehlerFn& E, const QuadratureSpec& spec);

struct SymbolClass {
  std::string verdict;  // affine_admissible | nonaffine_rejected | constant_degenerate
  std::string detail;
};

/// Polynomial-degree trichotomy for symbols on a regular space; coefficients
/// are ascending (c0 + c1 z + ...).  The caller vouches for regularity of E.
SymbolClass classify_symbol(const std::vector<Cx>& poly_coefficients,
                            const HermiteBiehlerFn& E);

struct MtMembership {
  std::optional<double> mt_f_over_E;      // absent for the zero function
  std::optional<double> mt_fstar_over_E;
  double l2_norm_sq = 0.0;
  bool member = false;
  bool integral_converged = false;
};

/// Growth + integrability membership test for f against H(E).
MtMembership mt_membership_checks(const HermiteBiehlerFn& E, const FnEvaluator& f,
                                  const GrowthLadder& ladder, const QuadratureSpec& spec);

}  // namespace oplab

#endif
