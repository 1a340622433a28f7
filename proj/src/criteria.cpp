#include "oplab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oplab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double ratio_im(Cx z, Cx w, const SymbolMap& phi) {
  if (!(w.imag() > 0.0)) {
    std::ostringstream os;
    os << "self-map violation: Im phi(z) = " << w.imag() << " at z = (" << z.real()
       << ", " << z.imag() << ") for " << phi.describe();
    throw std::domain_error(os.str());
  }
  return z.imag() / w.imag();
}

struct DecadeStats {
  double sup = -kInf;
  Cx arg_sup{0.0, 0.0};
  double limsup = -kInf;           // sup over the top decade
  double decade_growth_max = 1.0;
  double two_decade_growth_max = 1.0;
  bool sustained_growth = false;
  std::size_t samples = 0;
};

// Sup + decade-bucket growth diagnostics for values sampled on sector points.
// Decade windows are anchored at the top grid height, so every bucket spans a
// full decade and the tail bucket is never a sliver.
DecadeStats decade_stats(const std::vector<Cx>& pts, const std::vector<double>& vals) {
  DecadeStats st;
  double top = 0.0;
  for (const Cx& z : pts) top = std::max(top, z.imag());
  std::map<int, double> decade_sup;  // key: decades below the top, negated
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = vals[i];
    ++st.samples;
    if (v > st.sup) {
      st.sup = v;
      st.arg_sup = pts[i];
    }
    const int below = std::max(
        0, static_cast<int>(std::floor(std::log10(top / pts[i].imag()) + 1e-12)));
    auto [it, fresh] = decade_sup.try_emplace(-below, v);
    if (!fresh) it->second = std::max(it->second, v);
    if (below == 0) st.limsup = std::max(st.limsup, v);
  }
  std::vector<double> sups;
  for (const auto& [dec, s] : decade_sup) sups.push_back(s);
  for (std::size_t k = 0; k + 1 < sups.size(); ++k)
    if (sups[k] > 0.0)
      st.decade_growth_max = std::max(st.decade_growth_max, sups[k + 1] / sups[k]);
  for (std::size_t k = 0; k + 2 < sups.size(); ++k)
    if (sups[k] > 0.0)
      st.two_decade_growth_max = std::max(st.two_decade_growth_max, sups[k + 2] / sups[k]);
  if (sups.size() >= 4) {
    bool rising = true;
    for (std::size_t k = sups.size() - 3; k < sups.size(); ++k)
      if (!(sups[k - 1] > 0.0) || sups[k] / sups[k - 1] < 1.5) rising = false;
    st.sustained_growth = rising;
  }
  return st;
}

std::vector<Cx> grid_points_nonempty(const SectorGrid& grid, const char* who) {
  std::vector<Cx> pts = sector_points(grid);
  if (pts.empty()) throw std::invalid_argument(std::string(who) + ": empty sector grid");
  return pts;
}

CriterionReport make_report(const std::string& name, const DecadeStats& st, double cap) {
  CriterionReport rep;
  rep.quantity_name = name;
  rep.sup_estimate = st.sup;
  rep.arg_sup = st.arg_sup;
  rep.limsup_estimate = st.limsup;
  rep.samples_used = st.samples;
  rep.decade_growth_max = st.decade_growth_max;
  rep.two_decade_growth_max = st.two_decade_growth_max;
  rep.divergence_detected =
      st.sup >= cap || st.decade_growth_max > 10.0 || st.sustained_growth;
  rep.verdict = rep.divergence_detected ? "violated" : "satisfied";
  return rep;
}

}  // namespace

// ---------------------------------------------------------- jc_quantities

JcQuantities jc_quantities(const SymbolMap& phi, const SectorGrid& grid) {
  const std::vector<Cx> pts = grid_points_nonempty(grid, __func__);
  JcQuantities jc;
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    vals[i] = ratio_im(pts[i], phi.eval(pts[i]), phi);
  const DecadeStats st = decade_stats(pts, vals);
  jc.sup_ratio = st.sup;
  jc.limsup_ratio = st.limsup;
  jc.samples_used = st.samples;

  // Angular derivative along z = iy from the top three grid heights.
  std::vector<double> heights;
  for (const Cx& z : pts)
    if (heights.empty() || z.imag() > heights.back()) heights.push_back(z.imag());
  const std::size_t nh = heights.size();
  if (nh < 3) throw std::invalid_argument("jc_quantities: grid has fewer than 3 heights");
  const double y1 = heights[nh - 3], y2 = heights[nh - 2], y3 = heights[nh - 1];
  auto mag = [&](double y) {
    const Cx z = iy(y);
    const Cx w = phi.eval(z);
    ratio_im(z, w, phi);  // self-map check
    return std::abs(z / w);
  };
  const double m1 = mag(y1), m2 = mag(y2), m3 = mag(y3);
  if (m2 >= 1.2 * m1 && m3 >= 1.2 * m2) {
    jc.angular_derivative = kInf;  // still climbing at the top of the grid
  } else {
    // Richardson step assuming m(y) = a + b/y.
    jc.angular_derivative = (m3 * y3 - m2 * y2) / (y3 - y2);
  }
  return jc;
}

// ------------------------------------------------------ model_boundedness

ModelBoundedness model_boundedness(const InnerFn& chi, const SymbolMap& phi,
                                   const SectorGrid& grid, double cap) {
  const std::vector<Cx> pts = grid_points_nonempty(grid, __func__);
  std::vector<double> q1(pts.size()), q2(pts.size());
  double sup_mod = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Cx w = phi.eval(pts[i]);
    const double ratio = ratio_im(pts[i], w, phi);
    const double mod = std::exp(chi.log_abs(w));
    sup_mod = std::max(sup_mod, mod);
    q1[i] = ratio;
    q2[i] = ratio * (1.0 - mod * mod);
  }
  ModelBoundedness mb;
  mb.necessary = make_report("Q2", decade_stats(pts, q2), cap);
  mb.sufficient = make_report("Q1", decade_stats(pts, q1), cap);
  mb.sup_chi_phi = sup_mod;
  if (mb.necessary.divergence_detected) {
    mb.combined_verdict = "unbounded";
  } else if (!mb.sufficient.divergence_detected && mb.sufficient.sup_estimate < cap) {
    mb.combined_verdict = "bounded";
  } else if (sup_mod < 1.0 - 1e-6) {
    mb.combined_verdict = "bounded-iff-Q1";
  } else {
    mb.combined_verdict = "indeterminate";
  }
  return mb;
}

// ---------------------------------------------------------- db_sufficient

DbSufficient db_sufficient(const HermiteBiehlerFn& E, const SymbolMap& phi,
                           const SectorGrid& grid, int real_samples, double cap) {
  if (!phi.entire())
    throw std::invalid_argument(
        "db_sufficient: the symbol must be entire (affine); the sufficient "
        "criterion does not apply to branch maps");
  if (real_samples < 2)
    throw std::invalid_argument("db_sufficient: real_samples must be >= 2");
  const std::vector<Cx> pts = grid_points_nonempty(grid, __func__);
  DbSufficient out;
  double q1_sup = -kInf;
  double sum = 0.0, sumsq = 0.0;
  std::size_t count = 0;
  auto ratio_at = [&](Cx z) {
    const double rlog = E.log_eval(phi.eval(z)).real() - E.log_eval(z).real();
    const double r = std::exp(std::min(rlog, 700.0));
    sum += r;
    sumsq += r * r;
    ++count;
    return r;
  };
  double ratio_sup = -kInf;
  for (const Cx& z : pts) {
    ratio_sup = std::max(ratio_sup, ratio_at(z));
    q1_sup = std::max(q1_sup, ratio_im(z, phi.eval(z), phi));
  }
  const double T = 50.0;
  for (int k = 0; k < real_samples; ++k) {
    const double t = -T + 2.0 * T * k / (real_samples - 1);
    ratio_sup = std::max(ratio_sup, ratio_at(Cx(t, 0.0)));
  }
  out.ratio_sup = ratio_sup;
  out.q1_sup = q1_sup;
  out.samples_used = count;
  const double mean = sum / count;
  const double var = std::max(0.0, sumsq / count - mean * mean);
  out.ratio_rel_variance = mean > 0.0 ? var / (mean * mean) : 0.0;
  out.verdict = ratio_sup < cap && q1_sup < cap;
  return out;
}

// ----------------------------------------------------------- db_necessary

CriterionReport db_necessary(const HermiteBiehlerFn& E, const SymbolMap& phi,
                             const SectorGrid& grid, double cap) {
  const std::vector<Cx> pts = grid_points_nonempty(grid, __func__);
  std::vector<Cx> in_lambda;
  std::vector<double> vals;
  std::size_t skipped = 0;
  for (const Cx& z : pts) {
    const Cx w = phi.eval(z);
    const double ratio = ratio_im(z, w, phi);
    const double lEw = E.log_eval(w).real();
    if (lEw < -690.0) {  // |E(phi(z))| < 1e-300: outside Lambda
      ++skipped;
      continue;
    }
    const double lEz = E.log_eval(z).real();
    const double le_ratio_sq = std::exp(2.0 * std::min(lEw - lEz, 350.0));
    // chi = E#/E.
    const double chi_w = std::exp(2.0 * (E.star_log(w).real() - lEw));
    const double chi_z = std::exp(2.0 * (E.star_log(z).real() - lEz));
    vals.push_back(ratio * le_ratio_sq * (1.0 - chi_w) / (1.0 - chi_z));
    in_lambda.push_back(z);
  }
  if (in_lambda.empty()) {
    CriterionReport rep;
    rep.quantity_name = "Q3";
    rep.verdict = "indeterminate";
    rep.samples_used = 0;
    return rep;
  }
  CriterionReport rep = make_report("Q3", decade_stats(in_lambda, vals), cap);
  rep.samples_used += skipped;  // count excluded points toward samples seen
  return rep;
}

// ------------------------------------------------------- norm_lower_bound

namespace {

KernelMatrix cross_gram(const KernelKind& target, const std::vector<Cx>& images) {
  KernelMatrix km;
  km.points = images;
  km.entries = CMatrix(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < images.size(); ++j)
      km.entries.at(i, j) = target.eval(images[i], images[j]);
  km.entries.hermitize();
  return km;
}

double restricted_norm(const KernelKind& space, const SymbolMap& phi,
                       const std::vector<Cx>& pts, double jitter) {
  const KernelKind source =
      space.tag() == KernelKind::Tag::de_branges ? space : KernelKind::hardy();
  std::vector<Cx> images;
  images.reserve(pts.size());
  for (const Cx& z : pts) images.push_back(phi.eval(z));
  const KernelMatrix g = gram(source, pts);
  const KernelMatrix m = cross_gram(space, images);
  return std::sqrt(std::max(0.0, gen_eig_max(m.entries, g.entries, jitter)));
}

}  // namespace

NormEstimate norm_lower_bound(const KernelKind& space, const SymbolMap& phi,
                              const std::vector<Cx>& points, double jitter) {
  if (points.size() < 2)
    throw std::invalid_argument("norm_lower_bound: need at least 2 points");
  NormEstimate est;

  // Collapsed phi-images make the restriction matrix rank-deficient; drop
  // the later point and flag indeterminate convergence.
  std::vector<Cx> pts;
  std::vector<Cx> images;
  for (const Cx& z : points) {
    const Cx w = phi.eval(z);
    bool dup = false;
    for (const Cx& seen : images)
      if (std::abs(w - seen) <= 1e-12) { dup = true; break; }
    if (dup) {
      est.image_duplicates = true;
      continue;
    }
    pts.push_back(z);
    images.push_back(w);
  }
  if (pts.size() < 2)
    throw std::invalid_argument("norm_lower_bound: fewer than 2 distinct phi-images");

  est.points_used = pts.size();
  est.lower_bound = restricted_norm(space, phi, pts, jitter);
  if (!est.image_duplicates && pts.size() >= 4) {
    const std::vector<Cx> half(pts.begin(), pts.begin() + pts.size() / 2);
    const double prev = restricted_norm(space, phi, half, jitter);
    est.converged = (est.lower_bound - prev) <= 1e-3 * std::max(prev, 1e-300);
  }
  return est;
}

// ------------------------------------------------ norm_upper_bound_affine

double norm_upper_bound_affine(const HermiteBiehlerFn& E, double a, Cx b,
                               int real_samples, const GrowthLadder& ladder) {
  if (!(a > 0.0) || !(a <= 1.0))
    throw std::invalid_argument("norm_upper_bound_affine: need a in (0, 1]");
  if (!(b.imag() >= 0.0))
    throw std::invalid_argument("norm_upper_bound_affine: need Im(b) >= 0");
  if (real_samples < 2)
    throw std::invalid_argument("norm_upper_bound_affine: real_samples must be >= 2");
  const double T = 50.0;
  double alpha = 0.0;
  for (int k = 0; k < real_samples; ++k) {
    const double t = -T + 2.0 * T * k / (real_samples - 1);
    const double rlog =
        E.log_eval(a * Cx(t, 0.0) + b).real() - E.log_eval(Cx(t, 0.0)).real();
    alpha = std::max(alpha, std::exp(rlog));
  }
  if (!std::isfinite(alpha))
    throw ConsistencyError("norm_upper_bound_affine: alpha estimate is not finite");
  const double sigma = exponential_type(fn_from_hb(E), ladder).value;
  return alpha / std::sqrt(a) * std::exp(sigma * b.imag());
}

// ------------------------------------------------------ compactness probes

CompactnessProbe compactness_probe_model(const InnerFn& chi, const SymbolMap& phi,
                                         const SectorGrid& grid, double d) {
  const std::vector<Cx> pts = grid_points_nonempty(grid, __func__);
  CompactnessProbe probe;
  probe.lower_constant_d = d;
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Cx w = phi.eval(pts[i]);
    const double ratio = ratio_im(pts[i], w, phi);
    const double mod = std::exp(chi.log_abs(w));
    vals[i] = ratio * (1.0 - mod * mod);
  }
  const DecadeStats st = decade_stats(pts, vals);
  probe.sequence_values = std::move(vals);
  probe.limsup_estimate = st.limsup;
  probe.verdict = (d > 0.0 && probe.limsup_estimate >= d) ? "not_compact" : "inconclusive";
  return probe;
}

CompactnessProbe compactness_probe_db(const HermiteBiehlerFn& E, const SymbolMap& phi,
                                      double root_lo, double root_hi,
                                      double resolution, double d) {
  const FnEvaluator A = companion_A(E);
  const auto roots = real_roots([&](double t) { return A.value(Cx(t, 0.0)).real(); },
                                root_lo, root_hi, resolution);
  if (roots.size() < 5) {
    std::ostringstream os;
    os << "compactness_probe_db: found only " << roots.size()
       << " zeros of A in [" << root_lo << ", " << root_hi << "]; need >= 5";
    throw std::invalid_argument(os.str());
  }
  const KernelKind db = KernelKind::de_branges(E);
  CompactnessProbe probe;
  probe.lower_constant_d = d;
  for (const double tn : roots) {
    const Cx t(tn, 0.0);
    const Cx w = phi.eval(t);
    const double direct = kernel_norm_sq(db, w) / kernel_norm_sq(db, t);

    // Closed branch formulas, evaluated in complex arithmetic; realness is
    // asserted rather than assumed.
    const Cx Et = E.eval(t);
    const double re_dEt = E.derivative(t).real();
    Cx branch;
    if (w.imag() > 1e-12) {
      const double num = std::exp(2.0 * E.log_eval(w).real()) -
                         std::exp(2.0 * E.log_eval(std::conj(w)).real());
      const Cx den = Cx(0.0, -4.0) * w.imag() * Et * re_dEt;
      branch = num / den;
    } else {
      const Cx Ew = E.eval(w);
      const Cx num = Cx(0.0, -1.0) * std::imag(E.derivative(w) * std::conj(Ew));
      const Cx den = Et * re_dEt;
      branch = num / den;
    }
    if (std::abs(branch.imag()) > 1e-9 * std::abs(branch)) {
      std::ostringstream os;
      os << "compactness_probe_db: branch formula at t_n = " << tn
         << " has relative imaginary part " << branch.imag() / std::abs(branch)
         << " (direct ratio " << direct << ", branch " << branch.real() << " + "
         << branch.imag() << "i)";
      throw ConsistencyError(os.str());
    }
    const double rb = branch.real();
    const double gap = std::abs(direct - rb) / std::max(std::abs(direct), 1e-300);
    if (gap > 1e-9) {
      std::ostringstream os;
      os << "compactness_probe_db: branch formula " << rb
         << " disagrees with the direct kernel ratio " << direct << " at t_n = " << tn;
      throw ConsistencyError(os.str());
    }
    probe.max_branch_rel_gap = std::max(probe.max_branch_rel_gap, gap);
    probe.sequence_values.push_back(direct);
  }
  const std::size_t n = probe.sequence_values.size();
  const std::size_t tail = std::max<std::size_t>(5, n / 2);
  probe.limsup_estimate = *std::max_element(
      probe.sequence_values.end() - std::min(tail, n), probe.sequence_values.end());
  probe.verdict = (d > 0.0 && probe.limsup_estimate >= d) ? "not_compact" : "inconclusive";
  return probe;
}

// -------------------------------------------------------- regularity_check

RegularityReport regularity_check(const HermiteBiehlerFn& E, const QuadratureSpec& spec) {
  auto integrand = [&E](double t) {
    // 1 / (|E(t)|^2 |rho_i(t)|^2) with |rho_i(t)|^2 = 4 pi^2 (t^2 + 1),
    // in log space, saturated so divergence shows up as non-convergence
    // instead of overflow.
    const double l = -2.0 * E.log_eval(Cx(t, 0.0)).real() -
                     std::log(4.0 * kPi * kPi * (t * t + 1.0));
    if (l > 345.0) return 1e150;
    return std::exp(l);
  };
  const QuadratureResult q = integrate_line(integrand, spec);
  RegularityReport rep;
  rep.integral_value = q.value;
  rep.converged = q.converged;
  rep.regular = q.converged && std::isfinite(q.value);
  return rep;
}

// --------------------------------------------------------- classify_symbol

SymbolClass classify_symbol(const std::vector<Cx>& poly_coefficients,
                            const HermiteBiehlerFn& E) {
  std::size_t deg = poly_coefficients.size();
  while (deg > 0 && std::abs(poly_coefficients[deg - 1]) <= 1e-300) --deg;
  SymbolClass sc;
  std::ostringstream os;
  if (deg <= 1) {
    sc.verdict = "constant_degenerate";
    os << "constant symbol; composition with " << E.describe()
       << " collapses to a point evaluation";
    sc.detail = os.str();
    return sc;
  }
  if (deg > 2) {
    sc.verdict = "nonaffine_rejected";
    os << "degree " << (deg - 1)
       << " polynomial symbol: boundedness on a regular space forces an affine symbol";
    sc.detail = os.str();
    return sc;
  }
  const Cx a = poly_coefficients[1];
  const Cx b = poly_coefficients[0];
  if (std::abs(a.imag()) > 1e-12 || !(a.real() > 0.0) || b.imag() < -1e-12) {
    sc.verdict = "nonaffine_rejected";
    os << "degree-1 coefficients do not define a self-map of the upper half-plane "
       << "(need real a > 0 and Im(b) >= 0; got a = " << a.real() << "+" << a.imag()
       << "i, b = " << b.real() << "+" << b.imag() << "i)";
    sc.detail = os.str();
    return sc;
  }
  sc.verdict = "affine_admissible";
  os << "phi(z) = " << a.real() << " z + (" << b.real() << "+" << b.imag()
     << "i); boundedness decided by the sufficient ratio criterion";
  sc.detail = os.str();
  return sc;
}

// ---------------------------------------------------- mt_membership_checks

MtMembership mt_membership_checks(const HermiteBiehlerFn& E, const FnEvaluator& f,
                                  const GrowthLadder& ladder, const QuadratureSpec& spec) {
  ladder.validate();
  MtMembership out;

  bool all_zero = true;
  for (double y : ladder.heights)
    if (f.log_abs(iy(y)) != -kInf) { all_zero = false; break; }
  if (all_zero && std::abs(f.value(Cx(0.5, 0.5))) == 0.0) {
    out.l2_norm_sq = 0.0;
    out.member = true;
    out.integral_converged = true;
    return out;
  }

  const FnEvaluator Ef = fn_from_hb(E);
  out.mt_f_over_E = mean_type(fn_quotient(f, Ef), ladder);
  out.mt_fstar_over_E = mean_type(fn_quotient(fn_star(f), Ef), ladder);

  auto integrand = [&](double t) {
    const Cx v = f.value(Cx(t, 0.0)) / E.eval(Cx(t, 0.0));
    return std::norm(v);
  };
  const QuadratureResult q = integrate_line(integrand, spec);
  out.l2_norm_sq = q.value;
  out.integral_converged = q.converged;
  out.member = *out.mt_f_over_E <= 1e-3 && *out.mt_fstar_over_E <= 1e-3 && q.converged;
  return out;
}

}  // namespace oplab
