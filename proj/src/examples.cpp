#include "oplab/examples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "oplab/criteria.hpp"

namespace oplab {

namespace {

struct Table {
  int failures = 0;

  void row(const std::string& label, double computed, double expected, double tol,
           bool relative, bool upper_only = false) {
    bool pass;
    if (upper_only) {
      pass = computed <= expected * (1.0 + tol);
    } else if (relative) {
      pass = std::abs(computed - expected) <= tol * std::max(std::abs(expected), 1e-300);
    } else {
      pass = std::abs(computed - expected) <= tol;
    }
    if (!pass) ++failures;
    std::printf("  %-44s %-14.9g %-14.9g %-9.1e %s\n", label.c_str(), computed, expected,
                tol, pass ? "PASS" : "FAIL");
  }

  void row_text(const std::string& label, const std::string& computed,
                const std::string& expected) {
    const bool pass = computed == expected;
    if (!pass) ++failures;
    std::printf("  %-44s %-14s %-14s %-9s %s\n", label.c_str(), computed.c_str(),
                expected.c_str(), "exact", pass ? "PASS" : "FAIL");
  }

  void header(const std::string& title) {
    std::printf("%s\n", title.c_str());
    std::printf("  %-44s %-14s %-14s %-9s %s\n", "check", "computed", "expected", "tol",
                "status");
  }
};

double rel_variance(const std::vector<double>& v) {
  double sum = 0.0, sumsq = 0.0;
  for (double x : v) {
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / v.size();
  const double var = std::max(0.0, sumsq / v.size() - mean * mean);
  return mean != 0.0 ? var / (mean * mean) : var;
}

double max_abs_dev(const std::vector<double>& v, double target) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - target));
  return worst;
}

SectorGrid standard_grid() {
  SectorGrid g;
  g.kappa = 1.0;
  g.y_min = 1e-2;
  g.y_max = 1e6;
  g.points_per_decade = 4;
  g.x_samples = 3;
  return g;
}

int run_example_37(bool explain) {
  const double e1 = std::exp(1.0);
  const double case1 = (std::exp(2.0) - std::exp(-2.0)) / 4.0;
  if (explain) {
    std::printf(
        "Example 3.7 parameters: E(z) = exp(-i z) (so A(z) = cos z, zeros t_n = pi/2 + n pi),\n"
        "phi(z) = a z + b with a = 1/2.  On the real axis |E(at+b)/E(t)| = exp(Im b), so the\n"
        "ratio supremum is 1 for b = 0 and e for b = i.  The kernel-norm ratio at the zeros is\n"
        "(exp(2 d b2) - exp(-2 d b2)) / (4 d b2) = %.9g for d = 1, b = i (vertical shift), and\n"
        "1 for a real shift.  Each r_n is computed both from the kernel diagonal and from the\n"
        "closed branch formula; the two must agree to 1e-9 relative.\n\n",
        case1);
  }
  Table t;
  t.header("Example 3.7  (E = exp(-i z), phi = a z + b)");
  const HermiteBiehlerFn E = HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 0));
  const SectorGrid grid = standard_grid();

  const JcQuantities jc = jc_quantities(SymbolMap::affine(0.5, Cx(0, 1)), grid);
  t.row("jc sup ratio (a=1/2, b=i)", jc.sup_ratio, 2.0, 1e-2, true);
  t.row("jc angular derivative", jc.angular_derivative, 2.0, 1e-2, true);

  const DbSufficient s0 = db_sufficient(E, SymbolMap::affine(0.5, Cx(0, 0)), grid, 201);
  t.row("ratio sup, b=0", s0.ratio_sup, 1.0, 1e-9, false, true);
  const DbSufficient s1 = db_sufficient(E, SymbolMap::affine(0.5, Cx(0, 1)), grid, 201);
  t.row("ratio sup, b=i", s1.ratio_sup, e1, 1e-9, false, true);

  const CompactnessProbe p1 =
      compactness_probe_db(E, SymbolMap::affine(0.5, Cx(0, 1)), 0.5, 25.0, 0.02);
  t.row("case-1 r_n worst deviation", max_abs_dev(p1.sequence_values, case1), 0.0, 1e-8,
        false);
  t.row("case-1 r_n limsup", p1.limsup_estimate, case1, 1e-8, false);
  const CompactnessProbe p2 =
      compactness_probe_db(E, SymbolMap::affine(0.5, Cx(1, 0)), 0.5, 25.0, 0.02);
  t.row("case-2 (b real) r_n worst deviation", max_abs_dev(p2.sequence_values, 1.0), 0.0,
        1e-8, false);
  t.row("branch vs kernel-ratio gap",
        std::max(p1.max_branch_rel_gap, p2.max_branch_rel_gap), 0.0, 1e-9, false);
  t.row_text("case-1 verdict", p1.verdict, "not_compact");

  std::printf("3.7: %d check(s) failed\n", t.failures);
  return t.failures == 0 ? 0 : 3;
}

int run_example_36(bool explain) {
  const double e2 = std::exp(2.0);
  const double c36 = e2 * (std::exp(2.0) - std::exp(-2.0)) / 4.0;
  if (explain) {
    std::printf(
        "Example 3.6 parameters: E(z) = exp(-i d z) with d = 1+i, phi(z) = z + b with\n"
        "b = 1+i.  |E(z+b)/E(z)| = |exp(-i d b)| = exp(2) everywhere, so the ratio is\n"
        "asserted constant (relative variance < 1e-10).  The kernel-norm ratio at the\n"
        "zeros of A is evaluated as exp(2 d2 b1) * (exp(2 d1 b2) - exp(-2 d1 b2)) / (4 d1 b2)\n"
        "= (e^4 - 1)/4 = %.9g; the grouping of the middle factor is validated against the\n"
        "direct kernel-diagonal ratio (1e-9 relative) rather than assumed.\n\n",
        c36);
  }
  Table t;
  t.header("Example 3.6  (E = exp(-i (1+i) z), phi = z + (1+i))");
  const HermiteBiehlerFn E = HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 1));
  const SymbolMap phi = SymbolMap::affine(1.0, Cx(1, 1));
  const SectorGrid grid = standard_grid();

  const DbSufficient ds = db_sufficient(E, phi, grid, 201);
  t.row("ratio sup", ds.ratio_sup, e2, 1e-9, true);
  t.row("ratio relative variance", ds.ratio_rel_variance, 0.0, 1e-10, false);
  t.row_text("bounded (sufficient criterion)", ds.verdict ? "true" : "false", "true");

  const CompactnessProbe p = compactness_probe_db(E, phi, 0.5, 20.0, 0.02);
  t.row("r_n relative variance", rel_variance(p.sequence_values), 0.0, 1e-10, false);
  t.row("r_n value", p.limsup_estimate, c36, 1e-6, true);
  t.row("branch vs kernel-ratio gap", p.max_branch_rel_gap, 0.0, 1e-9, false);
  t.row_text("verdict", p.verdict, "not_compact");

  std::printf("3.6: %d check(s) failed\n", t.failures);
  return t.failures == 0 ? 0 : 3;
}

int run_example_model_translation(bool explain) {
  const double em2 = std::exp(-2.0);
  if (explain) {
    std::printf(
        "Model-translation parameters: chi(z) = exp(2 i z) (inner with alpha = 2, no\n"
        "Blaschke factors), phi(z) = z + i.  Since inf Im phi = 1, sup |chi(phi(z))| <=\n"
        "exp(-2) < 1, so boundedness reduces to sup Im z / Im phi(z) = 1 and the bounded\n"
        "operator cannot be compact: the tail of (Im z/Im phi)(1 - |chi(phi)|^2) tends to 1.\n\n");
  }
  Table t;
  t.header("Model translation  (chi = exp(2 i z), phi = z + i)");
  const InnerFn chi = InnerFn::parametric(2.0, {}, Cx(1, 0));
  const SymbolMap phi = SymbolMap::affine(1.0, Cx(0, 1));
  const SectorGrid grid = standard_grid();

  const ModelBoundedness mb = model_boundedness(chi, phi, grid);
  t.row_text("combined verdict", mb.combined_verdict, "bounded");
  t.row("sup |chi(phi(z))|", mb.sup_chi_phi, em2, 1e-9, false, true);

  const CompactnessProbe probe = compactness_probe_model(chi, phi, grid);
  t.row_text("compactness verdict", probe.verdict, "not_compact");
  t.row("tail limsup of r", probe.limsup_estimate, 1.0, 1e-2, true);

  std::printf("model-translation: %d check(s) failed\n", t.failures);
  return t.failures == 0 ? 0 : 3;
}

}  // namespace

std::vector<std::string> example_names() { return {"3.6", "3.7", "model-translation"}; }

int run_example(const std::string& name, bool explain) {
  try {
    if (name == "3.7") return run_example_37(explain);
    if (name == "3.6") return run_example_36(explain);
    if (name == "model-translation") return run_example_model_translation(explain);
  } catch (const std::exception& e) {
    std::cerr << "example " << name << ": " << e.what() << "\n";
    return 3;
  }
  std::cerr << "unknown example \"" << name << "\"; available:";
  for (const std::string& n : example_names()) std::cerr << " " << n;
  std::cerr << "\n";
  return 2;
}

}  // namespace oplab
