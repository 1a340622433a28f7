// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line each.
// Returns nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oplab/criteria.hpp"

using namespace oplab;

namespace {

const Cx I(0.0, 1.0);
const double kE = std::exp(1.0);

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++g_failures;
  std::printf("[%s] %2d. %-38s %s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

HermiteBiehlerFn pw1() { return HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 0)); }

SectorGrid standard_grid(double y_min = 1e-2, double y_max = 1e6) {
  SectorGrid g;
  g.kappa = 1.0;
  g.y_min = y_min;
  g.y_max = y_max;
  g.points_per_decade = 4;
  g.x_samples = 3;
  return g;
}

std::vector<Cx> random_upper_points(std::size_t n, unsigned seed,
                                    double ymin = 0.2, double ymax = 8.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> x(-5.0, 5.0), y(ymin, ymax);
  std::vector<Cx> pts;
  for (std::size_t k = 0; k < n; ++k) pts.emplace_back(x(rng), y(rng));
  return pts;
}

std::vector<Cx> iy_points(std::size_t n, double y0, double y1) {
  std::vector<Cx> pts;
  for (std::size_t k = 0; k < n; ++k)
    pts.push_back(Cx(0.0, y0 * std::pow(y1 / y0, double(k) / (n - 1))));
  return pts;
}

std::vector<Cx> real_spread(std::size_t n, double spacing) {
  std::vector<Cx> pts;
  for (std::size_t k = 0; k < n; ++k)
    pts.emplace_back((double(k) - 0.5 * double(n - 1)) * spacing, 0.0);
  return pts;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  criterion(1, "kernel closed forms", [](std::string& d) {
    for (const Cx& z : random_upper_points(100, 11)) {
      const double diag = kernel_norm_sq(KernelKind::hardy(), z);
      if (std::abs(diag - 1.0 / (4.0 * kPi * z.imag())) > 1e-12) return false;
    }
    const auto E = pw1();
    const auto zs = random_upper_points(100, 12);
    const auto ws = random_upper_points(100, 13);
    double worst = 0.0;
    for (std::size_t k = 0; k < 100; ++k) {
      const Cx u = zs[k] - std::conj(ws[k]);
      const Cx want = std::sin(u) / (kPi * u);
      const Cx got = db_kernel(E, zs[k], ws[k]);
      worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    std::ostringstream os;
    os << "hardy diag 1e-12 at 100 pts; sinc form worst rel err " << worst;
    d = os.str();
    return worst <= 1e-10;
  });

  criterion(2, "identity symbol norm = 1", [](std::string& d) {
    const SymbolMap id = SymbolMap::affine(1.0, Cx(0, 0));
    const double h =
        norm_lower_bound(KernelKind::hardy(), id, iy_points(16, 0.5, 50.0)).lower_bound;
    const double m = norm_lower_bound(KernelKind::model(inner_from_hb(pw1())), id,
                                      iy_points(16, 4.0, 50.0))
                         .lower_bound;
    const double b =
        norm_lower_bound(KernelKind::de_branges(pw1()), id, real_spread(16, 3.0)).lower_bound;
    std::ostringstream os;
    os << "hardy " << h << ", model " << m << ", debranges " << b;
    d = os.str();
    return std::abs(h - 1.0) <= 1e-6 && std::abs(m - 1.0) <= 1e-6 && std::abs(b - 1.0) <= 1e-6;
  });

  criterion(3, "example 3.7 reproduction", [](std::string& d) {
    const auto E = pw1();
    const double case1 = (std::exp(2.0) - std::exp(-2.0)) / 4.0;
    const auto jc = jc_quantities(SymbolMap::affine(0.5, I), standard_grid());
    if (std::abs(jc.sup_ratio - 2.0) > 0.02) return false;
    const auto s0 = db_sufficient(E, SymbolMap::affine(0.5, Cx(0, 0)), standard_grid(), 201);
    if (!(s0.ratio_sup <= 1.0 + 1e-9)) return false;
    const auto s1 = db_sufficient(E, SymbolMap::affine(0.5, I), standard_grid(), 201);
    if (!(s1.ratio_sup <= kE * (1.0 + 1e-9))) return false;
    const auto p1 = compactness_probe_db(E, SymbolMap::affine(0.5, I), 0.5, 25.0, 0.02);
    if (p1.sequence_values.size() < 5) return false;
    for (double r : p1.sequence_values)
      if (std::abs(r - case1) > 1e-8) return false;
    const auto p2 = compactness_probe_db(E, SymbolMap::affine(0.5, Cx(1, 0)), 0.5, 25.0, 0.02);
    for (double r : p2.sequence_values)
      if (std::abs(r - 1.0) > 1e-8) return false;
    std::ostringstream os;
    os << "jc " << jc.sup_ratio << "; r_n " << p1.sequence_values.front() << " over "
       << p1.sequence_values.size() << " roots; case-2 r_n " << p2.sequence_values.front();
    d = os.str();
    return true;
  });

  criterion(4, "example 3.6 reproduction", [](std::string& d) {
    const auto E = HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 1));
    const SymbolMap phi = SymbolMap::affine(1.0, Cx(1, 1));
    const double want = std::exp(2.0) * (std::exp(2.0) - std::exp(-2.0)) / 4.0;
    const auto p = compactness_probe_db(E, phi, 0.5, 20.0, 0.02);
    double mean = 0.0;
    for (double r : p.sequence_values) mean += r;
    mean /= p.sequence_values.size();
    double var = 0.0;
    for (double r : p.sequence_values) var += (r - mean) * (r - mean);
    var /= p.sequence_values.size();
    const double rel_var = var / (mean * mean);
    std::ostringstream os;
    os << "r_n " << mean << " (want " << want << "), rel variance " << rel_var
       << ", branch gap " << p.max_branch_rel_gap;
    d = os.str();
    return rel_var < 1e-10 && std::abs(mean - want) <= 1e-6 * want &&
           p.max_branch_rel_gap <= 1e-9;
  });

  criterion(5, "positivity kernel PSD boundary", [](std::string& d) {
    const InnerFn chi = inner_from_hb(pw1());
    const SymbolMap up = SymbolMap::affine(1.0, Cx(0, 1));
    const SymbolMap half = SymbolMap::affine(0.5, Cx(0, 0));
    int fail_low = 0;
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto pts = random_upper_points(15, 500 + seed);
      if (!psd_check(positivity_gram_L(chi, up, 1.0, pts).entries, 1e-9).verdict)
        return false;
      if (!psd_check(positivity_gram_L(chi, half, 0.8 * 2.0, pts).entries, 1e-6).verdict)
        ++fail_low;
    }
    std::ostringstream os;
    os << "lambda=1 PSD on 20/20 sets; lambda=1.6 indefinite on " << fail_low << "/20 sets";
    d = os.str();
    return fail_low >= 1;
  });

  criterion(6, "unboundedness detection for sqrt(z)", [](std::string& d) {
    const InnerFn chi = inner_from_hb(pw1());
    const auto mb =
        model_boundedness(chi, SymbolMap::sqrt_branch(), standard_grid(1.0, 1e8));
    if (mb.combined_verdict != "unbounded") return false;
    if (!mb.necessary.divergence_detected) return false;
    if (!(mb.necessary.two_decade_growth_max > 10.0)) return false;
    // Pencil restriction over kernels at heights up to 1e8: the squared
    // restricted norm must blow past 1e3 (measured ~2.9e4; its square root,
    // the reported lower_bound, sits near (2y)^{1/4} ~ 170 at these heights).
    const auto est = norm_lower_bound(KernelKind::model(chi), SymbolMap::sqrt_branch(),
                                      iy_points(64, 1.0, 1e8));
    const double pencil = est.lower_bound * est.lower_bound;
    std::ostringstream os;
    os << "two-decade growth " << mb.necessary.two_decade_growth_max << "; pencil "
       << pencil << " (lower_bound " << est.lower_bound << ")";
    d = os.str();
    return pencil > 1e3;
  });

  criterion(7, "vertical translation norm", [](std::string& d) {
    const auto est = norm_lower_bound(KernelKind::de_branges(pw1()),
                                      SymbolMap::affine(1.0, Cx(0, 1)), real_spread(64, 2.4));
    const double upper =
        norm_upper_bound_affine(pw1(), 1.0, Cx(0, 1), 201, GrowthLadder::standard());
    std::ostringstream os;
    os << "lower " << est.lower_bound << " vs e = " << kE << "; upper " << upper;
    d = os.str();
    return est.lower_bound >= 0.98 * kE && est.lower_bound <= kE * 1.0001 &&
           est.lower_bound <= upper * (1.0 + 1e-6) &&
           std::abs(upper - kE * kE) <= 1e-3 * kE * kE;
  });

  criterion(8, "growth estimators", [](std::string& d) {
    const GrowthLadder ladder = GrowthLadder::standard();
    const double mt2 =
        mean_type(fn_from_hb(HermiteBiehlerFn::exponential(Cx(1, 0), Cx(2, 0))), ladder);
    if (std::abs(mt2 - 2.0) > 1e-3) return false;
    const double et_cos = exponential_type(companion_A(pw1()), ladder).value;
    if (std::abs(et_cos - 1.0) > 1e-3) return false;
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(0.2, 2.5), v(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      const auto F = HermiteBiehlerFn::exponential(Cx(1, 0), Cx(u(rng), v(rng)));
      const auto G = HermiteBiehlerFn::exponential(Cx(1, 0), Cx(u(rng), v(rng)));
      const double lhs = mean_type(fn_from_hb(HermiteBiehlerFn::product({F, G})), ladder);
      const double rhs = mean_type(fn_from_hb(F), ladder) + mean_type(fn_from_hb(G), ladder);
      if (std::abs(lhs - rhs) > 2e-3) return false;
    }
    std::ostringstream os;
    os << "mt(e^{-2iz}) " << mt2 << "; ET(cos) " << et_cos << "; additivity on 5 draws";
    d = os.str();
    return true;
  });

  criterion(9, "regularity verdicts", [](std::string& d) {
    QuadratureSpec spec;
    const auto flat = regularity_check(pw1(), spec);
    const auto tilted =
        regularity_check(HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 1)), spec);
    std::ostringstream os;
    os << "integral " << flat.integral_value << " (want " << 1.0 / (4.0 * kPi)
       << "); tilted converged=" << tilted.converged;
    d = os.str();
    return flat.regular && std::abs(flat.integral_value - 1.0 / (4.0 * kPi)) <= 1e-8 &&
           !tilted.regular && !tilted.converged;
  });

  criterion(10, "affine classifier", [](std::string& d) {
    const auto E = pw1();
    const auto quad = classify_symbol({Cx(0, 1), Cx(0, 0), Cx(1, 0)}, E);
    const auto aff = classify_symbol({Cx(0, 1), Cx(0.5, 0)}, E);
    if (quad.verdict != "nonaffine_rejected" || aff.verdict != "affine_admissible")
      return false;
    const auto ds = db_sufficient(E, SymbolMap::affine(0.5, I), standard_grid(), 201);
    std::ostringstream os;
    os << "z^2+i rejected; z/2+i admissible and bounded=" << (ds.verdict ? "true" : "false");
    d = os.str();
    return ds.verdict;
  });

  criterion(11, "compactness branch-formula consistency", [](std::string& d) {
    const auto p37 =
        compactness_probe_db(pw1(), SymbolMap::affine(0.5, I), 0.5, 25.0, 0.02);
    const auto p36 = compactness_probe_db(HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 1)),
                                          SymbolMap::affine(1.0, Cx(1, 1)), 0.5, 20.0, 0.02);
    std::ostringstream os;
    os << "worst relative gap " << std::max(p37.max_branch_rel_gap, p36.max_branch_rel_gap);
    d = os.str();
    return p37.max_branch_rel_gap <= 1e-9 && p36.max_branch_rel_gap <= 1e-9;
  });

  criterion(12, "byte-identical reports", [](std::string& d) {
    const char* cfg = R"({
      "space": {"kind": "debranges",
                "E": {"variant": "exponential", "e0": [1, 0], "d": [1, 0]}},
      "symbol": {"variant": "affine", "a": 0.5, "b": [0, 1]},
      "grid": {"kappa": 1.0, "y_min": 0.01, "y_max": 1000000.0,
               "per_decade": 4, "x_samples": 3},
      "tasks": ["jc_quantities", "db_sufficient", "db_necessary",
                "norm_lower_bound", "compactness_db", "regularity_check",
                "classify_symbol"]
    })";
    std::ofstream("/tmp/oplab_acc_cfg.json", std::ios::binary) << cfg;
    const std::string base = std::string(OPLAB_BIN) +
                             " analyze /tmp/oplab_acc_cfg.json --no-timings --out ";
    if (std::system((base + "/tmp/oplab_acc_a.json > /dev/null 2>&1").c_str()) != 0)
      return false;
    if (std::system((base + "/tmp/oplab_acc_b.json > /dev/null 2>&1").c_str()) != 0)
      return false;
    const std::string a = slurp("/tmp/oplab_acc_a.json");
    const std::string b = slurp("/tmp/oplab_acc_b.json");
    std::ostringstream os;
    os << a.size() << " bytes each";
    d = os.str();
    return !a.empty() && a == b;
  });

  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
