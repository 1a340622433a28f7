#include <doctest.h>

#include <cmath>
#include <random>

#include "oplab/criteria.hpp"

using namespace oplab;

namespace {

const Cx I(0.0, 1.0);
const double kE = std::exp(1.0);

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

std::vector<Cx> random_upper_points(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> x(-5.0, 5.0), y(0.2, 8.0);
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

}  // namespace

TEST_CASE("jc_quantities: affine symbols") {
  const auto jc = jc_quantities(SymbolMap::affine(0.5, I), standard_grid());
  CHECK(jc.sup_ratio == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(jc.angular_derivative == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(jc.sup_ratio >= jc.limsup_ratio - 1e-9);

  const auto id = jc_quantities(SymbolMap::affine(1.0, Cx(0, 0)), standard_grid());
  CHECK(id.sup_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.limsup_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.angular_derivative == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("jc_quantities: sup and angular derivative agree for affine maps") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> a(0.1, 1.0), b(0.0, 3.0);
  for (int k = 0; k < 5; ++k) {
    const auto jc = jc_quantities(SymbolMap::affine(a(rng), Cx(b(rng), b(rng))),
                                  standard_grid(1e-2, 1e6));
    CHECK(std::abs(jc.sup_ratio - jc.angular_derivative) <= 1e-2 * jc.angular_derivative);
  }
}

TEST_CASE("jc_quantities: square-root branch diverges") {
  const auto jc = jc_quantities(SymbolMap::sqrt_branch(), standard_grid(1.0, 1e8));
  CHECK(jc.sup_ratio > 1e3);
  CHECK(std::isinf(jc.angular_derivative));
}

TEST_CASE("model_boundedness: vertical translation of a meromorphic inner function") {
  const InnerFn chi = inner_from_hb(pw1());  // e^{2iz}
  const auto mb =
      model_boundedness(chi, SymbolMap::affine(1.0, Cx(0, 1)), standard_grid());
  CHECK(mb.combined_verdict == "bounded");
  CHECK(mb.sup_chi_phi <= std::exp(-2.0) * (1.0 + 1e-12));
  CHECK(mb.sufficient.sup_estimate <= 1.0 + 1e-12);
  CHECK(mb.necessary.sup_estimate <= 1.0 + 1e-12);
  CHECK(mb.necessary.verdict == "satisfied");
  CHECK(mb.necessary.sup_estimate >= mb.necessary.limsup_estimate - 1e-9);
}

TEST_CASE("model_boundedness: identity symbol") {
  const InnerFn chi = inner_from_hb(pw1());
  const auto mb =
      model_boundedness(chi, SymbolMap::affine(1.0, Cx(0, 0)), standard_grid());
  CHECK(mb.combined_verdict == "bounded");
  CHECK(mb.sufficient.sup_estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mb.necessary.sup_estimate <= 1.0 + 1e-12);
}

TEST_CASE("model_boundedness: square root is flagged unbounded by sustained growth") {
  const InnerFn chi = inner_from_hb(pw1());
  const auto mb =
      model_boundedness(chi, SymbolMap::sqrt_branch(), standard_grid(1.0, 1e8));
  CHECK(mb.combined_verdict == "unbounded");
  CHECK(mb.necessary.divergence_detected);
  CHECK(mb.necessary.verdict == "violated");
  // The closed form Q2 ~ sqrt(2y) grows by exactly 10x across two decades;
  // the single-decade factor sits near sqrt(10), inflated a little at the
  // grid bottom where the inner-function factor is still ramping up.
  CHECK(mb.necessary.two_decade_growth_max > 10.0);
  CHECK(mb.necessary.decade_growth_max > 3.0);
  CHECK(mb.necessary.decade_growth_max < 10.0);
}

TEST_CASE("model_boundedness: a tall grid pushes the square root past the cap") {
  const InnerFn chi = inner_from_hb(pw1());
  const auto mb =
      model_boundedness(chi, SymbolMap::sqrt_branch(), standard_grid(1.0, 1e13));
  CHECK(mb.combined_verdict == "unbounded");
  CHECK(mb.necessary.sup_estimate > kDefaultCap);
}

TEST_CASE("db_sufficient: identity and scaling symbols") {
  const auto id = db_sufficient(pw1(), SymbolMap::affine(1.0, Cx(0, 0)), standard_grid(), 101);
  CHECK(id.ratio_sup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.q1_sup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.verdict);

  const auto half = db_sufficient(pw1(), SymbolMap::affine(0.5, Cx(0, 0)), standard_grid(), 101);
  CHECK(half.ratio_sup <= 1.0 + 1e-12);
  CHECK(half.q1_sup == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(half.verdict);
}

TEST_CASE("db_sufficient: rejects the non-entire branch symbol") {
  CHECK_THROWS_AS(db_sufficient(pw1(), SymbolMap::sqrt_branch(), standard_grid(), 101),
                  std::invalid_argument);
}

TEST_CASE("db_necessary: vertical translation has a finite Q3 sup near e^2") {
  const auto rep =
      db_necessary(pw1(), SymbolMap::affine(1.0, Cx(0, 1)), standard_grid());
  CHECK(rep.verdict == "satisfied");
  CHECK(rep.sup_estimate == doctest::Approx(kE * kE).epsilon(1e-3));
  CHECK(rep.sup_estimate >= rep.limsup_estimate - 1e-9);

  // Grid-refinement oracle: doubling the sampling density moves the sup
  // by less than 0.1%.
  SectorGrid fine = standard_grid();
  fine.points_per_decade = 8;
  fine.x_samples = 5;
  const auto rep2 = db_necessary(pw1(), SymbolMap::affine(1.0, Cx(0, 1)), fine);
  CHECK(std::abs(rep2.sup_estimate - rep.sup_estimate) <= 1e-3 * rep.sup_estimate);
}

TEST_CASE("db_necessary: identity symbol makes Q3 constantly one") {
  const auto rep =
      db_necessary(pw1(), SymbolMap::affine(1.0, Cx(0, 0)), standard_grid());
  CHECK(rep.sup_estimate == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.limsup_estimate == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.verdict == "satisfied");
}

TEST_CASE("norm_lower_bound: identity symbol is the unit operator on all kinds") {
  const SymbolMap id = SymbolMap::affine(1.0, Cx(0, 0));
  const auto hardy = norm_lower_bound(KernelKind::hardy(), id, iy_points(16, 0.5, 50.0));
  CHECK(hardy.lower_bound == doctest::Approx(1.0).epsilon(1e-6));

  const auto model = norm_lower_bound(KernelKind::model(inner_from_hb(pw1())), id,
                                      iy_points(16, 4.0, 50.0));
  CHECK(model.lower_bound == doctest::Approx(1.0).epsilon(1e-6));

  const auto db = norm_lower_bound(KernelKind::de_branges(pw1()), id, real_spread(16, 3.0));
  CHECK(db.lower_bound == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("norm_lower_bound: vertical translation on the sampling space") {
  // Frequency-side oracle: on this space the shift acts as multiplication by
  // e^{-xi} on [-1, 1], so the operator norm is exactly e.
  const auto est = norm_lower_bound(KernelKind::de_branges(pw1()),
                                    SymbolMap::affine(1.0, Cx(0, 1)), real_spread(64, 2.4));
  CHECK(est.lower_bound >= 0.98 * kE);
  CHECK(est.lower_bound <= kE * 1.0001);
  CHECK(est.points_used == 64);
}

TEST_CASE("norm_lower_bound: restriction monotonicity") {
  const SymbolMap up = SymbolMap::affine(1.0, Cx(0, 1));
  const auto pts32 = real_spread(32, 2.4);
  const std::vector<Cx> pts16(pts32.begin(), pts32.begin() + 16);
  const auto small = norm_lower_bound(KernelKind::de_branges(pw1()), up, pts16);
  const auto large = norm_lower_bound(KernelKind::de_branges(pw1()), up, pts32);
  CHECK(small.lower_bound <= large.lower_bound + 1e-9);
}

TEST_CASE("norm_lower_bound: adjoint-on-kernels identity at the matrix level") {
  const InnerFn chi = inner_from_hb(pw1());
  const SymbolMap up = SymbolMap::affine(1.0, Cx(0, 1));
  const std::vector<Cx> pts = {Cx(0.3, 0.8), Cx(-1.1, 2.0)};
  const auto est = norm_lower_bound(KernelKind::model(chi), up, pts);

  CMatrix G(2), M(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      G.at(i, j) = hardy_kernel(pts[i], pts[j]);
      M.at(i, j) = model_kernel(chi, up.eval(pts[i]), up.eval(pts[j]));
    }
  const double manual = std::sqrt(gen_eig_max(M, G));
  CHECK(est.lower_bound == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("norm_lower_bound: duplicate points collapse to duplicate images") {
  const auto est = norm_lower_bound(KernelKind::hardy(), SymbolMap::affine(1.0, Cx(0, 1)),
                                    {I, I, 2.0 * I, 3.0 * I});
  CHECK(est.image_duplicates);
  CHECK_FALSE(est.converged);
  CHECK(est.points_used == 3);
}

TEST_CASE("norm_upper_bound_affine: closed forms and cross-check") {
  const GrowthLadder ladder = GrowthLadder::standard();
  CHECK(norm_upper_bound_affine(pw1(), 1.0, Cx(0, 1), 201, ladder) ==
        doctest::Approx(kE * kE).epsilon(1e-3));
  CHECK(norm_upper_bound_affine(pw1(), 1.0, Cx(0, 0), 201, ladder) ==
        doctest::Approx(1.0).epsilon(1e-6));

  const std::vector<std::pair<double, Cx>> cases = {
      {1.0, Cx(0, 1)}, {0.5, Cx(0, 1)}, {0.5, Cx(1, 1)}};
  for (const auto& [a, b] : cases) {
    const double upper = norm_upper_bound_affine(pw1(), a, b, 201, ladder);
    const auto lower = norm_lower_bound(KernelKind::de_branges(pw1()),
                                        SymbolMap::affine(a, b), real_spread(48, 2.4));
    CHECK(lower.lower_bound <= upper * (1.0 + 1e-6));
  }
}

TEST_CASE("compactness_probe_model: translated meromorphic inner function") {
  const InnerFn chi = inner_from_hb(pw1());
  const auto probe =
      compactness_probe_model(chi, SymbolMap::affine(1.0, Cx(0, 1)), standard_grid());
  CHECK(probe.verdict == "not_compact");
  CHECK(probe.limsup_estimate == doctest::Approx(1.0).epsilon(1e-3));

  const auto ident =
      compactness_probe_model(chi, SymbolMap::affine(1.0, Cx(0, 0)), standard_grid());
  CHECK(ident.verdict == "not_compact");
  CHECK(ident.limsup_estimate == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("compactness_probe_model: constant inner function is inconclusive") {
  const InnerFn c = InnerFn::parametric(0.0, {}, Cx(0, 1));
  const auto probe =
      compactness_probe_model(c, SymbolMap::affine(1.0, Cx(0, 1)), standard_grid());
  CHECK(probe.verdict == "inconclusive");
  CHECK(probe.limsup_estimate <= 1e-12);
}

TEST_CASE("compactness_probe_db: root-count precondition and d semantics") {
  CHECK_THROWS_AS(
      compactness_probe_db(pw1(), SymbolMap::affine(1.0, Cx(0, 1)), 0.0, 1.0, 0.01),
      std::invalid_argument);
  const auto probe =
      compactness_probe_db(pw1(), SymbolMap::affine(1.0, Cx(0, 1)), 0.5, 25.0, 0.02, 10.0);
  CHECK(probe.verdict == "inconclusive");  // limsup 1.813 < d = 10
  CHECK(probe.limsup_estimate == doctest::Approx(1.8134302).epsilon(1e-7));
  CHECK(probe.sequence_values.size() >= 5);
}

TEST_CASE("regularity_check: the three shipped shapes") {
  QuadratureSpec spec;
  const auto flat = regularity_check(pw1(), spec);
  CHECK(flat.regular);
  CHECK(flat.converged);
  CHECK(flat.integral_value == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-8));

  const auto tilted =
      regularity_check(HermiteBiehlerFn::exponential(Cx(1, 0), Cx(1, 1)), spec);
  CHECK_FALSE(tilted.regular);
  CHECK_FALSE(tilted.converged);

  const auto poly =
      regularity_check(HermiteBiehlerFn::polynomial(Cx(1, 0), {Cx(0, -1)}), spec);
  CHECK(poly.regular);
  CHECK(poly.integral_value == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-8));
}

TEST_CASE("classify_symbol: polynomial trichotomy") {
  const auto E = pw1();
  CHECK(classify_symbol({Cx(0, 1), Cx(0, 0), Cx(1, 0)}, E).verdict == "nonaffine_rejected");
  CHECK(classify_symbol({Cx(0, 1), Cx(0.5, 0)}, E).verdict == "affine_admissible");
  CHECK(classify_symbol({Cx(0, 1)}, E).verdict == "constant_degenerate");
  const auto bad = classify_symbol({Cx(0, 1), Cx(-0.5, 0)}, E);
  CHECK(bad.verdict == "nonaffine_rejected");
  CHECK(bad.detail.find("self-map") != std::string::npos);
}

TEST_CASE("mt_membership_checks: kernel section belongs, fast growth does not") {
  const auto E = pw1();
  const GrowthLadder ladder = GrowthLadder::standard();
  QuadratureSpec spec;
  spec.abs_tol = 1e-5;
  spec.rel_tol = 1e-4;
  spec.max_refinement_depth = 22;

  const auto member = mt_membership_checks(E, kernel_section(E, Cx(0, 0)), ladder, spec);
  CHECK(member.member);
  REQUIRE(member.mt_f_over_E.has_value());
  CHECK(*member.mt_f_over_E <= 1e-3);
  CHECK(*member.mt_fstar_over_E <= 1e-3);
  CHECK(member.l2_norm_sq == doctest::Approx(1.0 / kPi).epsilon(1e-3));

  const auto fast = mt_membership_checks(
      E, fn_from_hb(HermiteBiehlerFn::exponential(Cx(1, 0), Cx(2, 0))), ladder, spec);
  CHECK_FALSE(fast.member);
  CHECK(*fast.mt_f_over_E == doctest::Approx(1.0).epsilon(1e-3));

  const auto zero = mt_membership_checks(E, fn_const(Cx(0, 0)), ladder, spec);
  CHECK(zero.member);
  CHECK_FALSE(zero.mt_f_over_E.has_value());
  CHECK(zero.l2_norm_sq == 0.0);
}

TEST_CASE("L-kernel PSD exactly when lambda dominates the ratio sup") {
  const InnerFn chi = inner_from_hb(pw1());
  const SymbolMap half = SymbolMap::affine(0.5, Cx(0, 0));  // sup ratio = 2
  int fails_low = 0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto pts = random_upper_points(15, 700 + seed);
    const auto high = positivity_gram_L(chi, half, 2.0 * (1.0 + 1e-3), pts);
    CHECK(psd_check(high.entries, 1e-9).verdict);
    const auto low = positivity_gram_L(chi, half, 2.0 * 0.8, pts);
    if (!psd_check(low.entries, 1e-6).verdict) ++fails_low;
  }
  CHECK(fails_low >= 1);
}
