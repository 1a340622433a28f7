#include "oplab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace oplab {

namespace {
constexpr std::size_t kMaxEigenDim = 200;
constexpr long kQuadEvalBudget = 4'000'000;
}  // namespace

// ---------------------------------------------------------------- CMatrix

void CMatrix::hermitize() {
  for (std::size_t i = 0; i < n_; ++i) {
    at(i, i) = Cx(at(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Cx avg = 0.5 * (at(i, j) + std::conj(at(j, i)));
      at(i, j) = avg;
      at(j, i) = std::conj(avg);
    }
  }
}

double CMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += at(i, i).real();
  return t;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const Cx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s += std::norm(at(i, j) - std::conj(at(j, i)));
  return std::sqrt(s);
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Cx(1.0, 0.0);
  return m;
}

// ------------------------------------------------------------- SectorGrid

void SectorGrid::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("SectorGrid: kappa must be > 0");
  if (!(y_min > 0.0)) throw std::invalid_argument("SectorGrid: y_min must be > 0");
  // y_min == y_max is tolerated and denotes an empty grid.
  if (!(y_min <= y_max)) throw std::invalid_argument("SectorGrid: need y_min <= y_max");
  if (points_per_decade < 4)
    throw std::invalid_argument("SectorGrid: points_per_decade must be >= 4");
  if (x_samples < 3) throw std::invalid_argument("SectorGrid: x_samples must be >= 3");
}

std::vector<Cx> sector_points(const SectorGrid& grid) {
  grid.validate();
  if (grid.y_min == grid.y_max) return {};
  const double decades = std::log10(grid.y_max / grid.y_min);
  const int steps = std::max(1, static_cast<int>(
      std::ceil(grid.points_per_decade * decades - 1e-9)));
  std::vector<Cx> pts;
  pts.reserve(static_cast<std::size_t>(steps + 1) * grid.x_samples);
  for (int k = 0; k <= steps; ++k) {
    double y = grid.y_min * std::pow(10.0, static_cast<double>(k) / grid.points_per_decade);
    if (y > grid.y_max) y = grid.y_max;
    for (int j = 0; j < grid.x_samples; ++j) {
      const double frac = -1.0 + 2.0 * j / (grid.x_samples - 1);
      pts.emplace_back(grid.kappa * y * frac, y);
    }
  }
  return pts;
}

// ------------------------------------------------------------- quadrature

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (max_refinement_depth < 10)
    throw std::invalid_argument("QuadratureSpec: max_refinement_depth must be >= 10");
}

namespace {

struct QuadState {
  const std::function<double(double)>* f;
  long evals = 0;
  bool exhausted = false;  // depth or budget ran out somewhere

  double g(double theta) {
    ++evals;
    const double t = std::tan(theta);
    const double v = (*f)(t) * (1.0 + t * t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate_line: non-finite integrand value at t = " << t;
      throw ConsistencyError(os.str());
    }
    return v;
  }
};

// Adaptive Simpson with Richardson correction on [a, b].  A panel that hits
// the depth cap is accepted but charged its whole magnitude to the error
// budget, so finely-oscillatory tails can converge while genuinely divergent
// integrands cannot.
void adapt_simpson(QuadState& st, double a, double b, double fa, double fm, double fb,
                   double S, double tol, int depth, double& value, double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (st.evals > kQuadEvalBudget) {
    st.exhausted = true;
    value += S;
    err += std::abs(S) * 1e-2 + tol;
    return;
  }
  const double flm = st.g(lm);
  const double frm = st.g(rm);
  const double Sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double Sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double S2 = Sl + Sr;
  const double e = (S2 - S) / 15.0;
  if (std::abs(e) <= tol) {
    value += S2 + e;
    err += std::abs(e);
    return;
  }
  if (depth <= 0) {
    value += S2 + e;
    err += std::abs(S2) + std::abs(e);
    return;
  }
  adapt_simpson(st, a, m, fa, flm, fm, Sl, 0.5 * tol, depth - 1, value, err);
  adapt_simpson(st, m, b, fm, frm, fb, Sr, 0.5 * tol, depth - 1, value, err);
}

}  // namespace

QuadratureResult integrate_line(const std::function<double(double)>& f,
                                const QuadratureSpec& spec) {
  spec.validate();
  QuadState st{&f};
  const double lo = -0.5 * kPi;
  const double hi = 0.5 * kPi;
  const int boot = 16;

  // Bootstrap pass to size the relative-tolerance target.
  std::vector<double> nodes(boot + 1), fv(boot + 1);
  for (int i = 0; i <= boot; ++i) {
    nodes[i] = lo + (hi - lo) * i / boot;
    fv[i] = st.g(nodes[i]);
  }
  double rough = 0.0;
  for (int i = 0; i < boot; ++i)
    rough += (nodes[i + 1] - nodes[i]) * 0.5 * (fv[i] + fv[i + 1]);
  const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(rough));

  double value = 0.0, err = 0.0;
  for (int i = 0; i < boot; ++i) {
    const double a = nodes[i], b = nodes[i + 1];
    const double fm = st.g(0.5 * (a + b));
    const double S = (b - a) / 6.0 * (fv[i] + 4.0 * fm + fv[i + 1]);
    adapt_simpson(st, a, b, fv[i], fm, fv[i + 1], S, target / boot,
                  spec.max_refinement_depth, value, err);
  }

  QuadratureResult res;
  res.value = value;
  res.error_estimate = err;
  res.converged = !st.exhausted &&
                  err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  return res;
}

// ------------------------------------------------------------- real_roots

std::vector<double> real_roots(const std::function<double(double)>& f,
                               double lo, double hi, double resolution) {
  if (!(resolution > 0.0) || !(resolution < hi - lo))
    throw std::invalid_argument("real_roots: need 0 < resolution < hi - lo");
  const int steps = static_cast<int>(std::ceil((hi - lo) / resolution));
  std::vector<double> roots;
  double x0 = lo, f0 = f(x0);
  for (int k = 1; k <= steps; ++k) {
    const double x1 = std::min(hi, lo + (hi - lo) * k / steps);
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double a = x0, b = x1, va = f0;
      for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double vm = f(m);
        if (vm == 0.0) { a = b = m; break; }
        if (va * vm < 0.0) { b = m; } else { a = m; va = vm; }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  // Dedupe nearly-equal brackets.
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 1e-12 * std::max(1.0, std::abs(r))) out.push_back(r);
  return out;
}

// --------------------------------------------------------------- herm_eig

EigenResult herm_eig(const CMatrix& m_in) {
  const std::size_t n = m_in.size();
  if (n == 0) return {{}, 0.0, CMatrix(0)};
  if (n > kMaxEigenDim)
    throw std::invalid_argument("herm_eig: dimension exceeds the dense cap of 200");
  const double fro = m_in.frobenius();
  const double defect = m_in.hermiticity_defect();
  if (defect > 1e-10 * std::max(fro, 1e-300)) {
    std::ostringstream os;
    os << "herm_eig: matrix is not Hermitian (defect " << defect << ", scale " << fro << ")";
    throw std::invalid_argument(os.str());
  }

  CMatrix a = m_in;
  a.hermitize();
  CMatrix v = CMatrix::identity(n);

  auto offdiag = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * std::norm(a.at(p, q));
    return std::sqrt(s);
  };

  const double tol = 1e-14 * std::max(fro, 1e-300);
  for (int sweep = 0; sweep < 100 && offdiag() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Cx apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-18 * std::max(fro, 1e-300)) continue;
        const Cx u = apq / r;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0)
            ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Cx ub = std::conj(u);
        // Column update: col_p <- c col_p - s conj(u) col_q; col_q <- s col_p + c conj(u) col_q.
        for (std::size_t k = 0; k < n; ++k) {
          const Cx akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * ub * akq;
          a.at(k, q) = s * akp + c * ub * akq;
          const Cx vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s * ub * vkq;
          v.at(k, q) = s * vkp + c * ub * vkq;
        }
        // Row update with J^H.
        for (std::size_t k = 0; k < n; ++k) {
          const Cx apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * u * aqk;
          a.at(q, k) = s * apk + c * u * aqk;
        }
        a.at(p, q) = Cx(0.0, 0.0);
        a.at(q, p) = Cx(0.0, 0.0);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a.at(i, i).real() < a.at(j, j).real();
  });

  EigenResult res;
  res.eigenvalues.resize(n);
  res.vectors = CMatrix(n);
  for (std::size_t c2 = 0; c2 < n; ++c2) {
    res.eigenvalues[c2] = a.at(order[c2], order[c2]).real();
    for (std::size_t k = 0; k < n; ++k) res.vectors.at(k, c2) = v.at(k, order[c2]);
  }

  // Residual against the original matrix.
  double worst = 0.0;
  for (std::size_t c2 = 0; c2 < n; ++c2) {
    double rs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Cx acc(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) acc += m_in.at(i, j) * res.vectors.at(j, c2);
      acc -= res.eigenvalues[c2] * res.vectors.at(i, c2);
      rs += std::norm(acc);
    }
    worst = std::max(worst, std::sqrt(rs));
  }
  res.residual = worst / std::max(fro, 1e-300);
  return res;
}

// ---------------------------------------------------- Cholesky + gen_eig

namespace {

// Lower-triangular Cholesky; returns false when a pivot is non-positive.
bool cholesky(const CMatrix& a, CMatrix& l) {
  const std::size_t n = a.size();
  l = CMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a.at(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l.at(j, k));
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double ljj = std::sqrt(diag);
    l.at(j, j) = Cx(ljj, 0.0);
    for (std::size_t i = j + 1; i < n; ++i) {
      Cx acc = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l.at(i, k) * std::conj(l.at(j, k));
      l.at(i, j) = acc / ljj;
    }
  }
  return true;
}

// Solves L X = B for X (L lower-triangular), overwriting a copy of B.
CMatrix forward_solve(const CMatrix& l, const CMatrix& b) {
  const std::size_t n = l.size();
  CMatrix x = b;
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      Cx acc = x.at(i, col);
      for (std::size_t k = 0; k < i; ++k) acc -= l.at(i, k) * x.at(k, col);
      x.at(i, col) = acc / l.at(i, i);
    }
  }
  return x;
}

CMatrix conj_transpose(const CMatrix& a) {
  const std::size_t n = a.size();
  CMatrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = std::conj(a.at(j, i));
  return t;
}

}  // namespace

double gen_eig_max(const CMatrix& m, const CMatrix& g, double jitter) {
  const std::size_t n = m.size();
  if (n == 0 || g.size() != n)
    throw std::invalid_argument("gen_eig_max: matrices must be square and same size");
  CMatrix mh = m, gh = g;
  mh.hermitize();
  gh.hermitize();
  const double base = std::max(gh.trace_real() / n, 1e-300);

  CMatrix l;
  bool ok = false;
  for (double rel = std::max(jitter, 1e-300); rel <= 1e-8 * 1.0000001; rel *= 10.0) {
    CMatrix gj = gh;
    for (std::size_t i = 0; i < n; ++i) gj.at(i, i) += Cx(rel * base, 0.0);
    if (cholesky(gj, l)) { ok = true; break; }
  }
  if (!ok)
    throw ConditioningError("gen_eig_max: Cholesky failed after jitter escalation to 1e-8");

  const CMatrix w = forward_solve(l, mh);        // W = L^{-1} M
  CMatrix b = forward_solve(l, conj_transpose(w));  // B = L^{-1} M L^{-H}
  b.hermitize();
  const EigenResult e = herm_eig(b);
  return e.eigenvalues.back();
}

PsdReport psd_check(const CMatrix& m, double tol_scale) {
  const EigenResult e = herm_eig(m);
  PsdReport rep;
  rep.min_eigenvalue = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
  rep.verdict = rep.min_eigenvalue >= -tol_scale * m.trace_real();
  if (!rep.verdict) {
    std::vector<Cx> w(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) w[k] = e.vectors.at(k, 0);
    rep.witness = std::move(w);
  }
  return rep;
}

}  // namespace oplab
