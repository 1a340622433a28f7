#include "oplab/grid_export.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace oplab {

namespace {

double im_ratio(Cx z, Cx w) {
  if (!(w.imag() > 0.0))
    throw std::domain_error("grid export: self-map violation at the sampled point");
  return z.imag() / w.imag();
}

}  // namespace

int run_grid_export(const AnalysisConfig& cfg, const std::string& quantity,
                    const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "grid: cannot open output path " << out_path << "\n";
    return 2;
  }
  out << "x,y,value\n";

  const std::vector<Cx> pts = sector_points(cfg.grid);
  if (pts.empty()) return 0;  // header-only export

  try {
    std::vector<double> values(pts.size());
    const SymbolMap& phi = *cfg.symbol;

    if (quantity == "Q1") {
      for (std::size_t i = 0; i < pts.size(); ++i)
        values[i] = im_ratio(pts[i], phi.eval(pts[i]));
    } else if (quantity == "Q2") {
      if (!cfg.chi) throw std::invalid_argument("Q2 export needs an inner function chi");
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Cx w = phi.eval(pts[i]);
        const double mod = std::exp(cfg.chi->log_abs(w));
        values[i] = im_ratio(pts[i], w) * (1.0 - mod * mod);
      }
    } else if (quantity == "Q3") {
      if (!cfg.E) throw std::invalid_argument("Q3 export needs a Hermite-Biehler E");
      const HermiteBiehlerFn& E = *cfg.E;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Cx z = pts[i];
        const Cx w = phi.eval(z);
        const double lEw = E.log_eval(w).real();
        const double lEz = E.log_eval(z).real();
        const double chi_w = std::exp(2.0 * (E.star_log(w).real() - lEw));
        const double chi_z = std::exp(2.0 * (E.star_log(z).real() - lEz));
        values[i] = im_ratio(z, w) * std::exp(2.0 * std::min(lEw - lEz, 350.0)) *
                    (1.0 - chi_w) / (1.0 - chi_z);
      }
    } else if (quantity == "ratio") {
      if (!cfg.E) throw std::invalid_argument("ratio export needs a Hermite-Biehler E");
      for (std::size_t i = 0; i < pts.size(); ++i)
        values[i] = std::exp(cfg.E->log_eval(phi.eval(pts[i])).real() -
                             cfg.E->log_eval(pts[i]).real());
    } else if (quantity == "L_mineig") {
      if (!cfg.chi) throw std::invalid_argument("L_mineig export needs an inner function chi");
      double lambda = 0.0;
      for (const Cx& z : pts) lambda = std::max(lambda, im_ratio(z, phi.eval(z)));
      const std::size_t win = std::min<std::size_t>(8, pts.size());
      std::vector<double> window_min(pts.size() - win + 1);
      for (std::size_t s = 0; s + win <= pts.size(); ++s) {
        const std::vector<Cx> wpts(pts.begin() + s, pts.begin() + s + win);
        const KernelMatrix L = positivity_gram_L(*cfg.chi, phi, lambda, wpts);
        window_min[s] = psd_check(L.entries, 0.0).min_eigenvalue;
      }
      for (std::size_t i = 0; i < pts.size(); ++i)
        values[i] = window_min[std::min(i, window_min.size() - 1)];
    } else {
      std::cerr << "grid: unknown quantity \"" << quantity
                << "\" (expected Q1 | Q2 | Q3 | ratio | L_mineig)\n";
      return 2;
    }

    char line[128];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", pts[i].real(), pts[i].imag(),
                    values[i]);
      out << line;
    }
  } catch (const std::exception& e) {
    std::cerr << "grid: " << e.what() << "\n";
    return 3;
  }
  if (!out.good()) {
    std::cerr << "grid: write failure on " << out_path << "\n";
    return 2;
  }
  return 0;
}

int run_gram_export(const AnalysisConfig& cfg, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "gram: cannot open output path " << out_path << "\n";
    return 2;
  }
  try {
    KernelKind kind = KernelKind::hardy();
    switch (cfg.space_kind) {
      case AnalysisConfig::SpaceKind::hardy: break;
      case AnalysisConfig::SpaceKind::model: kind = KernelKind::model(*cfg.chi); break;
      case AnalysisConfig::SpaceKind::debranges:
        kind = KernelKind::de_branges(*cfg.E);
        break;
    }
    std::vector<Cx> pts = cfg.resolve_norm_points();
    if (cfg.space_kind != AnalysisConfig::SpaceKind::debranges) {
      // Hardy/model kernels live on the open upper half-plane only.
      std::erase_if(pts, [](Cx z) { return !(z.imag() > 0.0); });
    }
    if (pts.empty()) throw std::invalid_argument("gram: no usable norm points");
    const KernelMatrix km = gram(kind, pts);
    char cell[64];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const Cx v = km.entries.at(i, j);
        std::snprintf(cell, sizeof cell, "%.17g,%.17g", v.real(), v.imag());
        out << cell;
        if (j + 1 < pts.size()) out << ',';
      }
      out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "gram: " << e.what() << "\n";
    return 3;
  }
  if (!out.good()) {
    std::cerr << "gram: write failure on " << out_path << "\n";
    return 2;
  }
  return 0;
}

}  // namespace oplab
