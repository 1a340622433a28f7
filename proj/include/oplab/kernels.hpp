#ifndef OPLAB_KERNELS_HPP
#define OPLAB_KERNELS_HPP

#include <vector>

#include "oplab/funclib.hpp"
#include "oplab/numerics.hpp"

namespace oplab {

/// K^{H2}_w(z) = 1 / (-2 pi i (z - conj w)), both points in C+.
Cx hardy_kernel(Cx z, Cx w);

/// K^{chi}_w(z) = (1 - conj(chi(w)) chi(z)) / (-2 pi i (z - conj w)).
Cx model_kernel(const InnerFn& chi, Cx z, Cx w);

/**
 * de Branges kernel
 *   (E(z) conj(E(w)) - E#(z) conj(E#(w))) / (-2 pi i (z - conj w)),
 * defined for all z, w; switches to the L'Hopital limit
 *   (E'(conj w) conj(E(w)) - E#'(conj w) conj(E#(w))) / (-2 pi i)
 * when |z - conj w| < 1e-10.
 */
Cx db_kernel(const HermiteBiehlerFn& E, Cx z, Cx w);

/// Which reproducing kernel a Gram matrix or norm estimate refers to.
class KernelKind {
 public:
  enum class Tag { hardy, model, de_branges };

  static KernelKind hardy();
  static KernelKind model(InnerFn chi);
  static KernelKind de_branges(HermiteBiehlerFn E);

  Tag tag() const { return tag_; }
  const InnerFn& chi() const;
  const HermiteBiehlerFn& hb() const;

  Cx eval(Cx z, Cx w) const;

 private:
  KernelKind() = default;
  Tag tag_ = Tag::hardy;
  std::optional<InnerFn> chi_;
  std::optional<HermiteBiehlerFn> hb_;
};

/// K(z, z), asserted real and nonnegative (ConsistencyError otherwise).
double kernel_norm_sq(const KernelKind& kind, Cx z);

struct KernelMatrix {
  std::vector<Cx> points;
  CMatrix entries;  // entries(i,j) = K(z_i, z_j), Hermitian-symmetrized
};

/**
 * Gram matrix of the kernel over pairwise-distinct points (tolerance 1e-12;
 * a duplicate pair raises std::invalid_argument naming the indices).
 */
KernelMatrix gram(const KernelKind& kind, const std::vector<Cx>& points);

/// L(z,w) = lambda K^{H2}(z,w) - K^{chi}(phi(z), phi(w)); PSD iff lambda
/// dominates sup Im z / Im phi(z).
Cx positivity_kernel_L(const InnerFn& chi, const SymbolMap& phi, double lambda,
                       Cx z, Cx w);

KernelMatrix positivity_gram_L(const InnerFn& chi, const SymbolMap& phi,
                               double lambda, const std::vector<Cx>& points);

/// z -> K_w(z) for the de Branges kernel, with a log-magnitude channel so
/// growth probes along iy stay overflow-free.
FnEvaluator kernel_section(const HermiteBiehlerFn& E, Cx w);

inline EigenResult herm_eig(const KernelMatrix& m) { return herm_eig(m.entries); }
inline PsdReport psd_check(const KernelMatrix& m, double tol_scale) {
  return psd_check(m.entries, tol_scale);
}
inline double gen_eig_max(const KernelMatrix& m, const KernelMatrix& g,
                          double jitter = 1e-12) {
  return gen_eig_max(m.entries, g.entries, jitter);
}

}  // namespace oplab

#endif
