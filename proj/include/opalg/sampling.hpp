#pragma once

// Seeded random instances. Every randomized routine in the library takes an
// explicit seed or generator; nothing here keeps global state.

#include <cstdint>
#include <random>
#include <vector>

#include "opalg/linalg.hpp"

namespace opalg::sampling {

using Rng = std::mt19937_64;

/// I.i.d. standard complex Gaussian entries (real and imaginary parts N(0, 1/2)).
CMatrix ginibre(Index rows, Index cols, Rng& rng);
CVector gaussian_vector(Index n, Rng& rng);
CVector random_unit_vector(Index n, Rng& rng);
/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
CMatrix random_unitary(Index n, Rng& rng);

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const CMatrix& M);

/// Ginibre matrix rescaled to spectral norm exactly 1 (zero if a dimension is 0).
CMatrix random_contraction(Index rows, Index cols, Rng& rng);
/// Product of Ginibre factors with the requested rank, rescaled to norm 1.
CMatrix random_with_rank(Index rows, Index cols, Index rank, Rng& rng);
/// Random invertible n x n contraction whose condition number is at most `max_cond`.
CMatrix random_invertible_contraction(Index n, double max_cond, Rng& rng);

/// Probe vectors for invariant-subspace tests.
///
/// Gaussian vectors almost never lie in a proper invariant subspace, so they
/// cannot expose operators that fail to preserve one. The sampler therefore
/// cycles through four pools: plain Gaussian vectors, eigenvectors of random
/// elements of span(ops), vectors in the range of random elements and vectors
/// in the kernel of individual operators. Results are deterministic per seed.
class ProbeVectorSampler {
 public:
  ProbeVectorSampler(std::vector<CMatrix> ops, Index dim, std::uint64_t seed,
                     const Tolerance& tol = {});

  /// Next nonzero unit vector.
  CVector next();

 private:
  CVector eigen_probe();
  CVector range_probe();
  CVector kernel_probe();
  CMatrix random_element();

  std::vector<CMatrix> ops_;
  std::vector<Subspace> kernels_;
  Index dim_;
  Tolerance tol_;
  Rng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace opalg::sampling
