#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "opalg/linalg.hpp"

namespace opalg {

class Representation;

/// c(i, j, k) with b_i b_j = sum_k c(i, j, k) b_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(Index dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim)) {}

  Index dim() const { return dim_; }
  cplx& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
  cplx operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

 private:
  std::size_t offset(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * dim_ + j) * dim_ + k);
  }
  Index dim_ = 0;
  std::vector<cplx> data_;
};

/// A concrete subalgebra of M_n, held through a trace-orthonormal basis.
/// Construction validates multiplicative closure and precomputes the
/// structure constants and the identity element (if any).
class MatrixAlgebra {
 public:
  MatrixAlgebra(OperatorSubspace basis, const Tolerance& tol = {});

  Index dim_H() const { return space_.rows(); }
  Index dim() const { return space_.dim(); }
  const OperatorSubspace& space() const { return space_; }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const StructureConstants& structure() const { return structure_; }
  const std::optional<CMatrix>& identity() const { return identity_; }

  /// Same concrete algebra with the same basis (elementwise within match_abs).
  bool same_as(const MatrixAlgebra& other, const Tolerance& tol = {}) const;

 private:
  OperatorSubspace space_;
  std::vector<CMatrix> basis_;
  StructureConstants structure_;
  std::optional<CMatrix> identity_;
};

using AlgebraPtr = std::shared_ptr<const MatrixAlgebra>;

/// Smallest multiplicatively closed subspace of M_n containing `gens`.
/// Iterates S <- span(S + S*G) until the dimension stabilizes.
AlgebraPtr generate_algebra(const std::vector<CMatrix>& gens, const Tolerance& tol = {});

/// Algebra generated by `gens` together with their adjoints.
AlgebraPtr star_closure(const std::vector<CMatrix>& gens, const Tolerance& tol = {});

/// Element e of the algebra with e b = b e = b for every basis element b,
/// found by least squares over basis coordinates and accepted only if the
/// residual is below match_abs.
std::optional<CMatrix> find_identity(const MatrixAlgebra& A, const Tolerance& tol = {});

StructureConstants structure_constants(const MatrixAlgebra& A);

/// max over basis pairs of || b_i b_j - P(b_i b_j) ||_F.
double closure_residual(const OperatorSubspace& S);

/// The coordinate map of the representation (basis coordinates -> images)
/// has trivial kernel.
bool is_faithful(const Representation& rep, const Tolerance& tol = {});

/// span{ rho(b) xi } is the whole space.
bool is_nondegenerate(const Representation& rep, const Tolerance& tol = {});

/// x lies within match_abs of span{ rho(b_i) x } after normalizing x to unit
/// length. Throws InputError for x == 0.
bool cyclic_membership(const Representation& rep, const CVector& x, const Tolerance& tol = {});

}  // namespace opalg
