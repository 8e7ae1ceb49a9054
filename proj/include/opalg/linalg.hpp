#pragma once

// Dense complex linear algebra with an explicit numerical-rank policy.
//
// Conventions used throughout the library:
//  * vec() stacks columns: vec(M)[i + j * rows] = M(i, j). Every Sylvester
//    style assembly below relies on this, e.g. vec(A X B) = (B^T kron A) vec(X).
//  * Subspaces are always stored through orthonormal bases. Operator spaces
//    use the trace inner product <X, Y> = tr(Y^* X), which is the Euclidean
//    inner product of the vectorizations.
//  * Numerical rank counts singular values strictly greater than
//    rank_rel * sigma_max; sigma_max == 0 means rank 0.
//  * The ampliation of M by k is the block diagonal I_k kron M, i.e. H^(k) is
//    ordered as k consecutive copies of H.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace opalg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerance {
  double rank_rel = 1e-9;   // relative singular value threshold
  double match_abs = 1e-8;  // absolute comparison threshold

  /// Throws InputError unless both thresholds are positive and finite.
  void validate() const;
};

/// A subspace of C^n held as an orthonormal set of columns.
class Subspace {
 public:
  Subspace() = default;
  /// `basis` must already have orthonormal columns.
  Subspace(Index ambient_dim, CMatrix basis);

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const CMatrix& basis() const { return basis_; }

  CVector project(const CVector& v) const;
  /// Euclidean distance from v to the subspace.
  double residual(const CVector& v) const;
  bool contains(const CVector& v, const Tolerance& tol) const;

 private:
  Index ambient_ = 0;
  CMatrix basis_;
};

/// A linear subspace of rows x cols complex matrices, orthonormal under the
/// trace inner product. Internally the vectorized basis is kept as the columns
/// of a (rows*cols) x dim matrix.
class OperatorSubspace {
 public:
  OperatorSubspace() = default;
  /// `vectorized` must have rows*cols rows and orthonormal columns.
  OperatorSubspace(Index rows, Index cols, CMatrix vectorized);

  static OperatorSubspace zero(Index rows, Index cols);
  static OperatorSubspace full(Index rows, Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index dim() const { return coords_.cols(); }
  const CMatrix& vectorized() const { return coords_; }

  CMatrix element(Index i) const;
  std::vector<CMatrix> basis() const;

  /// Orthogonal projection of X onto the space.
  CMatrix project(const CMatrix& X) const;
  /// Frobenius distance from X to the space.
  double residual(const CMatrix& X) const;
  bool contains(const CMatrix& X, const Tolerance& tol) const;
  /// Coordinates of X with respect to the orthonormal basis.
  CVector coordinates(const CMatrix& X) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  CMatrix coords_;
};

struct RankNullspace {
  Index rank = 0;
  Subspace null;
};

/// Numerical rank and an orthonormal basis of the kernel of M. Singular
/// values count when above rank_rel * max(sigma_max, scale); pass the size of
/// the operands M was assembled from so that a difference that cancels to
/// roundoff is recognized as zero.
RankNullspace rank_nullspace(const CMatrix& M, const Tolerance& tol = {}, double scale = 0.0);

/// Singular values of M in decreasing order.
Eigen::VectorXd singular_values(const CMatrix& M);

Index numerical_rank(const CMatrix& M, const Tolerance& tol = {});

/// Number of singular values strictly above an absolute threshold. Used where
/// the matrix has a known O(1) scale and can be exactly zero up to roundoff.
Index rank_above(const CMatrix& M, double threshold);

/// Orthonormal basis of the range of M under the relative rank policy.
Subspace column_space(const CMatrix& M, const Tolerance& tol = {});

Subspace orthogonal_complement(const Subspace& S);

/// Smallest subspace containing both arguments.
Subspace subspace_sum(const Subspace& a, const Subspace& b, const Tolerance& tol = {});

bool subspace_leq(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
bool subspace_equal(const Subspace& a, const Subspace& b, const Tolerance& tol = {});

CVector vec(const CMatrix& M);
CMatrix unvec(const CVector& v, Index rows, Index cols);

/// Orthonormal basis of the linear span. The list must be non-empty so the
/// shape is known; use the overload with an explicit shape otherwise.
OperatorSubspace span_of(const std::vector<CMatrix>& mats, const Tolerance& tol = {});
OperatorSubspace span_of(const std::vector<CMatrix>& mats, Index rows, Index cols,
                         const Tolerance& tol = {});

/// Largest distance of a basis element of `a` from `b`; 0 when a <= b exactly.
double subspace_excess(const OperatorSubspace& a, const OperatorSubspace& b);
bool subspace_leq(const OperatorSubspace& a, const OperatorSubspace& b,
                  const Tolerance& tol = {});
bool subspace_equal(const OperatorSubspace& a, const OperatorSubspace& b,
                    const Tolerance& tol = {});

OperatorSubspace operator_sum(const OperatorSubspace& a, const OperatorSubspace& b,
                              const Tolerance& tol = {});
/// Orthonormal basis of the part of `outer` orthogonal to `inner`.
OperatorSubspace relative_complement(const OperatorSubspace& inner,
                                     const OperatorSubspace& outer,
                                     const Tolerance& tol = {});
/// The space { X^* : X in S }.
OperatorSubspace adjoint_space(const OperatorSubspace& S);

/// I_k kron M: k diagonal copies of M. Throws InputError for k == 0.
CMatrix ampliate(const CMatrix& M, Index k);
OperatorSubspace ampliate_space(const OperatorSubspace& S, Index k,
                                const Tolerance& tol = {});

/// Kronecker product A kron B.
CMatrix kron(const CMatrix& A, const CMatrix& B);

/// Block diagonal matrix with the given (possibly rectangular) blocks.
CMatrix block_diagonal(std::span<const CMatrix> blocks);

/// Solution space { X (rows x cols) : X * right[i] == left[i] * X for all i }.
/// right[i] is cols x cols, left[i] is rows x rows.
OperatorSubspace sylvester_kernel(std::span<const CMatrix> right,
                                  std::span<const CMatrix> left, Index rows, Index cols,
                                  const Tolerance& tol = {});

/// Smallest subspace of C^n containing the columns of `seed` and invariant
/// under every operator in `ops`.
Subspace invariant_hull(std::span<const CMatrix> ops, const CMatrix& seed, const Tolerance& tol = {});

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const CMatrix& M);
bool all_finite(const CMatrix& M);

}  // namespace opalg
