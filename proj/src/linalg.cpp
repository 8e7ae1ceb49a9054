#include "opalg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opalg/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace opalg {

namespace {

// Divide-and-conquer SVD through LAPACK (zgesdd). Eigen's BDCSVD mishandles
// deflation for the highly degenerate stacked Sylvester systems that appear
// here, so it is not used. JacobiSVD is the fallback if LAPACK reports failure.
struct Svd {
  Eigen::VectorXd s;
  CMatrix U;  // thin, m x min(m, n)
  CMatrix V;  // full, n x n
};

enum class SvdPart { values, thin_u, full_v };

Svd compute_svd(const CMatrix& M, SvdPart part) {
  const lapack_int m = static_cast<lapack_int>(M.rows()), n = static_cast<lapack_int>(M.cols());
  const lapack_int k = std::min(m, n);
  CMatrix a = M;
  Svd out;
  out.s.resize(k);
  char jobz = 'N';
  CMatrix u(1, 1), vt(1, 1);
  lapack_int ldu = 1, ldvt = 1;
  if (part == SvdPart::thin_u) {
    jobz = 'S';
    u.resize(m, k);
    vt.resize(k, n);
    ldu = std::max<lapack_int>(1, m);
    ldvt = std::max<lapack_int>(1, k);
  } else if (part == SvdPart::full_v) {
    jobz = 'A';
    u.resize(m, m);
    vt.resize(n, n);
    ldu = std::max<lapack_int>(1, m);
    ldvt = std::max<lapack_int>(1, n);
  }
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, m, n, a.data(), std::max<lapack_int>(1, m),
                                         out.s.data(), u.data(), ldu, vt.data(), ldvt);
  if (info == 0) {
    if (part == SvdPart::thin_u) out.U = u;
    if (part == SvdPart::full_v) out.V = vt.adjoint();
    return out;
  }
  const unsigned opts = part == SvdPart::thin_u   ? Eigen::ComputeThinU
                        : part == SvdPart::full_v ? Eigen::ComputeFullV
                                                  : 0u;
  Eigen::JacobiSVD<CMatrix> svd(M, opts);
  out.s = svd.singularValues();
  if (part == SvdPart::thin_u) out.U = svd.matrixU();
  if (part == SvdPart::full_v) out.V = svd.matrixV();
  return out;
}

// Square factor with the same singular values and right singular vectors as M.
// Tall matrices are reduced through a QR factorization first; this keeps the
// stacked Sylvester systems (many rows, few columns) cheap to decompose.
CMatrix reduce_rows(const CMatrix& M) {
  if (M.rows() <= M.cols()) return M;
  Eigen::HouseholderQR<CMatrix> qr(M);
  CMatrix R = qr.matrixQR().topRows(M.cols()).triangularView<Eigen::Upper>();
  return R;
}

Index count_above(const Eigen::VectorXd& sv, double threshold) {
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > threshold) ++r;
  return r;
}

Index relative_rank(const Eigen::VectorXd& sv, const Tolerance& tol, double scale = 0.0) {
  if (sv.size() == 0) return 0;
  const double smax = std::max(sv.maxCoeff(), scale);
  if (smax == 0.0) return 0;
  return count_above(sv, tol.rank_rel * smax);
}

void require_same_shape(const OperatorSubspace& a, const OperatorSubspace& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("operator subspace shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
}

}  // namespace

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !std::isfinite(rank_rel))
    throw InputError("tolerance rank_rel must be positive and finite");
  if (!(match_abs > 0.0) || !std::isfinite(match_abs))
    throw InputError("tolerance match_abs must be positive and finite");
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Index ambient_dim, CMatrix basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_)
    throw InputError("subspace basis has " + std::to_string(basis_.rows()) +
                     " rows, expected " + std::to_string(ambient_));
}

Subspace Subspace::zero(Index ambient_dim) { return {ambient_dim, CMatrix(ambient_dim, 0)}; }

Subspace Subspace::full(Index ambient_dim) {
  return {ambient_dim, CMatrix::Identity(ambient_dim, ambient_dim)};
}

CVector Subspace::project(const CVector& v) const {
  if (dim() == 0) return CVector::Zero(v.size());
  return basis_ * (basis_.adjoint() * v);
}

double Subspace::residual(const CVector& v) const { return (v - project(v)).norm(); }

bool Subspace::contains(const CVector& v, const Tolerance& tol) const {
  return residual(v) <= tol.match_abs;
}

// -------------------------------------------------------- OperatorSubspace

OperatorSubspace::OperatorSubspace(Index rows, Index cols, CMatrix vectorized)
    : rows_(rows), cols_(cols), coords_(std::move(vectorized)) {
  if (coords_.rows() != rows_ * cols_)
    throw InputError("vectorized basis has wrong length for " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " matrices");
}

OperatorSubspace OperatorSubspace::zero(Index rows, Index cols) {
  return {rows, cols, CMatrix(rows * cols, 0)};
}

OperatorSubspace OperatorSubspace::full(Index rows, Index cols) {
  return {rows, cols, CMatrix::Identity(rows * cols, rows * cols)};
}

CMatrix OperatorSubspace::element(Index i) const { return unvec(coords_.col(i), rows_, cols_); }

std::vector<CMatrix> OperatorSubspace::basis() const {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (Index i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

CVector OperatorSubspace::coordinates(const CMatrix& X) const {
  if (X.rows() != rows_ || X.cols() != cols_) throw InputError("matrix shape does not match operator subspace");
  return coords_.adjoint() * vec(X);
}

CMatrix OperatorSubspace::project(const CMatrix& X) const {
  if (dim() == 0) return CMatrix::Zero(rows_, cols_);
  return unvec(coords_ * coordinates(X), rows_, cols_);
}

double OperatorSubspace::residual(const CMatrix& X) const { return (X - project(X)).norm(); }

bool OperatorSubspace::contains(const CMatrix& X, const Tolerance& tol) const {
  return residual(X) <= tol.match_abs;
}

// ------------------------------------------------------------------- rank

Eigen::VectorXd singular_values(const CMatrix& M) {
  if (M.size() == 0) return {};
  const CMatrix work = reduce_rows(M);
  return compute_svd(work, SvdPart::values).s;
}

RankNullspace rank_nullspace(const CMatrix& M, const Tolerance& tol, double scale) {
  const Index n = M.cols();
  if (n == 0) return {0, Subspace::zero(0)};
  if (M.rows() == 0 || max_abs(M) == 0.0) return {0, Subspace::full(n)};

  const CMatrix work = reduce_rows(M);
  const Svd svd = compute_svd(work, SvdPart::full_v);
  const Index r = relative_rank(svd.s, tol, scale);
  return {r, Subspace(n, svd.V.rightCols(n - r))};
}

Index numerical_rank(const CMatrix& M, const Tolerance& tol) {
  return relative_rank(singular_values(M), tol);
}

Index rank_above(const CMatrix& M, double threshold) {
  return count_above(singular_values(M), threshold);
}

Subspace column_space(const CMatrix& M, const Tolerance& tol) {
  const Index m = M.rows();
  if (M.cols() == 0 || m == 0 || max_abs(M) == 0.0) return Subspace::zero(m);

  // The range of M equals the range of R^* where M^* = Q R, so wide inputs
  // are reduced to an m x m problem.
  CMatrix work;
  if (M.cols() > m) {
    Eigen::HouseholderQR<CMatrix> qr(M.adjoint());
    CMatrix R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    work = R.adjoint();
  } else {
    work = M;
  }
  const Svd svd = compute_svd(work, SvdPart::thin_u);
  const Index r = relative_rank(svd.s, tol);
  return {m, svd.U.leftCols(r)};
}

Subspace orthogonal_complement(const Subspace& S) {
  const Index n = S.ambient_dim();
  if (S.dim() == 0) return Subspace::full(n);
  if (S.dim() == n) return Subspace::zero(n);
  // Full QR of the basis: trailing columns of Q span the complement.
  Eigen::HouseholderQR<CMatrix> qr(S.basis());
  CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
  return {n, Q.rightCols(n - S.dim())};
}

Subspace subspace_sum(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("subspace ambient dimension mismatch");
  CMatrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis(), b.basis();
  return column_space(joined, tol);
}

bool subspace_leq(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("subspace ambient dimension mismatch");
  for (Index i = 0; i < a.dim(); ++i)
    if (!b.contains(a.basis().col(i), tol)) return false;
  return true;
}

bool subspace_equal(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  return a.dim() == b.dim() && subspace_leq(a, b, tol) && subspace_leq(b, a, tol);
}

// -------------------------------------------------------------------- vec

CVector vec(const CMatrix& M) { return Eigen::Map<const CVector>(M.data(), M.size()); }

CMatrix unvec(const CVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw InputError("unvec: vector of length " + std::to_string(v.size()) + " cannot form " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

// ------------------------------------------------------------------- spans

OperatorSubspace span_of(const std::vector<CMatrix>& mats, const Tolerance& tol) {
  if (mats.empty()) throw InputError("span_of: empty list has no shape; pass rows/cols");
  return span_of(mats, mats.front().rows(), mats.front().cols(), tol);
}

OperatorSubspace span_of(const std::vector<CMatrix>& mats, Index rows, Index cols,
                         const Tolerance& tol) {
  CMatrix stacked(rows * cols, static_cast<Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != rows || mats[i].cols() != cols)
      throw InputError("span_of: matrix " + std::to_string(i) + " is " +
                       std::to_string(mats[i].rows()) + "x" + std::to_string(mats[i].cols()) +
                       ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    stacked.col(static_cast<Index>(i)) = vec(mats[i]);
  }
  return {rows, cols, column_space(stacked, tol).basis()};
}

double subspace_excess(const OperatorSubspace& a, const OperatorSubspace& b) {
  require_same_shape(a, b);
  if (a.dim() == 0) return 0.0;
  const CMatrix& A = a.vectorized();
  CMatrix rem = A;
  if (b.dim() > 0) rem -= b.vectorized() * (b.vectorized().adjoint() * A);
  return rem.colwise().norm().maxCoeff();
}

bool subspace_leq(const OperatorSubspace& a, const OperatorSubspace& b, const Tolerance& tol) {
  return subspace_excess(a, b) <= tol.match_abs;
}

bool subspace_equal(const OperatorSubspace& a, const OperatorSubspace& b, const Tolerance& tol) {
  require_same_shape(a, b);
  return a.dim() == b.dim() && subspace_leq(a, b, tol) && subspace_leq(b, a, tol);
}

OperatorSubspace operator_sum(const OperatorSubspace& a, const OperatorSubspace& b,
                              const Tolerance& tol) {
  require_same_shape(a, b);
  CMatrix joined(a.rows() * a.cols(), a.dim() + b.dim());
  joined << a.vectorized(), b.vectorized();
  return {a.rows(), a.cols(), column_space(joined, tol).basis()};
}

OperatorSubspace relative_complement(const OperatorSubspace& inner, const OperatorSubspace& outer,
                                     const Tolerance& tol) {
  require_same_shape(inner, outer);
  CMatrix rem = outer.vectorized();
  if (inner.dim() > 0) rem -= inner.vectorized() * (inner.vectorized().adjoint() * rem);
  // Components of outer that lie in inner leave residue at roundoff level only;
  // an absolute cut is used since outer's basis has unit scale.
  if (rem.size() == 0 || max_abs(rem) <= tol.match_abs)
    return OperatorSubspace::zero(outer.rows(), outer.cols());
  const Svd svd = compute_svd(rem, SvdPart::thin_u);
  const Index r = count_above(svd.s, tol.match_abs);
  return {outer.rows(), outer.cols(), svd.U.leftCols(r)};
}

OperatorSubspace adjoint_space(const OperatorSubspace& S) {
  CMatrix out(S.rows() * S.cols(), S.dim());
  for (Index i = 0; i < S.dim(); ++i) out.col(i) = vec(S.element(i).adjoint());
  // Adjoint preserves the trace inner product up to conjugation, so the
  // result is still orthonormal.
  return {S.cols(), S.rows(), out};
}

// --------------------------------------------------------------- ampliation

CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

CMatrix ampliate(const CMatrix& M, Index k) {
  if (k < 1) throw InputError("ampliation multiplicity must be at least 1");
  return kron(CMatrix::Identity(k, k), M);
}

OperatorSubspace ampliate_space(const OperatorSubspace& S, Index k, const Tolerance& tol) {
  if (k < 1) throw InputError("ampliation multiplicity must be at least 1");
  std::vector<CMatrix> amp;
  amp.reserve(static_cast<std::size_t>(S.dim()));
  for (Index i = 0; i < S.dim(); ++i) amp.push_back(ampliate(S.element(i), k));
  return span_of(amp, S.rows() * k, S.cols() * k, tol);
}

CMatrix block_diagonal(std::span<const CMatrix> blocks) {
  Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

// ---------------------------------------------------------------- Sylvester

OperatorSubspace sylvester_kernel(std::span<const CMatrix> right, std::span<const CMatrix> left,
                                  Index rows, Index cols, const Tolerance& tol) {
  if (right.size() != left.size()) throw InputError("sylvester_kernel: operand lists differ in length");
  const Index n = rows * cols;
  if (right.empty()) return OperatorSubspace::full(rows, cols);

  const CMatrix I_rows = CMatrix::Identity(rows, rows);
  const CMatrix I_cols = CMatrix::Identity(cols, cols);
  CMatrix stacked(n * static_cast<Index>(right.size()), n);
  double scale = 0.0;
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (right[i].rows() != cols || right[i].cols() != cols || left[i].rows() != rows ||
        left[i].cols() != rows)
      throw InputError("sylvester_kernel: operand " + std::to_string(i) + " has the wrong shape");
    // vec(X R) - vec(L X) = (R^T kron I - I kron L) vec(X)
    stacked.middleRows(static_cast<Index>(i) * n, n) =
        kron(right[i].transpose(), I_rows) - kron(I_cols, left[i]);
    scale = std::max(scale, right[i].norm() + left[i].norm());
  }
  auto rn = rank_nullspace(stacked, tol, scale);
  return {rows, cols, rn.null.basis()};
}

Subspace invariant_hull(std::span<const CMatrix> ops, const CMatrix& seed, const Tolerance& tol) {
  const Index n = seed.rows();
  Subspace W = column_space(seed, tol);
  while (W.dim() > 0 && W.dim() < n) {
    CMatrix grown(n, W.dim() * static_cast<Index>(ops.size() + 1));
    grown.leftCols(W.dim()) = W.basis();
    Index c = W.dim();
    for (const auto& op : ops) {
      grown.middleCols(c, W.dim()) = op * W.basis();
      c += W.dim();
    }
    Subspace next = column_space(grown, tol);
    if (next.dim() == W.dim()) break;
    W = std::move(next);
  }
  return W;
}

double max_abs(const CMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

bool all_finite(const CMatrix& M) { return M.allFinite(); }

}  // namespace opalg
