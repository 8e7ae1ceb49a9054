#include "opalg/algebra.hpp"

#include <algorithm>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/representation.hpp"

namespace opalg {

namespace {

void require_square_family(const std::vector<CMatrix>& gens, const char* who) {
  if (gens.empty()) throw InputError(std::string(who) + ": no generators given");
  const Index n = gens.front().rows();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != gens[i].cols())
      throw InputError(std::string(who) + ": generator " + std::to_string(i) + " is not square");
    if (gens[i].rows() != n)
      throw InputError(std::string(who) + ": generator " + std::to_string(i) + " has size " +
                       std::to_string(gens[i].rows()) + ", expected " + std::to_string(n));
    if (!all_finite(gens[i]))
      throw InputError(std::string(who) + ": generator " + std::to_string(i) + " has non-finite entries");
  }
}

std::optional<CMatrix> solve_identity(const std::vector<CMatrix>& basis, Index n, const Tolerance& tol) {
  const Index d = static_cast<Index>(basis.size());
  if (d == 0) return CMatrix::Zero(n, n);
  const Index nn = n * n;
  // Unknown coefficients x with e = sum_i x_i b_i; rows: e b_j = b_j, b_j e = b_j.
  CMatrix system(2 * d * nn, d);
  CVector rhs(2 * d * nn);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      system.block(2 * j * nn, i, nn, 1) = vec(basis[i] * basis[j]);
      system.block((2 * j + 1) * nn, i, nn, 1) = vec(basis[j] * basis[i]);
    }
    rhs.segment(2 * j * nn, nn) = vec(basis[j]);
    rhs.segment((2 * j + 1) * nn, nn) = vec(basis[j]);
  }
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(system);
  cod.setThreshold(tol.rank_rel);
  const CVector x = cod.solve(rhs);
  const CVector res = system * x - rhs;
  double worst = 0.0;
  for (Index k = 0; k < 2 * d; ++k) worst = std::max(worst, res.segment(k * nn, nn).norm());
  if (worst > tol.match_abs) return std::nullopt;
  CMatrix e = CMatrix::Zero(n, n);
  for (Index i = 0; i < d; ++i) e += x[i] * basis[i];
  return e;
}

}  // namespace

double closure_residual(const OperatorSubspace& S) {
  double worst = 0.0;
  const auto b = S.basis();
  for (const auto& x : b)
    for (const auto& y : b) worst = std::max(worst, S.residual(x * y));
  return worst;
}

StructureConstants structure_constants(const MatrixAlgebra& A) {
  const Index d = A.dim();
  StructureConstants c(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const CVector coords = A.space().coordinates(A.basis()[i] * A.basis()[j]);
      for (Index k = 0; k < d; ++k) c(i, j, k) = coords[k];
    }
  return c;
}

MatrixAlgebra::MatrixAlgebra(OperatorSubspace basis, const Tolerance& tol) : space_(std::move(basis)) {
  if (space_.rows() != space_.cols()) throw InputError("algebra basis must consist of square matrices");
  basis_ = space_.basis();
  const double res = closure_residual(space_);
  if (res > tol.match_abs)
    throw InputError("subspace is not closed under multiplication (residual " + std::to_string(res) + ")");
  structure_ = structure_constants(*this);
  identity_ = solve_identity(basis_, dim_H(), tol);
}

bool MatrixAlgebra::same_as(const MatrixAlgebra& other, const Tolerance& tol) const {
  if (this == &other) return true;
  if (dim_H() != other.dim_H() || dim() != other.dim()) return false;
  return max_abs(space_.vectorized() - other.space_.vectorized()) <= tol.match_abs;
}

AlgebraPtr generate_algebra(const std::vector<CMatrix>& gens, const Tolerance& tol) {
  require_square_family(gens, "generate_algebra");
  const Index n = gens.front().rows();
  const OperatorSubspace g = span_of(gens, n, n, tol);
  const auto gen_basis = g.basis();

  OperatorSubspace S = g;
  const Index max_rounds = n * n + 1;
  for (Index round = 0;; ++round) {
    if (round > max_rounds)
      throw VerificationError("generate_algebra: closure did not stabilize within n^2 rounds");
    std::vector<CMatrix> products = S.basis();
    const std::size_t base = products.size();
    for (std::size_t i = 0; i < base; ++i)
      for (const auto& x : gen_basis) products.push_back(products[i] * x);
    OperatorSubspace next = span_of(products, n, n, tol);
    if (next.dim() == S.dim()) {
      S = std::move(next);
      break;
    }
    S = std::move(next);
  }
  return std::make_shared<const MatrixAlgebra>(std::move(S), tol);
}

AlgebraPtr star_closure(const std::vector<CMatrix>& gens, const Tolerance& tol) {
  require_square_family(gens, "star_closure");
  std::vector<CMatrix> all = gens;
  for (const auto& g : gens) all.push_back(g.adjoint());
  auto A = generate_algebra(all, tol);
  if (!subspace_equal(adjoint_space(A->space()), A->space(), tol))
    throw VerificationError("star_closure: result is not closed under the adjoint");
  return A;
}

std::optional<CMatrix> find_identity(const MatrixAlgebra& A, const Tolerance& tol) {
  return solve_identity(A.basis(), A.dim_H(), tol);
}

bool is_faithful(const Representation& rep, const Tolerance& tol) {
  const Index d = rep.algebra().dim();
  if (d == 0) return true;
  const Index n = rep.dim_H();
  if (n == 0) return false;
  CMatrix stacked(n * n, d);
  for (Index i = 0; i < d; ++i) stacked.col(i) = vec(rep.images()[static_cast<std::size_t>(i)]);
  return numerical_rank(stacked, tol) == d;
}

bool is_nondegenerate(const Representation& rep, const Tolerance& tol) {
  const Index n = rep.dim_H();
  if (n == 0) return true;
  const Index d = static_cast<Index>(rep.images().size());
  CMatrix ranges(n, n * d);
  for (Index i = 0; i < d; ++i) ranges.middleCols(i * n, n) = rep.images()[static_cast<std::size_t>(i)];
  return column_space(ranges, tol).dim() == n;
}

bool cyclic_membership(const Representation& rep, const CVector& x, const Tolerance& tol) {
  if (x.size() != rep.dim_H()) throw InputError("cyclic_membership: vector has the wrong dimension");
  const double nx = x.norm();
  if (nx == 0.0) throw InputError("cyclic_membership: zero vector");
  const CVector u = x / nx;
  const Index d = static_cast<Index>(rep.images().size());
  CMatrix orbit(rep.dim_H(), d);
  for (Index i = 0; i < d; ++i) orbit.col(i) = rep.images()[static_cast<std::size_t>(i)] * u;
  return column_space(orbit, tol).contains(u, tol);
}

}  // namespace opalg
