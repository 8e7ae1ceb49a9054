#include "opalg/sampling.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "opalg/errors.hpp"

namespace opalg::sampling {

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = cplx(normal(rng), normal(rng));
  return M;
}

CVector gaussian_vector(Index n, Rng& rng) { return ginibre(n, 1, rng).col(0); }

CVector random_unit_vector(Index n, Rng& rng) {
  CVector v = gaussian_vector(n, rng);
  while (v.norm() == 0.0) v = gaussian_vector(n, rng);
  return v / v.norm();
}

CMatrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(n, n, rng));
  CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& R = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(R(j, j));
    if (a > 0.0) Q.col(j) *= R(j, j) / a;
  }
  return Q;
}

double spectral_norm(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  const auto sv = singular_values(M);
  return sv.size() == 0 ? 0.0 : sv.maxCoeff();
}

CMatrix random_contraction(Index rows, Index cols, Rng& rng) {
  CMatrix M = ginibre(rows, cols, rng);
  const double s = spectral_norm(M);
  return s > 0.0 ? CMatrix(M / s) : M;
}

CMatrix random_with_rank(Index rows, Index cols, Index rank, Rng& rng) {
  if (rank < 0 || rank > std::min(rows, cols)) throw InputError("random_with_rank: rank out of range");
  if (rank == 0) return CMatrix::Zero(rows, cols);
  CMatrix M = ginibre(rows, rank, rng) * ginibre(rank, cols, rng);
  return M / spectral_norm(M);
}

CMatrix random_invertible_contraction(Index n, double max_cond, Rng& rng) {
  // Singular values drawn in [1/max_cond, 1] between two Haar unitaries.
  std::uniform_real_distribution<double> unif(1.0 / max_cond, 1.0);
  Eigen::VectorXd s(n);
  for (Index i = 0; i < n; ++i) s[i] = unif(rng);
  s[0] = 1.0;
  return random_unitary(n, rng) * s.cast<cplx>().asDiagonal() * random_unitary(n, rng);
}

// ----------------------------------------------------------- probe sampler

ProbeVectorSampler::ProbeVectorSampler(std::vector<CMatrix> ops, Index dim, std::uint64_t seed,
                                       const Tolerance& tol)
    : ops_(std::move(ops)), dim_(dim), tol_(tol), rng_(seed) {
  for (const auto& op : ops_) {
    auto k = rank_nullspace(op, tol_).null;
    if (k.dim() > 0 && k.dim() < dim_) kernels_.push_back(std::move(k));
  }
}

CMatrix ProbeVectorSampler::random_element() {
  CMatrix a = CMatrix::Zero(dim_, dim_);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& op : ops_) a += cplx(normal(rng_), normal(rng_)) * op;
  return a;
}

CVector ProbeVectorSampler::eigen_probe() {
  if (ops_.empty()) return random_unit_vector(dim_, rng_);
  Eigen::ComplexEigenSolver<CMatrix> es(random_element());
  std::uniform_int_distribution<Index> pick(0, dim_ - 1);
  CVector v = es.eigenvectors().col(pick(rng_));
  const double n = v.norm();
  return n > 0.0 ? CVector(v / n) : random_unit_vector(dim_, rng_);
}

CVector ProbeVectorSampler::range_probe() {
  if (ops_.empty()) return random_unit_vector(dim_, rng_);
  CVector v = random_element() * gaussian_vector(dim_, rng_);
  const double n = v.norm();
  return n > tol_.match_abs ? CVector(v / n) : random_unit_vector(dim_, rng_);
}

CVector ProbeVectorSampler::kernel_probe() {
  if (kernels_.empty()) return eigen_probe();
  std::uniform_int_distribution<std::size_t> pick(0, kernels_.size() - 1);
  const auto& k = kernels_[pick(rng_)];
  CVector v = k.basis() * gaussian_vector(k.dim(), rng_);
  return v / v.norm();
}

CVector ProbeVectorSampler::next() {
  if (dim_ == 0) throw InputError("cannot sample vectors in a zero-dimensional space");
  switch (counter_++ % 4) {
    case 0:
      return random_unit_vector(dim_, rng_);
    case 1:
      return eigen_probe();
    case 2:
      return range_probe();
    default:
      return kernel_probe();
  }
}

}  // namespace opalg::sampling
