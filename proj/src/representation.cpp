#include "opalg/representation.hpp"

#include <algorithm>
#include <string>

#include "opalg/errors.hpp"

namespace opalg {

double multiplicativity_residual(const MatrixAlgebra& A, const std::vector<CMatrix>& images) {
  const Index d = A.dim();
  const auto& c = A.structure();
  double worst = 0.0;
  for (Index i = 0; i < d; ++i) {
    const auto& ri = images[static_cast<std::size_t>(i)];
    for (Index j = 0; j < d; ++j) {
      const auto& rj = images[static_cast<std::size_t>(j)];
      CMatrix defect = ri * rj;
      for (Index k = 0; k < d; ++k) defect -= c(i, j, k) * images[static_cast<std::size_t>(k)];
      const double scale = std::max(1.0, ri.norm() * rj.norm());
      worst = std::max(worst, defect.norm() / scale);
    }
  }
  return worst;
}

Representation::Representation(AlgebraPtr algebra, Index dim_H, std::vector<CMatrix> images,
                               const Tolerance& tol)
    : algebra_(std::move(algebra)), dim_H_(dim_H), images_(std::move(images)) {
  if (!algebra_) throw InputError("representation: null algebra");
  if (dim_H_ < 0) throw InputError("representation: negative dimension");
  if (static_cast<Index>(images_.size()) != algebra_->dim())
    throw InputError("representation: expected " + std::to_string(algebra_->dim()) + " images, got " +
                     std::to_string(images_.size()));
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].rows() != dim_H_ || images_[i].cols() != dim_H_)
      throw InputError("representation: image " + std::to_string(i) + " is not " +
                       std::to_string(dim_H_) + "x" + std::to_string(dim_H_));
    if (!all_finite(images_[i]))
      throw InputError("representation: image " + std::to_string(i) + " has non-finite entries");
  }
  const double res = multiplicativity_residual(*algebra_, images_);
  if (res > tol.match_abs)
    throw InputError("representation is not multiplicative (residual " + std::to_string(res) + ")");
}

Representation Representation::from_elements(AlgebraPtr algebra, Index dim_H,
                                              const std::vector<CMatrix>& elements,
                                              const std::vector<CMatrix>& images, const Tolerance& tol) {
  if (!algebra) throw InputError("representation: null algebra");
  const Index d = algebra->dim();
  if (static_cast<Index>(elements.size()) != d || images.size() != elements.size())
    throw InputError("representation: need exactly one image per element of a basis of size " +
                     std::to_string(d));
  // Column j holds the coordinates of elements[j]; then b_i = sum_j elements[j] (M^-1)(j, i).
  CMatrix M(d, d);
  for (Index j = 0; j < d; ++j) {
    const auto& a = elements[static_cast<std::size_t>(j)];
    if (a.rows() != algebra->dim_H() || a.cols() != algebra->dim_H())
      throw InputError("representation: element " + std::to_string(j) + " has the wrong shape");
    if (algebra->space().residual(a) > tol.match_abs * std::max(1.0, a.norm()))
      throw InputError("representation: element " + std::to_string(j) + " is not in the algebra");
    M.col(j) = algebra->space().coordinates(a);
  }
  if (numerical_rank(M, tol) != d) throw InputError("representation: elements are not a basis of the algebra");
  const CMatrix Minv = M.inverse();
  std::vector<CMatrix> basis_images;
  basis_images.reserve(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    CMatrix img = CMatrix::Zero(dim_H, dim_H);
    for (Index j = 0; j < d; ++j) {
      const auto& src = images[static_cast<std::size_t>(j)];
      if (src.rows() != dim_H || src.cols() != dim_H)
        throw InputError("representation: image " + std::to_string(j) + " is not " +
                         std::to_string(dim_H) + "x" + std::to_string(dim_H));
      img += Minv(j, i) * src;
    }
    basis_images.push_back(std::move(img));
  }
  return Representation(std::move(algebra), dim_H, std::move(basis_images), tol);
}

Representation Representation::identity(AlgebraPtr algebra, const Tolerance& tol) {
  const Index n = algebra->dim_H();
  std::vector<CMatrix> images = algebra->basis();
  return Representation(std::move(algebra), n, std::move(images), tol);
}

CMatrix Representation::image_of(const CMatrix& a) const {
  const CVector coords = algebra_->space().coordinates(a);
  CMatrix out = CMatrix::Zero(dim_H_, dim_H_);
  for (Index i = 0; i < coords.size(); ++i) out += coords[i] * images_[static_cast<std::size_t>(i)];
  return out;
}

bool Representation::same_algebra(const Representation& other, const Tolerance& tol) const {
  return algebra_ == other.algebra_ || algebra_->same_as(*other.algebra_, tol);
}

void require_same_algebra(const Representation& a, const Representation& b, const Tolerance& tol) {
  if (!a.same_algebra(b, tol)) throw InputError("representations are over different reference algebras");
}

}  // namespace opalg
