#pragma once

#include <vector>

#include "opalg/algebra.hpp"

namespace opalg {

/// A Hilbert module over a reference concrete algebra: the images
/// rho(b_1), ..., rho(b_d) of the algebra's orthonormal basis acting on
/// C^dim_H. Multiplicativity is validated on construction.
///
/// Complete contractivity is not checked; results that depend on it hold
/// only for representations that satisfy it.
class Representation {
 public:
  Representation(AlgebraPtr algebra, Index dim_H, std::vector<CMatrix> images,
                 const Tolerance& tol = {});

  /// Representation specified on an arbitrary basis `elements` of the algebra
  /// (for instance matrix units) rather than on its orthonormal basis.
  static Representation from_elements(AlgebraPtr algebra, Index dim_H,
                                      const std::vector<CMatrix>& elements,
                                      const std::vector<CMatrix>& images,
                                      const Tolerance& tol = {});

  /// The defining action of the algebra on C^n.
  static Representation identity(AlgebraPtr algebra, const Tolerance& tol = {});

  const MatrixAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  Index dim_H() const { return dim_H_; }
  const std::vector<CMatrix>& images() const { return images_; }

  /// Image of an arbitrary algebra element (through its basis coordinates).
  CMatrix image_of(const CMatrix& a) const;

  bool same_algebra(const Representation& other, const Tolerance& tol = {}) const;

 private:
  AlgebraPtr algebra_;
  Index dim_H_ = 0;
  std::vector<CMatrix> images_;
};

/// Largest multiplicativity defect, scaled by max(1, |rho(b_i)| |rho(b_j)|).
double multiplicativity_residual(const MatrixAlgebra& A, const std::vector<CMatrix>& images);

/// Throws InputError unless both representations share the reference algebra.
void require_same_algebra(const Representation& a, const Representation& b,
                          const Tolerance& tol = {});

}  // namespace opalg
