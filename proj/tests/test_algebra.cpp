#include "doctest.h"
#include "opalg/algebra.hpp"
#include "opalg/errors.hpp"
#include "opalg/representation.hpp"
#include "opalg/sampling.hpp"
#include "oracles.hpp"

using namespace opalg;
using oracle::unit;

namespace {

std::vector<CMatrix> m2_units() { return {unit(2, 2, 0, 0), unit(2, 2, 0, 1), unit(2, 2, 1, 0), unit(2, 2, 1, 1)}; }
std::vector<CMatrix> t2_units() { return {unit(2, 2, 0, 0), unit(2, 2, 0, 1), unit(2, 2, 1, 1)}; }

}  // namespace

TEST_CASE("generated algebras of matrix units") {
  CHECK(generate_algebra(m2_units())->dim() == 4);
  CHECK(generate_algebra(t2_units())->dim() == 3);
  CHECK(generate_algebra({unit(2, 2, 0, 1)})->dim() == 1);
  // E12 and E21 generate all of M2.
  CHECK(generate_algebra({unit(2, 2, 0, 1), unit(2, 2, 1, 0)})->dim() == 4);
  // The shift generates the strictly upper triangular nilpotents.
  CHECK(generate_algebra({unit(3, 3, 0, 1) + unit(3, 3, 1, 2)})->dim() == 2);
}

TEST_CASE("generated algebra dimension matches word enumeration") {
  sampling::Rng rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const Index n = 1 + trial % 4;
    std::vector<CMatrix> gens;
    for (int g = 0; g < 1 + trial % 2; ++g) {
      CMatrix A = sampling::ginibre(n, n, rng);
      if (trial % 3 == 0) A = A.triangularView<Eigen::StrictlyUpper>();
      gens.push_back(A);
    }
    const auto A = generate_algebra(gens);
    CHECK(A->dim() == oracle::word_algebra_dim(gens));
    CHECK(closure_residual(A->space()) < 1e-9);
  }
}

TEST_CASE("structure constants reproduce products") {
  const auto A = generate_algebra(t2_units());
  const auto& c = A->structure();
  const auto& b = A->basis();
  for (Index i = 0; i < A->dim(); ++i)
    for (Index j = 0; j < A->dim(); ++j) {
      CMatrix sum = CMatrix::Zero(2, 2);
      for (Index k = 0; k < A->dim(); ++k) sum += c(i, j, k) * b[static_cast<std::size_t>(k)];
      CHECK((sum - b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]).norm() < 1e-12);
    }
}

TEST_CASE("identity element") {
  const auto T2 = generate_algebra(t2_units());
  REQUIRE(T2->identity());
  CHECK((*T2->identity() - CMatrix::Identity(2, 2)).norm() < 1e-10);
  // The unit of span{E11} is E11, not I.
  const auto corner = generate_algebra({unit(2, 2, 0, 0)});
  REQUIRE(corner->identity());
  CHECK((*corner->identity() - unit(2, 2, 0, 0)).norm() < 1e-10);
  CHECK_FALSE(generate_algebra({unit(2, 2, 0, 1)})->identity());
}

TEST_CASE("star closure") {
  const auto A = star_closure({unit(2, 2, 0, 1)});
  CHECK(A->dim() == 4);
  const auto D = star_closure({unit(3, 3, 0, 0), unit(3, 3, 1, 1)});
  CHECK(D->dim() == 2);
}

TEST_CASE("MatrixAlgebra rejects spaces that are not closed") {
  const auto S = span_of({unit(2, 2, 0, 1) + unit(2, 2, 1, 0)});
  CHECK_THROWS_AS(MatrixAlgebra{S}, InputError);
}

TEST_CASE("representations are validated") {
  const auto T2 = generate_algebra(t2_units());
  const auto units = t2_units();
  // Usual action.
  const auto rep = Representation::from_elements(T2, 2, units, units);
  CHECK(rep.dim_H() == 2);
  CHECK((rep.image_of(unit(2, 2, 0, 1)) - unit(2, 2, 0, 1)).norm() < 1e-12);
  CHECK(multiplicativity_residual(*T2, rep.images()) < 1e-12);
  CHECK(is_faithful(rep));
  CHECK(is_nondegenerate(rep));

  // Evaluation at the 1-1 entry: a -> a11 on C.
  const std::vector<CMatrix> scalar = {CMatrix::Identity(1, 1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)};
  const auto eval = Representation::from_elements(T2, 1, units, scalar);
  CHECK_FALSE(is_faithful(eval));

  // E12 -> 1 on C is not multiplicative (E11 E12 = E12 but 0 * 1 = 0).
  const std::vector<CMatrix> bad = {CMatrix::Zero(1, 1), CMatrix::Identity(1, 1), CMatrix::Zero(1, 1)};
  CHECK_THROWS_AS(Representation::from_elements(T2, 1, units, bad), InputError);
  // Wrong counts, shapes and non-basis element lists.
  CHECK_THROWS_AS(Representation::from_elements(T2, 1, units, {CMatrix::Zero(1, 1)}), InputError);
  CHECK_THROWS_AS(Representation::from_elements(T2, 2, units, {units[0], units[1], CMatrix::Zero(3, 3)}), InputError);
  CHECK_THROWS_AS(Representation::from_elements(T2, 2, {units[0], units[0], units[2]}, units), InputError);
  CHECK_THROWS_AS(Representation::from_elements(T2, 2, {units[0], unit(2, 2, 1, 0), units[2]}, units), InputError);
  CMatrix nan = CMatrix::Zero(1, 1);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Representation::from_elements(T2, 1, units, {nan, nan, nan}), InputError);
}

TEST_CASE("cyclic membership") {
  const auto T2 = generate_algebra(t2_units());
  const auto rep = Representation::identity(T2);
  sampling::Rng rng(22);
  for (int i = 0; i < 10; ++i) CHECK(cyclic_membership(rep, sampling::gaussian_vector(2, rng)));
  CHECK_THROWS_AS(cyclic_membership(rep, CVector::Zero(2)), InputError);

  const auto nil = Representation::identity(generate_algebra({unit(2, 2, 0, 1)}));
  CVector e2 = CVector::Zero(2);
  e2(1) = 1.0;
  CHECK_FALSE(cyclic_membership(nil, e2));
  CHECK_FALSE(is_nondegenerate(nil));
}
