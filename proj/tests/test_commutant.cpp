#include "doctest.h"
#include "opalg/commutant.hpp"
#include "opalg/errors.hpp"
#include "opalg/sampling.hpp"
#include "oracles.hpp"

using namespace opalg;
using oracle::unit;

namespace {

std::vector<CMatrix> m2_units() { return {unit(2, 2, 0, 0), unit(2, 2, 0, 1), unit(2, 2, 1, 0), unit(2, 2, 1, 1)}; }
std::vector<CMatrix> t2_units() { return {unit(2, 2, 0, 0), unit(2, 2, 0, 1), unit(2, 2, 1, 1)}; }

// Usual T2 rep plus evaluation at the 1-1 entry, on C^2 (+) C.
std::vector<CMatrix> intro_images() {
  std::vector<CMatrix> out;
  for (const auto& E : t2_units()) {
    CMatrix M = CMatrix::Zero(3, 3);
    M.topLeftCorner(2, 2) = E;
    M(2, 2) = E(0, 0);
    out.push_back(M);
  }
  return out;
}

std::vector<CMatrix> random_set(sampling::Rng& rng, Index n, Index count, bool triangular) {
  std::vector<CMatrix> S;
  for (Index i = 0; i < count; ++i) {
    CMatrix A = sampling::ginibre(n, n, rng);
    if (triangular) A = A.triangularView<Eigen::Upper>();
    S.push_back(A);
  }
  return S;
}

}  // namespace

TEST_CASE("commutant examples") {
  CHECK(commutant({CMatrix::Identity(2, 2)}).dim() == 4);
  const auto c = commutant(m2_units());
  REQUIRE(c.dim() == 1);
  // I / sqrt(2) up to a phase.
  const CMatrix X = c.element(0);
  CHECK(std::abs(X(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK((X - X(0, 0) * CMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(c.contains(CMatrix::Identity(2, 2), {}));
  CHECK(commutant(t2_units()).dim() == 1);
  CHECK_THROWS_AS(commutant(std::vector<CMatrix>{}), InputError);
  CHECK_THROWS_AS(commutant({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}), InputError);
}

TEST_CASE("bicommutant examples") {
  CHECK(bicommutant({CMatrix::Identity(2, 2)}).dim() == 1);
  CHECK(bicommutant(m2_units()).dim() == 4);
  CHECK(bicommutant(t2_units()).dim() == 4);
  CHECK(bicommutant(intro_images()).dim() == 3);
}

TEST_CASE("commutant dimensions agree with the matrix-unit oracle") {
  sampling::Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 1 + trial % 5;
    const auto S = random_set(rng, n, 1 + trial % 3, trial % 2 == 0);
    CHECK(commutant(S).dim() == oracle::commutant_dim(S));
  }
  CHECK(commutant(intro_images()).dim() == oracle::commutant_dim(intro_images()));
}

TEST_CASE("commutant and bicommutant properties") {
  sampling::Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 4;
    const auto S = random_set(rng, n, 1 + trial % 2, trial % 3 != 0);
    const auto C = commutant(S);
    CHECK(C.contains(CMatrix::Identity(n, n), {}));
    const auto cb = C.basis();
    for (const auto& X : cb)
      for (const auto& Y : cb) CHECK(C.residual(X * Y) < 1e-8);
    const auto B = bicommutant(S);
    CHECK(subspace_leq(span_of(S), B));
    CHECK(subspace_equal(bicommutant(B), B));
    CHECK(subspace_equal(commutant(B), C));
    CHECK(subspace_equal(commutant(generate_algebra(S)->space()), C));
    // Monotone: a larger set has a smaller commutant.
    auto bigger = S;
    bigger.push_back(sampling::ginibre(n, n, rng));
    CHECK(subspace_leq(commutant(bigger), C));
    // (S*)' = (S')*
    std::vector<CMatrix> adj;
    for (const auto& A : S) adj.push_back(A.adjoint());
    CHECK(subspace_equal(commutant(adj), adjoint_space(C)));
  }
}

TEST_CASE("dcp_check") {
  const auto T2 = generate_algebra(t2_units());
  const auto usual = Representation::identity(T2);
  const auto v = dcp_check(usual);
  CHECK_FALSE(v.holds);
  CHECK(v.span_dim == 3);
  CHECK(v.bicommutant_dim == 4);
  REQUIRE(v.excess.dim() == 1);
  // The excess direction is E21.
  CHECK(std::abs(std::abs(v.excess.element(0)(1, 0)) - 1.0) < 1e-10);

  const auto intro = Representation::from_elements(T2, 3, t2_units(), intro_images());
  const auto w = dcp_check(intro);
  CHECK(w.holds);
  CHECK(w.span_dim == 3);
  CHECK(w.bicommutant_dim == 3);
  CHECK(w.excess.dim() == 0);

  CHECK(dcp_check(Representation::identity(generate_algebra(m2_units()))).holds);
}

TEST_CASE("alg_lat_member") {
  const auto S = t2_units();
  CHECK_FALSE(alg_lat_member(unit(2, 2, 1, 0), S));
  CHECK(alg_lat_member(unit(2, 2, 0, 1), S));
  sampling::Rng rng(33);
  CHECK(alg_lat_member(sampling::ginibre(2, 2, rng), m2_units()));
  AlgLatOptions bad;
  bad.samples = 0;
  CHECK_THROWS_AS(alg_lat_member(unit(2, 2, 0, 1), S, bad), InputError);
  CHECK_THROWS_AS(alg_lat_member(CMatrix::Identity(3, 3), S), InputError);
  // Same seed, same verdict.
  AlgLatOptions opts;
  opts.seed = 9;
  const CMatrix X = sampling::ginibre(2, 2, rng);
  CHECK(alg_lat_member(X, S, opts) == alg_lat_member(X, S, opts));
}

TEST_CASE("identity suite") {
  sampling::Rng rng(34);
  CHECK(identity_suite(random_set(rng, 3, 3, false), 2).all_pass());
  CHECK(identity_suite({CMatrix::Identity(2, 2)}, 3).all_pass());
  const auto report = identity_suite(t2_units(), 3);
  CHECK(report.all_pass());
  CHECK(report.checks.size() == 4);
  for (const auto& c : report.checks) CHECK(c.lhs_dim == c.rhs_dim);
}

TEST_CASE("selfadjoint spaces") {
  CHECK(is_selfadjoint_space(m2_units()));
  CHECK_FALSE(is_selfadjoint_space(t2_units()));
  // The commutant of a *-closed set is *-closed.
  sampling::Rng rng(35);
  const CMatrix A = sampling::ginibre(3, 3, rng);
  const CMatrix D = CMatrix(CMatrix::Identity(3, 3)).cwiseProduct(sampling::ginibre(3, 3, rng));
  CHECK(is_selfadjoint_space(commutant({A, CMatrix(A.adjoint())})));
  CHECK(is_selfadjoint_space(commutant({D, CMatrix(D.adjoint())})));
}
