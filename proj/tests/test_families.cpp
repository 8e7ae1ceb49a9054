#include "doctest.h"
#include "opalg/errors.hpp"
#include "opalg/families.hpp"
#include "opalg/sampling.hpp"
#include "oracles.hpp"

using namespace opalg;
using oracle::unit;

namespace {

CMatrix mat(Index rows, Index cols, std::initializer_list<double> entries) {
  CMatrix M(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = *it++;
  return M;
}

}  // namespace

TEST_CASE("build_t2") {
  const auto usual = build_t2(T2Rep::type_a(mat(1, 1, {1})));
  REQUIRE(usual.dim_H() == 2);
  const auto units = t2_matrix_units();
  for (const auto& E : units) CHECK((usual.image_of(E) - E).norm() < 1e-12);

  const auto intro = build_t2(T2Rep::type_a(mat(2, 1, {1, 0})));
  CHECK(intro.dim_H() == 3);
  CHECK((intro.image_of(units[1]) - unit(3, 3, 0, 2)).norm() < 1e-12);

  const auto b = build_t2(T2Rep::type_b(1));
  CHECK(std::abs(b.image_of(units[0])(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(b.image_of(units[2])(0, 0)) < 1e-12);
  CHECK(build_t2(T2Rep::type_d()).dim_H() == 0);

  CHECK_THROWS_AS(build_t2(T2Rep::type_a(mat(1, 1, {1.5}))), InputError);
  CHECK_NOTHROW(build_t2(T2Rep::type_a(mat(1, 1, {1.0 + 1e-10}))));
  CHECK_THROWS_AS(build_t2(T2Rep{1, 1, CMatrix::Zero(1, 1), T2Kind::b}), InputError);
  CHECK_THROWS_AS(build_t2(T2Rep{2, 1, CMatrix::Zero(1, 1), T2Kind::a}), InputError);
  CHECK_THROWS_AS(build_t2(T2Rep::type_a(CMatrix(0, 1))), InputError);
}

TEST_CASE("closed forms") {
  const auto one = t2_closed_form(T2Rep::type_a(mat(1, 1, {1})));
  for (bool f : {one.dcp, one.semigen, one.semicogen, one.generator, one.cogenerator, one.subtracing}) CHECK_FALSE(f);

  const auto intro = t2_closed_form(T2Rep::type_a(mat(2, 1, {1, 0})));
  CHECK(intro.dcp);
  CHECK(intro.semigen);
  CHECK(intro.generator);
  CHECK_FALSE(intro.semicogen);
  CHECK_FALSE(intro.cogenerator);
  CHECK(intro.subtracing);

  const auto zero = t2_closed_form(T2Rep::type_a(mat(1, 1, {0})));
  CHECK(zero.dcp);
  CHECK(zero.semigen);
  CHECK(zero.semicogen);
  CHECK_FALSE(zero.generator);
  CHECK_FALSE(zero.cogenerator);

  CHECK_THROWS_AS(t2_closed_form(T2Rep::type_b(1)), InputError);
}

TEST_CASE("closed-form commutants") {
  CHECK(t2_commutant_closed_form(T2Rep::type_a(mat(1, 1, {1}))).dim() == 1);
  sampling::Rng rng(61);
  for (Index n = 1; n <= 4; ++n) {
    const T2Rep t = T2Rep::type_a(sampling::random_invertible_contraction(n, 10.0, rng));
    const auto C = t2_commutant_closed_form(t);
    CHECK(C.dim() == n * n);
    CHECK(C.dim() == oracle::commutant_dim(build_t2(t).images()));
  }
  CHECK(t2_commutant_closed_form(T2Rep::type_a(CMatrix::Zero(2, 3))).dim() == 4 + 9);
  const T2Rep rect = T2Rep::type_a(sampling::random_with_rank(3, 2, 1, rng));
  CHECK(t2_commutant_closed_form(rect).dim() == oracle::commutant_dim(build_t2(rect).images()));
}

TEST_CASE("bicommutant excess witness") {
  const auto z1 = t2_bicommutant_excess(T2Rep::type_a(mat(1, 1, {1})));
  REQUIRE(z1);
  CHECK((*z1 - unit(2, 2, 1, 0)).norm() < 1e-12);

  const auto z2 = t2_bicommutant_excess(T2Rep::type_a(mat(2, 2, {1, 0, 0, 0.5})));
  REQUIRE(z2);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(2, 0) = 1.0;
  expected(3, 1) = 2.0;
  CHECK((*z2 - expected).norm() < 1e-12);

  CHECK_FALSE(t2_bicommutant_excess(T2Rep::type_a(mat(2, 1, {1, 0}))));
}

TEST_CASE("canonical T2 family") {
  const auto F = canonical_t2_family(3);
  CHECK(F.members.size() == 5);
  CHECK_NOTHROW(F.validate());
  CHECK(F.id.find("seed=3") != std::string::npos);
  const auto G = canonical_t2_family(3);
  CHECK((F.members[0].images()[1] - G.members[0].images()[1]).norm() == 0.0);
}

TEST_CASE("U(X) modules") {
  // d = 1 with alpha = 1 is the usual T2 module.
  const auto u1 = build_ux({1, 1, {mat(1, 1, {1})}});
  const auto v = dcp_check(u1);
  CHECK(v.span_dim == 3);
  CHECK(v.bicommutant_dim == 4);
  CHECK(intertwiners(u1, u1).dim() == 1);

  const auto diag = build_ux({2, 2, {unit(2, 2, 0, 0), unit(2, 2, 1, 1)}});
  CHECK(span_of(diag.images()).dim() == 4);
  const auto el = ux_elements(2);
  for (std::size_t i = 2; i < el.size(); ++i)
    for (std::size_t j = 2; j < el.size(); ++j)
      CHECK((diag.image_of(el[i]) * diag.image_of(el[j])).norm() < 1e-12);
  CHECK(ux_algebra(3)->dim() == 5);

  CHECK_THROWS_AS(build_ux({2, 2, {unit(2, 2, 0, 0), 2.0 * unit(2, 2, 0, 0)}}), InputError);
  CHECK_THROWS_AS(build_ux({2, 2, {unit(2, 1, 0, 0)}}), InputError);
}

TEST_CASE("U(X) commutant pairs") {
  CHECK(ux_commutant_pairs({2, 2, {CMatrix::Identity(2, 2)}}).dim() == 4);
  std::vector<CMatrix> all;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j) all.push_back(unit(2, 3, i, j));
  CHECK(ux_commutant_pairs({2, 3, all}).dim() == 1);
  // A E11 = E11 D forces a21 = 0, d12 = 0 and a11 = d11: 8 - 3 unknowns remain.
  const UXRep e11{2, 2, {unit(2, 2, 0, 0)}};
  CHECK(ux_commutant_pairs(e11).dim() == 5);
  CHECK(ux_commutant_pairs(e11).dim() == oracle::commutant_dim(build_ux(e11).images()));

  // With d = 1 the pairs are exactly the T2 closed form.
  sampling::Rng rng(62);
  for (int trial = 0; trial < 6; ++trial) {
    const CMatrix T = sampling::random_with_rank(1 + trial % 3, 1 + trial % 2, 1, rng);
    const auto pairs = ux_commutant_pairs({T.rows(), T.cols(), {T}});
    CHECK(subspace_equal(pairs, t2_commutant_closed_form(T2Rep::type_a(T))));
  }
}

TEST_CASE("U(X) semigenerator criteria") {
  const auto shift = ux_semi_criteria(shift_diag_truncation(3));
  CHECK(shift.semigen);
  CHECK_FALSE(shift.semicogen);
  std::vector<CMatrix> all;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) all.push_back(unit(2, 2, i, j));
  const auto full = ux_semi_criteria({2, 2, all});
  CHECK_FALSE(full.semigen);
  CHECK_FALSE(full.semicogen);
  CHECK(ux_semi_criteria({2, 2, {unit(2, 2, 0, 0)}}).semicogen);
  CHECK(ux_semi_criteria(shift_diag_truncation(2, true)).semicogen);
}

TEST_CASE("shift truncations: semigenerator without the double commutant property") {
  for (Index k = 2; k <= 3; ++k) {
    const auto u = shift_diag_truncation(k);
    CHECK(u.dim_H1 == k + 1);
    CHECK(u.alpha.size() == static_cast<std::size_t>(k));
    const auto H = build_ux(u);
    CHECK(ux_semi_criteria(u).semigen);
    CHECK_FALSE(dcp_check(H).holds);
  }
}

TEST_CASE("reflexive closure examples") {
  CHECK(refl_closure(span_of({CMatrix::Identity(3, 3)})).dim() == 1);
  CHECK(refl_closure(OperatorSubspace::full(2, 3)).dim() == 6);
  const auto e11 = refl_closure(span_of({unit(2, 2, 0, 0)}));
  CHECK(e11.dim() == 1);
  CHECK(e11.contains(unit(2, 2, 0, 0), {}));
  // Diagonal 2x2 matrices are closed; {E11 + E22} is not the same space as its closure's corner.
  CHECK(refl_closure(span_of({unit(2, 2, 0, 0), unit(2, 2, 1, 1)})).dim() == 2);
}

TEST_CASE("reflexive closure of a single T is span{T}") {
  sampling::Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix T = trial % 2 ? sampling::random_invertible_contraction(2, 10.0, rng)
                                : sampling::random_with_rank(2, 3, 1 + trial % 2, rng);
    const auto S = span_of({T});
    CHECK(subspace_equal(refl_closure(S), S));
  }
}

TEST_CASE("reflexive closure is the corner of the U(X) bicommutant") {
  sampling::Rng rng(64);
  std::vector<UXRep> cases = {shift_diag_truncation(2), shift_diag_truncation(2, true),
                              {2, 2, {unit(2, 2, 0, 0), unit(2, 2, 1, 1)}},
                              {2, 2, {unit(2, 2, 0, 1)}}};
  for (int i = 0; i < 3; ++i) {
    UXRep u{2, 2, {sampling::ginibre(2, 2, rng), sampling::ginibre(2, 2, rng)}};
    cases.push_back(u);
  }
  for (const auto& u : cases) {
    const auto H = build_ux(u);
    const auto R = refl_closure(span_of(u.alpha));
    const Index n1 = u.dim_H1, n2 = u.dim_H2;
    std::vector<CMatrix> corner;
    for (const auto& B : bicommutant(H.images()).basis()) corner.push_back(B.topRightCorner(n1, n2));
    CHECK(subspace_equal(R, span_of(corner, n1, n2)));
  }
}

TEST_CASE("parse_target") {
  const auto t = parse_target("dcp:T, gen=false ,subtracing:1,domain:ux");
  CHECK(t.flags.at("dcp"));
  CHECK_FALSE(t.flags.at("generator"));
  CHECK(t.flags.at("subtracing"));
  CHECK(t.domain == SearchDomain::ux);
  CHECK_THROWS_AS(parse_target("dcp"), InputError);
  CHECK_THROWS_AS(parse_target("nonsense:T"), InputError);
  CHECK_THROWS_AS(parse_target("dcp:maybe"), InputError);
  CHECK_THROWS_AS(parse_target("domain:t2"), InputError);
}

TEST_CASE("counterexample search") {
  const auto gen_cogen = counterexample_search(parse_target("dcp:T,gen:T,cogen:T,domain:t2"), 1, 60);
  REQUIRE_FALSE(gen_cogen.empty());
  for (const auto& h : gen_cogen) {
    CHECK(truthy(h.report.generator));
    CHECK(truthy(h.report.cogenerator));
  }
  const auto ux = counterexample_search(parse_target("semigen:T,dcp:F,domain:ux"), 2, 40);
  REQUIRE_FALSE(ux.empty());
  CHECK(ux.front().description.find("U(X)") == 0);
  // A surjective, non-injective T has the double commutant property and is
  // not a semigenerator.
  CHECK_FALSE(counterexample_search(parse_target("dcp:T,semigen:F,domain:t2"), 3, 60).empty());
  // Generator without the double commutant property cannot occur.
  CHECK(counterexample_search(parse_target("gen:T,dcp:F"), 4, 20).empty());
}
