#include "opalg/suite.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "opalg/errors.hpp"
#include "opalg/families.hpp"
#include "opalg/sampling.hpp"

namespace opalg::suite {

namespace {

using sampling::Rng;
using Clock = std::chrono::steady_clock;

constexpr double kSuiteBudgetSeconds = 300.0;
constexpr double kCriterion1BudgetSeconds = 60.0;

Index uniform(Rng& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

CMatrix unit(Index rows, Index cols, Index i, Index j) {
  CMatrix E = CMatrix::Zero(rows, cols);
  E(i, j) = 1.0;
  return E;
}

// Mix of invertible, rank-deficient, rectangular and zero T.
CMatrix random_t(Index style, Index max_dim, Rng& rng) {
  switch (style % 4) {
    case 0: {
      const Index n = uniform(rng, 1, max_dim);
      return sampling::random_invertible_contraction(n, 50.0, rng);
    }
    case 1: {
      const Index n1 = uniform(rng, 1, max_dim), n2 = uniform(rng, 1, max_dim);
      const Index m = std::min(n1, n2);
      return sampling::random_with_rank(n1, n2, uniform(rng, 0, m > 1 ? m - 1 : 0), rng);
    }
    case 2: {
      Index n1 = uniform(rng, 1, max_dim), n2 = uniform(rng, 1, max_dim);
      if (n1 == n2) n1 == max_dim ? --n2 : ++n1;
      if (n2 == 0) n2 = 1, ++n1;
      return sampling::random_contraction(n1, n2, rng);
    }
    default:
      return CMatrix::Zero(uniform(rng, 1, max_dim), uniform(rng, 1, max_dim));
  }
}

std::vector<CMatrix> random_set(Index n, Index count, Rng& rng) {
  std::vector<CMatrix> S;
  const bool triangular = uniform(rng, 0, 1) == 1;
  for (Index i = 0; i < count; ++i) {
    CMatrix A = sampling::ginibre(n, n, rng);
    if (triangular) A = A.triangularView<Eigen::Upper>();
    S.push_back(A);
  }
  return S;
}

// Two random elements of a unitarily rotated sum of M_{d_i} (x) I_{m_i}; they
// generate that whole *-algebra generically.
std::vector<CMatrix> random_block_star_set(Rng& rng) {
  std::vector<std::pair<Index, Index>> blocks;
  Index n = 0;
  const Index count = uniform(rng, 1, 3);
  for (Index b = 0; b < count; ++b) {
    const Index d = uniform(rng, 1, 2), m = uniform(rng, 1, 2);
    if (n + d * m > 6) break;
    blocks.emplace_back(d, m);
    n += d * m;
  }
  const CMatrix U = sampling::random_unitary(n, rng);
  std::vector<CMatrix> gens;
  for (int g = 0; g < 2; ++g) {
    CMatrix A = CMatrix::Zero(n, n);
    Index off = 0;
    for (auto [d, m] : blocks) {
      A.block(off, off, d * m, d * m) = kron(sampling::ginibre(d, d, rng), CMatrix::Identity(m, m));
      off += d * m;
    }
    gens.push_back(U * A * U.adjoint());
  }
  for (int g = 0; g < 2; ++g) gens.push_back(gens[static_cast<std::size_t>(g)].adjoint());
  return gens;
}

ModuleFamily random_t2_family(Rng& rng, const Tolerance& tol) {
  ModuleFamily F;
  F.id = "random-t2";
  F.algebra = t2_algebra();
  const Index size = uniform(rng, 2, 4);
  for (Index i = 0; i < size; ++i) {
    switch (uniform(rng, 0, 5)) {
      case 0:
        F.members.push_back(build_t2(T2Rep::type_b(uniform(rng, 1, 2)), tol));
        break;
      case 1:
        F.members.push_back(build_t2(T2Rep::type_c(uniform(rng, 1, 2)), tol));
        break;
      default:
        F.members.push_back(build_t2(T2Rep::type_a(random_t(uniform(rng, 0, 3), 2, rng)), tol));
    }
  }
  return F;
}

ModuleFamily random_ux_family(Rng& rng, const Tolerance& tol) {
  const Index d = uniform(rng, 1, 2);
  ModuleFamily F;
  F.id = "random-ux";
  F.algebra = ux_algebra(d, tol);
  const Index size = uniform(rng, 2, 3);
  for (Index i = 0; i < size; ++i) {
    const Index kind = uniform(rng, 0, 3);
    if (kind == 0) {
      F.members.push_back(build_ux_scalar(d, 1, uniform(rng, 0, 1) == 1, tol));
      continue;
    }
    UXRep u{uniform(rng, 1, 2), uniform(rng, 1, 2), {}};
    if (u.dim_H1 * u.dim_H2 < d) u.dim_H1 = 2;
    if (kind == 1 && d <= u.dim_H2) {
      // Images sharing a kernel vector or missing part of the range.
      for (Index j = 0; j < d; ++j) u.alpha.push_back(unit(u.dim_H1, u.dim_H2, std::min(j, u.dim_H1 - 1), j));
      if (d == 1 && u.dim_H1 == 1 && u.dim_H2 == 1) u.alpha = {sampling::random_contraction(1, 1, rng)};
    } else {
      for (Index j = 0; j < d; ++j) u.alpha.push_back(sampling::random_contraction(u.dim_H1, u.dim_H2, rng));
    }
    F.members.push_back(build_ux(u, tol));
  }
  return F;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// ---------------------------------------------------------------- criteria

CriterionResult c1(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed);
  const auto start = Clock::now();
  Index disagreements = 0, invertible = 0;
  const Index total = 500;
  for (Index i = 0; i < total; ++i) {
    const T2Rep t = T2Rep::type_a(random_t(i, 6, rng));
    const auto cf = t2_closed_form(t, tol);
    invertible += cf.invertible;
    if (dcp_check(build_t2(t, tol), tol).holds != cf.dcp) ++disagreements;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {1, "DCP closed form vs engine", disagreements == 0 && secs < kCriterion1BudgetSeconds,
          fmt("%ld instances (%ld invertible), %ld disagreements, %.1f s (limit 60 s)", long(total), long(invertible),
              long(disagreements), secs)};
}

CriterionResult c2(std::uint64_t) {
  const Tolerance tol;
  const auto usual = dcp_check(build_t2(T2Rep::type_a(CMatrix::Identity(1, 1)), tol), tol);
  CMatrix T(2, 1);
  T << 1.0, 0.0;
  const auto intro = dcp_check(build_t2(T2Rep::type_a(T), tol), tol);
  const bool pass = !usual.holds && usual.span_dim == 3 && usual.bicommutant_dim == 4 && intro.holds &&
                    intro.span_dim == 3 && intro.bicommutant_dim == 3;
  return {2, "introductory examples", pass,
          fmt("usual rep: span %ld, bicommutant %ld; T=(1,0)^T: span %ld, bicommutant %ld", long(usual.span_dim),
              long(usual.bicommutant_dim), long(intro.span_dim), long(intro.bicommutant_dim))};
}

CriterionResult c3(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 3);
  Index failures = 0;
  double worst_dist = 0.0, worst_off = 1e300;
  for (int i = 0; i < 100; ++i) {
    const T2Rep t = T2Rep::type_a(sampling::random_invertible_contraction(uniform(rng, 1, 5), 20.0, rng));
    const auto rep = build_t2(t, tol);
    const Index n = rep.dim_H();
    const OperatorSubspace span = span_of(rep.images(), n, n, tol);
    const OperatorSubspace bic = bicommutant(span, tol);
    const auto z = t2_bicommutant_excess(t, tol);
    if (!z || bic.dim() != 4) {
      ++failures;
      continue;
    }
    const double dist = bic.residual(*z), off = span.residual(*z);
    worst_dist = std::max(worst_dist, dist);
    worst_off = std::min(worst_off, off);
    if (!(dist < 1e-8) || !(off > 0.1)) ++failures;
  }
  return {3, "invertible-T witness", failures == 0,
          fmt("100 instances, %ld failures; max dist(z, bicommutant) %.2e, min dist(z, span) %.3f", long(failures),
              worst_dist, worst_off)};
}

CriterionResult c4(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 4);
  Index disagreements = 0;
  const Index total = 200;
  std::string first;
  for (Index i = 0; i < total; ++i) {
    const T2Rep t = T2Rep::type_a(random_t(i, 3, rng));
    const auto cf = t2_closed_form(t, tol);
    const auto F = canonical_t2_family(seed + static_cast<std::uint64_t>(i), tol);
    const auto H = build_t2(t, tol);
    SubtracingOptions so;
    so.samples = 40;
    so.seed = seed + static_cast<std::uint64_t>(i);
    const bool engine[] = {is_semigenerator_rel(H, F, tol), is_semicogenerator_rel(H, F, tol),
                           is_generator_rel(H, F, tol), is_cogenerator_rel(H, F, tol), is_subtracing(H, so, tol).holds};
    const bool closed[] = {cf.semigen, cf.semicogen, cf.generator, cf.cogenerator, cf.subtracing};
    for (int k = 0; k < 5; ++k)
      if (engine[k] != closed[k]) {
        ++disagreements;
        if (first.empty()) first = fmt("; first at instance %ld flag %d", long(i), k);
        break;
      }
  }
  return {4, "closed-form flags vs relative classification", disagreements == 0,
          fmt("%ld instances over the 5-member canonical family, %ld disagreements", long(total),
              long(disagreements)) + first};
}

CriterionResult c5(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 5);
  Index failures = 0;
  for (int i = 0; i < 100; ++i) {
    const Index n = uniform(rng, 1, 5), k = uniform(rng, 1, 3);
    const auto report = identity_suite(random_set(n, uniform(rng, 1, 3), rng), k, tol);
    if (!report.all_pass()) ++failures;
  }
  return {5, "commutant identity suite", failures == 0, fmt("100 random sets (n <= 5, k <= 3), %ld failures", long(failures))};
}

CriterionResult c6(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 6);
  Index failures = 0;
  for (int i = 0; i < 100; ++i) {
    const auto gens = random_block_star_set(rng);
    const AlgebraPtr alg = star_closure(gens, tol);
    if (!subspace_equal(bicommutant(gens, tol), alg->space(), tol)) ++failures;
  }
  return {6, "von Neumann sanity", failures == 0, fmt("100 adjoint-closed sets, %ld failures", long(failures))};
}

CriterionResult c7(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 7);
  Index disagreements = 0, pairs = 0;
  for (int i = 0; i < 50; ++i) {
    const ModuleFamily F = i % 2 == 0 ? random_t2_family(rng, tol) : random_ux_family(rng, tol);
    for (const auto& H : F.members) {
      ++pairs;
      bool by_trace = true, by_reject = true;
      for (const auto& K : F.members) {
        by_trace = by_trace && trace_module(H, K, tol).dim() == K.dim_H();
        by_reject = by_reject && reject_module(K, H, tol).dim() == 0;
      }
      if (by_trace != generator_by_definition(H, F, tol)) ++disagreements;
      if (by_reject != cogenerator_by_definition(H, F, tol)) ++disagreements;
    }
  }
  return {7, "trace/reject vs raw definitions", disagreements == 0,
          fmt("50 families, %ld module checks, %ld disagreements", long(pairs), long(disagreements))};
}

CriterionResult c8(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 8);
  Index checked = 0, elements = 0, failures = 0;
  for (Index i = 0; checked < 30; ++i) {
    const T2Rep t = T2Rep::type_a(random_t(1 + i % 3, 3, rng));
    if (!t2_closed_form(t, tol).subtracing) continue;
    ++checked;
    const auto rep = build_t2(t, tol);
    AlgLatOptions opts;
    opts.samples = 200;
    opts.seed = seed + static_cast<std::uint64_t>(i);
    for (const auto& X : bicommutant(rep.images(), tol).basis()) {
      ++elements;
      if (!alg_lat_member(X, rep.images(), opts, tol)) ++failures;
    }
  }
  const auto usual = build_t2(T2Rep::type_a(CMatrix::Identity(1, 1)), tol);
  AlgLatOptions opts;
  opts.seed = seed;
  const bool e21_fails = !alg_lat_member(unit(2, 2, 1, 0), usual.images(), opts, tol);
  return {8, "sub-tracing implies alg lat membership", failures == 0 && e21_fails,
          fmt("%ld sub-tracing instances, %ld bicommutant elements, %ld failures; E21 for T=1 %s", long(checked),
              long(elements), long(failures), e21_fails ? "rejected" : "accepted")};
}

CriterionResult c9(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 9);
  Index failures = 0;
  for (int i = 0; i < 100; ++i) {
    const Index r = uniform(rng, 1, 3), c = uniform(rng, 1, 3);
    std::vector<CMatrix> mats, more;
    const Index d = uniform(rng, 1, std::min<Index>(3, r * c));
    const bool units = uniform(rng, 0, 1) == 1;
    for (Index j = 0; j < d; ++j)
      mats.push_back(units ? unit(r, c, uniform(rng, 0, r - 1), uniform(rng, 0, c - 1)) : sampling::ginibre(r, c, rng));
    more = mats;
    more.push_back(units ? unit(r, c, uniform(rng, 0, r - 1), uniform(rng, 0, c - 1)) : sampling::ginibre(r, c, rng));
    const OperatorSubspace S = span_of(mats, r, c, tol), bigger = span_of(more, r, c, tol);
    const OperatorSubspace RS = refl_closure(S, tol);
    const bool extensive = subspace_leq(S, RS, tol);
    const bool monotone = subspace_leq(RS, refl_closure(bigger, tol), tol);
    const bool idempotent = subspace_equal(refl_closure(RS, tol), RS, tol);
    if (!(extensive && monotone && idempotent)) ++failures;
  }
  const Index e11 = refl_closure(span_of({unit(2, 2, 0, 0)}, tol), tol).dim();
  return {9, "reflexive closure is a closure operator", failures == 0 && e11 == 1,
          fmt("100 random spaces, %ld failures; closure of span{E11} has dim %ld", long(failures), long(e11))};
}

CriterionResult c10(std::uint64_t seed) {
  const Tolerance tol;
  Rng rng(seed + 10);
  Index failures = 0;
  for (int i = 0; i < 100; ++i) {
    const Index n = uniform(rng, 1, 4);
    auto gens = random_set(n, uniform(rng, 1, 2), rng);
    gens.push_back(CMatrix::Identity(n, n));
    const auto rep = Representation::identity(generate_algebra(gens, tol), tol);
    if (!cyclic_membership(rep, sampling::gaussian_vector(n, rng), tol)) ++failures;
  }
  const auto nil = Representation::identity(generate_algebra({unit(2, 2, 0, 1)}, tol), tol);
  CVector e2 = CVector::Zero(2);
  e2(1) = 1.0;
  const bool strict_false = !cyclic_membership(nil, e2, tol);
  return {10, "cyclic membership", failures == 0 && strict_false,
          fmt("100 unital instances, %ld failures; span{E12} with x = e2 %s", long(failures),
              strict_false ? "excluded" : "included")};
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Fn = CriterionResult (*)(std::uint64_t);
  static const Fn table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (id < 1 || id > kCriterionCount) throw InputError("no acceptance criterion " + std::to_string(id));
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](seed);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& on_result) {
  const auto start = Clock::now();
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id, seed));
    if (on_result) on_result(results.back());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  CriterionResult total{11, "full suite within budget", all && secs < kSuiteBudgetSeconds,
                        fmt("criteria 1-10 %s, %.1f s (limit 300 s)", all ? "all pass" : "have failures", secs), secs};
  results.push_back(total);
  if (on_result) on_result(total);
  return results;
}

std::string format(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << fmt("%.2f", r.seconds)
     << " s): " << r.detail;
  return os.str();
}

}  // namespace opalg::suite
