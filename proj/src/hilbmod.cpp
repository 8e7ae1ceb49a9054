#include "opalg/hilbmod.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "opalg/errors.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

double scaled_threshold(const Tolerance& tol, const CMatrix& op) {
  return tol.match_abs * std::max(1.0, sampling::spectral_norm(op));
}

// Letters of the word alphabet: each image and its adjoint, scaled by a common
// factor per letter so that both representations see words of norm <= 1.
struct Alphabet {
  std::vector<CMatrix> a;
  std::vector<CMatrix> b;
};

Alphabet word_alphabet(const Representation& x, const Representation& y) {
  Alphabet out;
  for (std::size_t i = 0; i < x.images().size(); ++i) {
    const double s = std::max(sampling::spectral_norm(x.images()[i]), sampling::spectral_norm(y.images()[i]));
    if (s == 0.0) continue;
    out.a.push_back(x.images()[i] / s);
    out.b.push_back(y.images()[i] / s);
    out.a.push_back(x.images()[i].adjoint() / s);
    out.b.push_back(y.images()[i].adjoint() / s);
  }
  return out;
}

bool traces_match(const CMatrix& wa, const CMatrix& wb, const Tolerance& tol) {
  const cplx ta = wa.trace(), tb = wb.trace();
  return std::abs(ta - tb) <= tol.match_abs * std::max({1.0, std::abs(ta), std::abs(tb)});
}

}  // namespace

OperatorSubspace intertwiners(const Representation& from, const Representation& to, const Tolerance& tol) {
  require_same_algebra(from, to, tol);
  return sylvester_kernel(from.images(), to.images(), to.dim_H(), from.dim_H(), tol);
}

OperatorSubspace adjointable_intertwiners(const Representation& from, const Representation& to,
                                          const Tolerance& tol) {
  require_same_algebra(from, to, tol);
  const Index m = from.dim_H(), n = to.dim_H();
  if (m == 0 || n == 0) return OperatorSubspace::zero(n, m);

  // Route 1: T rho_H(b) = rho_K(b) T and T rho_H(b)* = rho_K(b)* T.
  std::vector<CMatrix> right = from.images(), left = to.images();
  for (std::size_t i = 0; i < from.images().size(); ++i) {
    right.push_back(from.images()[i].adjoint());
    left.push_back(to.images()[i].adjoint());
  }
  const OperatorSubspace direct = sylvester_kernel(right, left, n, m, tol);

  // Route 2: intertwiners of the star-closure of the paired action b -> rho_H(b) (+) rho_K(b).
  std::vector<CMatrix> paired;
  for (std::size_t i = 0; i < from.images().size(); ++i) {
    const CMatrix blocks[] = {from.images()[i], to.images()[i]};
    paired.push_back(block_diagonal(blocks));
  }
  OperatorSubspace via_closure = OperatorSubspace::full(n, m);
  if (!paired.empty()) {
    const auto C = star_closure(paired, tol);
    std::vector<CMatrix> cr, cl;
    for (const auto& c : C->basis()) {
      cr.push_back(c.topLeftCorner(m, m));
      cl.push_back(c.bottomRightCorner(n, n));
    }
    via_closure = sylvester_kernel(cr, cl, n, m, tol);
  }
  if (!subspace_equal(direct, via_closure, tol))
    throw VerificationError("adjointable_intertwiners: adjoint-pair solve (dim " + std::to_string(direct.dim()) +
                            ") disagrees with star-closure solve (dim " + std::to_string(via_closure.dim()) + ")");
  return direct;
}

Subspace trace_module(const Representation& H, const Representation& K, const Tolerance& tol) {
  const OperatorSubspace hom = intertwiners(H, K, tol);
  const Index n = K.dim_H(), m = H.dim_H();
  if (hom.dim() == 0 || m == 0) return Subspace::zero(n);
  CMatrix ranges(n, m * hom.dim());
  for (Index i = 0; i < hom.dim(); ++i) ranges.middleCols(i * m, m) = hom.element(i);
  return column_space(ranges, tol);
}

Subspace reject_module(const Representation& K, const Representation& H, const Tolerance& tol) {
  const OperatorSubspace hom = intertwiners(K, H, tol);
  const Index n = K.dim_H(), m = H.dim_H();
  if (hom.dim() == 0 || m == 0) return Subspace::full(n);
  CMatrix stacked(m * hom.dim(), n);
  for (Index i = 0; i < hom.dim(); ++i) stacked.middleRows(i * m, m) = hom.element(i);
  return rank_nullspace(stacked, tol).null;
}

Representation direct_sum(const std::vector<Representation>& reps, const Tolerance& tol) {
  if (reps.empty()) throw InputError("direct_sum: no summands");
  for (const auto& r : reps) require_same_algebra(reps.front(), r, tol);
  const std::size_t d = reps.front().images().size();
  Index dim = 0;
  for (const auto& r : reps) dim += r.dim_H();
  std::vector<CMatrix> images;
  images.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<CMatrix> blocks;
    for (const auto& r : reps) blocks.push_back(r.images()[i]);
    images.push_back(block_diagonal(blocks));
  }
  return Representation(reps.front().algebra_ptr(), dim, std::move(images), tol);
}

Representation multiple(const Representation& rep, Index k, const Tolerance& tol) {
  if (k < 1) throw InputError("multiple: multiplicity must be at least 1");
  std::vector<CMatrix> images;
  for (const auto& img : rep.images()) images.push_back(ampliate(img, k));
  return Representation(rep.algebra_ptr(), rep.dim_H() * k, std::move(images), tol);
}

Subspace cyclic_submodule(const Representation& rep, const CVector& x, bool strict, const Tolerance& tol) {
  if (x.size() != rep.dim_H()) throw InputError("cyclic_submodule: vector has the wrong dimension");
  if (x.norm() == 0.0) throw InputError("cyclic_submodule: zero vector");
  const Index d = static_cast<Index>(rep.images().size());
  const Index extra = strict ? 0 : 1;
  CMatrix orbit(rep.dim_H(), d + extra);
  if (!strict) orbit.col(0) = x;
  for (Index i = 0; i < d; ++i) orbit.col(i + extra) = rep.images()[static_cast<std::size_t>(i)] * x;
  return column_space(orbit, tol);
}

bool is_invariant(const Representation& rep, const Subspace& W, const Tolerance& tol) {
  if (W.ambient_dim() != rep.dim_H()) throw InputError("subspace lives in the wrong ambient space");
  for (const auto& img : rep.images()) {
    const double thr = scaled_threshold(tol, img);
    for (Index j = 0; j < W.dim(); ++j)
      if (W.residual(img * W.basis().col(j)) > thr) return false;
  }
  return true;
}

void require_invariant(const Representation& rep, const Subspace& W, const Tolerance& tol) {
  if (!is_invariant(rep, W, tol)) throw InputError("subspace is not invariant under the representation");
}

Representation restrict_to(const Representation& rep, const Subspace& W, const Tolerance& tol) {
  require_invariant(rep, W, tol);
  std::vector<CMatrix> images;
  for (const auto& img : rep.images()) images.push_back(W.basis().adjoint() * img * W.basis());
  return Representation(rep.algebra_ptr(), W.dim(), std::move(images), tol);
}

Representation quotient(const Representation& rep, const Subspace& W, const Tolerance& tol) {
  require_invariant(rep, W, tol);
  const Subspace perp = orthogonal_complement(W);
  std::vector<CMatrix> images;
  for (const auto& img : rep.images()) images.push_back(perp.basis().adjoint() * img * perp.basis());
  return Representation(rep.algebra_ptr(), perp.dim(), std::move(images), tol);
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::yes:
      return "yes";
    case Equivalence::no:
      return "no";
    default:
      return "inconclusive";
  }
}

EquivalenceVerdict unitarily_equivalent(const Representation& a, const Representation& b,
                                        const WordTraceOptions& opts, const Tolerance& tol) {
  require_same_algebra(a, b, tol);
  EquivalenceVerdict v;
  if (a.dim_H() != b.dim_H()) {
    v.verdict = Equivalence::no;
    v.heuristic = false;
    v.note = "dimensions differ";
    return v;
  }
  const Index n = a.dim_H();
  const Index bound = 2 * n * n;
  v.max_word_length = opts.word_len > 0 ? opts.word_len : bound;

  const Alphabet alpha = word_alphabet(a, b);
  const std::size_t letters = alpha.a.size();
  if (n == 0 || letters == 0) {
    // Zero actions of equal dimension are unitarily equivalent.
    v.verdict = Equivalence::yes;
    v.heuristic = false;
    v.note = "both actions are zero";
    return v;
  }

  // Exhaustive words, depth-first with running products.
  bool mismatch = false;
  std::function<void(const CMatrix&, const CMatrix&, Index)> walk = [&](const CMatrix& wa, const CMatrix& wb,
                                                                         Index depth) {
    if (mismatch || depth == opts.exhaustive_len) return;
    for (std::size_t l = 0; l < letters && !mismatch; ++l) {
      const CMatrix na = wa * alpha.a[l], nb = wb * alpha.b[l];
      if (!traces_match(na, nb, tol)) {
        mismatch = true;
        v.note = "trace mismatch on a word of length " + std::to_string(depth + 1);
        return;
      }
      walk(na, nb, depth + 1);
    }
  };
  walk(CMatrix::Identity(n, n), CMatrix::Identity(n, n), 0);
  v.exhaustive_length = opts.exhaustive_len;
  if (mismatch) {
    v.verdict = Equivalence::no;
    v.heuristic = false;
    return v;
  }

  sampling::Rng rng(opts.seed);
  std::uniform_int_distribution<Index> len_dist(1, std::max<Index>(1, v.max_word_length));
  std::uniform_int_distribution<std::size_t> letter_dist(0, letters - 1);
  for (Index s = 0; s < opts.samples; ++s) {
    const Index len = len_dist(rng);
    CMatrix wa = CMatrix::Identity(n, n), wb = CMatrix::Identity(n, n);
    for (Index t = 0; t < len; ++t) {
      const std::size_t l = letter_dist(rng);
      wa = wa * alpha.a[l];
      wb = wb * alpha.b[l];
    }
    ++v.random_words;
    if (!traces_match(wa, wb, tol)) {
      v.verdict = Equivalence::no;
      v.heuristic = false;
      v.note = "trace mismatch on a random word of length " + std::to_string(len);
      return v;
    }
  }
  if (v.max_word_length >= bound) {
    v.verdict = Equivalence::yes;
    v.heuristic = opts.exhaustive_len < bound;
    v.note = v.heuristic ? "all sampled word traces agree up to length 2 dim_H^2 (heuristic)"
                         : "all word traces agree up to length 2 dim_H^2";
  } else {
    v.verdict = Equivalence::inconclusive;
    v.note = "word traces agree, but random words stopped below 2 dim_H^2";
  }
  return v;
}

QuasiEquivalenceVerdict quasi_equivalent(const Representation& a, const Representation& b, Index max_mult,
                                         const WordTraceOptions& opts, const Tolerance& tol) {
  if (max_mult < 1) throw InputError("quasi_equivalent: max_mult must be at least 1");
  require_same_algebra(a, b, tol);
  QuasiEquivalenceVerdict q;
  if (a.dim_H() == 0 || b.dim_H() == 0) {
    q.found = a.dim_H() == b.dim_H();
    q.k = q.l = 1;
    q.heuristic = false;
    q.note = "zero module";
    return q;
  }
  if (intertwiners(a, b, tol).dim() == 0) {
    q.note = "no nonzero intertwiners, so no multiples can be equivalent";
    q.heuristic = false;
    return q;
  }
  std::vector<std::pair<Index, Index>> candidates;
  for (Index k = 1; k <= max_mult; ++k)
    for (Index l = 1; l <= max_mult; ++l)
      if (k * a.dim_H() == l * b.dim_H()) candidates.emplace_back(k, l);
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [k, l] : candidates) {
    const auto v = unitarily_equivalent(multiple(a, k, tol), multiple(b, l, tol), opts, tol);
    if (v.verdict == Equivalence::yes) {
      q.found = true;
      q.k = k;
      q.l = l;
      q.heuristic = v.heuristic;
      q.note = v.note;
      return q;
    }
  }
  q.note = "not found up to multiplicity " + std::to_string(max_mult);
  return q;
}

}  // namespace opalg
