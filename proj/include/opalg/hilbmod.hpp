#pragma once

// Hilbert modules as data: intertwiner spaces, trace and reject submodules,
// direct sums and multiples, submodules and quotients, and equivalence tests.
//
// Module maps are computed as full linear intertwiner spaces; no norm bound is
// imposed on morphisms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opalg/linalg.hpp"
#include "opalg/representation.hpp"

namespace opalg {

/// Hom(H, K) = { T : C^dim_H -> C^dim_K with T rho_H(b) = rho_K(b) T }.
OperatorSubspace intertwiners(const Representation& from, const Representation& to,
                              const Tolerance& tol = {});

/// Module maps whose adjoint is also a module map. Computed twice: as the
/// intertwiners that additionally intertwine the adjoint actions, and as the
/// intertwiners of the paired star-closure. Throws VerificationError if the
/// two computations disagree.
OperatorSubspace adjointable_intertwiners(const Representation& from, const Representation& to,
                                          const Tolerance& tol = {});

/// Tr_K(H): closed span of the ranges of all module maps H -> K. Returns a
/// subspace of C^dim_K.
Subspace trace_module(const Representation& H, const Representation& K, const Tolerance& tol = {});

/// Rej_K(H): intersection of the kernels of all module maps K -> H. Returns a
/// subspace of C^dim_K.
Subspace reject_module(const Representation& K, const Representation& H, const Tolerance& tol = {});

Representation direct_sum(const std::vector<Representation>& reps, const Tolerance& tol = {});
/// H^(k), ordered as k consecutive copies of H (matches ampliate()).
Representation multiple(const Representation& rep, Index k, const Tolerance& tol = {});

/// span{x} + span{rho(b) x}; with `strict` only span{rho(b) x}.
Subspace cyclic_submodule(const Representation& rep, const CVector& x, bool strict = false,
                          const Tolerance& tol = {});

/// Throws InputError unless W is invariant under every image.
void require_invariant(const Representation& rep, const Subspace& W, const Tolerance& tol = {});
bool is_invariant(const Representation& rep, const Subspace& W, const Tolerance& tol = {});

/// Compression to W in the coordinates of W's orthonormal basis.
Representation restrict_to(const Representation& rep, const Subspace& W, const Tolerance& tol = {});
/// The quotient by W realized on the orthocomplement: P rho(.) restricted to W^perp.
Representation quotient(const Representation& rep, const Subspace& W, const Tolerance& tol = {});

enum class Equivalence { yes, no, inconclusive };

std::string to_string(Equivalence e);

struct EquivalenceVerdict {
  Equivalence verdict = Equivalence::inconclusive;
  /// A "yes" from word traces below the exhaustive bound is heuristic.
  bool heuristic = true;
  Index exhaustive_length = 0;
  Index random_words = 0;
  Index max_word_length = 0;
  std::string note;
};

struct WordTraceOptions {
  /// Longest random word; 0 selects the bound 2 * dim_H^2.
  Index word_len = 0;
  Index samples = 500;
  Index exhaustive_len = 3;
  std::uint64_t seed = 0;
};

/// Unitary equivalence of the actions, through traces of words in the images
/// and their adjoints (so really equivalence of the star-closure actions).
/// Any trace mismatch is a definitive "no". Matching traces on all words up to
/// exhaustive_len and on random words up to 2 dim_H^2 give "yes"; a shorter
/// random word bound gives "inconclusive".
EquivalenceVerdict unitarily_equivalent(const Representation& a, const Representation& b,
                                        const WordTraceOptions& opts = {}, const Tolerance& tol = {});

struct QuasiEquivalenceVerdict {
  bool found = false;
  Index k = 0;  // multiplicity applied to the first representation
  Index l = 0;  // multiplicity applied to the second
  bool heuristic = true;
  std::string note;
};

/// Bounded search for k, l <= max_mult with a^(k) unitarily equivalent to b^(l).
QuasiEquivalenceVerdict quasi_equivalent(const Representation& a, const Representation& b, Index max_mult,
                                         const WordTraceOptions& opts = {}, const Tolerance& tol = {});

}  // namespace opalg
