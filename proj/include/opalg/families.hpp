#pragma once

// Closed-form machinery for the algebra T2 of upper triangular 2x2 matrices
// and for its generalization U(X) (scalar diagonal, operator space X in the
// 1-2 corner). Every closed form here is checked against the generic engine.
//
// Contractivity of T is enforced when building T2 modules; complete
// contractivity of the corner map alpha for U(X) is not checked.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opalg/classify.hpp"

namespace opalg {

// ------------------------------------------------------------------- T2

enum class T2Kind { a, b, c, d };

std::string to_string(T2Kind k);

/// A T2-module. Kind (a): H1 (+) H2 with a contraction T : H2 -> H1 and
/// action a11 on H1, a12 T, a22 on H2. Kind (b): a -> a11 on H1 (dim_H2 = 0).
/// Kind (c): a -> a22 on H2 (dim_H1 = 0). Kind (d): the zero module.
struct T2Rep {
  Index dim_H1 = 0;
  Index dim_H2 = 0;
  CMatrix T;  // dim_H1 x dim_H2
  T2Kind kind = T2Kind::a;

  static T2Rep type_a(CMatrix T);
  static T2Rep type_b(Index n);
  static T2Rep type_c(Index n);
  static T2Rep type_d();
};

/// E11, E12, E22 in M_2.
std::vector<CMatrix> t2_matrix_units();
/// The reference algebra T2 (shared, immutable).
AlgebraPtr t2_algebra();

/// Throws InputError for shape/kind inconsistencies or |T| > 1 + match_abs.
Representation build_t2(const T2Rep& t, const Tolerance& tol = {});

struct ClosedFormVerdict {
  bool dcp = false;
  bool semigen = false;
  bool semicogen = false;
  bool generator = false;
  bool cogenerator = false;
  bool subtracing = false;
  // Rank facts the verdict is derived from.
  bool invertible = false;
  bool dense_range = false;
  bool injective = false;
  bool zero = false;
  std::vector<std::string> notes;
};

/// Closed-form predicates evaluated through the numerical rank of T:
/// dcp <=> T not invertible; semigen <=> range not dense; semicogen <=> not
/// injective; generator <=> semigen and T != 0; cogenerator <=> semicogen and
/// T != 0; sub-tracing <=> range not dense. Kind (a) only.
ClosedFormVerdict t2_closed_form(const T2Rep& t, const Tolerance& tol = {});

/// The commutant { A (+) D : A T = T D }, solved over block pairs and checked
/// against the generic commutant of build_t2(t).
OperatorSubspace t2_commutant_closed_form(const T2Rep& t, const Tolerance& tol = {});

/// For invertible T, the operator z = T^-1 placed in the 2-1 block (H1 -> H2),
/// verified to lie in the bicommutant but outside span pi(T2). None otherwise.
std::optional<CMatrix> t2_bicommutant_excess(const T2Rep& t, const Tolerance& tol = {});

/// The canonical test family: type (a) modules with random contractions of
/// shapes 1x1, 2x1 and 1x2, plus the one-dimensional types (b) and (c).
ModuleFamily canonical_t2_family(std::uint64_t seed, const Tolerance& tol = {});

/// property_report over `F` with sub-tracing taken from t2_closed_form
/// instead of sampling. Kind (a) only.
PropertyReport t2_property_report(const T2Rep& t, const ModuleFamily& F, const Tolerance& tol = {});

// ------------------------------------------------------------------ U(X)

/// A U(X)-module given by alpha applied to a basis of X (dim X = alpha.size()).
struct UXRep {
  Index dim_H1 = 0;
  Index dim_H2 = 0;
  std::vector<CMatrix> alpha;  // each dim_H1 x dim_H2
};

/// Concrete model of U(X) for dim X = d inside M_{1+d}: P1 = E00,
/// P2 = sum_j Ejj, x_j = E0j. Returned in that order.
std::vector<CMatrix> ux_elements(Index d);
AlgebraPtr ux_algebra(Index d, const Tolerance& tol = {});

/// P1 -> I (+) 0, P2 -> 0 (+) I, x_j -> [[0, alpha_j], [0, 0]].
/// Throws InputError if the alpha images are linearly dependent.
Representation build_ux(const UXRep& u, const Tolerance& tol = {});
/// One of the scalar modules: P1 acting as I (`first`) or P2 acting as I.
Representation build_ux_scalar(Index d, Index n, bool first, const Tolerance& tol = {});

/// Pairs { A (+) D : A alpha_j = alpha_j D for all j }, checked against the
/// generic commutant of build_ux(u).
OperatorSubspace ux_commutant_pairs(const UXRep& u, const Tolerance& tol = {});

struct SemiCriteria {
  bool semigen = false;
  bool semicogen = false;
};

/// semigen <=> the ranges of the alpha_j do not span H1; semicogen <=> the
/// alpha_j have a common nonzero kernel vector. Cross-validated against the
/// relative classifiers over canonical_ux_family(d, seed).
SemiCriteria ux_semi_criteria(const UXRep& u, std::uint64_t seed = 0, const Tolerance& tol = {});

/// Random type (a) modules of shapes (1,1), (2,1), (1,2) (d random corner
/// images where the shape allows) plus both scalar modules.
ModuleFamily canonical_ux_family(Index d, std::uint64_t seed, const Tolerance& tol = {});

/// Finite truncation of alpha(x) = S diag(x) with S the forward shift:
/// alpha_j = E_{j+1, j} from C^k to C^{k+1}. With `zero_first`, the
/// truncation of S diag(0, x): alpha_j = E_{j+2, j+1} from C^{k+1} to C^{k+2}.
UXRep shift_diag_truncation(Index k, bool zero_first = false);

// ------------------------------------------------------ reflexive closure

/// Pairs (A, D), A rows x rows and D cols x cols, with A T = T D for every T
/// in `ops`; returned as block diagonal A (+) D.
OperatorSubspace intertwining_pairs(const std::vector<CMatrix>& ops, Index rows, Index cols,
                                    const Tolerance& tol = {});

/// { S' : A S' = S' D for every pair (A, D) intertwining all of S }.
OperatorSubspace refl_closure(const OperatorSubspace& S, const Tolerance& tol = {});

// ---------------------------------------------------------------- search

enum class SearchDomain { t2, ux, any };

struct SearchTarget {
  /// Flag name (dcp, faithful, semigen, semicogen, generator, cogenerator,
  /// subtracing) -> wanted truth value. Evidence counts as true.
  std::map<std::string, bool> flags;
  SearchDomain domain = SearchDomain::any;
};

/// Parses "dcp:T,semigen:F" (also accepts true/false/1/0 and '=' separators).
SearchTarget parse_target(const std::string& pattern);

struct SearchHit {
  std::string description;
  PropertyReport report;
};

struct SearchOptions {
  Index subtracing_samples = 32;
  Index max_hits = 3;
};

/// Random sampling over T2 and U(X) parameters (Ginibre contractions plus
/// structured rank-deficient, zero, partial-isometry and shift-diagonal
/// candidates). Each candidate gets a full engine report over the canonical
/// family; matches are returned, empty if the budget is exhausted.
std::vector<SearchHit> counterexample_search(const SearchTarget& target, std::uint64_t seed, Index budget,
                                             const SearchOptions& opts = {}, const Tolerance& tol = {});

}  // namespace opalg
