#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opalg/linalg.hpp"
#include "opalg/representation.hpp"

namespace opalg {

/// { X in M_n : X A = A X for every A in S }, computed against an orthonormal
/// basis of span(S) as the kernel of the stacked maps X -> X A_i - A_i X.
OperatorSubspace commutant(const OperatorSubspace& S, const Tolerance& tol = {});
/// The list must be non-empty and consist of n x n matrices.
OperatorSubspace commutant(const std::vector<CMatrix>& S, const Tolerance& tol = {});

OperatorSubspace bicommutant(const OperatorSubspace& S, const Tolerance& tol = {});
OperatorSubspace bicommutant(const std::vector<CMatrix>& S, const Tolerance& tol = {});

/// Comparison of span rho(A) with rho(A)''. At finite dimension the weak*
/// closure of rho(A) is its linear span, so the double commutant property
/// holds exactly when the two dimensions agree.
struct DcpVerdict {
  bool holds = false;
  Index span_dim = 0;
  Index bicommutant_dim = 0;
  /// Orthonormal basis of the part of rho(A)'' orthogonal to span rho(A).
  OperatorSubspace excess;
};

DcpVerdict dcp_check(const Representation& rep, const Tolerance& tol = {});

struct AlgLatOptions {
  Index samples = 200;
  std::uint64_t seed = 0;
  /// Drop x from K_x = span{x} + span{A x}; use for algebras without identity.
  bool strict_cyclic = false;
};

/// Randomized one-sided test of X in alg lat S. For each probe vector x the
/// smallest S-invariant subspace K_x containing x (or only S x when strict)
/// is formed and X K_x <= K_x is checked. A `false` comes with a concrete
/// violated subspace; `true` is evidence only.
bool alg_lat_member(const CMatrix& X, const std::vector<CMatrix>& S, const AlgLatOptions& opts = {},
                    const Tolerance& tol = {});

struct IdentityCheck {
  std::string name;
  bool pass = false;
  Index lhs_dim = 0;
  Index rhs_dim = 0;
  /// Largest distance of a basis element of either side from the other side.
  double residual = 0.0;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

/// Checks, with both sides computed independently:
///   span(S (x) I) = span(S) (x) I,     (S (x) I)'' = S'' (x) I,
///   span(S*) = (span S)*,              (S*)'' = (S'')*.
IdentityReport identity_suite(const std::vector<CMatrix>& S, Index k, const Tolerance& tol = {});

/// span(S*) == span(S).
bool is_selfadjoint_space(const OperatorSubspace& S, const Tolerance& tol = {});
bool is_selfadjoint_space(const std::vector<CMatrix>& S, const Tolerance& tol = {});

}  // namespace opalg
