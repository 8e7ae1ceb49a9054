#pragma once

// Generator-type properties of a Hilbert module, decided relative to an
// explicit finite family of test modules. Every "for all modules K" in the
// definitions is truncated to the family, and reports carry the family id.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opalg/commutant.hpp"
#include "opalg/hilbmod.hpp"

namespace opalg {

struct ModuleFamily {
  std::string id;
  AlgebraPtr algebra;
  std::vector<Representation> members;

  /// Throws InputError unless every member is over `algebra`.
  void validate(const Tolerance& tol = {}) const;
};

/// Hom(H, K) != 0 for every nonzero K in the family.
bool is_semigenerator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol = {});
/// Hom(K, H) != 0 for every nonzero K in the family.
bool is_semicogenerator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol = {});

/// Tr_K(H) = K for every K in the family, cross-checked against
/// generator_by_definition(); disagreement throws VerificationError.
bool is_generator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol = {});
/// Rej_K(H) = 0 for every K in the family, cross-checked against
/// cogenerator_by_definition().
bool is_cogenerator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol = {});

/// Brute force over intertwiner bases: every nonzero R : K -> L admits
/// T : H -> K with R T != 0. K ranges over the family; L over the family
/// together with the quotients K / Tr_K(H), the targets the definition needs
/// beyond the family itself.
bool generator_by_definition(const Representation& H, const ModuleFamily& F, const Tolerance& tol = {});
/// Dual: every nonzero R : K -> L admits T : L -> H with T R != 0. L ranges
/// over the family; K over the family and the submodules Rej_L(H).
bool cogenerator_by_definition(const Representation& H, const ModuleFamily& F, const Tolerance& tol = {});

struct SubtracingOptions {
  Index samples = 200;
  std::uint64_t seed = 0;
  /// Caller-supplied submodules to test in addition to the sampled ones.
  std::vector<Subspace> extra_submodules;
  bool strict_cyclic = false;
};

struct SubtracingResult {
  /// false is definitive (see witness); true is evidence only.
  bool holds = true;
  std::optional<Subspace> witness;
  Index submodules_tested = 0;
};

/// Checks Tr_K(H) = K over sampled cyclic submodules and the supplied ones.
/// Throws InputError if a supplied subspace is not invariant.
SubtracingResult is_subtracing(const Representation& H, const SubtracingOptions& opts = {},
                               const Tolerance& tol = {});

/// Finite probe of complete sub-tracing: sub-tracing of H^(k) for each k.
SubtracingResult is_completely_subtracing(const Representation& H, const std::vector<Index>& multiples = {1, 2, 4},
                                          const SubtracingOptions& opts = {}, const Tolerance& tol = {});

enum class Flag { no, yes, evidence };

std::string to_string(Flag f);
inline bool truthy(Flag f) { return f != Flag::no; }

struct PropertyReport {
  Flag dcp = Flag::no;
  Flag faithful = Flag::no;
  Flag semigen = Flag::no;
  Flag semicogen = Flag::no;
  Flag generator = Flag::no;
  Flag cogenerator = Flag::no;
  Flag subtracing = Flag::no;
  std::string family_id;
  std::uint64_t seed = 0;
  DcpVerdict dcp_detail;
  std::vector<std::string> notes;
};

struct ReportOptions {
  SubtracingOptions subtracing;
  /// When set, an exact sub-tracing verdict replaces the sampled one.
  std::optional<bool> subtracing_exact;
};

/// Runs every check and enforces the implication table
/// (generator => semigen, cogenerator => semicogen, either => dcp).
PropertyReport property_report(const Representation& H, const ModuleFamily& F, const ReportOptions& opts = {},
                               const Tolerance& tol = {});

/// Throws VerificationError naming the first violated implication.
void check_implications(const PropertyReport& r);

}  // namespace opalg
