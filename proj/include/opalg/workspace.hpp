#pragma once

// JSON workspace files: named matrices, algebras, representations and
// operator sets. Complex entries are [re, im] pairs stored row-major.
//
//   {
//     "matrices": {"T": {"rows": 2, "cols": 1, "entries": [[1, 0], [0, 0]]}},
//     "algebras": {"A": {"generators": ["E11", "E12"]}},
//     "representations": {
//       "rho": {"algebra": "A", "images": ["R1", "R2"]},
//       "intro": {"t2": {"T": "T", "kind": "a"}},
//       "shift": {"ux": {"alpha": ["a1", "a2"]}}
//     },
//     "sets": {"S": ["E11"]},
//     "tolerance": {"rank_rel": 1e-9, "match_abs": 1e-8}
//   }
//
// "images" lists the images of the algebra's generators in order; the
// representation on the whole algebra is their multiplicative extension.
// T2 kinds b and c take {"kind": "b", "dim": n} instead of a matrix.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opalg/families.hpp"

namespace opalg {

struct WorkspaceRep {
  Representation rep;
  std::optional<T2Rep> t2;
  std::optional<UXRep> ux;
};

struct Workspace {
  Tolerance tol;
  std::map<std::string, CMatrix> matrices;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, std::vector<CMatrix>> generators;
  std::map<std::string, WorkspaceRep> representations;
  std::map<std::string, std::vector<CMatrix>> sets;

  const WorkspaceRep& rep(const std::string& name) const;
  /// An operator list by name, looked up in "sets", then as the generators
  /// of an algebra, then as the images of a representation.
  std::vector<CMatrix> operator_set(const std::string& name) const;
};

/// Overrides applied on top of the file's "tolerance" block.
struct ToleranceOverride {
  std::optional<double> rank_rel;
  std::optional<double> match_abs;
};

/// Parse errors and unresolved names throw InputError naming the key path.
Workspace parse_workspace(const nlohmann::json& doc, const ToleranceOverride& over = {});
Workspace load_workspace(const std::filesystem::path& path, const ToleranceOverride& over = {});

/// {rows, cols, entries} with [re, im] pairs, row-major.
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& where = "matrix");
nlohmann::json matrix_to_json(const CMatrix& M);

/// Inline matrices as nested rows, entries real or [re, im]: "[[1, 0], [0, [0, 1]]]".
/// A workspace-style {rows, cols, entries} object is accepted too.
CMatrix parse_inline_matrix(const std::string& text);

/// The extension of generator images to a representation of the algebra
/// they generate. Throws InputError if the images do not define a
/// homomorphism (a relation among the generators is not respected).
Representation representation_from_generators(const AlgebraPtr& algebra, const std::vector<CMatrix>& generators,
                                              const std::vector<CMatrix>& images, const Tolerance& tol = {});

}  // namespace opalg
