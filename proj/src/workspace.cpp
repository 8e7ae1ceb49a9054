#include "opalg/workspace.hpp"

#include <fstream>
#include <sstream>

#include "opalg/errors.hpp"

namespace opalg {

using nlohmann::json;

namespace {

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing key '" + key + "'");
  return *it;
}

Index count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a non-negative integer");
  return static_cast<Index>(j.get<long long>());
}

double real_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

cplx complex_entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected an [re, im] pair");
  return {real_number(j[0], where + "[0]"), real_number(j[1], where + "[1]")};
}

std::vector<CMatrix> resolve_matrices(const Workspace& ws, const json& names, const std::string& where) {
  if (!names.is_array()) throw InputError(where + ": expected a list of matrix names");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!names[i].is_string()) throw InputError(at + ": expected a matrix name");
    const auto it = ws.matrices.find(names[i].get<std::string>());
    if (it == ws.matrices.end()) throw InputError(at + ": unknown matrix '" + names[i].get<std::string>() + "'");
    out.push_back(it->second);
  }
  return out;
}

// Rethrows library InputErrors with the workspace location prefixed.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(where, 0) == 0) throw;
    throw InputError(where + ": " + what);
  }
}

WorkspaceRep parse_rep(const Workspace& ws, const json& node, const std::string& where) {
  if (!node.is_object()) throw InputError(where + ": expected an object");
  if (node.contains("t2")) {
    const json& t = node["t2"];
    const std::string tw = where + ".t2";
    std::string kind = "a";
    if (t.contains("kind")) {
      if (!t["kind"].is_string()) throw InputError(tw + ".kind: expected one of a, b, c, d");
      kind = t["kind"].get<std::string>();
    }
    T2Rep r;
    if (kind == "a") {
      const auto T = resolve_matrices(ws, json::array({member(t, "T", tw)}), tw + ".T");
      r = T2Rep::type_a(T.front());
    } else if (kind == "b" || kind == "c") {
      const Index n = count(member(t, "dim", tw), tw + ".dim");
      r = kind == "b" ? T2Rep::type_b(n) : T2Rep::type_c(n);
    } else if (kind == "d") {
      r = T2Rep::type_d();
    } else {
      throw InputError(tw + ".kind: expected one of a, b, c, d");
    }
    return located(tw, [&] { return WorkspaceRep{build_t2(r, ws.tol), r, std::nullopt}; });
  }
  if (node.contains("ux")) {
    const std::string uw = where + ".ux";
    UXRep u;
    u.alpha = resolve_matrices(ws, member(node["ux"], "alpha", uw), uw + ".alpha");
    if (u.alpha.empty()) throw InputError(uw + ".alpha: needs at least one matrix");
    u.dim_H1 = u.alpha.front().rows();
    u.dim_H2 = u.alpha.front().cols();
    return located(uw, [&] { return WorkspaceRep{build_ux(u, ws.tol), std::nullopt, u}; });
  }
  const json& alg = member(node, "algebra", where);
  if (!alg.is_string()) throw InputError(where + ".algebra: expected an algebra name");
  const std::string name = alg.get<std::string>();
  const auto it = ws.algebras.find(name);
  if (it == ws.algebras.end()) throw InputError(where + ".algebra: unknown algebra '" + name + "'");
  const auto images = resolve_matrices(ws, member(node, "images", where), where + ".images");
  const auto& gens = ws.generators.at(name);
  if (images.size() != gens.size())
    throw InputError(where + ".images: algebra '" + name + "' has " + std::to_string(gens.size()) +
                     " generators but " + std::to_string(images.size()) + " images were given");
  return located(where, [&] {
    return WorkspaceRep{representation_from_generators(it->second, gens, images, ws.tol), std::nullopt,
                        std::nullopt};
  });
}

}  // namespace

const WorkspaceRep& Workspace::rep(const std::string& name) const {
  const auto it = representations.find(name);
  if (it == representations.end()) throw InputError("representations: unknown representation '" + name + "'");
  return it->second;
}

std::vector<CMatrix> Workspace::operator_set(const std::string& name) const {
  if (const auto it = sets.find(name); it != sets.end()) return it->second;
  if (const auto it = generators.find(name); it != generators.end()) return it->second;
  if (const auto it = representations.find(name); it != representations.end()) return it->second.rep.images();
  throw InputError("no set, algebra or representation named '" + name + "'");
}

CMatrix matrix_from_json(const json& j, const std::string& where) {
  const Index rows = count(member(j, "rows", where), where + ".rows");
  const Index cols = count(member(j, "cols", where), where + ".cols");
  const json& entries = member(j, "entries", where);
  if (!entries.is_array()) throw InputError(where + ".entries: expected a list of [re, im] pairs");
  if (static_cast<Index>(entries.size()) != rows * cols)
    throw InputError(where + ".entries: expected " + std::to_string(rows * cols) + " entries, found " +
                     std::to_string(entries.size()));
  CMatrix M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(i * cols + c);
      M(i, c) = complex_entry(entries[k], where + ".entries[" + std::to_string(k) + "]");
    }
  return M;
}

json matrix_to_json(const CMatrix& M) {
  json entries = json::array();
  for (Index i = 0; i < M.rows(); ++i)
    for (Index c = 0; c < M.cols(); ++c) entries.push_back({M(i, c).real(), M(i, c).imag()});
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"entries", entries}};
}

CMatrix parse_inline_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("inline matrix: ") + e.what());
  }
  if (j.is_object()) return matrix_from_json(j, "inline matrix");
  if (!j.is_array() || j.empty()) throw InputError("inline matrix: expected a non-empty list of rows");
  const auto rows = static_cast<Index>(j.size());
  Index cols = -1;
  CMatrix M;
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    const std::string where = "inline matrix[" + std::to_string(i) + "]";
    if (!row.is_array()) throw InputError(where + ": expected a row list");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      if (cols == 0) throw InputError(where + ": empty row");
      M.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      throw InputError(where + ": ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      const std::string at = where + "[" + std::to_string(c) + "]";
      M(i, c) = e.is_number() ? cplx(e.get<double>(), 0.0) : complex_entry(e, at);
    }
  }
  return M;
}

Representation representation_from_generators(const AlgebraPtr& algebra, const std::vector<CMatrix>& generators,
                                              const std::vector<CMatrix>& images, const Tolerance& tol) {
  if (generators.empty() || images.size() != generators.size())
    throw InputError("representation: need one image per generator");
  const Index n = algebra->dim_H();
  const Index m = images.front().rows();
  std::vector<CMatrix> paired;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].rows() != m || images[i].cols() != m)
      throw InputError("representation: image " + std::to_string(i) + " is not square of size " + std::to_string(m));
    if (!all_finite(images[i])) throw InputError("representation: image " + std::to_string(i) + " has non-finite entries");
    const CMatrix blocks[] = {generators[i], images[i]};
    paired.push_back(block_diagonal(blocks));
  }
  // The graph of the homomorphism is the algebra generated by the pairs a (+) rho(a).
  const AlgebraPtr graph = generate_algebra(paired, tol);
  if (graph->dim() != algebra->dim())
    throw InputError("representation: the images do not respect the relations among the generators (graph dim " +
                     std::to_string(graph->dim()) + " vs algebra dim " + std::to_string(algebra->dim()) + ")");
  std::vector<CMatrix> elements, values;
  for (const auto& p : graph->basis()) {
    elements.push_back(p.topLeftCorner(n, n));
    values.push_back(p.bottomRightCorner(m, m));
  }
  return Representation::from_elements(algebra, m, elements, values, tol);
}

Workspace parse_workspace(const json& doc, const ToleranceOverride& over) {
  if (!doc.is_object()) throw InputError("workspace: expected a JSON object at top level");
  for (const auto& [key, value] : doc.items())
    if (key != "matrices" && key != "algebras" && key != "representations" && key != "sets" && key != "tolerance")
      throw InputError("workspace: unknown top-level key '" + key + "'");

  Workspace ws;
  if (doc.contains("tolerance")) {
    const json& t = doc["tolerance"];
    if (!t.is_object()) throw InputError("tolerance: expected an object");
    if (t.contains("rank_rel")) ws.tol.rank_rel = real_number(t["rank_rel"], "tolerance.rank_rel");
    if (t.contains("match_abs")) ws.tol.match_abs = real_number(t["match_abs"], "tolerance.match_abs");
  }
  if (over.rank_rel) ws.tol.rank_rel = *over.rank_rel;
  if (over.match_abs) ws.tol.match_abs = *over.match_abs;
  ws.tol.validate();

  auto section = [&](const char* key) -> const json* {
    if (!doc.contains(key)) return nullptr;
    if (!doc[key].is_object()) throw InputError(std::string(key) + ": expected an object of named entries");
    return &doc[key];
  };

  if (const json* ms = section("matrices"))
    for (const auto& [name, value] : ms->items()) {
      CMatrix M = matrix_from_json(value, "matrices." + name);
      if (!all_finite(M)) throw InputError("matrices." + name + ": non-finite entries");
      ws.matrices.emplace(name, std::move(M));
    }

  if (const json* as = section("algebras"))
    for (const auto& [name, value] : as->items()) {
      const std::string where = "algebras." + name;
      auto gens = resolve_matrices(ws, member(value, "generators", where), where + ".generators");
      if (gens.empty()) throw InputError(where + ".generators: needs at least one matrix");
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].rows() != gens[i].cols() || gens[i].rows() != gens.front().rows())
          throw InputError(where + ".generators[" + std::to_string(i) + "]: generators must be square of equal size");
      ws.algebras.emplace(name, located(where, [&] { return generate_algebra(gens, ws.tol); }));
      ws.generators.emplace(name, std::move(gens));
    }

  if (const json* ss = section("sets"))
    for (const auto& [name, value] : ss->items()) {
      auto mats = resolve_matrices(ws, value, "sets." + name);
      if (mats.empty()) throw InputError("sets." + name + ": needs at least one matrix");
      for (std::size_t i = 0; i < mats.size(); ++i)
        if (mats[i].rows() != mats.front().rows() || mats[i].cols() != mats.front().cols())
          throw InputError("sets." + name + "[" + std::to_string(i) + "]: matrices must share one shape");
      ws.sets.emplace(name, std::move(mats));
    }

  if (const json* rs = section("representations"))
    for (const auto& [name, value] : rs->items())
      ws.representations.emplace(name, parse_rep(ws, value, "representations." + name));
  return ws;
}

Workspace load_workspace(const std::filesystem::path& path, const ToleranceOverride& over) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open workspace file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_workspace(doc, over);
}

}  // namespace opalg
