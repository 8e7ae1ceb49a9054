#include "opalg/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "opalg/errors.hpp"
#include "opalg/suite.hpp"
#include "opalg/workspace.hpp"

namespace opalg::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::optional<double> tol_rank;
  std::optional<double> tol_match;
  std::uint64_t seed = 0;
  bool json = false;
  bool strict_cyclic = false;

  ToleranceOverride overrides() const { return {tol_rank, tol_match}; }
  Tolerance tolerance() const {
    Tolerance t;
    if (tol_rank) t.rank_rel = *tol_rank;
    if (tol_match) t.match_abs = *tol_match;
    t.validate();
    return t;
  }
};

std::string entry(cplx z) {
  char buf[64];
  if (std::abs(z.imag()) < 1e-14)
    std::snprintf(buf, sizeof buf, "%.6g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

void print_matrix(std::ostream& out, const CMatrix& M, const std::string& indent = "    ") {
  for (Index i = 0; i < M.rows(); ++i) {
    out << indent << "[";
    for (Index j = 0; j < M.cols(); ++j) out << (j ? ", " : "") << entry(M(i, j));
    out << "]\n";
  }
}

void print_basis(std::ostream& out, const std::vector<CMatrix>& basis) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    out << "  basis[" << k << "]:\n";
    print_matrix(out, basis[k]);
  }
}

std::vector<CMatrix> columns(const Subspace& S) {
  std::vector<CMatrix> out;
  for (Index k = 0; k < S.dim(); ++k) out.push_back(S.basis().col(k));
  return out;
}

json basis_json(const std::vector<CMatrix>& basis) {
  json arr = json::array();
  for (const auto& M : basis) arr.push_back(matrix_to_json(M));
  return arr;
}

json envelope(const std::string& command, const Globals& g, const Tolerance& tol) {
  return {{"command", command},
          {"seed", g.seed},
          {"tolerances", {{"rank_rel", tol.rank_rel}, {"match_abs", tol.match_abs}}}};
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json report_json(const PropertyReport& r) {
  return {{"dcp", to_string(r.dcp)},
          {"faithful", to_string(r.faithful)},
          {"semigen", to_string(r.semigen)},
          {"semicogen", to_string(r.semicogen)},
          {"generator", to_string(r.generator)},
          {"cogenerator", to_string(r.cogenerator)},
          {"subtracing", to_string(r.subtracing)},
          {"family", r.family_id},
          {"notes", r.notes}};
}

void print_report(std::ostream& out, const PropertyReport& r) {
  out << "  dcp:         " << to_string(r.dcp) << " (span dim " << r.dcp_detail.span_dim << ", bicommutant dim "
      << r.dcp_detail.bicommutant_dim << ")\n"
      << "  faithful:    " << to_string(r.faithful) << "\n"
      << "  semigen:     " << to_string(r.semigen) << "\n"
      << "  semicogen:   " << to_string(r.semicogen) << "\n"
      << "  generator:   " << to_string(r.generator) << "\n"
      << "  cogenerator: " << to_string(r.cogenerator) << "\n"
      << "  subtracing:  " << to_string(r.subtracing) << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

// Default family for a module when --family is not given.
ModuleFamily default_family(const WorkspaceRep& wr, std::uint64_t seed, const Tolerance& tol) {
  if (wr.t2) return canonical_t2_family(seed, tol);
  if (wr.ux) return canonical_ux_family(static_cast<Index>(wr.ux->alpha.size()), seed, tol);
  throw InputError("classify: --family is required for representations that are not t2 or ux");
}

class Runner {
 public:
  Runner(std::ostream& out, const Globals& g) : out_(out), g_(g) {}

  void operator_space(const std::string& command, const std::string& file, const std::string& set) {
    const auto ws = load_workspace(file, g_.overrides());
    const auto S = ws.operator_set(set);
    if (S.front().rows() != S.front().cols()) throw InputError(command + ": set '" + set + "' is not square");
    const OperatorSubspace result = command == "commutant" ? commutant(S, ws.tol) : bicommutant(S, ws.tol);
    const auto basis = result.basis();
    if (g_.json) {
      json j = envelope(command, g_, ws.tol);
      j["verdict"] = nullptr;
      j["dims"] = {{"n", result.rows()}, {"dim", result.dim()}, {"span", span_of(S, ws.tol).dim()}};
      j["basis"] = basis_json(basis);
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << command << " of '" << set << "' in M_" << result.rows() << ": dim " << result.dim() << "\n";
    print_basis(out_, basis);
  }

  void dcp(const std::string& file, const std::string& rep) {
    const auto ws = load_workspace(file, g_.overrides());
    const auto v = dcp_check(ws.rep(rep).rep, ws.tol);
    if (g_.json) {
      json j = envelope("dcp", g_, ws.tol);
      j["verdict"] = v.holds;
      j["dims"] = {{"span", v.span_dim}, {"bicommutant", v.bicommutant_dim}};
      j["basis"] = basis_json(v.excess.basis());
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << "double commutant property for '" << rep << "': " << (v.holds ? "holds" : "fails") << "\n"
         << "  span dim " << v.span_dim << ", bicommutant dim " << v.bicommutant_dim << "\n";
    if (!v.holds) {
      out_ << "  bicommutant elements outside the span:\n";
      print_basis(out_, v.excess.basis());
    }
  }

  void hom(const std::string& file, const std::string& from, const std::string& to, bool adjointable) {
    const auto ws = load_workspace(file, g_.overrides());
    const auto& a = ws.rep(from).rep;
    const auto& b = ws.rep(to).rep;
    const OperatorSubspace H = adjointable ? adjointable_intertwiners(a, b, ws.tol) : intertwiners(a, b, ws.tol);
    const auto basis = H.basis();
    const std::string what = adjointable ? "adjointable intertwiners" : "intertwiners";
    if (g_.json) {
      json j = envelope("hom", g_, ws.tol);
      j["verdict"] = nullptr;
      j["dims"] = {{"dim", H.dim()}, {"rows", H.rows()}, {"cols", H.cols()}};
      j["basis"] = basis_json(basis);
      j["adjointable"] = adjointable;
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << what << " " << from << " -> " << to << ": dim " << H.dim() << "\n";
    print_basis(out_, basis);
  }

  void trace_or_reject(const std::string& command, const std::string& file, const std::string& from,
                       const std::string& to) {
    const auto ws = load_workspace(file, g_.overrides());
    const auto& a = ws.rep(from).rep;
    const auto& b = ws.rep(to).rep;
    // trace: Tr_to(from) inside `to`; reject: Rej_from(to) inside `from`.
    const Subspace S = command == "trace" ? trace_module(a, b, ws.tol) : reject_module(a, b, ws.tol);
    const Index ambient = S.ambient_dim();
    const bool full = command == "trace" ? S.dim() == ambient : S.dim() == 0;
    if (g_.json) {
      json j = envelope(command, g_, ws.tol);
      j["verdict"] = full;
      j["dims"] = {{"dim", S.dim()}, {"ambient", ambient}};
      j["basis"] = basis_json(columns(S));
      out_ << j.dump(2) << "\n";
      return;
    }
    if (command == "trace")
      out_ << "trace of '" << from << "' in '" << to << "': dim " << S.dim() << " of " << ambient
           << (full ? " (all of it)" : "") << "\n";
    else
      out_ << "reject of '" << to << "' in '" << from << "': dim " << S.dim() << " of " << ambient
           << (full ? " (zero)" : "") << "\n";
    print_basis(out_, columns(S));
  }

  int classify(const std::string& file, const std::string& rep, const std::vector<std::string>& family) {
    const auto ws = load_workspace(file, g_.overrides());
    const auto& wr = ws.rep(rep);
    ModuleFamily F;
    if (family.empty()) {
      F = default_family(wr, g_.seed, ws.tol);
    } else {
      F.id = "workspace{";
      for (std::size_t i = 0; i < family.size(); ++i) {
        F.id += (i ? "," : "") + family[i];
        F.members.push_back(ws.rep(family[i]).rep);
      }
      F.id += "}";
      F.algebra = F.members.front().algebra_ptr();
    }
    ReportOptions opts;
    opts.subtracing.seed = g_.seed;
    opts.subtracing.strict_cyclic = g_.strict_cyclic;
    if (wr.t2 && wr.t2->kind == T2Kind::a) opts.subtracing_exact = t2_closed_form(*wr.t2, ws.tol).subtracing;
    const auto r = property_report(wr.rep, F, opts, ws.tol);
    if (g_.json) {
      json j = envelope("classify", g_, ws.tol);
      j["verdict"] = report_json(r);
      j["dims"] = {{"span", r.dcp_detail.span_dim}, {"bicommutant", r.dcp_detail.bicommutant_dim}};
      j["basis"] = basis_json(r.dcp_detail.excess.basis());
      out_ << j.dump(2) << "\n";
      return 0;
    }
    out_ << "property report for '" << rep << "' relative to " << r.family_id << ":\n";
    print_report(out_, r);
    return 0;
  }

  int t2(const std::string& file, const std::string& T_arg, bool all) {
    Tolerance tol = g_.tolerance();
    CMatrix T;
    if (!file.empty()) {
      const auto ws = load_workspace(file, g_.overrides());
      tol = ws.tol;
      const auto it = ws.matrices.find(T_arg);
      T = it != ws.matrices.end() ? it->second : parse_inline_matrix(T_arg);
    } else {
      T = parse_inline_matrix(T_arg);
    }
    const T2Rep t = T2Rep::type_a(T);
    build_t2(t, tol);  // shape and contractivity checks
    const auto cf = t2_closed_form(t, tol);
    json j = envelope("t2", g_, tol);
    json closed = {{"dcp", cf.dcp},           {"semigen", cf.semigen},       {"semicogen", cf.semicogen},
                   {"generator", cf.generator}, {"cogenerator", cf.cogenerator}, {"subtracing", cf.subtracing},
                   {"notes", cf.notes}};
    j["verdict"] = {{"closed_form", closed}};
    std::ostringstream text;
    text << "T2 module with T : C^" << t.dim_H2 << " -> C^" << t.dim_H1 << "\n  closed form:\n";
    for (const char* k : {"dcp", "semigen", "semicogen", "generator", "cogenerator", "subtracing"})
      text << "    " << k << ": " << yes_no(closed[k].get<bool>()) << "\n";
    for (const auto& n : cf.notes) text << "    note: " << n << "\n";

    if (all) {
      const auto rep = build_t2(t, tol);
      const OperatorSubspace com = t2_commutant_closed_form(t, tol);  // self-checked against the engine
      const auto v = dcp_check(rep, tol);
      if (v.holds != cf.dcp)
        throw VerificationError("t2: engine double commutant verdict disagrees with the closed form (T invertible <=> DCP fails)");
      const auto z = t2_bicommutant_excess(t, tol);
      const auto F = canonical_t2_family(g_.seed, tol);
      const auto r = t2_property_report(t, F, tol);
      const std::pair<const char*, std::pair<Flag, bool>> cmp[] = {
          {"semigen", {r.semigen, cf.semigen}},
          {"semicogen", {r.semicogen, cf.semicogen}},
          {"generator", {r.generator, cf.generator}},
          {"cogenerator", {r.cogenerator, cf.cogenerator}}};
      for (const auto& [name, flags] : cmp)
        if (truthy(flags.first) != flags.second)
          throw VerificationError(std::string("t2: relative ") + name + " over " + F.id +
                                  " disagrees with the closed form");
      j["verdict"]["engine"] = report_json(r);
      j["dims"] = {{"span", v.span_dim}, {"commutant", com.dim()}, {"bicommutant", v.bicommutant_dim}};
      j["basis"] = z ? basis_json({*z}) : json::array();
      text << "  engine:\n    dcp: " << yes_no(v.holds) << "\n    span dim: " << v.span_dim
           << "\n    commutant dim: " << com.dim() << "\n    bicommutant dim: " << v.bicommutant_dim << "\n";
      if (z) {
        text << "    bicommutant element outside the span (T^-1 in the 2-1 block):\n";
        print_matrix(text, *z, "      ");
      }
      text << "  relative to " << r.family_id << ":\n";
      print_report(text, r);
      text << "  closed form and engine agree\n";
    } else {
      j["dims"] = {{"H1", t.dim_H1}, {"H2", t.dim_H2}};
      j["basis"] = json::array();
    }
    if (g_.json)
      out_ << j.dump(2) << "\n";
    else
      out_ << text.str();
    return 0;
  }

  void refl(const std::string& file, const std::string& set) {
    const auto ws = load_workspace(file, g_.overrides());
    const auto S = ws.operator_set(set);
    const OperatorSubspace span = span_of(S, ws.tol);
    const OperatorSubspace R = refl_closure(span, ws.tol);
    const bool closed = subspace_equal(span, R, ws.tol);
    if (g_.json) {
      json j = envelope("refl-closure", g_, ws.tol);
      j["verdict"] = closed;
      j["dims"] = {{"span", span.dim()}, {"closure", R.dim()}, {"rows", R.rows()}, {"cols", R.cols()}};
      j["basis"] = basis_json(R.basis());
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << "reflexive closure of '" << set << "' (" << R.rows() << "x" << R.cols() << "): dim " << R.dim()
         << " (span dim " << span.dim() << (closed ? ", already closed" : "") << ")\n";
    print_basis(out_, R.basis());
  }

  int search(const std::string& pattern, Index budget, const std::string& domain) {
    const Tolerance tol = g_.tolerance();
    std::string full = pattern;
    if (!domain.empty()) full += ",domain:" + domain;
    const SearchTarget target = parse_target(full);
    if (budget < 1) throw InputError("search: --budget must be positive");
    const auto hits = counterexample_search(target, g_.seed, budget, {}, tol);
    if (g_.json) {
      json j = envelope("search", g_, tol);
      j["verdict"] = !hits.empty();
      j["dims"] = {{"hits", hits.size()}, {"budget", budget}};
      json found = json::array();
      for (const auto& h : hits) found.push_back({{"description", h.description}, {"report", report_json(h.report)}});
      j["hits"] = found;
      j["basis"] = json::array();
      out_ << j.dump(2) << "\n";
      return 0;
    }
    out_ << "search for '" << pattern << "' (seed " << g_.seed << ", budget " << budget << "): " << hits.size()
         << " hit(s)\n";
    for (const auto& h : hits) {
      out_ << "- " << h.description << "\n";
      print_report(out_, h.report);
    }
    return 0;
  }

  int suite_run(std::uint64_t seed) {
    const auto results = suite::run_all(seed, [&](const suite::CriterionResult& r) {
      if (!g_.json) out_ << suite::format(r) << "\n" << std::flush;
    });
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (g_.json) {
      json j = envelope("suite", g_, Tolerance{});
      j["seed"] = seed;
      json rows = json::array();
      for (const auto& r : results)
        rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
      j["verdict"] = all;
      j["dims"] = {{"criteria", results.size()}};
      j["criteria"] = rows;
      j["basis"] = json::array();
      out_ << j.dump(2) << "\n";
    } else {
      out_ << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
    }
    return all ? 0 : 1;
  }

 private:
  std::ostream& out_;
  const Globals& g_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutants, bicommutants and generator-type properties of finite-dimensional operator algebras",
               "opalg"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol-rank", g.tol_rank, "relative singular value cutoff for numerical rank");
  app.add_option("--tol-match", g.tol_match, "absolute tolerance for membership and equality");
  app.add_option("--seed", g.seed, "seed for every randomized check");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--strict-cyclic", g.strict_cyclic, "cyclic subspaces exclude the seed vector");

  std::string file, set, rep, from, to, T, target, domain;
  std::vector<std::string> family;
  bool adjointable = false, all = false;
  Index budget = 200;
  std::uint64_t suite_seed = 1;

  auto* c_com = app.add_subcommand("commutant", "basis of the commutant of an operator set");
  auto* c_bic = app.add_subcommand("bicommutant", "basis of the bicommutant of an operator set");
  for (auto* c : {c_com, c_bic}) {
    c->add_option("file", file, "workspace JSON")->required();
    c->add_option("--set", set, "set, algebra or representation name")->required();
  }
  auto* c_dcp = app.add_subcommand("dcp", "double commutant property of a representation");
  c_dcp->add_option("file", file)->required();
  c_dcp->add_option("--rep", rep)->required();
  auto* c_hom = app.add_subcommand("hom", "intertwiners between two representations");
  c_hom->add_option("file", file)->required();
  c_hom->add_option("--from", from)->required();
  c_hom->add_option("--to", to)->required();
  c_hom->add_flag("--adjointable", adjointable, "only intertwiners whose adjoint intertwines back");
  auto* c_tr = app.add_subcommand("trace", "trace of --from in --to");
  auto* c_rej = app.add_subcommand("reject", "reject of --to in --from");
  for (auto* c : {c_tr, c_rej}) {
    c->add_option("file", file)->required();
    c->add_option("--from", from)->required();
    c->add_option("--to", to)->required();
  }
  auto* c_cls = app.add_subcommand("classify", "generator-type property report");
  c_cls->add_option("file", file)->required();
  c_cls->add_option("--rep", rep)->required();
  c_cls->add_option("--family", family, "test family (default: canonical family for t2/ux modules)");
  auto* c_t2 = app.add_subcommand("t2", "closed forms for a T2 module, optionally checked against the engine");
  c_t2->add_option("file", file, "workspace JSON resolving --T by name");
  c_t2->add_option("--T", T, "matrix name or inline rows, e.g. \"[[1, 0], [0, 0]]\"")->required();
  c_t2->add_flag("--all", all, "engine cross-check and full property report");
  auto* c_refl = app.add_subcommand("refl-closure", "reflexive closure of an operator space");
  c_refl->add_option("file", file)->required();
  c_refl->add_option("--set", set)->required();
  auto* c_search = app.add_subcommand("search", "random search for a property pattern");
  c_search->add_option("--target", target, "e.g. \"dcp:T,semigen:F\"")->required();
  c_search->add_option("--budget", budget, "number of candidates")->capture_default_str();
  c_search->add_option("--domain", domain, "t2, ux or any");
  auto* c_suite = app.add_subcommand("suite", "acceptance criteria scoreboard");
  c_suite->add_option("--seed", suite_seed, "suite seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? 0 : 2;
  }

  try {
    Runner run(out, g);
    if (*c_com) run.operator_space("commutant", file, set);
    else if (*c_bic) run.operator_space("bicommutant", file, set);
    else if (*c_dcp) run.dcp(file, rep);
    else if (*c_hom) run.hom(file, from, to, adjointable);
    else if (*c_tr) run.trace_or_reject("trace", file, from, to);
    else if (*c_rej) run.trace_or_reject("reject", file, from, to);
    else if (*c_cls) return run.classify(file, rep, family);
    else if (*c_t2) return run.t2(file, T, all);
    else if (*c_refl) run.refl(file, set);
    else if (*c_search) return run.search(target, budget, domain);
    else if (*c_suite) return run.suite_run(suite_seed);
    return 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace opalg::cli
