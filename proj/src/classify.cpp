#include "opalg/classify.hpp"

#include "opalg/errors.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

// For all nonzero R in span(rs): some T in span(ts) gives a nonzero product.
// Column i stacks vec(product(R_i, T_j)) over j; the property holds iff this
// linear map of R-coordinates is injective. Products of unit-norm basis
// elements are O(1) or roundoff, so an absolute threshold applies.
template <typename Product>
bool every_nonzero_survives(const OperatorSubspace& rs, const OperatorSubspace& ts, Product product,
                            const Tolerance& tol) {
  if (rs.dim() == 0) return true;
  if (ts.dim() == 0) return false;
  const auto R = rs.basis();
  const auto T = ts.basis();
  const CMatrix sample = product(R.front(), T.front());
  const Index block = sample.size();
  if (block == 0) return false;
  CMatrix M(block * ts.dim(), rs.dim());
  for (Index i = 0; i < rs.dim(); ++i)
    for (Index j = 0; j < ts.dim(); ++j) M.block(j * block, i, block, 1) = vec(product(R[i], T[j]));
  return rank_above(M, tol.match_abs) == rs.dim();
}

}  // namespace

void ModuleFamily::validate(const Tolerance& tol) const {
  if (!algebra) throw InputError("module family '" + id + "' has no algebra");
  for (const auto& m : members)
    if (!m.algebra().same_as(*algebra, tol))
      throw InputError("module family '" + id + "' mixes reference algebras");
}

bool is_semigenerator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol) {
  for (const auto& K : F.members)
    if (K.dim_H() > 0 && intertwiners(H, K, tol).dim() == 0) return false;
  return true;
}

bool is_semicogenerator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol) {
  for (const auto& K : F.members)
    if (K.dim_H() > 0 && intertwiners(K, H, tol).dim() == 0) return false;
  return true;
}

bool generator_by_definition(const Representation& H, const ModuleFamily& F, const Tolerance& tol) {
  std::vector<Representation> targets = F.members;
  for (const auto& K : F.members) {
    const Subspace tr = trace_module(H, K, tol);
    if (tr.dim() < K.dim_H()) targets.push_back(quotient(K, tr, tol));
  }
  for (const auto& K : F.members) {
    const OperatorSubspace into = intertwiners(H, K, tol);
    for (const auto& L : targets) {
      const OperatorSubspace out = intertwiners(K, L, tol);
      const bool ok = every_nonzero_survives(
          out, into, [](const CMatrix& R, const CMatrix& T) { return CMatrix(R * T); }, tol);
      if (!ok) return false;
    }
  }
  return true;
}

bool cogenerator_by_definition(const Representation& H, const ModuleFamily& F, const Tolerance& tol) {
  std::vector<Representation> sources = F.members;
  for (const auto& L : F.members) {
    const Subspace rej = reject_module(L, H, tol);
    if (rej.dim() > 0) sources.push_back(restrict_to(L, rej, tol));
  }
  for (const auto& L : F.members) {
    const OperatorSubspace back = intertwiners(L, H, tol);
    for (const auto& K : sources) {
      const OperatorSubspace rs = intertwiners(K, L, tol);
      const bool ok = every_nonzero_survives(
          rs, back, [](const CMatrix& R, const CMatrix& T) { return CMatrix(T * R); }, tol);
      if (!ok) return false;
    }
  }
  return true;
}

bool is_generator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol) {
  bool by_trace = true;
  for (const auto& K : F.members)
    if (trace_module(H, K, tol).dim() != K.dim_H()) {
      by_trace = false;
      break;
    }
  if (by_trace != generator_by_definition(H, F, tol))
    throw VerificationError("generator verdict via Tr_K(H) = K disagrees with the R T != 0 definition over family '" +
                            F.id + "'");
  return by_trace;
}

bool is_cogenerator_rel(const Representation& H, const ModuleFamily& F, const Tolerance& tol) {
  bool by_reject = true;
  for (const auto& K : F.members)
    if (reject_module(K, H, tol).dim() != 0) {
      by_reject = false;
      break;
    }
  if (by_reject != cogenerator_by_definition(H, F, tol))
    throw VerificationError("cogenerator verdict via Rej_K(H) = 0 disagrees with the T R != 0 definition over family '" +
                            F.id + "'");
  return by_reject;
}

SubtracingResult is_subtracing(const Representation& H, const SubtracingOptions& opts, const Tolerance& tol) {
  if (opts.samples < 1) throw InputError("is_subtracing: samples must be at least 1");
  SubtracingResult result;
  if (H.dim_H() == 0) return result;

  std::vector<Subspace> tested;
  auto check = [&](const Subspace& K) {
    if (K.dim() == 0) return true;
    for (const auto& seen : tested)
      if (subspace_equal(seen, K, tol)) return true;
    tested.push_back(K);
    const Representation sub = restrict_to(H, K, tol);
    if (trace_module(H, sub, tol).dim() < K.dim()) {
      result.holds = false;
      result.witness = K;
      return false;
    }
    return true;
  };

  for (const auto& K : opts.extra_submodules) {
    require_invariant(H, K, tol);
    if (!check(K)) break;
  }
  if (result.holds) {
    sampling::ProbeVectorSampler sampler(H.images(), H.dim_H(), opts.seed, tol);
    for (Index s = 0; s < opts.samples; ++s) {
      const Subspace K = cyclic_submodule(H, sampler.next(), opts.strict_cyclic, tol);
      if (!check(K)) break;
    }
  }
  result.submodules_tested = static_cast<Index>(tested.size());
  return result;
}

SubtracingResult is_completely_subtracing(const Representation& H, const std::vector<Index>& multiples,
                                          const SubtracingOptions& opts, const Tolerance& tol) {
  SubtracingResult total;
  for (Index k : multiples) {
    SubtracingOptions o = opts;
    if (k != 1) o.extra_submodules.clear();
    const auto r = is_subtracing(multiple(H, k, tol), o, tol);
    total.submodules_tested += r.submodules_tested;
    if (!r.holds) {
      total.holds = false;
      total.witness = r.witness;
      return total;
    }
  }
  return total;
}

std::string to_string(Flag f) {
  switch (f) {
    case Flag::yes:
      return "true";
    case Flag::evidence:
      return "evidence-true";
    default:
      return "false";
  }
}

void check_implications(const PropertyReport& r) {
  if (truthy(r.generator) && !truthy(r.semigen))
    throw VerificationError("implication violated: generator => semigenerator");
  if (truthy(r.cogenerator) && !truthy(r.semicogen))
    throw VerificationError("implication violated: cogenerator => semicogenerator");
  if ((truthy(r.generator) || truthy(r.cogenerator)) && !truthy(r.dcp))
    throw VerificationError("implication violated: (generator or cogenerator) => double commutant property");
}

PropertyReport property_report(const Representation& H, const ModuleFamily& F, const ReportOptions& opts,
                               const Tolerance& tol) {
  F.validate(tol);
  if (!H.algebra().same_as(*F.algebra, tol))
    throw InputError("property_report: module and family '" + F.id + "' use different algebras");
  auto flag = [](bool b) { return b ? Flag::yes : Flag::no; };

  PropertyReport r;
  r.family_id = F.id;
  r.seed = opts.subtracing.seed;
  r.dcp_detail = dcp_check(H, tol);
  r.dcp = flag(r.dcp_detail.holds);
  r.faithful = flag(is_faithful(H, tol));
  r.semigen = flag(is_semigenerator_rel(H, F, tol));
  r.semicogen = flag(is_semicogenerator_rel(H, F, tol));
  r.generator = flag(is_generator_rel(H, F, tol));
  r.cogenerator = flag(is_cogenerator_rel(H, F, tol));
  r.notes.push_back("module quantifiers truncated to family '" + F.id + "' (" +
                    std::to_string(F.members.size()) + " members)");
  if (opts.subtracing_exact) {
    r.subtracing = flag(*opts.subtracing_exact);
    r.notes.push_back("sub-tracing decided by the exact closed-form predicate");
  } else {
    r.subtracing = is_subtracing(H, opts.subtracing, tol).holds ? Flag::evidence : Flag::no;
    r.notes.push_back("sub-tracing sampled over " + std::to_string(opts.subtracing.samples) +
                      " cyclic submodules; true is evidence only");
  }
  r.notes.push_back("complete isometry is not checked; faithfulness is reported instead");
  check_implications(r);
  return r;
}

}  // namespace opalg
