#include "opalg/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opalg/errors.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

Index common_size(const std::vector<CMatrix>& S, const char* who) {
  if (S.empty()) throw InputError(std::string(who) + ": empty operator set has no size");
  const Index n = S.front().rows();
  for (const auto& A : S)
    if (A.rows() != n || A.cols() != n)
      throw InputError(std::string(who) + ": operators must be square of a common size");
  return n;
}

IdentityCheck compare(std::string name, const OperatorSubspace& lhs, const OperatorSubspace& rhs,
                      const Tolerance& tol) {
  IdentityCheck c;
  c.name = std::move(name);
  c.lhs_dim = lhs.dim();
  c.rhs_dim = rhs.dim();
  c.residual = std::max(subspace_excess(lhs, rhs), subspace_excess(rhs, lhs));
  c.pass = subspace_equal(lhs, rhs, tol);
  return c;
}

}  // namespace

OperatorSubspace commutant(const OperatorSubspace& S, const Tolerance& tol) {
  if (S.rows() != S.cols()) throw InputError("commutant: operators must be square");
  const Index n = S.rows();
  const auto basis = S.basis();
  return sylvester_kernel(basis, basis, n, n, tol);
}

OperatorSubspace commutant(const std::vector<CMatrix>& S, const Tolerance& tol) {
  const Index n = common_size(S, "commutant");
  return commutant(span_of(S, n, n, tol), tol);
}

OperatorSubspace bicommutant(const OperatorSubspace& S, const Tolerance& tol) {
  return commutant(commutant(S, tol), tol);
}

OperatorSubspace bicommutant(const std::vector<CMatrix>& S, const Tolerance& tol) {
  const Index n = common_size(S, "bicommutant");
  return bicommutant(span_of(S, n, n, tol), tol);
}

DcpVerdict dcp_check(const Representation& rep, const Tolerance& tol) {
  const Index n = rep.dim_H();
  const OperatorSubspace span = span_of(rep.images(), n, n, tol);
  const OperatorSubspace bic = bicommutant(span, tol);
  DcpVerdict v;
  v.span_dim = span.dim();
  v.bicommutant_dim = bic.dim();
  v.excess = relative_complement(span, bic, tol);
  v.holds = v.span_dim == v.bicommutant_dim;
  if (!subspace_leq(span, bic, tol) || v.span_dim + v.excess.dim() != v.bicommutant_dim)
    throw VerificationError("dcp_check: span rho(A) is not contained in rho(A)'' within tolerance");
  return v;
}

bool alg_lat_member(const CMatrix& X, const std::vector<CMatrix>& S, const AlgLatOptions& opts,
                    const Tolerance& tol) {
  if (opts.samples < 1) throw InputError("alg_lat_member: samples must be at least 1");
  const Index n = common_size(S, "alg_lat_member");
  if (X.rows() != n || X.cols() != n) throw InputError("alg_lat_member: X has the wrong size");
  const auto ops = span_of(S, n, n, tol).basis();
  const double scale = std::max(1.0, sampling::spectral_norm(X));

  sampling::ProbeVectorSampler sampler(ops, n, opts.seed, tol);
  for (Index s = 0; s < opts.samples; ++s) {
    const CVector x = sampler.next();
    CMatrix seed;
    if (opts.strict_cyclic) {
      seed.resize(n, static_cast<Index>(ops.size()));
      for (std::size_t i = 0; i < ops.size(); ++i) seed.col(static_cast<Index>(i)) = ops[i] * x;
    } else {
      seed = x;
    }
    const Subspace K = invariant_hull(ops, seed, tol);
    for (Index j = 0; j < K.dim(); ++j)
      if (K.residual(X * K.basis().col(j)) > tol.match_abs * scale) return false;
  }
  return true;
}

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

IdentityReport identity_suite(const std::vector<CMatrix>& S, Index k, const Tolerance& tol) {
  if (k < 1) throw InputError("identity_suite: multiplicity must be at least 1");
  const Index n = common_size(S, "identity_suite");

  std::vector<CMatrix> amplified, adjoints;
  for (const auto& A : S) {
    amplified.push_back(ampliate(A, k));
    adjoints.push_back(A.adjoint());
  }
  const OperatorSubspace span = span_of(S, n, n, tol);
  const OperatorSubspace bic = bicommutant(span, tol);

  IdentityReport r;
  r.checks.push_back(compare("span(S (x) I) = span(S) (x) I", span_of(amplified, n * k, n * k, tol),
                             ampliate_space(span, k, tol), tol));
  r.checks.push_back(compare("(S (x) I)'' = S'' (x) I", bicommutant(amplified, tol),
                             ampliate_space(bic, k, tol), tol));
  r.checks.push_back(compare("span(S*) = (span S)*", span_of(adjoints, n, n, tol), adjoint_space(span), tol));
  r.checks.push_back(compare("(S*)'' = (S'')*", bicommutant(adjoints, tol), adjoint_space(bic), tol));
  return r;
}

bool is_selfadjoint_space(const OperatorSubspace& S, const Tolerance& tol) {
  if (S.rows() != S.cols()) return false;
  return subspace_equal(adjoint_space(S), S, tol);
}

bool is_selfadjoint_space(const std::vector<CMatrix>& S, const Tolerance& tol) {
  const Index n = common_size(S, "is_selfadjoint_space");
  return is_selfadjoint_space(span_of(S, n, n, tol), tol);
}

}  // namespace opalg
