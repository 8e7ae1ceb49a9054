#include "opalg/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "opalg/errors.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

CMatrix unit(Index rows, Index cols, Index i, Index j) {
  CMatrix E = CMatrix::Zero(rows, cols);
  E(i, j) = 1.0;
  return E;
}

// [[A, B], [0, D]] style assembly for H1 (+) H2.
CMatrix blocks(const CMatrix& top_left, const CMatrix& top_right, const CMatrix& bottom_right) {
  const Index n1 = top_left.rows(), n2 = bottom_right.rows();
  CMatrix M = CMatrix::Zero(n1 + n2, n1 + n2);
  M.topLeftCorner(n1, n1) = top_left;
  M.topRightCorner(n1, n2) = top_right;
  M.bottomRightCorner(n2, n2) = bottom_right;
  return M;
}

std::string compact(const CMatrix& M) {
  std::ostringstream os;
  os.precision(3);
  os << "[";
  for (Index i = 0; i < M.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) os << ",";
      const cplx z = M(i, j);
      if (std::abs(z.imag()) < 1e-12)
        os << z.real();
      else
        os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

void require_engine_match(const OperatorSubspace& closed, const OperatorSubspace& engine, const char* what,
                          const Tolerance& tol) {
  if (!subspace_equal(closed, engine, tol))
    throw VerificationError(std::string(what) + ": closed form (dim " + std::to_string(closed.dim()) +
                            ") disagrees with the generic commutant (dim " + std::to_string(engine.dim()) + ")");
}

}  // namespace

std::string to_string(T2Kind k) {
  switch (k) {
    case T2Kind::a:
      return "a";
    case T2Kind::b:
      return "b";
    case T2Kind::c:
      return "c";
    default:
      return "d";
  }
}

T2Rep T2Rep::type_a(CMatrix T) {
  T2Rep t;
  t.dim_H1 = T.rows();
  t.dim_H2 = T.cols();
  t.T = std::move(T);
  t.kind = T2Kind::a;
  return t;
}

T2Rep T2Rep::type_b(Index n) { return {n, 0, CMatrix(n, 0), T2Kind::b}; }
T2Rep T2Rep::type_c(Index n) { return {0, n, CMatrix(0, n), T2Kind::c}; }
T2Rep T2Rep::type_d() { return {0, 0, CMatrix(0, 0), T2Kind::d}; }

std::vector<CMatrix> t2_matrix_units() { return {unit(2, 2, 0, 0), unit(2, 2, 0, 1), unit(2, 2, 1, 1)}; }

AlgebraPtr t2_algebra() {
  static const AlgebraPtr algebra = generate_algebra(t2_matrix_units());
  return algebra;
}

Representation build_t2(const T2Rep& t, const Tolerance& tol) {
  const Index n1 = t.dim_H1, n2 = t.dim_H2;
  switch (t.kind) {
    case T2Kind::a:
      if (n1 < 1 || n2 < 1) throw InputError("T2 type (a) needs nonzero H1 and H2");
      break;
    case T2Kind::b:
      if (n1 < 1 || n2 != 0) throw InputError("T2 type (b) needs dim H1 > 0 and dim H2 = 0");
      break;
    case T2Kind::c:
      if (n2 < 1 || n1 != 0) throw InputError("T2 type (c) needs dim H2 > 0 and dim H1 = 0");
      break;
    case T2Kind::d:
      if (n1 != 0 || n2 != 0) throw InputError("T2 type (d) is the zero module");
      break;
  }
  const CMatrix T = t.kind == T2Kind::a ? t.T : CMatrix::Zero(n1, n2);
  if (T.rows() != n1 || T.cols() != n2)
    throw InputError("T must be dim_H1 x dim_H2 = " + std::to_string(n1) + "x" + std::to_string(n2));
  if (!all_finite(T)) throw InputError("T has non-finite entries");
  const double norm = sampling::spectral_norm(T);
  if (norm > 1.0 + tol.match_abs)
    throw InputError("T is not a contraction (|T| = " + std::to_string(norm) + ")");

  const CMatrix I1 = CMatrix::Identity(n1, n1), I2 = CMatrix::Identity(n2, n2);
  const CMatrix Z1 = CMatrix::Zero(n1, n1), Z2 = CMatrix::Zero(n2, n2);
  std::vector<CMatrix> images = {blocks(I1, CMatrix::Zero(n1, n2), Z2), blocks(Z1, T, Z2),
                                 blocks(Z1, CMatrix::Zero(n1, n2), I2)};
  return Representation::from_elements(t2_algebra(), n1 + n2, t2_matrix_units(), images, tol);
}

ClosedFormVerdict t2_closed_form(const T2Rep& t, const Tolerance& tol) {
  if (t.kind != T2Kind::a) throw InputError("closed forms apply to type (a) T2-modules only");
  if (t.T.rows() != t.dim_H1 || t.T.cols() != t.dim_H2) throw InputError("T has the wrong shape");
  const Index r = numerical_rank(t.T, tol);
  ClosedFormVerdict v;
  v.zero = r == 0;
  v.dense_range = r == t.dim_H1;
  v.injective = r == t.dim_H2;
  v.invertible = v.dense_range && v.injective;
  v.dcp = !v.invertible;
  v.semigen = !v.dense_range;
  v.semicogen = !v.injective;
  v.generator = v.semigen && !v.zero;
  v.cogenerator = v.semicogen && !v.zero;
  v.subtracing = !v.dense_range;
  v.notes.push_back("rank(T) = " + std::to_string(r) + " for T : C^" + std::to_string(t.dim_H2) + " -> C^" +
                    std::to_string(t.dim_H1));
  v.notes.push_back(v.invertible ? "T invertible: double commutant property fails"
                                 : "T not invertible: double commutant property holds");
  if (v.zero) v.notes.push_back("T = 0: neither generator nor cogenerator");
  return v;
}

OperatorSubspace intertwining_pairs(const std::vector<CMatrix>& ops, Index rows, Index cols, const Tolerance& tol) {
  const Index na = rows * rows, nd = cols * cols;
  CMatrix null_basis;
  if (ops.empty()) {
    null_basis = CMatrix::Identity(na + nd, na + nd);
  } else {
    const CMatrix I_rows = CMatrix::Identity(rows, rows), I_cols = CMatrix::Identity(cols, cols);
    CMatrix stacked(rows * cols * static_cast<Index>(ops.size()), na + nd);
    double scale = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& T = ops[i];
      if (T.rows() != rows || T.cols() != cols) throw InputError("intertwining_pairs: operator has the wrong shape");
      // vec(A T) - vec(T D) = (T^T kron I) vec(A) - (I kron T) vec(D)
      auto rowblock = stacked.middleRows(static_cast<Index>(i) * rows * cols, rows * cols);
      rowblock.leftCols(na) = kron(T.transpose(), I_rows);
      rowblock.rightCols(nd) = -kron(I_cols, T);
      scale = std::max(scale, 2.0 * T.norm());
    }
    null_basis = rank_nullspace(stacked, tol, scale).null.basis();
  }
  // A (+) D has the same Frobenius norm as (vec A, vec D), so orthonormality carries over.
  const Index n = rows + cols;
  CMatrix out(n * n, null_basis.cols());
  for (Index k = 0; k < null_basis.cols(); ++k) {
    CMatrix P = CMatrix::Zero(n, n);
    P.topLeftCorner(rows, rows) = unvec(null_basis.col(k).head(na), rows, rows);
    P.bottomRightCorner(cols, cols) = unvec(null_basis.col(k).tail(nd), cols, cols);
    out.col(k) = vec(P);
  }
  return {n, n, out};
}

OperatorSubspace t2_commutant_closed_form(const T2Rep& t, const Tolerance& tol) {
  const auto cf = t2_closed_form(t, tol);
  const Index n1 = t.dim_H1, n2 = t.dim_H2, n = n1 + n2;
  OperatorSubspace closed;
  if (cf.invertible) {
    // Solutions are exactly (A, T^-1 A T).
    const CMatrix Tinv = t.T.inverse();
    std::vector<CMatrix> pairs;
    for (Index i = 0; i < n1; ++i)
      for (Index j = 0; j < n1; ++j) {
        const CMatrix A = unit(n1, n1, i, j);
        pairs.push_back(blocks(A, CMatrix::Zero(n1, n2), Tinv * A * t.T));
      }
    closed = span_of(pairs, n, n, tol);
  } else if (cf.zero) {
    // Every block pair solves A 0 = 0 D.
    std::vector<CMatrix> pairs;
    for (Index i = 0; i < n1; ++i)
      for (Index j = 0; j < n1; ++j) pairs.push_back(blocks(unit(n1, n1, i, j), CMatrix::Zero(n1, n2), CMatrix::Zero(n2, n2)));
    for (Index i = 0; i < n2; ++i)
      for (Index j = 0; j < n2; ++j) pairs.push_back(blocks(CMatrix::Zero(n1, n1), CMatrix::Zero(n1, n2), unit(n2, n2, i, j)));
    closed = span_of(pairs, n, n, tol);
  } else {
    closed = intertwining_pairs({t.T}, n1, n2, tol);
  }
  require_engine_match(closed, commutant(build_t2(t, tol).images(), tol), "t2_commutant_closed_form", tol);
  return closed;
}

std::optional<CMatrix> t2_bicommutant_excess(const T2Rep& t, const Tolerance& tol) {
  const auto cf = t2_closed_form(t, tol);
  if (!cf.invertible) return std::nullopt;
  const Index n1 = t.dim_H1, n = 2 * n1;
  CMatrix z = CMatrix::Zero(n, n);
  z.bottomLeftCorner(n1, n1) = t.T.inverse();

  const auto rep = build_t2(t, tol);
  const OperatorSubspace span = span_of(rep.images(), n, n, tol);
  const OperatorSubspace bic = bicommutant(span, tol);
  const double in_bic = bic.residual(z);
  const double off_span = span.residual(z);
  if (in_bic > tol.match_abs * std::max(1.0, z.norm()))
    throw VerificationError("t2_bicommutant_excess: z is not in the bicommutant (distance " + std::to_string(in_bic) + ")");
  if (off_span <= 0.1)
    throw VerificationError("t2_bicommutant_excess: z lies too close to span pi(T2)");
  return z;
}

ModuleFamily canonical_t2_family(std::uint64_t seed, const Tolerance& tol) {
  sampling::Rng rng(seed);
  ModuleFamily F;
  F.id = "t2-canonical(seed=" + std::to_string(seed) + ")";
  F.algebra = t2_algebra();
  for (auto [r, c] : {std::pair<Index, Index>{1, 1}, {2, 1}, {1, 2}})
    F.members.push_back(build_t2(T2Rep::type_a(sampling::random_contraction(r, c, rng)), tol));
  F.members.push_back(build_t2(T2Rep::type_b(1), tol));
  F.members.push_back(build_t2(T2Rep::type_c(1), tol));
  return F;
}

PropertyReport t2_property_report(const T2Rep& t, const ModuleFamily& F, const Tolerance& tol) {
  ReportOptions opts;
  opts.subtracing_exact = t2_closed_form(t, tol).subtracing;
  return property_report(build_t2(t, tol), F, opts, tol);
}

// ------------------------------------------------------------------ U(X)

std::vector<CMatrix> ux_elements(Index d) {
  if (d < 1) throw InputError("U(X) needs dim X >= 1");
  const Index m = d + 1;
  std::vector<CMatrix> out;
  out.push_back(unit(m, m, 0, 0));
  CMatrix P2 = CMatrix::Identity(m, m);
  P2(0, 0) = 0.0;
  out.push_back(P2);
  for (Index j = 1; j <= d; ++j) out.push_back(unit(m, m, 0, j));
  return out;
}

AlgebraPtr ux_algebra(Index d, const Tolerance& tol) { return generate_algebra(ux_elements(d), tol); }

Representation build_ux(const UXRep& u, const Tolerance& tol) {
  const Index n1 = u.dim_H1, n2 = u.dim_H2;
  const Index d = static_cast<Index>(u.alpha.size());
  if (n1 < 1 || n2 < 1) throw InputError("U(X) module needs nonzero H1 and H2");
  if (d < 1) throw InputError("U(X) module needs at least one corner image");
  CMatrix stacked(n1 * n2, d);
  for (Index j = 0; j < d; ++j) {
    const auto& a = u.alpha[static_cast<std::size_t>(j)];
    if (a.rows() != n1 || a.cols() != n2)
      throw InputError("alpha image " + std::to_string(j) + " must be " + std::to_string(n1) + "x" + std::to_string(n2));
    if (!all_finite(a)) throw InputError("alpha image " + std::to_string(j) + " has non-finite entries");
    stacked.col(j) = vec(a);
  }
  if (numerical_rank(stacked, tol) != d) throw InputError("alpha images are linearly dependent");

  const CMatrix I1 = CMatrix::Identity(n1, n1), I2 = CMatrix::Identity(n2, n2);
  const CMatrix Z12 = CMatrix::Zero(n1, n2);
  std::vector<CMatrix> images = {blocks(I1, Z12, CMatrix::Zero(n2, n2)), blocks(CMatrix::Zero(n1, n1), Z12, I2)};
  for (const auto& a : u.alpha) images.push_back(blocks(CMatrix::Zero(n1, n1), a, CMatrix::Zero(n2, n2)));
  return Representation::from_elements(ux_algebra(d, tol), n1 + n2, ux_elements(d), images, tol);
}

Representation build_ux_scalar(Index d, Index n, bool first, const Tolerance& tol) {
  if (n < 1) throw InputError("scalar U(X) module needs positive dimension");
  std::vector<CMatrix> images(static_cast<std::size_t>(d + 2), CMatrix::Zero(n, n));
  images[first ? 0 : 1] = CMatrix::Identity(n, n);
  return Representation::from_elements(ux_algebra(d, tol), n, ux_elements(d), images, tol);
}

OperatorSubspace ux_commutant_pairs(const UXRep& u, const Tolerance& tol) {
  const auto rep = build_ux(u, tol);
  const OperatorSubspace pairs = intertwining_pairs(u.alpha, u.dim_H1, u.dim_H2, tol);
  require_engine_match(pairs, commutant(rep.images(), tol), "ux_commutant_pairs", tol);
  return pairs;
}

ModuleFamily canonical_ux_family(Index d, std::uint64_t seed, const Tolerance& tol) {
  sampling::Rng rng(seed);
  ModuleFamily F;
  F.id = "ux-canonical(d=" + std::to_string(d) + ",seed=" + std::to_string(seed) + ")";
  F.algebra = ux_algebra(d, tol);
  Index s = 1;
  while (s * s < d) ++s;
  for (auto [r, c] : {std::pair<Index, Index>{s, s}, {s + 1, s}, {s, s + 1}}) {
    UXRep u{r, c, {}};
    for (Index j = 0; j < d; ++j) u.alpha.push_back(sampling::random_contraction(r, c, rng));
    F.members.push_back(build_ux(u, tol));
  }
  F.members.push_back(build_ux_scalar(d, 1, true, tol));
  F.members.push_back(build_ux_scalar(d, 1, false, tol));
  return F;
}

SemiCriteria ux_semi_criteria(const UXRep& u, std::uint64_t seed, const Tolerance& tol) {
  const Index n1 = u.dim_H1, n2 = u.dim_H2;
  const Index d = static_cast<Index>(u.alpha.size());
  CMatrix ranges(n1, n2 * d), kernels(n1 * d, n2);
  for (Index j = 0; j < d; ++j) {
    ranges.middleCols(j * n2, n2) = u.alpha[static_cast<std::size_t>(j)];
    kernels.middleRows(j * n1, n1) = u.alpha[static_cast<std::size_t>(j)];
  }
  SemiCriteria c;
  c.semigen = numerical_rank(ranges, tol) < n1;
  c.semicogen = numerical_rank(kernels, tol) < n2;

  const auto rep = build_ux(u, tol);
  const auto F = canonical_ux_family(d, seed, tol);
  const bool sg = is_semigenerator_rel(rep, F, tol);
  const bool scg = is_semicogenerator_rel(rep, F, tol);
  if (sg != c.semigen || scg != c.semicogen)
    throw VerificationError("ux_semi_criteria: rank criteria disagree with relative classification over " + F.id);
  return c;
}

UXRep shift_diag_truncation(Index k, bool zero_first) {
  if (k < 1) throw InputError("shift truncation needs k >= 1");
  const Index off = zero_first ? 1 : 0;
  UXRep u;
  u.dim_H2 = k + off;
  u.dim_H1 = k + off + 1;
  for (Index j = 0; j < k; ++j) u.alpha.push_back(unit(u.dim_H1, u.dim_H2, j + off + 1, j + off));
  return u;
}

// ------------------------------------------------------ reflexive closure

OperatorSubspace refl_closure(const OperatorSubspace& S, const Tolerance& tol) {
  const Index n1 = S.rows(), n2 = S.cols();
  const OperatorSubspace pairs = intertwining_pairs(S.basis(), n1, n2, tol);
  std::vector<CMatrix> As, Ds;
  for (const auto& P : pairs.basis()) {
    As.push_back(P.topLeftCorner(n1, n1));
    Ds.push_back(P.bottomRightCorner(n2, n2));
  }
  return sylvester_kernel(Ds, As, n1, n2, tol);
}

// ---------------------------------------------------------------- search

SearchTarget parse_target(const std::string& pattern) {
  static const std::vector<std::string> known = {"dcp",       "faithful",  "semigen",   "semicogen",
                                                 "generator", "cogenerator", "subtracing"};
  SearchTarget target;
  std::stringstream ss(pattern);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty()) continue;
    const auto sep = item.find_first_of(":=");
    if (sep == std::string::npos) throw InputError("search target entry '" + item + "' needs name:value");
    std::string name = item.substr(0, sep), value = item.substr(sep + 1);
    std::transform(value.begin(), value.end(), value.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (name == "gen") name = "generator";
    if (name == "cogen") name = "cogenerator";
    if (name == "domain") {
      if (value == "t2") target.domain = SearchDomain::t2;
      else if (value == "ux") target.domain = SearchDomain::ux;
      else if (value == "any") target.domain = SearchDomain::any;
      else throw InputError("unknown search domain '" + value + "'");
      continue;
    }
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw InputError("unknown property flag '" + name + "' in search target");
    if (value == "t" || value == "true" || value == "1" || value == "yes") target.flags[name] = true;
    else if (value == "f" || value == "false" || value == "0" || value == "no") target.flags[name] = false;
    else throw InputError("flag value '" + value + "' is not T/F");
  }
  if (target.flags.empty()) throw InputError("search target names no flags");
  return target;
}

namespace {

Flag report_flag(const PropertyReport& r, const std::string& name) {
  if (name == "dcp") return r.dcp;
  if (name == "faithful") return r.faithful;
  if (name == "semigen") return r.semigen;
  if (name == "semicogen") return r.semicogen;
  if (name == "generator") return r.generator;
  if (name == "cogenerator") return r.cogenerator;
  return r.subtracing;
}

bool matches(const PropertyReport& r, const SearchTarget& target) {
  for (const auto& [name, want] : target.flags)
    if (truthy(report_flag(r, name)) != want) return false;
  return true;
}

CMatrix t2_candidate(Index style, Index n1, Index n2, sampling::Rng& rng) {
  const Index m = std::min(n1, n2);
  std::uniform_int_distribution<Index> rank_pick(1, m);
  switch (style % 5) {
    case 0:
      return sampling::random_contraction(n1, n2, rng);
    case 1:
      return sampling::random_with_rank(n1, n2, m > 1 ? rank_pick(rng) - 1 : 0, rng);
    case 2:
      return CMatrix::Zero(n1, n2);
    case 3: {
      // Partial isometry onto the first r coordinates.
      CMatrix T = CMatrix::Zero(n1, n2);
      const Index r = rank_pick(rng);
      for (Index i = 0; i < r; ++i) T(i, i) = 1.0;
      return T;
    }
    default: {
      // Shift pattern: strictly upper for square, otherwise a single unit.
      CMatrix T = CMatrix::Zero(n1, n2);
      if (n1 == n2 && n1 > 1)
        for (Index i = 0; i + 1 < n1; ++i) T(i, i + 1) = 1.0;
      else
        T(n1 - 1, 0) = 1.0;
      return T;
    }
  }
}

UXRep ux_candidate(Index style, sampling::Rng& rng) {
  std::uniform_int_distribution<Index> small(1, 3);
  switch (style % 4) {
    case 0: {
      UXRep u{small(rng), small(rng), {}};
      const Index d = std::min<Index>(small(rng), u.dim_H1 * u.dim_H2);
      for (Index j = 0; j < d; ++j) u.alpha.push_back(sampling::random_contraction(u.dim_H1, u.dim_H2, rng));
      return u;
    }
    case 1:
      return shift_diag_truncation(small(rng), false);
    case 2:
      return shift_diag_truncation(small(rng), true);
    default: {
      // A few distinct matrix units.
      UXRep u{small(rng) + 1, small(rng), {}};
      std::vector<std::pair<Index, Index>> cells;
      for (Index i = 0; i < u.dim_H1; ++i)
        for (Index j = 0; j < u.dim_H2; ++j) cells.emplace_back(i, j);
      std::shuffle(cells.begin(), cells.end(), rng);
      const Index d = std::min<Index>(small(rng), static_cast<Index>(cells.size()));
      for (Index j = 0; j < d; ++j)
        u.alpha.push_back(unit(u.dim_H1, u.dim_H2, cells[static_cast<std::size_t>(j)].first,
                               cells[static_cast<std::size_t>(j)].second));
      return u;
    }
  }
}

}  // namespace

std::vector<SearchHit> counterexample_search(const SearchTarget& target, std::uint64_t seed, Index budget,
                                             const SearchOptions& opts, const Tolerance& tol) {
  std::vector<SearchHit> hits;
  sampling::Rng rng(seed);
  std::uniform_int_distribution<Index> small(1, 3);
  const ModuleFamily t2_family = canonical_t2_family(seed, tol);
  ReportOptions ropts;
  ropts.subtracing.samples = opts.subtracing_samples;
  ropts.subtracing.seed = seed;

  for (Index i = 0; i < budget && static_cast<Index>(hits.size()) < opts.max_hits; ++i) {
    const bool use_t2 = target.domain == SearchDomain::t2 || (target.domain == SearchDomain::any && i % 2 == 0);
    const Index style = target.domain == SearchDomain::any ? i / 2 : i;
    if (use_t2) {
      const Index n1 = small(rng), n2 = small(rng);
      const T2Rep t = T2Rep::type_a(t2_candidate(style, n1, n2, rng));
      auto report = t2_property_report(t, t2_family, tol);
      if (matches(report, target))
        hits.push_back({"T2 type (a), T = " + compact(t.T), std::move(report)});
    } else {
      const UXRep u = ux_candidate(style, rng);
      const auto F = canonical_ux_family(static_cast<Index>(u.alpha.size()), seed + static_cast<std::uint64_t>(i), tol);
      auto report = property_report(build_ux(u, tol), F, ropts, tol);
      if (matches(report, target)) {
        std::string desc = "U(X), dim X = " + std::to_string(u.alpha.size()) + ", alpha = {";
        for (std::size_t j = 0; j < u.alpha.size(); ++j) desc += (j ? ", " : "") + compact(u.alpha[j]);
        hits.push_back({desc + "}", std::move(report)});
      }
    }
  }
  return hits;
}

}  // namespace opalg
