#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "opalg/cli.hpp"
#include "opalg/commutant.hpp"
#include "opalg/errors.hpp"
#include "opalg/sampling.hpp"
#include "opalg/workspace.hpp"
#include "oracles.hpp"

using namespace opalg;
using nlohmann::json;

namespace {

const std::string kData = std::string(OPALG_TEST_DATA) + "/workspace.json";

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string error_of(const json& doc) {
  try {
    parse_workspace(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("workspace loads") {
  const auto ws = load_workspace(kData);
  CHECK(ws.matrices.size() == 12);
  CHECK(ws.rep("usual").t2.has_value());
  CHECK(ws.rep("shift1").ux.has_value());
  CHECK(ws.rep("t2_generic").rep.dim_H() == 3);
  CHECK(ws.operator_set("m2_units").size() == 4);
  CHECK(ws.operator_set("T2").size() == 3);
  CHECK(ws.operator_set("intro_rho").size() == ws.rep("intro_rho").rep.images().size());
  CHECK_THROWS_AS(ws.operator_set("missing"), InputError);
  CHECK_THROWS_AS(ws.rep("missing"), InputError);
}

TEST_CASE("workspace parse errors name the key") {
  CHECK(error_of(json::parse(R"({"bogus": {}})")).find("bogus") != std::string::npos);
  CHECK(error_of(json::parse(R"({"matrices": {"A": {"rows": 1, "cols": 2, "entries": [[1, 0]]}}})"))
            .find("matrices.A") != std::string::npos);
  CHECK(error_of(json::parse(R"({"matrices": {"A": {"rows": 1, "cols": 1, "entries": [["x", 0]]}}})"))
            .find("matrices.A") != std::string::npos);
  CHECK(error_of(json::parse(R"({"algebras": {"B": {"generators": ["nope"]}}})")).find("nope") !=
        std::string::npos);
  CHECK(error_of(json::parse(R"({"representations": {"r": {"algebra": "none", "images": []}}})"))
            .find("representations.r") != std::string::npos);
  CHECK_FALSE(error_of(json::parse(R"({"tolerance": {"rank_rel": -1}})")).empty());
  CHECK_FALSE(error_of(json::parse(R"({"representations": {"r": {"t2": {"kind": "q"}}}})")).empty());
  CHECK_THROWS_AS(load_workspace("/nonexistent/ws.json"), InputError);
}

TEST_CASE("tolerance overrides") {
  const auto ws = parse_workspace(json::parse(R"({"tolerance": {"rank_rel": 1e-7, "match_abs": 1e-6}})"),
                                  ToleranceOverride{1e-10, std::nullopt});
  CHECK(ws.tol.rank_rel == 1e-10);
  CHECK(ws.tol.match_abs == 1e-6);
}

TEST_CASE("matrix JSON round trip is bit exact") {
  sampling::Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix M = sampling::ginibre(1 + trial % 4, 1 + trial % 3, rng) * 1e3;
    const CMatrix back = matrix_from_json(json::parse(matrix_to_json(M).dump()));
    REQUIRE(back.rows() == M.rows());
    REQUIRE(back.cols() == M.cols());
    CHECK((back - M).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("inline matrices") {
  const CMatrix M = parse_inline_matrix("[[1, 0], [0, [0, 2]]]");
  REQUIRE(M.rows() == 2);
  CHECK(M(1, 1) == cplx(0, 2));
  CHECK(M(0, 0) == cplx(1, 0));
  CHECK(parse_inline_matrix("[[0.5]]")(0, 0) == cplx(0.5, 0));
  CHECK(parse_inline_matrix(R"({"rows": 1, "cols": 1, "entries": [[3, 0]]})")(0, 0) == cplx(3, 0));
  CHECK_THROWS_AS(parse_inline_matrix("[[1, 2], [3]]"), InputError);
  CHECK_THROWS_AS(parse_inline_matrix("[[1,"), InputError);
  CHECK_THROWS_AS(parse_inline_matrix("[]"), InputError);
}

TEST_CASE("generator images must respect relations") {
  const auto ws = load_workspace(kData);
  const auto T2 = ws.algebras.at("T2");
  const auto& gens = ws.generators.at("T2");
  // E11 -> 0, E12 -> E12, E22 -> 0 breaks E11 E12 = E12.
  const std::vector<CMatrix> bad = {CMatrix::Zero(2, 2), oracle::unit(2, 2, 0, 1), CMatrix::Zero(2, 2)};
  CHECK_THROWS_AS(representation_from_generators(T2, gens, bad), InputError);
  const auto good = representation_from_generators(T2, gens, gens);
  CHECK(good.dim_H() == 2);
  CHECK_THROWS_AS(representation_from_generators(T2, gens, {gens[0]}), InputError);
}

TEST_CASE("cli: t2 cross-check in JSON") {
  const auto r = run_cli({"t2", "--T", "[[1]]", "--all", "--json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["command"] == "t2");
  CHECK(j["verdict"]["closed_form"]["dcp"] == false);
  CHECK(j["dims"]["commutant"] == 1);
  CHECK(j["dims"]["bicommutant"] == 4);
  CHECK(j["basis"].size() == 1);
  CHECK(j.contains("seed"));
  CHECK(j.contains("tolerances"));
}

TEST_CASE("cli: commutant, dcp and re-ingested bases") {
  auto r = run_cli({"commutant", kData, "--set", "m2_units", "--json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["dims"]["dim"] == 1);

  r = run_cli({"dcp", kData, "--rep", "intro_rho", "--json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == true);
  r = run_cli({"dcp", kData, "--rep", "usual"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("fails") != std::string::npos);

  // Feed the printed commutant basis of the corner set back in as a set.
  r = run_cli({"commutant", kData, "--set", "corner_E11", "--json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  json doc = json::parse(R"({"matrices": {}, "sets": {"C": []}})");
  int k = 0;
  for (const auto& m : j["basis"]) {
    const std::string name = "B" + std::to_string(k++);
    doc["matrices"][name] = m;
    doc["sets"]["C"].push_back(name);
  }
  const auto ws = parse_workspace(doc);
  const auto C = ws.operator_set("C");
  CHECK(static_cast<Index>(C.size()) == j["dims"]["dim"].template get<Index>());
  CHECK(span_of(C).dim() == 2);
  CHECK(commutant(C).dim() == 2);
}

TEST_CASE("cli: other subcommands") {
  CHECK(run_cli({"hom", kData, "--from", "usual", "--to", "intro_rho"}).code == 0);
  CHECK(run_cli({"hom", kData, "--from", "usual", "--to", "usual", "--adjointable"}).code == 0);
  CHECK(run_cli({"trace", kData, "--from", "tb", "--to", "usual"}).code == 0);
  CHECK(run_cli({"reject", kData, "--from", "usual", "--to", "tc"}).code == 0);
  CHECK(run_cli({"classify", kData, "--rep", "intro_rho"}).code == 0);
  CHECK(run_cli({"refl-closure", kData, "--set", "corner_E11"}).code == 0);
  const auto s = run_cli({"search", "--target", "dcp:T,gen:T", "--budget", "20", "--domain", "t2", "--json"});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["verdict"] == true);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli({"t2", "--T", "[[2]]"}).code == 2);
  CHECK(run_cli({"t2", "--T", "[[1,"}).code == 2);
  CHECK(run_cli({"commutant", kData, "--set", "missing"}).code == 2);
  CHECK(run_cli({"dcp", "/nonexistent.json", "--rep", "r"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"t2", "--T", "[[1]]", "--no-such-flag"}).code == 2);
  CHECK(run_cli({"search", "--target", "dcp:T", "--domain", "nowhere"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
