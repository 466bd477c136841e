#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "diffcoh/commands.hpp"
#include "diffcoh/io.hpp"

using namespace diffcoh;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

// Writes text to a scratch file and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "diffcoh_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << text;
  return path;
}

const ReportTable& table(const RunReport& r, const std::string& title) {
  for (const auto& t : r.tables)
    if (t.title == title) return t;
  throw std::runtime_error("no table " + title);
}

const ReportCheck* find_check(const RunReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

// Rebuilds a report from its JSON rendering.
RunReport from_json(const nlohmann::ordered_json& j) {
  RunReport r;
  r.command = j.at("command");
  r.fixture = j.at("fixture");
  r.digest = j.at("digest");
  r.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& t : j.at("tables"))
    r.tables.push_back({t.at("title"), t.at("columns").get<std::vector<std::string>>(),
                        t.at("rows").get<std::vector<std::vector<std::string>>>()});
  for (const auto& c : j.at("checks")) r.check(c.at("name"), c.at("passed"), c.value("witness", std::string()));
  if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
  return r;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("check") {
  TEST_CASE("every valid fixture passes") {
    for (const char* name : {"z3_inverse.json", "z2_identity.json", "z3_inverse_rational.json", "trivial_group.json",
                             "z3_carry_cocycle.json", "lie_abelian.json", "lie_affine.json", "lie_gl2_adjugate.json",
                             "vanest_adjugate.json", "vanest_inverse.json", "vanest_adjoint.json",
                             "vanest_conj_inverse.json"}) {
      CAPTURE(name);
      const auto r = cmd_check(fixture(name));
      CHECK(r.ok());
      CHECK_FALSE(r.checks.empty());
    }
  }
  TEST_CASE("broken associativity fails with a witness triple") {
    const auto r = cmd_check(fixture("broken_associativity.json"));
    CHECK_FALSE(r.ok());
    const auto* c = find_check(r, "group axioms");
    REQUIRE(c);
    CHECK_FALSE(c->passed);
    CHECK(c->witness.find("associativity at (") != std::string::npos);
  }
  TEST_CASE("the adjugate-derived Lie fixture passes the difference identity") {
    const auto r = cmd_check(fixture("lie_gl2_adjugate.json"));
    const auto* c = find_check(r, "Lie difference identity");
    REQUIRE(c);
    CHECK(c->passed);
  }
  TEST_CASE("the carry cocycle builds a difference group of order 9") {
    const auto r = cmd_check(fixture("z3_carry_cocycle.json"));
    CHECK(r.ok());
    CHECK(find_check(r, "extension is a difference group"));
    CHECK(find_check(r, "canonical section returns the cocycle"));
  }
}

TEST_SUITE("cohomology and les") {
  TEST_CASE("Z/3 with inversion and T = -1") {
    CommandOptions o;
    o.max_degree = 2;
    const auto r = cmd_cohomology(fixture("z3_inverse.json"), o);
    const auto& t = table(r, "cohomology dimensions");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "1", "0", "1"});
    CHECK(t.rows[1] == std::vector<std::string>{"2", "1", "1", "2"});
    CHECK(r.notes.size() == 1);
  }
  TEST_CASE("the trivial group has no cohomology") {
    const auto r = cmd_cohomology(fixture("trivial_group.json"));
    for (const auto& row : table(r, "cohomology dimensions").rows)
      for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == "0");
  }
  TEST_CASE("over Q the group side vanishes") {
    const auto r = cmd_cohomology(fixture("z3_inverse_rational.json"));
    for (const auto& row : table(r, "cohomology dimensions").rows) CHECK(row[1] == "0");
    CHECK(r.notes.empty());
  }
  TEST_CASE("the affine Lie algebra has H^1 = 1") {
    const auto r = cmd_cohomology(fixture("lie_affine.json"));
    const auto& t = table(r, "cohomology dimensions");
    CHECK(t.columns[1] == "H^n(g,V)");
    CHECK(t.rows[0][1] == "1");
  }
  TEST_CASE("les is exact on every fixture") {
    for (const char* name : {"z3_inverse.json", "z2_identity.json", "lie_abelian.json", "lie_affine.json"}) {
      CAPTURE(name);
      const auto r = cmd_les(fixture(name));
      CHECK(r.ok());
      CHECK(table(r, "long exact sequence").rows.size() == 9);
    }
  }
  TEST_CASE("the budget message names the degree") {
    CommandOptions o;
    o.budget = 3;
    const auto what = error_of([&] { cmd_cohomology(fixture("z3_inverse.json"), o); });
    CHECK(what.find("degree 2") != std::string::npos);
  }
}

TEST_SUITE("classify and vanest") {
  TEST_CASE("extension census") {
    const auto r = cmd_classify(fixture("z3_inverse.json"));
    CHECK(r.ok());
    CHECK(find_check(r, "coset census = p^dim H^2"));
    CHECK(find_check(r, "shear census = p^dim H^2"));
  }
  TEST_CASE("semidirect census") {
    CommandOptions o;
    o.mode = "semidirect-ops";
    const auto r = cmd_classify(fixture("z3_inverse.json"), o);
    CHECK(r.ok());
    CHECK(find_check(r, "direct classes = quotient census"));
  }
  TEST_CASE("classify needs F_p coefficients") {
    CHECK_THROWS(cmd_classify(fixture("z3_inverse_rational.json")));
    CHECK_THROWS(cmd_classify(fixture("lie_affine.json")));
  }
  TEST_CASE("vanest fixtures pass (a)-(d)") {
    for (const char* name : {"vanest_adjugate.json", "vanest_adjugate_deg2.json", "vanest_inverse.json",
                             "vanest_adjoint.json", "vanest_adjoint_deg2.json", "vanest_conj_inverse.json"}) {
      CAPTURE(name);
      const auto r = cmd_vanest(fixture(name));
      CHECK(r.ok());
      CHECK(find_check(r, "(c) VE pk = 0"));
    }
  }
}

TEST_SUITE("reports") {
  TEST_CASE("identical runs give identical bytes") {
    for (const auto& run : {cmd_check, cmd_cohomology, cmd_les, cmd_classify}) {
      const auto a = run(fixture("z3_inverse.json"), {});
      const auto b = run(fixture("z3_inverse.json"), {});
      CHECK(a.text() == b.text());
      CHECK(a.json().dump() == b.json().dump());
    }
    CHECK(cmd_vanest(fixture("vanest_adjugate.json")).text() == cmd_vanest(fixture("vanest_adjugate.json")).text());
  }
  TEST_CASE("JSON carries exactly the text report") {
    for (const char* name : {"z3_inverse.json", "broken_associativity.json", "lie_affine.json"}) {
      const auto r = cmd_check(fixture(name));
      CHECK(from_json(r.json()).text() == r.text());
      const auto rl = cmd_les(fixture("z3_inverse.json"));
      CHECK(from_json(rl.json()).text() == rl.text());
    }
  }
  TEST_CASE("timing appears only on request") {
    CHECK(cmd_check(fixture("z3_inverse.json")).text().find("seconds") == std::string::npos);
    CommandOptions o;
    o.timing = true;
    CHECK(cmd_check(fixture("z3_inverse.json"), o).seconds.has_value());
  }
  TEST_CASE("the digest follows the fixture bytes") {
    const auto a = scratch("a.json", R"({"group": {"table": [[0]]}, "difference": "identity"})");
    const auto b = scratch("b.json", R"({"group": {"table": [[0]]},  "difference": "identity"})");
    CHECK(cmd_check(a).digest != cmd_check(b).digest);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
  }
}

TEST_SUITE("fixture errors") {
  TEST_CASE("syntax errors report line and column") {
    const auto path = scratch("syntax.json", "{\n  \"group\": {\"table\": [[0]]},\n  \"difference\" \"identity\"\n}\n");
    const auto what = error_of([&] { cmd_check(path); });
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
  TEST_CASE("semantic errors name the field") {
    const auto missing = scratch("missing.json", R"({"group": {"table": [[0]]}})");
    CHECK(error_of([&] { cmd_check(missing); }).find("difference") != std::string::npos);
    const auto range = scratch("range.json", R"({"group": {"table": [[0, 1], [1, 0]]}, "difference": [0, 5]})");
    CHECK(error_of([&] { cmd_check(range); }).find("difference[1]") != std::string::npos);
    const auto field = scratch("field.json",
                               R"({"group": {"table": [[0]]}, "difference": "identity", "rep": {"field": {"kind": "Fp", "p": 4}, "dim": 1}})");
    CHECK(error_of([&] { cmd_check(field); }).find("p") != std::string::npos);
    CHECK_THROWS_AS(cmd_check(scratch("empty.json", "[]")), FixtureError);
    CHECK_THROWS_AS(cmd_check("/nonexistent/fixture.json"), FixtureError);
  }
}
