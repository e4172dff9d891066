#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "syllog/calculus.hpp"
#include "syllog/hardness.hpp"
#include "syllog/proofs.hpp"
#include "syllog/rules.hpp"
#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

using namespace syllog;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing stdout (callers append 2>&1 when stderr
// matters). A pipeline's status is the last stage's, which is the judgment
// the pipeline tests care about.
RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int raw = pclose(p);
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  r.status = WEXITSTATUS(raw);
  return r;
}

const std::string kBin = std::string("\"") + SYLLOG_BIN + "\"";

fs::path fixtureDir() {
  fs::path d = fs::temp_directory_path() / "syllog_cli_fixtures";
  fs::create_directories(d);
  return d;
}

fs::path writeFixture(const std::string& name, const std::string& content) {
  fs::path p = fixtureDir() / name;
  std::ofstream out(p);
  REQUIRE(out.good());
  out << content;
  return p;
}

}  // namespace

TEST_CASE("prove emits the two-step tree for the worked example") {
  fs::path f = writeFixture("worked.syl",
                            "exists(p, q)\n"
                            "forall(non-o, non-q)\n"
                            "forall(o, non-r)\n");
  RunResult r = run(kBin + " prove --logic h --direct " + f.string() +
                    " --goal \"exists(p, non-r)\"");
  CHECK(r.status == 0);

  // The exact replayed tree, built through the library for comparison.
  auto premises = parseFormulaText("exists(p, q)\nforall(non-o, non-q)\nforall(o, non-r)\n");
  auto proof = decideDirect(premises, parseFormula("exists(p, non-r)"), rulesH());
  REQUIRE(proof.has_value());
  CHECK(r.out == printProof(*proof));
  CHECK(r.out.find("[by D1]") != std::string::npos);
  CHECK(r.out.find("[hypothesis]") != std::string::npos);
}

TEST_CASE("the chain family's goal stays out of reach of forward search") {
  RunResult r = run(kBin + " gamma --n 5 | " + kBin +
                    " prove --logic h --direct --goal \"forall(p1, p5)\"");
  CHECK(r.status == 1);
  CHECK(r.out.find("# not directly derivable") != std::string::npos);
}

TEST_CASE("an unsatisfiable instance encodes to an inconsistent set") {
  fs::path cnf = writeFixture("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  RunResult r = run(kBin + " encode3sat --dimacs " + cnf.string() + " | " + kBin +
                    " sat --logic hstardagger");
  CHECK(r.status == 1);
  CHECK(r.out.find("# inconsistent") != std::string::npos);

  // The brute-force path reaches the same judgment at the emitted bound.
  SatEncoding enc = encode3Sat(parseDimacsText("p cnf 1 2\n1 0\n-1 0\n"));
  RunResult o = run(kBin + " encode3sat --dimacs " + cnf.string() + " | " + kBin +
                    " sat --oracle --max-size " + std::to_string(enc.modelBound));
  CHECK(o.status == 1);
  CHECK(o.out.find("# no model up to domain size") != std::string::npos);
}

TEST_CASE("parse echoes spellings and can gate on a fragment") {
  fs::path f = writeFixture("echo.syl",
                            "# leading comment\n"
                            "exists( q ,p )\n"
                            "forall(q, o)   # trailing comment\n");
  RunResult r = run(kBin + " parse " + f.string());
  CHECK(r.status == 0);
  CHECK(r.out == "exists(q, p)\nforall(q, o)\n");

  fs::path wrap = writeFixture("wrap.syl", "exists(p, all q)\n");
  RunResult gated = run(kBin + " parse --logic s " + wrap.string() + " 2>&1");
  CHECK(gated.status == 2);
  CHECK(gated.out.find("outside") != std::string::npos);

  RunResult ok = run(kBin + " parse --logic h " + wrap.string());
  CHECK(ok.status == 0);
}

TEST_CASE("parse errors name the file, line, and column") {
  fs::path f = writeFixture("broken.syl", "exists(p, q)\nexists(p q)\n");
  RunResult r = run(kBin + " parse " + f.string() + " 2>&1 1>/dev/null");
  CHECK(r.status == 2);
  CHECK(r.out.find(f.string() + ": line 2, col ") != std::string::npos);

  RunResult missing = run(kBin + " parse /no/such/file.syl 2>&1");
  CHECK(missing.status == 2);
  CHECK(missing.out.find("cannot open") != std::string::npos);

  RunResult badFlag = run(kBin + " parse --no-such-flag 2>&1");
  CHECK(badFlag.status == 2);

  RunResult badTag = run("echo 'exists(p, q)' | " + kBin + " saturate --logic klingon 2>&1");
  CHECK(badTag.status == 2);
  CHECK(badTag.out.find("unknown logic tag") != std::string::npos);
}

TEST_CASE("structure files round-trip through parse --structure") {
  Structure m;
  m.size = 3;
  m.setExtent("p", {true, false, true});
  m.setExtent("q", {false, true, false});
  fs::path f = writeFixture("round.struct", "# a comment\n" + printStructure(m));
  RunResult r = run(kBin + " parse --structure " + f.string());
  CHECK(r.status == 0);
  CHECK(r.out == printStructure(m));
  CHECK(parseStructureText(r.out).extents == m.extents);
}

TEST_CASE("saturate prints the closure and flags absurdity") {
  RunResult r = run("echo 'exists(p, all q)' | " + kBin + " saturate --logic h");
  CHECK(r.status == 0);
  std::vector<Formula> closure = parseFormulaText(r.out);
  Saturation sat(rulesH(), {"p", "q"});
  sat.addPremise(parseFormula("exists(p, all q)"));
  sat.run();
  CHECK(closure == sat.members());

  RunResult bad = run("echo 'exists(p, non-p)' | " + kBin + " saturate --logic h");
  CHECK(bad.status == 1);
  CHECK(bad.out.find("# inconsistent: derives exists(p, non-p)") != std::string::npos);

  RunResult explained = run("echo 'exists(p, all q)' | " + kBin + " saturate --logic h --explain");
  CHECK(explained.status == 0);
  CHECK(explained.out.find(" <- ") != std::string::npos);
}

TEST_CASE("model builds a structure the premises accept") {
  fs::path f = writeFixture("twoshape.syl", "exists(p, all q)\nexists(q, o)\n");
  RunResult r = run(kBin + " model --logic h " + f.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("# world 0") != std::string::npos);
  Structure m = parseStructureText(r.out);  // comment lines are skipped
  CHECK(satisfiesAll(m, parseFormulaText("exists(p, all q)\nexists(q, o)\n")));

  fs::path g = writeFixture("pivot.syl",
                            "forall(p, all p)\nforall(non-p, p)\nexists(q1, q1)\n");
  RunResult d = run(kBin + " model --logic hdagger " + g.string());
  CHECK(d.status == 0);
  Structure md = parseStructureText(d.out);
  CHECK(md.size == 1);
  CHECK(satisfiesAll(md, parseFormulaText("forall(p, all p)\nforall(non-p, p)\nexists(q1, q1)\n")));
}

TEST_CASE("sat answers through the oracle when asked") {
  RunResult pos = run("echo 'exists(p, nall p)' | " + kBin + " sat --oracle --max-size 3");
  CHECK(pos.status == 0);
  Structure m = parseStructureText(pos.out);
  CHECK(m.size == 2);  // the smallest domain admitting a non-unique instance
  CHECK(satisfies(m, parseFormula("exists(p, nall p)")));

  RunResult neg = run("printf 'exists(p, q)\\nforall(p, non-q)\\n' | " + kBin + " sat --oracle");
  CHECK(neg.status == 1);
  CHECK(neg.out.find("# no model up to domain size 4") != std::string::npos);
}

TEST_CASE("prove --indirect reports budget exhaustion distinctly") {
  fs::path f = writeFixture("twochain.syl",
                            "forall(p, all p)\n"
                            "forall(non-p, all non-p)\n"
                            "exists(q1, non-q2)\n"
                            "exists(q2, non-q3)\n");
  // This refutation must case-split, so a zero budget trips immediately.
  RunResult starved = run("echo 'forall(p, q)' | " + kBin +
                          " prove --logic hdagger --indirect --branch-budget 0"
                          " --goal \"exists(q, q)\"");
  CHECK(starved.status == 3);
  CHECK(starved.out.find("# branch budget exceeded") != std::string::npos);

  RunResult proved = run(kBin + " prove --logic hdagger --indirect " + f.string() +
                         " --goal \"forall(q3, q1)\"");
  CHECK(proved.status == 0);
  CHECK(proved.out.find("[by reductio") != std::string::npos);

  RunResult gated = run("echo 'exists(p, q)' | " + kBin +
                        " prove --logic h --indirect --goal \"forall(p, q)\" 2>&1");
  CHECK(gated.status == 2);
  CHECK(gated.out.find("--indirect needs a complete calculus") != std::string::npos);
}

TEST_CASE("prove --indirect refuses an underivable goal with a witness") {
  RunResult r = run("echo 'exists(p, q)' | " + kBin +
                    " prove --logic hdagger --indirect --goal \"forall(p, q)\" --explain");
  CHECK(r.status == 1);
  CHECK(r.out.find("# not derivable") != std::string::npos);
  // --explain appends the consistent complete extension, which parses.
  std::string body;
  for (std::istringstream in(r.out); std::getline(in, body) && !body.empty();)
    if (body[0] != '#') break;
  CHECK(!parseFormulaText(r.out).empty());
}

TEST_CASE("gamma emits the family, optionally dropping a link") {
  RunResult full = run(kBin + " gamma --n 5");
  CHECK(full.status == 0);
  CHECK(full.out.find("# goal: " + printFormula(gammaFamily(5).goal)) != std::string::npos);
  CHECK(parseFormulaText(full.out) == gammaFamily(5).premises);

  RunResult dropped = run(kBin + " gamma --n 5 --drop 2");
  CHECK(dropped.status == 0);
  CHECK(parseFormulaText(dropped.out) == gammaPremisesDropping(5, 2));

  RunResult badN = run(kBin + " gamma --n 2 2>&1");
  CHECK(badN.status == 2);
  RunResult badH = run(kBin + " gamma --n 5 --drop 4 2>&1");
  CHECK(badH.status == 2);
}

TEST_CASE("gamma --emit-witnesses writes loadable counterexamples") {
  fs::path dir = fixtureDir() / "gamma_witnesses";
  fs::remove_all(dir);
  RunResult r = run(kBin + " gamma --n 5 --drop 2 --emit-witnesses --out " + dir.string() +
                    " > /dev/null");
  CHECK(r.status == 0);
  const char* names[] = {"chain.struct", "prefix.struct", "suffix.struct",
                         "prefix-doubled.struct", "suffix-doubled.struct"};
  std::vector<Formula> droppedSet = gammaPremisesDropping(5, 2);
  for (const char* n : names) {
    fs::path p = dir / n;
    REQUIRE(fs::exists(p));
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    Structure m = parseStructureText(ss.str());
    CHECK(satisfiesAll(m, droppedSet));
  }

  RunResult noDrop = run(kBin + " gamma --n 5 --emit-witnesses --out " + dir.string() +
                         " 2>&1 > /dev/null");
  CHECK(noDrop.status == 2);
}

TEST_CASE("encode3sat emits a parsable encoding with its bound") {
  fs::path cnf = writeFixture("one.cnf", "p cnf 2 1\n1 -2 0\n");
  SatEncoding enc = encode3Sat(parseDimacsText("p cnf 2 1\n1 -2 0\n"));

  RunResult star = run(kBin + " encode3sat --dimacs " + cnf.string());
  CHECK(star.status == 0);
  CHECK(star.out.find("# model bound: " + std::to_string(enc.modelBound)) != std::string::npos);
  CHECK(parseFormulaText(star.out) == enc.starDagger);

  RunResult dag = run(kBin + " encode3sat --logic hdagger " + cnf.string());
  CHECK(dag.status == 0);
  CHECK(parseFormulaText(dag.out) == enc.dagger);

  RunResult wrong = run(kBin + " encode3sat --logic h " + cnf.string() + " 2>&1");
  CHECK(wrong.status == 2);

  RunResult bad = run(kBin + " encode3sat --dimacs " + cnf.string() + "missing 2>&1");
  CHECK(bad.status == 2);
}

TEST_CASE("encode3sat --emit-witnesses writes the gadget blocks") {
  fs::path cnf = writeFixture("one.cnf", "p cnf 2 1\n1 -2 0\n");
  fs::path dir = fixtureDir() / "gadgets";
  fs::remove_all(dir);
  RunResult r = run(kBin + " encode3sat --dimacs " + cnf.string() + " --emit-witnesses --out " +
                    dir.string() + " > /dev/null");
  CHECK(r.status == 0);
  int rows = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path());
    std::ostringstream ss;
    ss << in.rdbuf();
    Structure m = parseStructureText(ss.str());
    CHECK(m.size == 2);
    ++rows;
  }
  CHECK(rows == 9);  // 7 clause rows + 2 letter blocks
}

TEST_CASE("validate-rules passes on the stock tables") {
  RunResult r = run(kBin + " validate-rules --max-size 2");
  CHECK(r.status == 0);
  for (const RuleSet* rs : {&rulesH(), &rulesHDagger(), &rulesHStarDagger()})
    CHECK(r.out.find(rs->name) != std::string::npos);
  CHECK(r.out.find("all valid") != std::string::npos);
  CHECK(r.out.find("INVALID") == std::string::npos);
}

TEST_CASE("deterministic runs are byte-identical") {
  std::string cmd = kBin + " validate-rules --max-size 1 --deterministic --jobs 4";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);

  fs::path f = writeFixture("det.syl", "exists(p, all q)\nexists(q, o)\n");
  RunResult m1 = run(kBin + " model --deterministic " + f.string());
  RunResult m2 = run(kBin + " model --deterministic " + f.string());
  CHECK(m1.out == m2.out);
}
