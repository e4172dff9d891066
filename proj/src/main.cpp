// Command-line front door. One binary, subcommand style:
//
//   syllog parse [file] [--logic TAG] [--structure]
//   syllog saturate [file] --logic TAG [--explain]
//   syllog prove [file] --logic TAG --goal F (--direct | --indirect) ...
//   syllog sat [file] --logic TAG [--oracle --max-size K --jobs N] ...
//   syllog model [file] --logic TAG
//   syllog gamma --n N [--h H] [--emit-witnesses --out DIR]
//   syllog encode3sat [--dimacs FILE] [--logic TAG] [--emit-witnesses --out DIR]
//   syllog validate-rules [--max-size K] [--jobs N]
//
// Formula input is newline-delimited; a missing or "-" path reads stdin, so
// the emitting verbs pipe straight into the consuming ones. Exit codes:
// 0 positive judgment, 1 negative, 2 usage or parse error, 3 budget
// exceeded.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "syllog/calculus.hpp"
#include "syllog/hardness.hpp"
#include "syllog/modelgen.hpp"
#include "syllog/oracle.hpp"
#include "syllog/proofcheck.hpp"
#include "syllog/proofs.hpp"
#include "syllog/refutation.hpp"
#include "syllog/rules.hpp"
#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

namespace {

using namespace syllog;

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readAll(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string inputName(const std::string& path) {
  return path.empty() || path == "-" ? "<stdin>" : path;
}

Language languageFromTag(const std::string& tag) {
  if (tag == "s") return Language::S;
  if (tag == "sdagger") return Language::SDagger;
  if (tag == "h") return Language::H;
  if (tag == "hdagger") return Language::HDagger;
  if (tag == "hstardagger") return Language::HStarDagger;
  throw UsageError("unknown logic tag '" + tag +
                   "' (expected s, sdagger, h, hdagger, or hstardagger)");
}

bool isDaggerLanguage(Language l) {
  return l == Language::SDagger || l == Language::HDagger || l == Language::HStarDagger;
}

void requireInLanguage(const std::vector<Formula>& fs, Language l,
                       const std::string& what) {
  for (const auto& f : fs)
    if (!memberOf(f, l))
      throw UsageError(what + " formula " + printFormula(f) + " is outside " +
                       languageName(l));
}

std::vector<Formula> loadFormulas(const std::string& path) {
  return parseFormulaText(readAll(path));
}

void printFormulas(const std::vector<Formula>& fs) {
  for (const auto& f : fs) std::cout << printFormula(f) << "\n";
}

// One-line derivation summaries for --explain: conclusion <- rule(antecedents).
void printDerivationLines(const Saturation& sat) {
  for (const auto& f : sat.members()) {
    ProofNode t = sat.derivationOf(f);
    if (t.kind != ProofNode::Kind::Rule) continue;
    std::cout << "# " << printFormula(f) << " <- " << t.rule << "(";
    for (size_t i = 0; i < t.children.size(); ++i) {
      if (i) std::cout << "; ";
      std::cout << printFormula(t.children[i].conclusion);
    }
    std::cout << ")\n";
  }
}

void printWorlds(const ModelResult& res) {
  for (size_t w = 0; w < res.worlds.size(); ++w) {
    std::cout << "# world " << w << (res.specialWorld[w] ? " (one copy):" : " (two copies):");
    for (const auto& t : res.worlds[w]) std::cout << " " << printETerm(t);
    std::cout << "\n";
  }
  std::cout << "# element -> world:";
  for (int w : res.elementWorld) std::cout << " " << w;
  std::cout << "\n";
}

void writeFileOrDie(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  if (!out) throw UsageError("cannot write " + p.string());
  out << content;
}

int verifyAndPrintProof(const ProofNode& proof, const std::vector<Formula>& premises,
                        const RuleSet& rules) {
  CheckResult chk = checkProof(proof, premises, rules);
  if (!chk.ok) throw std::logic_error("proof failed replay: " + chk.error);
  std::cout << printProof(proof);
  return kExitPositive;
}

// ---- verbs ----

struct Options {
  std::string input;
  std::string logic;  // per-verb default applied via logicOr
  std::string goal;
  std::string dimacs;
  std::string outDir;
  bool direct = false;
  bool indirect = false;
  bool oracle = false;
  bool structure = false;
  bool explain = false;
  bool emitWitnesses = false;
  bool deterministic = false;
  int maxSize = 0;
  int jobs = 1;
  long branchBudget = 1000000;

  int effectiveJobs() const { return deterministic ? 1 : jobs; }
  std::string logicOr(const char* dflt) const { return logic.empty() ? dflt : logic; }
};

int runParse(const Options& o) {
  if (o.structure) {
    Structure m = parseStructureText(readAll(o.input));
    std::cout << printStructure(m);
    return kExitPositive;
  }
  std::vector<Formula> fs = loadFormulas(o.input);
  if (!o.logic.empty()) requireInLanguage(fs, languageFromTag(o.logic), "input");
  printFormulas(fs);
  return kExitPositive;
}

int runSaturate(const Options& o) {
  Language lang = languageFromTag(o.logicOr("h"));
  std::vector<Formula> fs = loadFormulas(o.input);
  requireInLanguage(fs, lang, "premise");
  const RuleSet& rules = rulesFor(lang);
  Saturation sat(rules, atomsOf(fs));
  for (const auto& f : fs) sat.addPremise(f);
  sat.run();
  printFormulas(sat.members());
  if (o.explain) printDerivationLines(sat);
  if (sat.inconsistent()) {
    std::cout << "# inconsistent: derives " << printFormula(*sat.absurdity()) << "\n";
    if (o.explain) std::cout << printProof(sat.derivationOf(*sat.absurdity()));
    return kExitNegative;
  }
  return kExitPositive;
}

int runProve(const Options& o) {
  if (o.goal.empty()) throw UsageError("prove needs --goal");
  if (o.direct && o.indirect) throw UsageError("pick one of --direct / --indirect");
  Language lang = languageFromTag(o.logicOr("h"));
  std::vector<Formula> premises = loadFormulas(o.input);
  Formula goal = parseFormula(o.goal);
  requireInLanguage(premises, lang, "premise");
  requireInLanguage({goal}, lang, "goal");
  const RuleSet& rules = rulesFor(lang);

  if (o.indirect) {
    if (lang != Language::HDagger && lang != Language::HStarDagger)
      throw UsageError("--indirect needs a complete calculus: --logic hdagger or hstardagger");
    IndirectResult r = decideIndirect(premises, goal, rules, o.branchBudget);
    switch (r.outcome) {
      case IndirectResult::Outcome::Proved:
        return verifyAndPrintProof(r.proof, premises, rules);
      case IndirectResult::Outcome::NotProved:
        std::cout << "# not derivable: premises + negated goal have a consistent"
                     " complete extension\n";
        if (o.explain) printFormulas(r.witness.formulas);
        return kExitNegative;
      case IndirectResult::Outcome::BudgetExceeded:
        std::cout << "# branch budget exceeded after " << r.stats.branchNodes
                  << " splits\n";
        return kExitBudget;
    }
    throw std::logic_error("unhandled indirect outcome");
  }
  std::optional<ProofNode> p = decideDirect(premises, goal, rules);
  if (!p) {
    std::cout << "# not directly derivable\n";
    return kExitNegative;
  }
  return verifyAndPrintProof(*p, premises, rules);
}

int runSatOrModel(const Options& o, bool modelVerb) {
  Language lang = languageFromTag(o.logicOr("h"));
  std::vector<Formula> fs = loadFormulas(o.input);

  if (o.oracle) {
    OracleConfig cfg;
    cfg.maxSize = o.maxSize;
    cfg.jobs = o.effectiveJobs();
    OracleResult r = boundedModelSearch(fs, cfg);
    if (!r.found) {
      std::cout << "# no model up to domain size " << r.bound << "\n";
      return kExitNegative;
    }
    std::cout << printStructure(r.model);
    return kExitPositive;
  }

  requireInLanguage(fs, lang, "input");
  if (!isDaggerLanguage(lang)) {
    ModelResult res = buildModelH(fs);
    if (!res.consistent) {
      std::cout << "# inconsistent\n";
      if (o.explain || modelVerb) std::cout << printProof(res.refutation);
      return kExitNegative;
    }
    if (o.explain || modelVerb) printWorlds(res);
    std::cout << printStructure(res.model);
    return kExitPositive;
  }

  const RuleSet& rules = rulesFor(lang);
  ExtendResult r = lindenbaumExtend(fs, rules, o.branchBudget);
  switch (r.outcome) {
    case ExtendResult::Outcome::Refuted: {
      std::cout << "# inconsistent\n";
      if (o.explain || modelVerb) std::cout << printProof(r.refutation);
      return kExitNegative;
    }
    case ExtendResult::Outcome::BudgetExceeded:
      std::cout << "# branch budget exceeded after " << r.stats.branchNodes
                << " splits\n";
      return kExitBudget;
    case ExtendResult::Outcome::Consistent:
      break;
  }
  if (r.set.atoms.size() > 6) {
    // The world enumeration is exponential in the atom count; past 6 atoms
    // report the judgment from the complete extension and skip the build.
    std::cout << "# satisfiable: consistent complete extension found;"
                 " model construction skipped above 6 atoms (try --oracle)\n";
    if (o.explain) printFormulas(r.set.formulas);
    return kExitPositive;
  }
  ModelResult res = buildModelDagger(r.set);
  if (o.explain || modelVerb) printWorlds(res);
  std::cout << printStructure(res.model);
  return kExitPositive;
}

int runGamma(const Options& o, int n, int h) {
  // Validate every constraint before writing anything, so a rejected
  // invocation leaves stdout empty.
  if (n < 3) throw UsageError("--n must be at least 3");
  if (h > 0 && h > n - 2) throw UsageError("--drop must be between 1 and n-2");
  if (o.emitWitnesses) {
    if (h <= 0) throw UsageError("--emit-witnesses needs --drop");
    if (o.outDir.empty()) throw UsageError("--emit-witnesses needs --out DIR");
  }
  GammaInstance g = gammaFamily(n);
  std::cout << "# goal: " << printFormula(g.goal) << "\n";
  if (h > 0) {
    printFormulas(gammaPremisesDropping(n, h));
  } else {
    printFormulas(g.premises);
  }
  if (o.emitWitnesses) {
    std::filesystem::create_directories(o.outDir);
    GammaWitnesses w = gammaWitnesses(n, h);
    std::filesystem::path dir(o.outDir);
    writeFileOrDie(dir / "chain.struct", printStructure(w.chain));
    writeFileOrDie(dir / "prefix.struct", printStructure(w.prefix));
    writeFileOrDie(dir / "suffix.struct", printStructure(w.suffix));
    writeFileOrDie(dir / "prefix-doubled.struct", printStructure(w.prefixDoubled));
    writeFileOrDie(dir / "suffix-doubled.struct", printStructure(w.suffixDoubled));
  }
  return kExitPositive;
}

int runEncode3Sat(const Options& o) {
  std::string path = !o.dimacs.empty() ? o.dimacs : o.input;
  ThreeSatInstance ins = parseDimacsText(readAll(path));
  SatEncoding enc = encode3Sat(ins);
  Language lang = languageFromTag(o.logicOr("hstardagger"));
  const std::vector<Formula>* out = nullptr;
  if (lang == Language::HStarDagger)
    out = &enc.starDagger;
  else if (lang == Language::HDagger)
    out = &enc.dagger;
  else
    throw UsageError("encode3sat targets --logic hstardagger or hdagger");
  std::cout << "# model bound: " << enc.modelBound << "\n";
  printFormulas(*out);
  if (o.emitWitnesses) {
    if (o.outDir.empty()) throw UsageError("--emit-witnesses needs --out DIR");
    std::filesystem::create_directories(o.outDir);
    std::filesystem::path dir(o.outDir);
    writeFileOrDie(dir / "letter-true.struct", printStructure(letterGadgetModel(1, true)));
    writeFileOrDie(dir / "letter-false.struct", printStructure(letterGadgetModel(1, false)));
    for (int mask = 1; mask <= 7; ++mask) {
      std::vector<int> K;
      for (int k = 1; k <= 3; ++k)
        if (mask & (1 << (k - 1))) K.push_back(k);
      std::string name = "clause-row-";
      for (int k : K) name += std::to_string(k);
      writeFileOrDie(dir / (name + ".struct"), printStructure(clauseGadgetModel(K)));
    }
  }
  return kExitPositive;
}

int runValidateRules(const Options& o) {
  int maxSize = o.maxSize > 0 ? o.maxSize : 3;
  bool allValid = true;
  for (const RuleSet* rs : {&rulesH(), &rulesHDagger(), &rulesHStarDagger()}) {
    RuleValidityReport rep = checkRuleValidity(*rs, 2, maxSize, o.effectiveJobs());
    std::cout << rs->name << ": " << rep.instancesChecked
              << " ground instances over 2 atoms, domain sizes 1.." << maxSize
              << (rep.allValid ? ": all valid" : ": INVALID") << "\n";
    for (const auto& f : rep.failures) {
      allValid = false;
      std::cout << "  " << f.origin << "#" << f.variantIndex << ":";
      for (const auto& a : f.antecedents) std::cout << " " << printFormula(a);
      std::cout << " => " << printFormula(f.consequent) << " fails on\n";
      std::istringstream lines(printStructure(f.counterexample));
      for (std::string l; std::getline(lines, l);) std::cout << "    " << l << "\n";
    }
  }
  return allValid ? kExitPositive : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syllogistic logics with quantified identity predicates:"
               " proofs, models, hardness"};
  app.require_subcommand(1);

  Options o;
  int gammaN = 5;
  int gammaH = 0;

  auto addInput = [&](CLI::App* cmd) {
    cmd->add_option("input", o.input, "formula file (default: stdin)");
  };
  auto addLogic = [&](CLI::App* cmd) {
    cmd->add_option("--logic", o.logic,
                    "fragment/calculus: s, sdagger, h, hdagger, hstardagger (default h)");
  };
  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_flag("--explain", o.explain, "show derivations / worlds / witness sets");
    cmd->add_flag("--deterministic", o.deterministic, "byte-identical reports (forces --jobs 1)");
  };

  CLI::App* cParse = app.add_subcommand("parse", "parse and print canonical forms");
  addInput(cParse);
  cParse->add_option("--logic", o.logic, "also require membership in this fragment");
  cParse->add_flag("--structure", o.structure, "input is a structure file");

  CLI::App* cSat2 = app.add_subcommand("saturate", "close the premises under the rules");
  addInput(cSat2);
  addLogic(cSat2);
  addCommon(cSat2);

  CLI::App* cProve = app.add_subcommand("prove", "decide derivability of --goal");
  addInput(cProve);
  addLogic(cProve);
  addCommon(cProve);
  cProve->add_option("--goal", o.goal, "goal formula text")->required();
  cProve->add_flag("--direct", o.direct, "saturation only (default)");
  cProve->add_flag("--indirect", o.indirect, "reductio search (hdagger/hstardagger)");
  cProve->add_option("--branch-budget", o.branchBudget, "split budget for --indirect");

  CLI::App* cSat = app.add_subcommand("sat", "decide satisfiability, print a model");
  addInput(cSat);
  addLogic(cSat);
  addCommon(cSat);
  cSat->add_flag("--oracle", o.oracle, "brute-force bounded search instead of the calculus");
  cSat->add_option("--max-size", o.maxSize, "oracle domain-size bound (default: atoms+2)");
  cSat->add_option("--jobs", o.jobs, "parallel workers for the oracle");
  cSat->add_option("--branch-budget", o.branchBudget, "split budget for the dagger search");

  CLI::App* cModel = app.add_subcommand("model", "build and print the constructive model");
  addInput(cModel);
  addLogic(cModel);
  addCommon(cModel);
  cModel->add_option("--branch-budget", o.branchBudget, "split budget for the dagger search");

  CLI::App* cGamma = app.add_subcommand("gamma", "emit the circular premise family");
  cGamma->add_option("--n", gammaN, "chain length (>= 3)")->required();
  cGamma->add_option("--drop", gammaH, "drop the h-th chain premise (1..n-2)");
  cGamma->add_flag("--emit-witnesses", o.emitWitnesses, "write witness structures (needs --drop, --out)");
  cGamma->add_option("--out", o.outDir, "directory for witness structures");

  CLI::App* cEnc = app.add_subcommand("encode3sat", "reduce a DIMACS 3SAT instance");
  addInput(cEnc);
  cEnc->add_option("--dimacs", o.dimacs, "DIMACS CNF file (alternative to positional input)");
  cEnc->add_option("--logic", o.logic, "hstardagger (default) or hdagger");
  cEnc->add_flag("--emit-witnesses", o.emitWitnesses, "write gadget structures (needs --out)");
  cEnc->add_option("--out", o.outDir, "directory for gadget structures");

  CLI::App* cRules = app.add_subcommand("validate-rules", "exhaustively check rule validity");
  cRules->add_option("--max-size", o.maxSize, "largest domain size checked (default 3)");
  cRules->add_option("--jobs", o.jobs, "parallel workers");
  cRules->add_flag("--deterministic", o.deterministic, "byte-identical reports (forces --jobs 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cParse) return runParse(o);
    if (*cSat2) return runSaturate(o);
    if (*cProve) return runProve(o);
    if (*cSat) return runSatOrModel(o, false);
    if (*cModel) return runSatOrModel(o, true);
    if (*cGamma) return runGamma(o, gammaN, gammaH);
    if (*cEnc) return runEncode3Sat(o);
    if (*cRules) return runValidateRules(o);
    return kExitUsage;
  } catch (const ParseError& pe) {
    std::cerr << inputName(o.dimacs.empty() ? o.input : o.dimacs) << ": " << pe.what()
              << "\n";
    return kExitUsage;
  } catch (const UsageError& ue) {
    std::cerr << "error: " << ue.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ia) {
    std::cerr << "error: " << ia.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& le) {
    std::cerr << "internal error: " << le.what() << "\n";
    return kExitInternal;
  } catch (const std::runtime_error& re) {
    std::cerr << "error: " << re.what() << "\n";
    return kExitUsage;
  }
}
