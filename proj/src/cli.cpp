#include "n4ck/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "n4ck/kripke.hpp"
#include "n4ck/proofs.hpp"
#include "n4ck/search.hpp"
#include "n4ck/semantics.hpp"
#include "n4ck/translate.hpp"

namespace n4ck {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<Formula> parseList(const std::string& text, LanguageId lang) {
  std::vector<Formula> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); i++) {
    if (i == text.size() || text[i] == ';') {
      std::string part = text.substr(start, i - start);
      std::size_t a = part.find_first_not_of(" \t");
      if (a != std::string::npos) out.push_back(parse(part, lang));
      start = i + 1;
    }
  }
  return out;
}

std::string worldListStr(WorldSet s) {
  std::string out = "[";
  bool first = true;
  for (WorldId w : setToList(s)) {
    if (!first) out += ", ";
    out += std::to_string(w);
    first = false;
  }
  return out + "]";
}

struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cmdParse(const std::string& formula, const std::string& lang, bool pretty,
             std::ostream& out) {
  auto langId = languageFromName(lang);
  if (!langId) throw CommandError("unknown language " + lang);
  Formula f = parse(formula, *langId);
  out << (pretty ? printUnicode(f) : print(f)) << "\n";
  return 0;
}

int cmdEval(const std::string& modelPath, int world, const std::string& formula,
            const std::string& sign, const std::string& format, std::ostream& out) {
  AnyModel m = readModel(slurp(modelPath));
  bool result = false;
  Sign s = sign == "minus" ? Sign::Minus : Sign::Plus;
  switch (m.kind) {
    case ModelKind::Nel:
      result = evalN4(m.nel, world, parse(formula, LanguageId::L), s);
      break;
    case ModelKind::CNel:
      result = evalN4CK(m.cnel, world, parse(formula, LanguageId::LBoxto), s);
      break;
    case ModelKind::CInt:
      result = evalIntCK(m.cint, world, parse(formula, LanguageId::LeBoxtoDiamto));
      break;
    case ModelKind::MNel:
      result = evalModal(m.modal, world, parse(formula, LanguageId::LBox), s);
      break;
    case ModelKind::MInt:
      result = evalModalInt(m.modal, world, parse(formula, LanguageId::LeBoxDiamond));
      break;
  }
  if (format == "json")
    out << "{\"result\": " << (result ? "true" : "false") << "}\n";
  else
    out << (result ? "true" : "false") << "\n";
  return 0;
}

int cmdTruthset(const std::string& modelPath, const std::string& formula,
                const std::string& format, std::ostream& out) {
  AnyModel m = readModel(slurp(modelPath));
  BiSet ts;
  bool twoSigned = true;
  switch (m.kind) {
    case ModelKind::Nel:
      ts = truthSetN4(m.nel, parse(formula, LanguageId::L));
      break;
    case ModelKind::CNel:
      ts = truthSet(m.cnel, parse(formula, LanguageId::LBoxto));
      break;
    case ModelKind::CInt:
      ts.plus = truthSetIntCK(m.cint, parse(formula, LanguageId::LeBoxtoDiamto));
      twoSigned = false;
      break;
    case ModelKind::MNel:
      ts = truthSetModal(m.modal, parse(formula, LanguageId::LBox));
      break;
    case ModelKind::MInt:
      ts.plus = truthSetModalInt(m.modal, parse(formula, LanguageId::LeBoxDiamond));
      twoSigned = false;
      break;
  }
  if (format == "json") {
    out << "{\"plus\": " << worldListStr(ts.plus);
    if (twoSigned) out << ", \"minus\": " << worldListStr(ts.minus);
    out << "}\n";
  } else {
    out << "plus: " << worldListStr(ts.plus) << "\n";
    if (twoSigned) out << "minus: " << worldListStr(ts.minus) << "\n";
  }
  return 0;
}

int cmdCheckModel(const std::string& modelPath, std::ostream& out) {
  AnyModel m = readModel(slurp(modelPath));
  std::vector<Violation> violations;
  switch (m.kind) {
    case ModelKind::Nel: violations = validate(m.nel); break;
    case ModelKind::CNel: violations = validate(m.cnel); break;
    case ModelKind::CInt: violations = validate(m.cint); break;
    case ModelKind::MNel:
    case ModelKind::MInt: violations = validate(m.modal); break;
  }
  if (violations.empty()) {
    out << "OK\n";
    return 0;
  }
  for (const auto& v : violations) out << v.condition << ": " << v.witness << "\n";
  return 1;
}

int cmdCheckProof(const std::string& path, std::ostream& out) {
  Script s = parseScript(slurp(path));
  if (auto e = checkDerivation(s.derivation)) {
    out << "step " << (e->step + 1) << " [" << e->code << "] " << e->message << "\n";
    return 1;
  }
  out << "OK\n";
  return 0;
}

int cmdDecideN4(const std::string& formula, const std::vector<std::string>& premises,
                std::ostream& out) {
  std::vector<Formula> gamma;
  for (const auto& p : premises) gamma.push_back(parse(p, LanguageId::L));
  Verdict v = decideN4(gamma, parse(formula, LanguageId::L));
  if (v.valid) {
    out << "valid\n";
    return 0;
  }
  out << "refuted at world " << v.world << "\n" << writeModel(v.model);
  return 1;
}

int cmdCountermodel(const std::string& logic, const std::string& gammaText,
                    const std::string& deltaText, int maxWorlds, bool exhaustive, int trials,
                    std::uint64_t seed, const std::string& outPath, std::ostream& out) {
  SearchLogic sl;
  LanguageId lang;
  if (logic == "n4ck") {
    sl = SearchLogic::N4CK;
    lang = LanguageId::LBoxto;
  } else if (logic == "n4") {
    sl = SearchLogic::N4;
    lang = LanguageId::L;
  } else if (logic == "fskd") {
    sl = SearchLogic::FSKd;
    lang = LanguageId::LBox;
  } else {
    throw CommandError("unknown logic " + logic);
  }
  SearchBudget budget;
  budget.maxWorlds = maxWorlds;
  budget.exhaustive = exhaustive;
  budget.trials = trials;
  budget.seed = seed;
  SearchOutcome outcome =
      findCountermodel(sl, parseList(gammaText, lang), parseList(deltaText, lang), budget);
  if (!outcome.found()) {
    out << "exhausted (max-worlds " << maxWorlds << ", "
        << (exhaustive ? "exhaustive" : "trials " + std::to_string(trials)) << ", "
        << outcome.modelsTried << " models tried); not a validity proof\n";
    return 0;
  }
  const Certificate& c = *outcome.certificate;
  std::string model;
  if (std::holds_alternative<CondNelsonianModel>(c.model))
    model = writeModel(std::get<CondNelsonianModel>(c.model));
  else if (std::holds_alternative<NelsonianModel>(c.model))
    model = writeModel(std::get<NelsonianModel>(c.model));
  else
    model = writeModel(std::get<ModalModel>(c.model));
  out << "found at world " << c.world << "\n";
  if (outPath.empty())
    out << model;
  else
    spit(outPath, model);
  return 1;
}

int cmdTranslate(const std::string& mapSpec, const std::string& formula, std::ostream& out) {
  std::string name = mapSpec;
  Formula anchor;
  if (auto colon = mapSpec.find(':'); colon != std::string::npos) {
    name = mapSpec.substr(0, colon);
    anchor = parse(mapSpec.substr(colon + 1), LanguageId::LBoxto);
  }
  auto id = mappingFromName(name);
  if (!id) throw CommandError("unknown mapping " + name);
  Mapping m{*id, anchor};
  Formula f = parse(formula, mappingSourceLanguage(*id));
  out << print(applyMapping(m, f)) << "\n";
  return 0;
}

int cmdTranslateProof(const std::string& direction, const std::string& anchorText,
                      const std::string& path, const std::string& outPath, std::ostream& out) {
  Script s = parseScript(slurp(path));
  Derivation translated;
  if (direction == "to-n4ck") {
    Formula anchor = parse(anchorText.empty() ? "p0" : anchorText, LanguageId::LBoxto);
    translated = translateProofToN4CK(s.derivation, anchor);
  } else if (direction == "to-fskd") {
    translated = translateProofToFSKd(s.derivation);
  } else {
    throw CommandError("unknown direction " + direction);
  }
  if (auto e = checkDerivation(translated)) {
    out << "translated derivation fails at step " << (e->step + 1) << " [" << e->code << "] "
        << e->message << "\n";
    return 1;
  }
  Script ts;
  ts.id = s.id.empty() ? "translated" : s.id + "-translated";
  ts.derivation = translated;
  std::string text = writeScript(ts);
  if (outPath.empty())
    out << text;
  else
    spit(outPath, text);
  return 0;
}

int cmdTransformModel(const std::string& modelPath, const std::string& to,
                      const std::string& outPath, std::ostream& out) {
  AnyModel m = readModel(slurp(modelPath));
  std::string text;
  if (to == "int") {
    if (m.kind != ModelKind::CNel) throw CommandError("--to-int needs a cnel model");
    text = writeModel(toCondInt(m.cnel));
  } else if (to == "n4") {
    if (m.kind != ModelKind::CInt) throw CommandError("--to-n4 needs a cint model");
    text = writeModel(toCondNelson(m.cint));
  } else if (to == "nelson-to-int") {
    if (m.kind != ModelKind::MNel) throw CommandError("relabel needs an mnel model");
    text = writeModel(relabelModal(m.modal, RelabelDirection::NelsonToInt));
  } else if (to == "int-to-nelson") {
    if (m.kind != ModelKind::MInt) throw CommandError("relabel needs an mint model");
    text = writeModel(relabelModal(m.modal, RelabelDirection::IntToNelson));
  } else {
    throw CommandError("unknown transformation " + to);
  }
  if (outPath.empty())
    out << text;
  else
    spit(outPath, text);
  return 0;
}

int cmdScriptsRunAll(std::ostream& out) {
  bool allOk = true;
  for (const Script& s : scriptCorpus().all()) {
    auto e = checkDerivation(s.derivation);
    out << s.id << ": " << (e ? "FAIL " + e->message : "ok") << "\n";
    if (e) allOk = false;
  }
  return allOk ? 0 : 1;
}

int cmdScriptsDump(const std::string& dir, std::ostream& out) {
  for (const Script& s : scriptCorpus().all()) {
    spit(dir + "/" + s.id + ".prf", writeScript(s));
    out << s.id << ".prf\n";
  }
  return 0;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"n4ck: a workbench for the paraconsistent conditional logic N4CK"};
  app.require_subcommand(1);

  std::string formula, lang = "lboxto", modelPath, sign = "plus", format = "text";
  std::string gammaText, deltaText, logic = "n4ck", path, outPath, mapSpec, direction, anchor;
  std::string transformTo, dumpDir;
  std::vector<std::string> premises;
  int world = 0, maxWorlds = 3, trials = 0;
  std::uint64_t seed = 0;
  bool pretty = false, exhaustive = false;

  auto* parseCmd = app.add_subcommand("parse", "parse a formula and print it canonically");
  parseCmd->add_option("--formula", formula)->required();
  parseCmd->add_option("--lang", lang, "l|lboxto|leboxtodiamto|lbox|lboxdiamond|leboxdiamond|leplus");
  parseCmd->add_flag("--pretty", pretty, "pretty-print with unicode connectives");

  auto* evalCmd = app.add_subcommand("eval", "evaluate a formula at a world of a model");
  evalCmd->add_option("--model", modelPath)->required();
  evalCmd->add_option("--world", world)->required();
  evalCmd->add_option("--formula", formula)->required();
  evalCmd->add_option("--sign", sign, "plus|minus");
  evalCmd->add_option("--format", format, "text|json");

  auto* tsCmd = app.add_subcommand("truthset", "print the truth set of a formula");
  tsCmd->add_option("--model", modelPath)->required();
  tsCmd->add_option("--formula", formula)->required();
  tsCmd->add_option("--format", format, "text|json");

  auto* cmCmd = app.add_subcommand("check-model", "validate the frame conditions of a model file");
  cmCmd->add_option("file", modelPath)->required();

  auto* cpCmd = app.add_subcommand("check-proof", "check a proof-script file");
  cpCmd->add_option("file", path)->required();

  auto* dnCmd = app.add_subcommand("decide-n4", "decide an N4 consequence");
  dnCmd->add_option("--formula", formula)->required();
  dnCmd->add_option("--premise", premises);

  auto* koCmd = app.add_subcommand("countermodel", "bounded countermodel search");
  koCmd->add_option("--logic", logic, "n4ck|n4|fskd");
  koCmd->add_option("--gamma", gammaText, "semicolon-separated premises");
  koCmd->add_option("--delta", deltaText, "semicolon-separated refutands");
  koCmd->add_option("--max-worlds", maxWorlds);
  koCmd->add_flag("--exhaustive", exhaustive);
  koCmd->add_option("--trials", trials);
  koCmd->add_option("--seed", seed);
  koCmd->add_option("--out", outPath, "write the certificate model here");

  auto* trCmd = app.add_subcommand("translate", "apply a translation mapping");
  trCmd->add_option("--map", mapSpec, "e|epm|emp|eplus|eminus|em|tri:<F>|tr:<F>|trbar")->required();
  trCmd->add_option("--formula", formula)->required();

  auto* tpCmd = app.add_subcommand("translate-proof", "translate a proof script between FSKd and N4CK");
  tpCmd->add_option("--direction", direction, "to-n4ck|to-fskd")->required();
  tpCmd->add_option("--anchor", anchor, "anchor formula for to-n4ck (default p0)");
  tpCmd->add_option("--script", path)->required();
  tpCmd->add_option("--out", outPath);

  auto* tmCmd = app.add_subcommand("transform-model", "apply a model construction");
  tmCmd->add_option("--model", modelPath)->required();
  tmCmd->add_option("--to", transformTo, "int|n4|nelson-to-int|int-to-nelson")->required();
  tmCmd->add_option("--out", outPath);

  app.add_subcommand("scripts-run-all", "check the whole bundled proof corpus");

  auto* sdCmd = app.add_subcommand("scripts-dump", "write the bundled corpus as .prf files");
  sdCmd->add_option("--dir", dumpDir)->required();

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (parseCmd->parsed()) return cmdParse(formula, lang, pretty, out);
    if (evalCmd->parsed()) return cmdEval(modelPath, world, formula, sign, format, out);
    if (tsCmd->parsed()) return cmdTruthset(modelPath, formula, format, out);
    if (cmCmd->parsed()) return cmdCheckModel(modelPath, out);
    if (cpCmd->parsed()) return cmdCheckProof(path, out);
    if (dnCmd->parsed()) return cmdDecideN4(formula, premises, out);
    if (koCmd->parsed())
      return cmdCountermodel(logic, gammaText, deltaText, maxWorlds, exhaustive || trials == 0,
                             trials, seed, outPath, out);
    if (trCmd->parsed()) return cmdTranslate(mapSpec, formula, out);
    if (tpCmd->parsed()) return cmdTranslateProof(direction, anchor, path, outPath, out);
    if (tmCmd->parsed()) return cmdTransformModel(modelPath, transformTo, outPath, out);
    if (app.get_subcommand("scripts-run-all")->parsed()) return cmdScriptsRunAll(out);
    if (sdCmd->parsed()) return cmdScriptsDump(dumpDir, out);
  } catch (const ParseError& e) {
    out << "parse error at " << e.position << ": " << e.what() << "\n";
    return 1;
  } catch (const CommandError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace n4ck
