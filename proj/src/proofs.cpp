#include "n4ck/proofs.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "n4ck/search.hpp"
#include "n4ck/semantics.hpp"

namespace n4ck {

// ---------------------------------------------------------------------------
// Schema registry
// ---------------------------------------------------------------------------

namespace {

Schema sphi() { return Schema::meta("phi"); }
Schema spsi() { return Schema::meta("psi"); }
Schema schi() { return Schema::meta("chi"); }

Schema buildSchema(SchemaId id) {
  using S = Schema;
  const S p = sphi(), q = spsi(), c = schi();
  switch (id) {
    case SchemaId::Alpha1: return S::imp(p, S::imp(q, p));
    case SchemaId::Alpha2:
      return S::imp(S::imp(p, S::imp(q, c)), S::imp(S::imp(p, q), S::imp(p, c)));
    case SchemaId::Alpha3: return S::imp(S::conj(p, q), p);
    case SchemaId::Alpha4: return S::imp(S::conj(p, q), q);
    case SchemaId::Alpha5: return S::imp(p, S::imp(q, S::conj(p, q)));
    case SchemaId::Alpha6: return S::imp(p, S::disj(p, q));
    case SchemaId::Alpha7: return S::imp(q, S::disj(p, q));
    case SchemaId::Alpha8:
      return S::imp(S::imp(p, c), S::imp(S::imp(q, c), S::imp(S::disj(p, q), c)));
    case SchemaId::An1: return S::iff(S::neg(S::neg(p)), p);
    case SchemaId::An2: return S::iff(S::neg(S::conj(p, q)), S::disj(S::neg(p), S::neg(q)));
    case SchemaId::An3: return S::iff(S::neg(S::disj(p, q)), S::conj(S::neg(p), S::neg(q)));
    case SchemaId::An4: return S::iff(S::neg(S::imp(p, q)), S::conj(p, S::neg(q)));
    case SchemaId::An5: return S::imp(S::imp(p, q), S::imp(S::imp(p, S::neg(q)), S::neg(p)));
    case SchemaId::An6: return S::imp(p, S::imp(S::neg(p), q));
    case SchemaId::An7: return S::disj(p, S::neg(p));
    case SchemaId::A1:
      return S::strongIff(S::conj(S::boxto(p, q), S::boxto(p, c)), S::boxto(p, S::conj(q, c)));
    case SchemaId::A2:
      return S::imp(S::conj(S::neg(S::boxto(p, q)), S::boxto(p, c)),
                    S::neg(S::boxto(p, S::disj(q, S::neg(c)))));
    case SchemaId::A3:
      // ((phi <>-> psi) -> (phi []-> chi)) -> (phi []-> (psi -> chi)),
      // the might-conditional unfolded.
      return S::imp(S::imp(S::neg(S::boxto(p, S::neg(q))), S::boxto(p, c)),
                    S::boxto(p, S::imp(q, c)));
    case SchemaId::A4: return S::boxto(p, S::imp(q, q));
    case SchemaId::Ma1:
      return S::imp(S::conj(S::box(p), S::box(q)), S::box(S::conj(p, q)));
    case SchemaId::Ma2: return S::box(S::imp(p, p));
    case SchemaId::Ma3:
      // <>(phi \/ psi) -> (<>phi \/ <>psi), with <> short for ~[]~
      return S::imp(S::neg(S::box(S::neg(S::disj(p, q)))),
                    S::disj(S::neg(S::box(S::neg(p))), S::neg(S::box(S::neg(q)))));
    case SchemaId::Ma4:
      return S::imp(S::neg(S::box(S::neg(S::imp(p, q)))),
                    S::imp(S::box(p), S::neg(S::box(S::neg(q)))));
    case SchemaId::Ma5:
      return S::imp(S::imp(S::neg(S::box(S::neg(p))), S::box(q)), S::box(S::imp(p, q)));
    case SchemaId::Ma6:
      return S::iff(S::neg(S::box(p)), S::neg(S::box(S::neg(S::neg(p)))));
  }
  throw std::logic_error("bad SchemaId");
}

}  // namespace

const Schema& schemaOf(SchemaId id) {
  static std::map<SchemaId, Schema> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, buildSchema(id)).first;
  return it->second;
}

std::string schemaName(SchemaId id) {
  switch (id) {
    case SchemaId::Alpha1: return "alpha1";
    case SchemaId::Alpha2: return "alpha2";
    case SchemaId::Alpha3: return "alpha3";
    case SchemaId::Alpha4: return "alpha4";
    case SchemaId::Alpha5: return "alpha5";
    case SchemaId::Alpha6: return "alpha6";
    case SchemaId::Alpha7: return "alpha7";
    case SchemaId::Alpha8: return "alpha8";
    case SchemaId::An1: return "an1";
    case SchemaId::An2: return "an2";
    case SchemaId::An3: return "an3";
    case SchemaId::An4: return "an4";
    case SchemaId::An5: return "an5";
    case SchemaId::An6: return "an6";
    case SchemaId::An7: return "an7";
    case SchemaId::A1: return "A1";
    case SchemaId::A2: return "A2";
    case SchemaId::A3: return "A3";
    case SchemaId::A4: return "A4";
    case SchemaId::Ma1: return "a1";
    case SchemaId::Ma2: return "a2";
    case SchemaId::Ma3: return "a3";
    case SchemaId::Ma4: return "a4";
    case SchemaId::Ma5: return "a5";
    case SchemaId::Ma6: return "a6";
  }
  return "?";
}

std::optional<SchemaId> schemaFromName(const std::string& name) {
  static const std::vector<SchemaId> all = {
      SchemaId::Alpha1, SchemaId::Alpha2, SchemaId::Alpha3, SchemaId::Alpha4,
      SchemaId::Alpha5, SchemaId::Alpha6, SchemaId::Alpha7, SchemaId::Alpha8,
      SchemaId::An1, SchemaId::An2, SchemaId::An3, SchemaId::An4, SchemaId::An5,
      SchemaId::An6, SchemaId::An7, SchemaId::A1, SchemaId::A2, SchemaId::A3,
      SchemaId::A4, SchemaId::Ma1, SchemaId::Ma2, SchemaId::Ma3, SchemaId::Ma4,
      SchemaId::Ma5, SchemaId::Ma6};
  for (SchemaId id : all)
    if (schemaName(id) == name) return id;
  return std::nullopt;
}

std::string ruleName(RuleId id) {
  switch (id) {
    case RuleId::MP: return "mp";
    case RuleId::RAbox: return "rabox";
    case RuleId::RCbox1: return "rcbox1";
    case RuleId::RCbox2: return "rcbox2";
    case RuleId::RAprimeBox: return "raprimebox";
    case RuleId::RmBox: return "rmbox";
    case RuleId::RmDiam: return "rmdiam";
  }
  return "?";
}

std::optional<RuleId> ruleFromName(const std::string& name) {
  for (RuleId id : {RuleId::MP, RuleId::RAbox, RuleId::RCbox1, RuleId::RCbox2,
                    RuleId::RAprimeBox, RuleId::RmBox, RuleId::RmDiam})
    if (ruleName(id) == name) return id;
  return std::nullopt;
}

std::string systemName(SystemId id) {
  switch (id) {
    case SystemId::ILplus: return "ILplus";
    case SystemId::N4: return "N4";
    case SystemId::IL: return "IL";
    case SystemId::CL: return "CL";
    case SystemId::N4CK: return "N4CK";
    case SystemId::N4CKprime: return "N4CKprime";
    case SystemId::CK: return "CK";
    case SystemId::FSKd: return "FSKd";
  }
  return "?";
}

std::optional<SystemId> systemFromName(const std::string& name) {
  for (SystemId id : {SystemId::ILplus, SystemId::N4, SystemId::IL, SystemId::CL,
                      SystemId::N4CK, SystemId::N4CKprime, SystemId::CK, SystemId::FSKd})
    if (systemName(id) == name) return id;
  return std::nullopt;
}

const SystemInfo& systemInfo(SystemId id) {
  static const std::vector<SchemaId> ilPlus = {
      SchemaId::Alpha1, SchemaId::Alpha2, SchemaId::Alpha3, SchemaId::Alpha4,
      SchemaId::Alpha5, SchemaId::Alpha6, SchemaId::Alpha7, SchemaId::Alpha8};
  auto plus = [](std::vector<SchemaId> base, std::vector<SchemaId> more) {
    base.insert(base.end(), more.begin(), more.end());
    return base;
  };
  static const std::map<SystemId, SystemInfo> registry = [&] {
    std::map<SystemId, SystemInfo> r;
    r[SystemId::ILplus] = {SystemId::ILplus, "ILplus", ilPlus, {RuleId::MP},
                           LanguageId::LePlus, false, true, false};
    r[SystemId::N4] = {SystemId::N4, "N4",
                       plus(ilPlus, {SchemaId::An1, SchemaId::An2, SchemaId::An3, SchemaId::An4}),
                       {RuleId::MP}, LanguageId::L, false, true, false};
    r[SystemId::IL] = {SystemId::IL, "IL", plus(ilPlus, {SchemaId::An5, SchemaId::An6}),
                       {RuleId::MP}, LanguageId::L, true, false, false};
    r[SystemId::CL] = {SystemId::CL, "CL",
                       plus(ilPlus, {SchemaId::An5, SchemaId::An6, SchemaId::An7}),
                       {RuleId::MP}, LanguageId::L, true, true, true};
    r[SystemId::N4CK] = {SystemId::N4CK, "N4CK",
                         plus(ilPlus, {SchemaId::An1, SchemaId::An2, SchemaId::An3, SchemaId::An4,
                                       SchemaId::A1, SchemaId::A2, SchemaId::A3, SchemaId::A4}),
                         {RuleId::MP, RuleId::RAbox, RuleId::RCbox1, RuleId::RCbox2},
                         LanguageId::LBoxto, false, true, false};
    r[SystemId::N4CKprime] = {SystemId::N4CKprime, "N4CKprime",
                              r[SystemId::N4CK].axioms,
                              {RuleId::MP, RuleId::RAbox, RuleId::RCbox1, RuleId::RCbox2,
                               RuleId::RAprimeBox},
                              LanguageId::LBoxto, false, true, false};
    r[SystemId::CK] = {SystemId::CK, "CK",
                       plus(ilPlus, {SchemaId::An5, SchemaId::An6, SchemaId::An7, SchemaId::A1,
                                     SchemaId::A4}),
                       {RuleId::MP, RuleId::RAbox, RuleId::RCbox1},
                       LanguageId::LBoxto, true, true, true};
    r[SystemId::FSKd] = {SystemId::FSKd, "FSKd",
                         plus(ilPlus, {SchemaId::An1, SchemaId::An2, SchemaId::An3, SchemaId::An4,
                                       SchemaId::Ma1, SchemaId::Ma2, SchemaId::Ma3, SchemaId::Ma4,
                                       SchemaId::Ma5, SchemaId::Ma6}),
                         {RuleId::MP, RuleId::RmBox, RuleId::RmDiam},
                         LanguageId::LBox, false, true, false};
    return r;
  }();
  return registry.at(id);
}

// ---------------------------------------------------------------------------
// Justifications
// ---------------------------------------------------------------------------

Justification Justification::axiom(SchemaId s, Substitution sigma) {
  Justification j;
  j.kind = Kind::Axiom;
  j.schema = s;
  j.subst = std::move(sigma);
  return j;
}

Justification Justification::prem(int index) {
  Justification j;
  j.kind = Kind::Premise;
  j.premise = index;
  return j;
}

Justification Justification::byRule(RuleId r, std::vector<int> refs) {
  Justification j;
  j.kind = Kind::Rule;
  j.rule = r;
  j.refs = std::move(refs);
  return j;
}

Justification Justification::n4(std::vector<int> refs) {
  Justification j;
  j.kind = Kind::N4Step;
  j.refs = std::move(refs);
  return j;
}

Justification Justification::citation(const std::string& scriptId, Substitution sigma) {
  Justification j;
  j.kind = Kind::Cite;
  j.cite = scriptId;
  j.subst = std::move(sigma);
  return j;
}

// ---------------------------------------------------------------------------
// Derivation checking
// ---------------------------------------------------------------------------

namespace {

bool classicallyValid(const std::vector<Formula>& premises, const Formula& goal) {
  std::vector<Formula> all = premises;
  all.push_back(goal);
  std::vector<Atom> atoms = atomsOf(all);
  if (atoms.size() > 20) return false;
  std::map<Atom, bool> assignment;
  std::function<bool(const Formula&)> ev = [&](const Formula& f) -> bool {
    switch (f.conn()) {
      case Conn::Atom: return assignment[f.atomValue()];
      case Conn::Neg: return !ev(f.left());
      case Conn::And: return ev(f.left()) && ev(f.right());
      case Conn::Or: return ev(f.left()) || ev(f.right());
      case Conn::Imp: return !ev(f.left()) || ev(f.right());
      default: throw IllFormed("classical check: non-propositional connective");
    }
  };
  const std::uint64_t total = std::uint64_t{1} << atoms.size();
  for (std::uint64_t mask = 0; mask < total; mask++) {
    for (std::size_t i = 0; i < atoms.size(); i++) assignment[atoms[i]] = (mask >> i) & 1;
    bool all_true = true;
    for (const auto& p : premises)
      if (!ev(p)) {
        all_true = false;
        break;
      }
    if (all_true && !ev(goal)) return false;
  }
  return true;
}

// One-premise rule shapes: conclusion pattern plus the premise pattern over
// the same metavariables.
struct RulePattern {
  Schema conclusion;
  Schema premise;
};

const RulePattern& rulePattern(RuleId r) {
  using S = Schema;
  static const std::map<RuleId, RulePattern> table = [] {
    std::map<RuleId, RulePattern> t;
    const S a = S::meta("a"), b = S::meta("b"), c = S::meta("c");
    t[RuleId::RAbox] = {S::strongIff(S::boxto(a, c), S::boxto(b, c)), S::strongIff(a, b)};
    t[RuleId::RCbox1] = {S::iff(S::boxto(c, a), S::boxto(c, b)), S::iff(a, b)};
    t[RuleId::RCbox2] = {S::iff(S::neg(S::boxto(c, a)), S::neg(S::boxto(c, b))),
                         S::iff(S::neg(a), S::neg(b))};
    t[RuleId::RAprimeBox] = {S::strongIff(S::boxto(a, c), S::boxto(b, c)), S::iff(a, b)};
    t[RuleId::RmBox] = {S::imp(S::box(a), S::box(b)), S::imp(a, b)};
    t[RuleId::RmDiam] = {S::imp(S::neg(S::box(S::neg(a))), S::neg(S::box(S::neg(b)))),
                         S::imp(a, b)};
    return t;
  }();
  return table.at(r);
}

Goal normalizeGoal(const Goal& g) {
  Goal out = g;
  if (out.formula) out.formula = expandSugar(out.formula);
  for (auto& f : out.delta) f = expandSugar(f);
  return out;
}

Formula rightNestedDisjunction(const std::vector<Formula>& fs) {
  Formula out = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = Formula::disj(fs[i], out);
  return out;
}

}  // namespace

std::optional<StepError> checkDerivation(const Derivation& d) {
  return checkDerivation(d, scriptCorpus());
}

std::optional<StepError> checkDerivation(const Derivation& d, const ScriptRegistry& registry) {
  const SystemInfo& sys = systemInfo(d.system);
  auto err = [](int step, std::string code, std::string msg) {
    return StepError{step, std::move(code), std::move(msg)};
  };

  std::vector<Formula> premises;
  for (const auto& p : d.premises) premises.push_back(expandSugar(p));
  std::vector<Formula> formulas;
  for (const auto& [f, j] : d.steps) formulas.push_back(expandSugar(f));
  Goal goal = normalizeGoal(d.goal);

  if (d.steps.empty()) return err(-1, "GoalMismatch", "empty derivation");
  if (d.mode == DerivationMode::Theorem && !d.premises.empty())
    return err(-1, "ModeViolation", "theorem mode admits no premises");

  for (std::size_t i = 0; i < premises.size(); i++)
    if (auto bad = wellFormedIn(premises[i], sys.lang))
      return err(-1, "IllFormed", "premise " + std::to_string(i) + ": " + *bad);

  for (std::size_t i = 0; i < d.steps.size(); i++) {
    const Formula& f = formulas[i];
    const Justification& j = d.steps[i].second;
    const int step = static_cast<int>(i);

    if (auto bad = wellFormedIn(f, sys.lang)) return err(step, "IllFormed", *bad);

    for (int r : j.refs)
      if (r < 0 || r >= step) return err(step, "BadRef", "reference " + std::to_string(r));

    switch (j.kind) {
      case Justification::Kind::Axiom: {
        if (std::find(sys.axioms.begin(), sys.axioms.end(), j.schema) == sys.axioms.end())
          return err(step, "SchemaMismatch",
                     schemaName(j.schema) + " is not an axiom of " + sys.name);
        Formula instance;
        try {
          instance = expandSugar(applySubst(schemaOf(j.schema), j.subst));
        } catch (const MissingBinding& e) {
          return err(step, "SchemaMismatch", e.what());
        }
        if (instance != f)
          return err(step, "SchemaMismatch",
                     "instance of " + schemaName(j.schema) + " is " + print(instance));
        break;
      }
      case Justification::Kind::Premise: {
        if (d.mode == DerivationMode::Theorem)
          return err(step, "ModeViolation", "premise step in theorem mode");
        if (j.premise < 0 || j.premise >= static_cast<int>(premises.size()))
          return err(step, "BadRef", "premise index " + std::to_string(j.premise));
        if (premises[j.premise] != f)
          return err(step, "SchemaMismatch", "step does not match premise");
        break;
      }
      case Justification::Kind::Rule: {
        if (std::find(sys.rules.begin(), sys.rules.end(), j.rule) == sys.rules.end())
          return err(step, "RuleShapeError", ruleName(j.rule) + " is not a rule of " + sys.name);
        if (d.mode == DerivationMode::Consequence && j.rule != RuleId::MP)
          return err(step, "ModeViolation",
                     "consequence mode admits only modus ponens applications");
        if (j.rule == RuleId::MP) {
          if (j.refs.size() != 2) return err(step, "RuleShapeError", "mp needs two references");
          const Formula& minor = formulas[j.refs[0]];
          const Formula& major = formulas[j.refs[1]];
          if (major.conn() != Conn::Imp || major.left() != minor || major.right() != f)
            return err(step, "RuleShapeError", "not a modus ponens instance");
        } else {
          if (j.refs.size() != 1)
            return err(step, "RuleShapeError", ruleName(j.rule) + " needs one reference");
          const RulePattern& pat = rulePattern(j.rule);
          auto sigma = matchSchema(pat.conclusion, f);
          if (!sigma) return err(step, "RuleShapeError", "conclusion shape mismatch");
          if (applySubst(pat.premise, *sigma) != formulas[j.refs[0]])
            return err(step, "RuleShapeError", "premise shape mismatch");
        }
        break;
      }
      case Justification::Kind::N4Step: {
        if (!sys.n4Steps)
          return err(step, "ModeViolation", "N4 steps are not licensed in " + sys.name);
        std::vector<Formula> cited;
        for (int r : j.refs) cited.push_back(formulas[r]);
        std::vector<Formula> all = cited;
        all.push_back(f);
        auto [abstracted, table] = abstractConditionals(all);
        Formula goalAbs = abstracted.back();
        abstracted.pop_back();
        Verdict v = decideN4(abstracted, goalAbs);
        if (v.refuted() && !(sys.classicalSteps && classicallyValid(abstracted, goalAbs)))
          return err(step, "N4StepRefuted",
                     "not an N4 consequence: " + print(goalAbs) + " refuted at world " +
                         std::to_string(v.world));
        break;
      }
      case Justification::Kind::Cite: {
        const Script* s = registry.find(j.cite);
        if (!s) return err(step, "CiteError", "unknown script " + j.cite);
        if (s->derivation.mode != DerivationMode::Theorem)
          return err(step, "CiteError", "cited script " + j.cite + " is not a theorem");
        if (s->derivation.system != d.system)
          return err(step, "CiteError", "cited script " + j.cite + " lives in another system");
        std::map<Atom, Formula> sigma;
        for (const Atom& a : s->vars) {
          auto it = j.subst.find(atomName(a));
          if (it != j.subst.end()) sigma[a] = it->second;
        }
        Formula instance = expandSugar(substAtoms(s->derivation.goal.formula, sigma));
        if (instance != f)
          return err(step, "CiteError", "instance of " + j.cite + " is " + print(instance));
        break;
      }
    }
  }

  const Formula& last = formulas.back();
  switch (goal.kind) {
    case Goal::Kind::SingleFormula:
      if (expandSugar(goal.formula) != last)
        return err(static_cast<int>(d.steps.size()) - 1, "GoalMismatch",
                   "last step is not the goal");
      break;
    case Goal::Kind::DeltaDisjunction: {
      if (d.mode != DerivationMode::Consequence)
        return err(-1, "GoalMismatch", "delta goals belong to consequence mode");
      if (goal.delta.empty()) return err(-1, "GoalMismatch", "empty delta");
      if (rightNestedDisjunction(goal.delta) != last)
        return err(static_cast<int>(d.steps.size()) - 1, "GoalMismatch",
                   "last step is not the right-nested delta disjunction");
      break;
    }
    case Goal::Kind::Absurdity: {
      if (!sys.iotaClosed)
        return err(-1, "GoalMismatch", "absurdity goal needs an iota-closed system");
      if (d.mode != DerivationMode::Consequence)
        return err(-1, "GoalMismatch", "absurdity goal belongs to consequence mode");
      Formula bot = Formula::conj(Formula::plain(1), Formula::neg(Formula::plain(1)));
      if (last != bot)
        return err(static_cast<int>(d.steps.size()) - 1, "GoalMismatch",
                   "last step is not p1 /\\ ~p1");
      break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Builder and surgery
// ---------------------------------------------------------------------------

int DerivationBuilder::premise(Formula f) {
  int idx = static_cast<int>(d_.premises.size());
  d_.premises.push_back(f);
  d_.steps.push_back({std::move(f), Justification::prem(idx)});
  return static_cast<int>(d_.steps.size()) - 1;
}

int DerivationBuilder::axiom(SchemaId id, const Substitution& sigma) {
  Formula f = applySubst(schemaOf(id), sigma);
  d_.steps.push_back({std::move(f), Justification::axiom(id, sigma)});
  return static_cast<int>(d_.steps.size()) - 1;
}

int DerivationBuilder::rule(RuleId r, std::vector<int> refs, Formula f) {
  d_.steps.push_back({std::move(f), Justification::byRule(r, std::move(refs))});
  return static_cast<int>(d_.steps.size()) - 1;
}

int DerivationBuilder::n4(std::vector<int> refs, Formula f) {
  d_.steps.push_back({std::move(f), Justification::n4(std::move(refs))});
  return static_cast<int>(d_.steps.size()) - 1;
}

int DerivationBuilder::cite(const std::string& scriptId, const Substitution& sigma, Formula f) {
  d_.steps.push_back({std::move(f), Justification::citation(scriptId, sigma)});
  return static_cast<int>(d_.steps.size()) - 1;
}

int DerivationBuilder::raw(Formula f, Justification j) {
  d_.steps.push_back({std::move(f), std::move(j)});
  return static_cast<int>(d_.steps.size()) - 1;
}

int DerivationBuilder::inlineScript(const Script& s, const std::map<Atom, Formula>& sigma,
                                    const std::vector<int>& premiseRefs) {
  std::map<int, int> remap;
  int last = -1;
  for (std::size_t i = 0; i < s.derivation.steps.size(); i++) {
    const auto& [f, j] = s.derivation.steps[i];
    if (j.kind == Justification::Kind::Premise) {
      remap[static_cast<int>(i)] = premiseRefs.at(static_cast<std::size_t>(j.premise));
      last = remap[static_cast<int>(i)];
      continue;
    }
    Justification nj = j;
    for (int& r : nj.refs) r = remap.at(r);
    if (j.kind == Justification::Kind::Axiom || j.kind == Justification::Kind::Cite) {
      for (auto& [name, val] : nj.subst) val = substAtoms(val, sigma);
    }
    int idx = raw(substAtoms(f, sigma), std::move(nj));
    remap[static_cast<int>(i)] = idx;
    last = idx;
  }
  return last;
}

Derivation DerivationBuilder::finish(Goal goal) {
  d_.goal = std::move(goal);
  return d_;
}

Derivation expandCites(const Derivation& d, const ScriptRegistry& registry) {
  DerivationBuilder b(d.system, d.mode);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < d.steps.size(); i++) {
    const auto& [f, j] = d.steps[i];
    if (j.kind == Justification::Kind::Cite) {
      const Script* s = registry.find(j.cite);
      if (!s) throw std::runtime_error("expandCites: unknown script " + j.cite);
      Derivation body = expandCites(s->derivation, registry);
      Script expanded{s->id, s->vars, body, ""};
      std::map<Atom, Formula> sigma;
      for (const Atom& a : s->vars) {
        auto it = j.subst.find(atomName(a));
        if (it != j.subst.end()) sigma[a] = it->second;
      }
      remap[static_cast<int>(i)] = b.inlineScript(expanded, sigma, {});
      continue;
    }
    Justification nj = j;
    for (int& r : nj.refs) r = remap.at(r);
    remap[static_cast<int>(i)] = b.raw(f, std::move(nj));
  }
  Derivation out = b.finish(d.goal);
  out.premises = d.premises;  // premise indices were kept verbatim
  return out;
}

Derivation addPremiseMP(const Derivation& d) {
  if (d.goal.kind != Goal::Kind::SingleFormula || d.goal.formula.conn() != Conn::Imp)
    throw std::runtime_error("addPremiseMP: goal is not an implication");
  Derivation out = d;
  out.mode = DerivationMode::DerivedRule;
  const Formula ante = d.goal.formula.left();
  const Formula cons = d.goal.formula.right();
  const int implStep = static_cast<int>(out.steps.size()) - 1;
  out.premises.push_back(ante);
  out.steps.push_back({ante, Justification::prem(static_cast<int>(out.premises.size()) - 1)});
  out.steps.push_back(
      {cons, Justification::byRule(RuleId::MP, {implStep + 1, implStep})});
  out.goal = Goal::single(cons);
  return out;
}

Derivation dischargePremise(const Derivation& d, int premiseIndex) {
  const Formula phi = d.premises.at(static_cast<std::size_t>(premiseIndex));
  DerivationBuilder b(d.system,
                      d.premises.size() > 1 ? DerivationMode::DerivedRule : DerivationMode::Theorem);
  std::map<int, int> premap;  // old premise index -> new premise index
  std::map<int, int> remap;   // old step -> new step proving phi -> formula
  for (std::size_t i = 0; i < d.steps.size(); i++) {
    const auto& [f, j] = d.steps[i];
    const Formula target = Formula::imp(phi, f);
    switch (j.kind) {
      case Justification::Kind::Premise: {
        if (j.premise == premiseIndex) {
          remap[static_cast<int>(i)] = b.n4({}, target);  // phi -> phi
          break;
        }
        auto it = premap.find(j.premise);
        int base;
        if (it == premap.end()) {
          base = b.premise(f);
          premap[j.premise] = base;
        } else {
          base = b.raw(f, Justification::prem(it->second));
        }
        remap[static_cast<int>(i)] = b.n4({base}, target);
        break;
      }
      case Justification::Kind::Axiom:
      case Justification::Kind::Cite: {
        int base = b.raw(f, j);
        remap[static_cast<int>(i)] = b.n4({base}, target);
        break;
      }
      case Justification::Kind::N4Step: {
        std::vector<int> refs;
        for (int r : j.refs) refs.push_back(remap.at(r));
        remap[static_cast<int>(i)] = b.n4(refs, target);
        break;
      }
      case Justification::Kind::Rule: {
        if (j.rule != RuleId::MP)
          throw std::runtime_error("dischargePremise: non-MP rule application");
        remap[static_cast<int>(i)] =
            b.n4({remap.at(j.refs[0]), remap.at(j.refs[1])}, target);
        break;
      }
    }
  }
  Formula goal = Formula::imp(phi, d.steps.back().first);
  return b.finish(Goal::single(goal));
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

void ScriptRegistry::add(Script s) {
  if (index_.count(s.id)) throw std::runtime_error("duplicate script id " + s.id);
  if (auto e = checkDerivation(s.derivation, *this)) {
    throw std::runtime_error("script " + s.id + " fails at step " +
                             std::to_string(e->step) + " [" + e->code + "]: " + e->message);
  }
  index_[s.id] = scripts_.size();
  scripts_.push_back(std::move(s));
}

const Script* ScriptRegistry::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &scripts_[it->second];
}

// ---------------------------------------------------------------------------
// Soundness sampling
// ---------------------------------------------------------------------------

namespace {

bool validEverywhere(SystemId system, const CondNelsonianModel& cm, const ModalModel& mm,
                     const Formula& instance, WorldId& badWorld) {
  if (system == SystemId::FSKd) {
    BiSet ts = truthSetModal(mm, instance);
    WorldSet missing = ~ts.plus & fullSet(mm.worldCount);
    if (missing) {
      badWorld = setToList(missing).front();
      return false;
    }
    return true;
  }
  BiSet ts = truthSet(cm, expandSugar(instance));
  WorldSet missing = ~ts.plus & fullSet(cm.worldCount());
  if (missing) {
    badWorld = setToList(missing).front();
    return false;
  }
  return true;
}

}  // namespace

SoundnessReport soundnessSampleSchemas(SystemId system, const std::vector<Schema>& schemas,
                                       int trials, std::uint64_t seed) {
  if (system != SystemId::N4 && system != SystemId::N4CK && system != SystemId::FSKd)
    throw InvalidInput("soundnessSample: no implemented semantics for " + systemName(system));
  const SystemInfo& sys = systemInfo(system);

  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 11);
  SoundnessReport report;

  const std::vector<Atom> atoms = {{false, 0}, {false, 1}, {false, 2}};
  const int poolSize = std::min(200, std::max(20, trials));
  std::vector<CondNelsonianModel> condPool;
  std::vector<ModalModel> modalPool;
  for (int i = 0; i < poolSize; i++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();
    if (system == SystemId::FSKd) {
      modalPool.push_back(sampleModalModel(atoms, b));
    } else if (system == SystemId::N4CK) {
      condPool.push_back(sampleCondModel(atoms, b));
    } else {
      CondNelsonianModel cm;
      cm.base = sampleNelModel(atoms, b);
      condPool.push_back(cm);
    }
  }

  FormulaGen gen;
  gen.atoms = atoms;
  gen.maxDepth = 3;
  gen.allowBoxto = system == SystemId::N4CK;
  gen.allowDiamto = system == SystemId::N4CK;
  gen.allowBox = system == SystemId::FSKd;
  gen.allowDiamond = system == SystemId::FSKd;

  static const CondNelsonianModel emptyCond;
  static const ModalModel emptyModal;

  for (std::size_t si = 0; si < schemas.size(); si++) {
    for (int t = 0; t < trials; t++) {
      Substitution sigma;
      for (const std::string& name : schemas[si].metaNames()) sigma[name] = gen(rng);
      Formula instance = applySubst(schemas[si], sigma);
      const int mi = t % poolSize;
      report.axiomChecks++;
      WorldId bad = 0;
      bool ok = system == SystemId::FSKd
                    ? validEverywhere(system, emptyCond, modalPool[mi], instance, bad)
                    : validEverywhere(system, condPool[mi], emptyModal, instance, bad);
      if (!ok)
        report.axiomFailures.push_back({static_cast<int>(si), instance, mi, bad});
    }
  }

  // Rule preservation: whenever all premise instances are valid on the whole
  // pool, the conclusion instance must be too. Random draws are mostly
  // vacuous, so each rule also gets crafted identical-pair draws.
  auto validOnPool = [&](const Formula& f, int& badModel, WorldId& badWorld) {
    for (int mi = 0; mi < poolSize; mi++) {
      WorldId bad = 0;
      bool ok = system == SystemId::FSKd
                    ? validEverywhere(system, emptyCond, modalPool[mi], f, bad)
                    : validEverywhere(system, condPool[mi], emptyModal, f, bad);
      if (!ok) {
        badModel = mi;
        badWorld = bad;
        return false;
      }
    }
    return true;
  };

  const int ruleTrials = std::max(4, trials / 25);
  for (RuleId rule : sys.rules) {
    for (int t = 0; t < 2 * ruleTrials; t++) {
      const bool crafted = t >= ruleTrials;
      Formula a = gen(rng);
      Formula b = crafted ? a : gen(rng);
      Formula c = gen(rng);
      std::vector<Formula> prem;
      Formula concl;
      switch (rule) {
        case RuleId::MP:
          if (crafted) {
            a = Formula::imp(c, c);
            b = Formula::disj(a, gen(rng));
          }
          prem = {a, Formula::imp(a, b)};
          concl = b;
          break;
        case RuleId::RAbox:
          prem = {makeStrongIff(a, b)};
          concl = makeStrongIff(Formula::boxto(a, c), Formula::boxto(b, c));
          break;
        case RuleId::RCbox1:
          prem = {makeIff(a, b)};
          concl = makeIff(Formula::boxto(c, a), Formula::boxto(c, b));
          break;
        case RuleId::RCbox2:
          prem = {makeIff(Formula::neg(a), Formula::neg(b))};
          concl = makeIff(Formula::neg(Formula::boxto(c, a)), Formula::neg(Formula::boxto(c, b)));
          break;
        case RuleId::RAprimeBox:
          prem = {makeIff(a, b)};
          concl = makeStrongIff(Formula::boxto(a, c), Formula::boxto(b, c));
          break;
        case RuleId::RmBox:
          prem = {Formula::imp(a, b)};
          concl = Formula::imp(Formula::box(a), Formula::box(b));
          break;
        case RuleId::RmDiam:
          prem = {Formula::imp(a, b)};
          concl = Formula::imp(expandDiamond(a), expandDiamond(b));
          break;
      }
      report.ruleChecks++;
      int badModel = 0;
      WorldId badWorld = 0;
      bool premisesValid = true;
      for (const auto& p : prem)
        if (!validOnPool(p, badModel, badWorld)) {
          premisesValid = false;
          break;
        }
      if (!premisesValid) continue;
      report.ruleNonVacuous++;
      if (!validOnPool(concl, badModel, badWorld))
        report.ruleFailures.push_back({rule, concl, badModel, badWorld});
    }
  }
  return report;
}

SoundnessReport soundnessSample(SystemId system, int trials, std::uint64_t seed) {
  std::vector<Schema> schemas;
  for (SchemaId id : systemInfo(system).axioms) schemas.push_back(schemaOf(id));
  return soundnessSampleSchemas(system, schemas, trials, seed);
}

// ---------------------------------------------------------------------------
// Script files
// ---------------------------------------------------------------------------

namespace {

std::string substToString(const Substitution& sigma) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, f] : sigma) {
    if (!first) out += ", ";
    out += name + " := " + print(f);
    first = false;
  }
  return out + "}";
}

Substitution parseSubst(const std::string& text, LanguageId lang, std::size_t basePos) {
  Substitution out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  };
  skip();
  if (i >= text.size() || text[i] != '{')
    throw ParseError(ParseError::Kind::Syntax, basePos + i, "expected '{'");
  i++;
  skip();
  if (i < text.size() && text[i] == '}') return out;
  for (;;) {
    skip();
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
      i++;
    std::string name = text.substr(start, i - start);
    if (name.empty())
      throw ParseError(ParseError::Kind::Syntax, basePos + i, "expected a binding name");
    skip();
    if (text.compare(i, 2, ":=") != 0)
      throw ParseError(ParseError::Kind::Syntax, basePos + i, "expected ':='");
    i += 2;
    std::size_t fstart = i;
    int depth = 0;
    while (i < text.size()) {
      char ch = text[i];
      if (ch == '(') depth++;
      if (ch == ')') depth--;
      if (depth == 0 && (ch == ',' || ch == '}')) break;
      i++;
    }
    out[name] = parse(text.substr(fstart, i - fstart), lang);
    if (i >= text.size())
      throw ParseError(ParseError::Kind::Syntax, basePos + i, "unterminated bindings");
    if (text[i] == '}') break;
    i++;  // comma
  }
  return out;
}

std::vector<std::string> splitSemis(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); i++) {
    if (i == text.size() || text[i] == ';') {
      std::string part = text.substr(start, i - start);
      std::size_t a = part.find_first_not_of(" \t");
      std::size_t b = part.find_last_not_of(" \t");
      if (a != std::string::npos) out.push_back(part.substr(a, b - a + 1));
      start = i + 1;
    }
  }
  return out;
}

std::string modeName(DerivationMode m) {
  switch (m) {
    case DerivationMode::Theorem: return "theorem";
    case DerivationMode::Consequence: return "consequence";
    case DerivationMode::DerivedRule: return "derived-rule";
  }
  return "?";
}

}  // namespace

std::string writeScript(const Script& s) {
  std::ostringstream out;
  const Derivation& d = s.derivation;
  if (!s.comment.empty()) {
    std::istringstream cs(s.comment);
    std::string cl;
    while (std::getline(cs, cl)) out << "# " << cl << "\n";
  }
  out << "system: " << systemName(d.system) << "\n";
  out << "mode: " << modeName(d.mode) << "\n";
  if (!d.premises.empty()) {
    out << "premises: ";
    for (std::size_t i = 0; i < d.premises.size(); i++) {
      if (i) out << " ; ";
      out << print(d.premises[i]);
    }
    out << "\n";
  }
  switch (d.goal.kind) {
    case Goal::Kind::SingleFormula:
      out << "goal: " << print(d.goal.formula) << "\n";
      break;
    case Goal::Kind::DeltaDisjunction: {
      out << "goal-delta: ";
      for (std::size_t i = 0; i < d.goal.delta.size(); i++) {
        if (i) out << " ; ";
        out << print(d.goal.delta[i]);
      }
      out << "\n";
      break;
    }
    case Goal::Kind::Absurdity:
      out << "goal-absurdity:\n";
      break;
  }
  out << "steps:\n";
  for (std::size_t i = 0; i < d.steps.size(); i++) {
    const auto& [f, j] = d.steps[i];
    out << (i + 1) << ". " << print(f) << " ; ";
    switch (j.kind) {
      case Justification::Kind::Axiom:
        out << "ax " << schemaName(j.schema) << " " << substToString(j.subst);
        break;
      case Justification::Kind::Premise:
        out << "prem " << j.premise;
        break;
      case Justification::Kind::Rule: {
        out << "rule " << ruleName(j.rule);
        for (int r : j.refs) out << " " << (r + 1);
        break;
      }
      case Justification::Kind::N4Step: {
        out << "n4";
        for (int r : j.refs) out << " " << (r + 1);
        break;
      }
      case Justification::Kind::Cite:
        out << "cite " << j.cite << " " << substToString(j.subst);
        break;
    }
    out << "\n";
  }
  return out.str();
}

Script parseScript(const std::string& text) {
  Script s;
  Derivation& d = s.derivation;
  bool haveSystem = false, haveGoal = false, inSteps = false;
  LanguageId lang = LanguageId::LBoxto;
  std::istringstream in(text);
  std::string line;
  std::size_t lineNo = 0;
  auto fail = [&](const std::string& msg) -> std::runtime_error {
    return std::runtime_error("script line " + std::to_string(lineNo) + ": " + msg);
  };
  while (std::getline(in, line)) {
    lineNo++;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    if (line[a] == '#') continue;
    std::string body = line.substr(a);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();

    if (!inSteps) {
      auto starts = [&](const char* prefix) { return body.rfind(prefix, 0) == 0; };
      if (starts("system:")) {
        auto name = body.substr(7);
        name.erase(0, name.find_first_not_of(' '));
        auto sysId = systemFromName(name);
        if (!sysId) throw fail("unknown system " + name);
        d.system = *sysId;
        lang = systemInfo(d.system).lang;
        haveSystem = true;
      } else if (starts("mode:")) {
        auto m = body.substr(5);
        m.erase(0, m.find_first_not_of(' '));
        if (m == "theorem") d.mode = DerivationMode::Theorem;
        else if (m == "consequence") d.mode = DerivationMode::Consequence;
        else if (m == "derived-rule") d.mode = DerivationMode::DerivedRule;
        else throw fail("unknown mode " + m);
      } else if (starts("premises:")) {
        for (const auto& part : splitSemis(body.substr(9)))
          d.premises.push_back(parse(part, lang));
      } else if (starts("goal-delta:")) {
        std::vector<Formula> delta;
        for (const auto& part : splitSemis(body.substr(11))) delta.push_back(parse(part, lang));
        d.goal = Goal::deltaDisj(delta);
        haveGoal = true;
      } else if (starts("goal-absurdity:")) {
        d.goal = Goal::absurdity();
        haveGoal = true;
      } else if (starts("goal:")) {
        d.goal = Goal::single(parse(body.substr(5), lang));
        haveGoal = true;
      } else if (starts("steps:")) {
        inSteps = true;
      } else {
        throw fail("unrecognized header line");
      }
      continue;
    }

    // "<n>. <formula> ; <justification>"
    std::size_t dot = body.find('.');
    if (dot == std::string::npos) throw fail("expected '<n>.'");
    std::size_t semi = body.rfind(';');
    if (semi == std::string::npos || semi <= dot) throw fail("expected '; <justification>'");
    Formula f = parse(body.substr(dot + 1, semi - dot - 1), lang);
    std::string just = body.substr(semi + 1);
    just.erase(0, just.find_first_not_of(' '));

    auto word = [&](std::string& rest) {
      std::size_t sp = rest.find_first_of(" \t");
      std::string w = rest.substr(0, sp);
      rest = sp == std::string::npos ? "" : rest.substr(sp + 1);
      rest.erase(0, rest.find_first_not_of(" \t"));
      return w;
    };
    std::string rest = just;
    std::string kind = word(rest);
    Justification j;
    if (kind == "ax") {
      std::string name = word(rest);
      auto sid = schemaFromName(name);
      if (!sid) throw fail("unknown schema " + name);
      j = Justification::axiom(*sid, parseSubst(rest, lang, 0));
    } else if (kind == "prem") {
      j = Justification::prem(std::stoi(rest));
    } else if (kind == "rule") {
      std::string name = word(rest);
      auto rid = ruleFromName(name);
      if (!rid) throw fail("unknown rule " + name);
      std::vector<int> refs;
      std::istringstream rs(rest);
      int r;
      while (rs >> r) refs.push_back(r - 1);
      j = Justification::byRule(*rid, refs);
    } else if (kind == "n4") {
      std::vector<int> refs;
      std::istringstream rs(rest);
      int r;
      while (rs >> r) refs.push_back(r - 1);
      j = Justification::n4(refs);
    } else if (kind == "cite") {
      std::string name = word(rest);
      j = Justification::citation(name, parseSubst(rest, lang, 0));
    } else {
      throw fail("unknown justification " + kind);
    }
    d.steps.push_back({f, j});
  }
  if (!haveSystem) throw std::runtime_error("script: missing system header");
  if (!haveGoal) throw std::runtime_error("script: missing goal header");

  std::vector<Formula> forVars;
  for (const auto& [f, j] : d.steps) forVars.push_back(f);
  for (const Atom& at : atomsOf(forVars))
    if (!at.primed) s.vars.push_back(at);
  return s;
}

}  // namespace n4ck
