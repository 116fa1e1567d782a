#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "doctest.h"
#include "n4ck/decide.hpp"
#include "n4ck/proofs.hpp"
#include "n4ck/search.hpp"

using namespace n4ck;
using F = Formula;

namespace {

Formula parseC(const std::string& s) { return parse(s, LanguageId::LBoxto); }

Derivation alphaOne() {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  Formula goal = parseC("p0 -> p1 -> p0");
  b.axiom(SchemaId::Alpha1, {{"phi", F::plain(0)}, {"psi", F::plain(1)}});
  return b.finish(Goal::single(goal));
}

}  // namespace

TEST_CASE("a single axiom instance is a theorem") {
  CHECK(!checkDerivation(alphaOne()).has_value());
}

TEST_CASE("the whole corpus checks") {
  const ScriptRegistry& corpus = scriptCorpus();
  int n4ck = 0, ck = 0, fskd = 0;
  for (const Script& s : corpus.all()) {
    auto e = checkDerivation(s.derivation, corpus);
    INFO(s.id);
    REQUIRE(!e.has_value());
    switch (s.derivation.system) {
      case SystemId::N4CK: n4ck++; break;
      case SystemId::CK: ck++; break;
      case SystemId::FSKd: fskd++; break;
      default: break;
    }
  }
  CHECK(n4ck >= 11);
  CHECK(ck >= 3);
  CHECK(fskd >= 3);
}

TEST_CASE("expected corpus goals") {
  const ScriptRegistry& corpus = scriptCorpus();
  const Script* t6 = corpus.find("T6");
  REQUIRE(t6 != nullptr);
  // ~(phi []-> psi) <-> (phi <>-> ~psi), unfolded, instantiable at p0/p1
  Formula expected = makeIff(F::neg(F::boxto(F::plain(0), F::plain(1))),
                             F::neg(F::boxto(F::plain(0), F::neg(F::neg(F::plain(1))))));
  CHECK(t6->derivation.goal.formula == expected);

  const Script* t2 = corpus.find("t2");
  REQUIRE(t2 != nullptr);
  CHECK(t2->derivation.goal.formula ==
        makeStrongIff(F::box(F::conj(F::plain(0), F::plain(1))),
                      F::conj(F::box(F::plain(0)), F::box(F::plain(1)))));

  for (const char* id : {"RCbox", "Nec", "RMbox", "RMnbox", "RMdiam", "T1", "T2", "T3", "T4",
                         "T5", "T6", "A2ck", "A3ck", "RC2ck", "t1", "rmnbox", "rbox", "rnbox",
                         "t2", "t3"})
    CHECK(corpus.find(id) != nullptr);
}

TEST_CASE("mutation testing: any broken justification is rejected") {
  const ScriptRegistry& corpus = scriptCorpus();
  std::mt19937_64 rng(123);
  for (const Script& s : corpus.all()) {
    int done = 0;
    int guard = 0;
    while (done < 20 && guard < 400) {
      guard++;
      Derivation mutant = s.derivation;
      std::size_t i = rng() % mutant.steps.size();
      Justification& j = mutant.steps[i].second;
      bool changed = false;
      switch (rng() % 4) {
        case 0:
          // swap the justification for an unrelated axiom instance
          if (j.kind != Justification::Kind::Axiom || j.schema != SchemaId::Alpha6) {
            j = Justification::axiom(SchemaId::Alpha6,
                                     {{"phi", F::plain(0)}, {"psi", F::plain(0)}});
            changed = true;
          }
          break;
        case 1:
          // retarget a reference to step 0
          if (!j.refs.empty() && j.refs[0] != 0 && i != 0) {
            j.refs[0] = 0;
            changed = true;
          }
          break;
        case 2:
          // perturb an axiom substitution at a metavariable that occurs
          if (j.kind == Justification::Kind::Axiom && !j.subst.empty()) {
            auto it = j.subst.begin();
            it->second = F::conj(it->second, F::plain(7));
            changed = true;
          }
          break;
        case 3:
          // drop all references from an N4 step that has some
          if (j.kind == Justification::Kind::N4Step && !j.refs.empty()) {
            j.refs.clear();
            changed = true;
          }
          break;
      }
      if (!changed) continue;
      done++;
      auto e = checkDerivation(mutant, corpus);
      INFO(s.id << " mutation at step " << i);
      CHECK(e.has_value());
    }
    CHECK(done == 20);
  }
}

TEST_CASE("mode constraints") {
  // consequence mode rejects non-MP rules
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Consequence);
  int s0 = b.premise(makeIff(F::plain(0), F::plain(1)));
  b.rule(RuleId::RCbox1, {s0},
         makeIff(F::boxto(F::plain(2), F::plain(0)), F::boxto(F::plain(2), F::plain(1))));
  Derivation d =
      b.finish(Goal::deltaDisj({makeIff(F::boxto(F::plain(2), F::plain(0)),
                                        F::boxto(F::plain(2), F::plain(1)))}));
  auto e = checkDerivation(d);
  REQUIRE(e.has_value());
  CHECK(e->code == "ModeViolation");

  // theorem mode rejects premises
  DerivationBuilder b2(SystemId::N4CK, DerivationMode::Theorem);
  b2.premise(F::plain(0));
  auto e2 = checkDerivation(b2.finish(Goal::single(F::plain(0))));
  REQUIRE(e2.has_value());
  CHECK(e2->code == "ModeViolation");
}

TEST_CASE("delta goals compare the exact right-nested disjunction") {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Consequence);
  int s0 = b.premise(F::disj(F::plain(0), F::disj(F::plain(1), F::plain(2))));
  (void)s0;
  Derivation d = b.finish(Goal::deltaDisj({F::plain(0), F::plain(1), F::plain(2)}));
  CHECK(!checkDerivation(d).has_value());

  DerivationBuilder b2(SystemId::N4CK, DerivationMode::Consequence);
  b2.premise(F::disj(F::disj(F::plain(0), F::plain(1)), F::plain(2)));
  Derivation d2 = b2.finish(Goal::deltaDisj({F::plain(0), F::plain(1), F::plain(2)}));
  auto e = checkDerivation(d2);
  REQUIRE(e.has_value());
  CHECK(e->code == "GoalMismatch");
}

TEST_CASE("absurdity goals need an iota-closed system") {
  Formula bot = F::conj(F::plain(1), F::neg(F::plain(1)));
  DerivationBuilder b(SystemId::CL, DerivationMode::Consequence);
  b.premise(bot);
  CHECK(!checkDerivation(b.finish(Goal::absurdity())).has_value());

  DerivationBuilder b2(SystemId::N4CK, DerivationMode::Consequence);
  b2.premise(bot);
  auto e = checkDerivation(b2.finish(Goal::absurdity()));
  REQUIRE(e.has_value());
  CHECK(e->code == "GoalMismatch");
}

TEST_CASE("the primed-rule system accepts RA'box, plain N4CK does not") {
  auto build = [](SystemId sys) {
    DerivationBuilder b(sys, DerivationMode::DerivedRule);
    int s0 = b.premise(makeIff(F::plain(0), F::plain(1)));
    Formula concl = makeStrongIff(F::boxto(F::plain(0), F::plain(2)),
                                  F::boxto(F::plain(1), F::plain(2)));
    b.rule(RuleId::RAprimeBox, {s0}, concl);
    return b.finish(Goal::single(concl));
  };
  CHECK(!checkDerivation(build(SystemId::N4CKprime)).has_value());
  auto e = checkDerivation(build(SystemId::N4CK));
  REQUIRE(e.has_value());
  CHECK(e->code == "RuleShapeError");
}

TEST_CASE("N4 steps are refuted with a countermodel message") {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  b.n4({}, parseC("p0 \\/ ~p0"));
  auto e = checkDerivation(b.finish(Goal::single(parseC("p0 \\/ ~p0"))));
  REQUIRE(e.has_value());
  CHECK(e->code == "N4StepRefuted");
}

TEST_CASE("deduction theorem round trip") {
  const ScriptRegistry& corpus = scriptCorpus();
  // forward: T1-T5 are implications; add premise + MP
  for (const char* id : {"T1", "T2", "T3", "T4", "T5"}) {
    const Script* s = corpus.find(id);
    REQUIRE(s != nullptr);
    Derivation moved = addPremiseMP(s->derivation);
    INFO(id);
    CHECK(!checkDerivation(moved, corpus).has_value());
  }
  // converse: a rule-free consequence derivation is discharged mechanically
  DerivationBuilder b(SystemId::N4CK, DerivationMode::DerivedRule);
  int s0 = b.premise(parseC("p0 -> p1"));
  int s1 = b.premise(parseC("p0"));
  int s2 = b.rule(RuleId::MP, {s1, s0}, parseC("p1"));
  int s3 = b.axiom(SchemaId::Alpha6, {{"phi", F::plain(1)}, {"psi", F::plain(2)}});
  b.rule(RuleId::MP, {s2, s3}, parseC("p1 \\/ p2"));
  Derivation d = b.finish(Goal::single(parseC("p1 \\/ p2")));
  REQUIRE(!checkDerivation(d).has_value());

  Derivation discharged = dischargePremise(d, 1);
  CHECK(discharged.premises.size() == 1);
  CHECK(discharged.goal.formula == parseC("p0 -> p1 \\/ p2"));
  CHECK(!checkDerivation(discharged).has_value());

  // and the two transforms compose
  Derivation back = addPremiseMP(discharged);
  CHECK(!checkDerivation(back).has_value());
  CHECK(back.goal.formula == parseC("p1 \\/ p2"));

  // implications introduced by an N4 step discharge as well
  DerivationBuilder b2(SystemId::N4CK, DerivationMode::DerivedRule);
  int t0 = b2.premise(parseC("p0 /\\ p1"));
  b2.n4({t0}, parseC("p1 /\\ p0"));
  Derivation d2 = b2.finish(Goal::single(parseC("p1 /\\ p0")));
  REQUIRE(!checkDerivation(d2).has_value());
  Derivation d2x = dischargePremise(d2, 0);
  CHECK(d2x.mode == DerivationMode::Theorem);
  CHECK(d2x.goal.formula == parseC("p0 /\\ p1 -> p1 /\\ p0"));
  CHECK(!checkDerivation(d2x).has_value());
}

TEST_CASE("box-erasure conservativity of the corpus theorems") {
  // replacing every conditional subformula by p -> p turns each N4CK corpus
  // theorem into an N4 validity
  const Formula unit = parseC("p0 -> p0");
  std::function<Formula(const Formula&)> erase = [&](const Formula& f) -> Formula {
    switch (f.conn()) {
      case Conn::BoxTo:
      case Conn::DiamTo: return unit;
      case Conn::Atom: return f;
      case Conn::Neg: return F::neg(erase(f.left()));
      case Conn::And: return F::conj(erase(f.left()), erase(f.right()));
      case Conn::Or: return F::disj(erase(f.left()), erase(f.right()));
      case Conn::Imp: return F::imp(erase(f.left()), erase(f.right()));
      default: throw std::logic_error("unexpected connective");
    }
  };
  for (const char* id : {"T1", "T2", "T3", "T4", "T5", "T6"}) {
    const Script* s = scriptCorpus().find(id);
    Formula erased = erase(expandSugar(s->derivation.goal.formula));
    INFO(id);
    CHECK(decideN4({}, erased).valid);
  }
}

TEST_CASE("every N4CK corpus theorem also checks as a CK derivation") {
  const ScriptRegistry& corpus = scriptCorpus();
  ScriptRegistry target;
  // seed the target with the CK-side scripts the port cites or inlines
  target.add(*corpus.find("A2ck"));
  for (const char* id : {"T1", "T2", "T3", "T4", "T5", "T6"}) {
    const Script* s = corpus.find(id);
    REQUIRE(s != nullptr);
    INFO(id);
    Script ported = portScriptToCK(*s, corpus, target);
    CHECK(target.find(ported.id) != nullptr);
  }
}

TEST_CASE("CL steps are reachable from N4 plus An6/An7 instances") {
  // the classical fallback used for CK scripts is equivalent, on the corpus
  // cases, to extending the N4 step with explicit An6/An7 instances
  auto withInstances = [](const std::vector<Formula>& premises, const Formula& goal) {
    std::vector<Formula> all = premises;
    std::vector<Formula> pool;
    std::function<void(const Formula&)> subs = [&](const Formula& f) {
      pool.push_back(f);
      if (f.conn() == Conn::Atom) return;
      if (f.left()) subs(f.left());
      if (isBinary(f.conn())) subs(f.right());
    };
    for (const auto& p : premises) subs(p);
    subs(goal);
    const Schema& an6 = schemaOf(SchemaId::An6);
    const Schema& an7 = schemaOf(SchemaId::An7);
    for (const auto& f : pool) {
      all.push_back(applySubst(an7, {{"phi", f}}));
      for (const auto& g : pool)
        all.push_back(applySubst(an6, {{"phi", f}, {"psi", g}}));
    }
    return decideN4(all, goal).valid;
  };
  // the propositional steps of the CK corpus scripts
  CHECK(withInstances({}, parseC("~p1 -> (p1 -> p2)")));
  CHECK(withInstances({parseC("~p0 <-> ~p1")}, parseC("p0 <-> p1")));
  CHECK(withInstances({parseC("p0 <-> p1")}, parseC("~p0 <-> ~p1")));
  CHECK(withInstances({}, parseC("(p1 \\/ ~p2) /\\ p2 -> p1")));
  // while plain N4 really cannot see them
  CHECK(!decideN4({}, parseC("~p1 -> (p1 -> p2)")).valid);
}

TEST_CASE("soundness sampling is clean and catches an injected fake axiom") {
  SoundnessReport n4ck = soundnessSample(SystemId::N4CK, 60, 17);
  CHECK(n4ck.axiomFailures.empty());
  CHECK(n4ck.ruleFailures.empty());
  CHECK(n4ck.ruleNonVacuous > 0);

  SoundnessReport fskd = soundnessSample(SystemId::FSKd, 60, 18);
  CHECK(fskd.axiomFailures.empty());
  CHECK(fskd.ruleFailures.empty());

  // (p -> q) -> (~q -> ~p) injected as a fake axiom fails quickly
  Schema fake = Schema::imp(
      Schema::imp(Schema::meta("phi"), Schema::meta("psi")),
      Schema::imp(Schema::neg(Schema::meta("psi")), Schema::neg(Schema::meta("phi"))));
  SoundnessReport bad = soundnessSampleSchemas(SystemId::N4CK, {fake}, 50, 19);
  CHECK(!bad.axiomFailures.empty());

  CHECK_THROWS_AS(soundnessSample(SystemId::IL, 10, 1), InvalidInput);
}

TEST_CASE("script files round trip") {
  const ScriptRegistry& corpus = scriptCorpus();
  for (const Script& s : corpus.all()) {
    std::string text = writeScript(s);
    Script back = parseScript(text);
    INFO(s.id);
    REQUIRE(back.derivation.steps.size() == s.derivation.steps.size());
    for (std::size_t i = 0; i < s.derivation.steps.size(); i++) {
      CHECK(back.derivation.steps[i].first == s.derivation.steps[i].first);
      CHECK(back.derivation.steps[i].second.kind == s.derivation.steps[i].second.kind);
    }
    CHECK(!checkDerivation(back.derivation, corpus).has_value());
    CHECK(writeScript(back) == text.substr(text.find("system:")));
  }
}

TEST_CASE("Appendix A's Nec script shape") {
  const Script* nec = scriptCorpus().find("Nec");
  REQUIRE(nec != nullptr);
  CHECK(nec->derivation.mode == DerivationMode::DerivedRule);
  REQUIRE(nec->derivation.premises.size() == 1);
  CHECK(nec->derivation.premises[0] == F::plain(0));
  CHECK(nec->derivation.goal.formula == F::boxto(F::plain(1), F::plain(0)));
  // the phi <-> (phi -> phi) bridge is there
  bool bridge = false;
  for (const auto& [f, j] : nec->derivation.steps)
    if (f == makeIff(F::plain(0), F::imp(F::plain(0), F::plain(0)))) bridge = true;
  CHECK(bridge);
}

TEST_CASE("cite instantiation is checked against the declared goal") {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  Formula wrong = parseC("p0 []-> p0");
  b.cite("T6", {{"p0", F::plain(0)}, {"p1", F::plain(1)}}, wrong);
  auto e = checkDerivation(b.finish(Goal::single(wrong)));
  REQUIRE(e.has_value());
  CHECK(e->code == "CiteError");

  // correct instantiation at phi = p0, psi = p1
  DerivationBuilder b2(SystemId::N4CK, DerivationMode::Theorem);
  Formula inst = makeIff(F::neg(F::boxto(F::plain(0), F::plain(1))),
                         F::neg(F::boxto(F::plain(0), F::neg(F::neg(F::plain(1))))));
  b2.cite("T6", {{"p0", F::plain(0)}, {"p1", F::plain(1)}}, inst);
  CHECK(!checkDerivation(b2.finish(Goal::single(inst))).has_value());
}
