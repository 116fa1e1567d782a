#include <stdexcept>

#include "n4ck/proofs.hpp"

// Machine transcriptions of the appendix derivations. Scripts are schematic
// over the plain atoms p0/p1/p2 standing for the display's phi/psi/chi;
// abbreviated connectives are stored fully unfolded.

namespace n4ck {

namespace {

using F = Formula;

const F P = F::plain(0);
const F Q = F::plain(1);
const F C = F::plain(2);

Substitution sub(std::initializer_list<std::pair<const std::string, Formula>> xs) {
  return Substitution(xs);
}

std::map<Atom, Formula> atomSub(Formula p, Formula q, Formula c) {
  return {{Atom{false, 0}, std::move(p)}, {Atom{false, 1}, std::move(q)},
          {Atom{false, 2}, std::move(c)}};
}

Script makeScript(std::string id, Derivation d, std::string comment = "") {
  Script s;
  s.id = std::move(id);
  s.vars = {{false, 0}, {false, 1}, {false, 2}};
  s.derivation = std::move(d);
  s.comment = std::move(comment);
  return s;
}

// --- Appendix A: derived rules of N4CK -------------------------------------

Script buildRCbox() {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::DerivedRule);
  int s0 = b.premise(makeStrongIff(P, Q));
  int s1 = b.n4({s0}, makeIff(P, Q));
  int s2 = b.n4({s0}, makeIff(F::neg(P), F::neg(Q)));
  int s3 = b.rule(RuleId::RCbox1, {s1}, makeIff(F::boxto(C, P), F::boxto(C, Q)));
  int s4 = b.rule(RuleId::RCbox2, {s2},
                  makeIff(F::neg(F::boxto(C, P)), F::neg(F::boxto(C, Q))));
  Formula goal = makeStrongIff(F::boxto(C, P), F::boxto(C, Q));
  b.n4({s3, s4}, goal);
  return makeScript("RCbox", b.finish(Goal::single(goal)));
}

Script buildNec() {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::DerivedRule);
  int s0 = b.premise(P);
  int s1 = b.n4({s0}, makeIff(P, F::imp(P, P)));
  int s2 = b.rule(RuleId::RCbox1, {s1}, makeIff(F::boxto(Q, P), F::boxto(Q, F::imp(P, P))));
  int s3 = b.axiom(SchemaId::A4, sub({{"phi", Q}, {"psi", P}}));
  Formula goal = F::boxto(Q, P);
  b.n4({s2, s3}, goal);
  return makeScript("Nec", b.finish(Goal::single(goal)));
}

Script buildRMbox() {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::DerivedRule);
  int s0 = b.premise(F::imp(P, Q));
  int s1 = b.n4({s0}, makeIff(F::conj(P, Q), P));
  int s2 = b.rule(RuleId::RCbox1, {s1},
                  makeIff(F::boxto(C, F::conj(P, Q)), F::boxto(C, P)));
  int s3 = b.axiom(SchemaId::A1, sub({{"phi", C}, {"psi", P}, {"chi", Q}}));
  Formula goal = F::imp(F::boxto(C, P), F::boxto(C, Q));
  b.n4({s2, s3}, goal);
  return makeScript("RMbox", b.finish(Goal::single(goal)));
}

Script buildRMnbox() {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::DerivedRule);
  int s0 = b.premise(F::imp(F::neg(P), F::neg(Q)));
  int s1 = b.n4({s0}, makeIff(F::neg(F::conj(P, Q)), F::neg(Q)));
  int s2 = b.rule(RuleId::RCbox2, {s1},
                  makeIff(F::neg(F::boxto(C, F::conj(P, Q))), F::neg(F::boxto(C, Q))));
  int s3 = b.axiom(SchemaId::A1, sub({{"phi", C}, {"psi", P}, {"chi", Q}}));
  Formula goal = F::imp(F::neg(F::boxto(C, P)), F::neg(F::boxto(C, Q)));
  b.n4({s2, s3}, goal);
  return makeScript("RMnbox", b.finish(Goal::single(goal)));
}

Script buildRMdiam(const Script& rmnbox) {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::DerivedRule);
  int s0 = b.premise(F::imp(P, Q));
  int s1 = b.n4({s0}, F::imp(F::neg(F::neg(P)), F::neg(F::neg(Q))));
  int fin = b.inlineScript(rmnbox, atomSub(F::neg(P), F::neg(Q), C), {s1});
  Formula goal = b.formulaAt(fin);
  return makeScript("RMdiam", b.finish(Goal::single(goal)));
}

// --- Appendix A: theorems T1-T6 --------------------------------------------

Script buildT1(const Script& rmbox, SystemId system, const std::string& id) {
  DerivationBuilder b(system, DerivationMode::Theorem);
  const F W = F::conj(Q, F::imp(Q, C));
  int s0 = b.n4({}, F::imp(W, C));
  int r = b.inlineScript(rmbox, atomSub(W, C, P), {s0});
  int s1 = b.axiom(SchemaId::A1, sub({{"phi", P}, {"psi", Q}, {"chi", F::imp(Q, C)}}));
  Formula goal = F::imp(F::conj(F::boxto(P, Q), F::boxto(P, F::imp(Q, C))), F::boxto(P, C));
  b.n4({r, s1}, goal);
  return makeScript(id, b.finish(Goal::single(goal)));
}

Script buildT2(const Script& rmnbox) {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  const F V = F::disj(Q, F::neg(F::imp(F::neg(Q), F::neg(C))));
  int s0 = b.axiom(SchemaId::A2,
                   sub({{"phi", P}, {"psi", Q}, {"chi", F::imp(F::neg(Q), F::neg(C))}}));
  int s1 = b.n4({}, F::imp(F::neg(V), F::neg(C)));
  int r = b.inlineScript(rmnbox, atomSub(V, C, P), {s1});
  Formula goal = F::imp(F::boxto(P, F::imp(F::neg(Q), F::neg(C))),
                        F::imp(F::neg(F::boxto(P, Q)), F::neg(F::boxto(P, C))));
  b.n4({s0, r}, goal);
  return makeScript("T2", b.finish(Goal::single(goal)));
}

Script buildT3(const Script& rmnbox) {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  const F body = F::neg(F::imp(Q, F::neg(C)));
  const F U = F::disj(body, F::neg(Q));
  int s0 = b.axiom(SchemaId::A2, sub({{"phi", P}, {"psi", body}, {"chi", Q}}));
  int s1 = b.n4({}, F::imp(F::neg(U), F::neg(C)));
  int r = b.inlineScript(rmnbox, atomSub(U, C, P), {s1});
  Formula goal = F::imp(F::conj(F::neg(F::boxto(P, body)), F::boxto(P, Q)),
                        F::neg(F::boxto(P, C)));
  b.n4({s0, r}, goal);
  return makeScript("T3", b.finish(Goal::single(goal)));
}

Script buildT4(const Script& rmnbox) {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  const F M = F::conj(F::neg(Q), F::neg(C));
  const F dq = F::boxto(P, F::neg(Q));
  const F dc = F::boxto(P, F::neg(C));
  int s0 = b.axiom(SchemaId::A1, sub({{"phi", P}, {"psi", F::neg(Q)}, {"chi", F::neg(C)}}));
  int s1 = b.n4({s0}, F::imp(F::neg(F::boxto(P, M)), F::neg(F::conj(dq, dc))));
  int s2 = b.n4({}, F::imp(F::neg(F::conj(dq, dc)), F::disj(F::neg(dq), F::neg(dc))));
  int s3 = b.n4({}, F::imp(F::neg(F::neg(F::disj(Q, C))), F::neg(M)));
  int r = b.inlineScript(rmnbox, atomSub(F::neg(F::disj(Q, C)), M, P), {s3});
  Formula goal = F::imp(F::neg(F::boxto(P, F::neg(F::disj(Q, C)))),
                        F::disj(F::neg(dq), F::neg(dc)));
  b.n4({s1, s2, r}, goal);
  return makeScript("T4", b.finish(Goal::single(goal)));
}

Script buildT5(const Script& rmbox) {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  const F dn = F::imp(F::neg(F::neg(F::imp(Q, C))), F::neg(F::neg(C)));
  int s0 = b.n4({}, F::imp(Q, dn));
  int r1 = b.inlineScript(rmbox, atomSub(Q, dn, P), {s0});
  Formula t2inst = F::imp(F::boxto(P, dn),
                          F::imp(F::neg(F::boxto(P, F::neg(F::imp(Q, C)))),
                                 F::neg(F::boxto(P, F::neg(C)))));
  int r2 = b.cite("T2", sub({{"p0", P}, {"p1", F::neg(F::imp(Q, C))}, {"p2", F::neg(C)}}),
                  t2inst);
  Formula goal = F::imp(F::boxto(P, Q),
                        F::imp(F::neg(F::boxto(P, F::neg(F::imp(Q, C)))),
                               F::neg(F::boxto(P, F::neg(C)))));
  b.n4({r1, r2}, goal);
  return makeScript("T5", b.finish(Goal::single(goal)),
                    "The display of (T5) in the theorem list has (phi <>-> psi) as the\n"
                    "final consequent; the appendix derivation yields (phi <>-> chi),\n"
                    "which is the form used here and by the embedding tables.");
}

Script buildT6() {
  DerivationBuilder b(SystemId::N4CK, DerivationMode::Theorem);
  int s0 = b.axiom(SchemaId::An1, sub({{"phi", F::neg(Q)}}));
  int s1 = b.n4({s0}, makeIff(F::neg(Q), F::neg(F::neg(F::neg(Q)))));
  Formula goal = makeIff(F::neg(F::boxto(P, Q)), F::neg(F::boxto(P, F::neg(F::neg(Q)))));
  b.rule(RuleId::RCbox2, {s1}, goal);
  return makeScript("T6", b.finish(Goal::single(goal)));
}

// --- Appendix B: CK ---------------------------------------------------------

Script buildA2ck(const Script& rmbox) {
  DerivationBuilder b(SystemId::CK, DerivationMode::Theorem);
  const F D = F::disj(Q, F::neg(C));
  int s0 = b.n4({}, F::imp(F::conj(D, C), Q));
  int r1 = b.inlineScript(rmbox, atomSub(F::conj(D, C), Q, P), {s0});
  int s2 = b.axiom(SchemaId::A1, sub({{"phi", P}, {"psi", D}, {"chi", C}}));
  int s3 = b.n4({r1, s2},
                F::imp(F::conj(F::boxto(P, D), F::boxto(P, C)), F::boxto(P, Q)));
  Formula goal = F::imp(F::conj(F::neg(F::boxto(P, Q)), F::boxto(P, C)),
                        F::neg(F::boxto(P, D)));
  b.n4({s3}, goal);
  return makeScript("A2ck", b.finish(Goal::single(goal)),
                    "The appendix item for (A2) ends in the might-conditional variant;\n"
                    "this transcription derives the literal (A2) schema from the same\n"
                    "ingredients (classical step, RMbox, A1, classical contraposition).");
}

Script buildA3ck(const Script& rmbox) {
  DerivationBuilder b(SystemId::CK, DerivationMode::DerivedRule);
  const F dq = F::boxto(P, F::neg(Q));  // phi []-> ~psi
  const F target = F::boxto(P, F::imp(Q, C));
  int s0 = b.premise(F::imp(F::neg(dq), F::boxto(P, C)));
  int s1 = b.n4({}, F::imp(F::neg(Q), F::imp(Q, C)));
  int r1 = b.inlineScript(rmbox, atomSub(F::neg(Q), F::imp(Q, C), P), {s1});
  int s2 = b.axiom(SchemaId::Alpha1, sub({{"phi", C}, {"psi", Q}}));
  int r2 = b.inlineScript(rmbox, atomSub(C, F::imp(Q, C), P), {s2});
  int s3 = b.n4({s0, r2}, F::imp(F::neg(dq), target));
  int s4 = b.n4({r1, s3}, F::imp(F::disj(dq, F::neg(dq)), target));
  int s5 = b.axiom(SchemaId::An7, sub({{"phi", dq}}));
  b.rule(RuleId::MP, {s5, s4}, target);
  return makeScript("A3ck", b.finish(Goal::single(target)));
}

Script buildRC2ck() {
  DerivationBuilder b(SystemId::CK, DerivationMode::DerivedRule);
  int s0 = b.premise(makeIff(F::neg(P), F::neg(Q)));
  int s1 = b.n4({s0}, makeIff(P, Q));
  int s2 = b.rule(RuleId::RCbox1, {s1}, makeIff(F::boxto(C, P), F::boxto(C, Q)));
  Formula goal = makeIff(F::neg(F::boxto(C, P)), F::neg(F::boxto(C, Q)));
  b.n4({s2}, goal);
  return makeScript("RC2ck", b.finish(Goal::single(goal)));
}

// --- Appendix C: FSK^d ------------------------------------------------------

Script buildt1() {
  DerivationBuilder b(SystemId::FSKd, DerivationMode::Theorem);
  Formula goal = makeIff(F::box(F::neg(P)), F::neg(F::neg(F::box(F::neg(P)))));
  b.n4({}, goal);
  return makeScript("t1", b.finish(Goal::single(goal)));
}

Script buildrmnbox() {
  DerivationBuilder b(SystemId::FSKd, DerivationMode::DerivedRule);
  int s0 = b.premise(F::imp(F::neg(P), F::neg(Q)));
  int s1 = b.rule(RuleId::RmDiam, {s0},
                  F::imp(F::neg(F::box(F::neg(F::neg(P)))), F::neg(F::box(F::neg(F::neg(Q))))));
  int s2 = b.axiom(SchemaId::Ma6, sub({{"phi", P}}));
  int s3 = b.axiom(SchemaId::Ma6, sub({{"phi", Q}}));
  Formula goal = F::imp(F::neg(F::box(P)), F::neg(F::box(Q)));
  b.n4({s1, s2, s3}, goal);
  return makeScript("rmnbox", b.finish(Goal::single(goal)));
}

Script buildrbox() {
  DerivationBuilder b(SystemId::FSKd, DerivationMode::DerivedRule);
  int s0 = b.premise(makeIff(P, Q));
  int s1 = b.n4({s0}, F::imp(P, Q));
  int s2 = b.n4({s0}, F::imp(Q, P));
  int s3 = b.rule(RuleId::RmBox, {s1}, F::imp(F::box(P), F::box(Q)));
  int s4 = b.rule(RuleId::RmBox, {s2}, F::imp(F::box(Q), F::box(P)));
  Formula goal = makeIff(F::box(P), F::box(Q));
  b.n4({s3, s4}, goal);
  return makeScript("rbox", b.finish(Goal::single(goal)));
}

Script buildrnbox(const Script& rmnbox) {
  DerivationBuilder b(SystemId::FSKd, DerivationMode::DerivedRule);
  int s0 = b.premise(makeIff(F::neg(P), F::neg(Q)));
  int s1 = b.n4({s0}, F::imp(F::neg(P), F::neg(Q)));
  int r1 = b.inlineScript(rmnbox, atomSub(P, Q, C), {s1});
  int s2 = b.n4({s0}, F::imp(F::neg(Q), F::neg(P)));
  int r2 = b.inlineScript(rmnbox, atomSub(Q, P, C), {s2});
  Formula goal = makeIff(F::neg(F::box(P)), F::neg(F::box(Q)));
  b.n4({r1, r2}, goal);
  return makeScript("rnbox", b.finish(Goal::single(goal)));
}

Script buildt2(const Script& rmnbox, const Script& rnbox) {
  DerivationBuilder b(SystemId::FSKd, DerivationMode::Theorem);
  const F PQ = F::conj(P, Q);
  auto dia = [](const F& x) { return F::neg(F::box(F::neg(x))); };

  int a3 = b.axiom(SchemaId::Alpha3, sub({{"phi", P}, {"psi", Q}}));
  int r1 = b.rule(RuleId::RmBox, {a3}, F::imp(F::box(PQ), F::box(P)));
  int a4 = b.axiom(SchemaId::Alpha4, sub({{"phi", P}, {"psi", Q}}));
  int r2 = b.rule(RuleId::RmBox, {a4}, F::imp(F::box(PQ), F::box(Q)));
  int ma4 = b.n4({r1, r2}, F::imp(F::box(PQ), F::conj(F::box(P), F::box(Q))));

  int s5a = b.n4({}, F::imp(F::neg(P), F::neg(PQ)));
  int ma5 = b.inlineScript(rmnbox, atomSub(P, PQ, C), {s5a});
  int s6a = b.n4({}, F::imp(F::neg(Q), F::neg(PQ)));
  int ma6 = b.inlineScript(rmnbox, atomSub(Q, PQ, C), {s6a});
  int ma7 = b.n4({ma5, ma6},
                 F::imp(F::neg(F::conj(F::box(P), F::box(Q))), F::neg(F::box(PQ))));

  const F nd = F::disj(F::neg(P), F::neg(Q));
  int ma8 = b.axiom(SchemaId::Ma3, sub({{"phi", F::neg(P)}, {"psi", F::neg(Q)}}));
  int ma9 = b.n4({}, makeIff(F::neg(PQ), F::neg(F::neg(nd))));
  int ma10 = b.inlineScript(rnbox, atomSub(PQ, F::neg(nd), C), {ma9});
  int a6p = b.axiom(SchemaId::Ma6, sub({{"phi", P}}));
  int a6q = b.axiom(SchemaId::Ma6, sub({{"phi", Q}}));
  int ma11 = b.n4({a6p, a6q},
                  F::imp(F::disj(dia(F::neg(P)), dia(F::neg(Q))),
                         F::disj(F::neg(F::box(P)), F::neg(F::box(Q)))));
  int ma12 = b.n4({ma11}, F::imp(F::disj(dia(F::neg(P)), dia(F::neg(Q))),
                                 F::neg(F::conj(F::box(P), F::box(Q)))));
  int ma13 = b.n4({ma8, ma10, ma12},
                  F::imp(F::neg(F::box(PQ)), F::neg(F::conj(F::box(P), F::box(Q)))));

  int a1 = b.axiom(SchemaId::Ma1, sub({{"phi", P}, {"psi", Q}}));
  Formula goal = makeStrongIff(F::box(PQ), F::conj(F::box(P), F::box(Q)));
  b.n4({a1, ma4, ma7, ma13}, goal);
  return makeScript("t2", b.finish(Goal::single(goal)));
}

Script buildt3() {
  DerivationBuilder b(SystemId::FSKd, DerivationMode::Theorem);
  const F D = F::disj(P, F::neg(Q));
  const F inner = F::imp(Q, F::neg(D));
  auto nb = [](const F& x) { return F::neg(F::box(x)); };

  int mb0 = b.axiom(SchemaId::Ma6, sub({{"phi", P}}));
  int mb1 = b.n4({mb0}, F::imp(F::conj(nb(P), F::box(Q)),
                               F::conj(nb(F::neg(F::neg(P))), F::box(Q))));
  int mb2 = b.n4({}, F::imp(F::neg(P), inner));
  int mb3 = b.rule(RuleId::RmDiam, {mb2},
                   F::imp(F::neg(F::box(F::neg(F::neg(P)))), F::neg(F::box(F::neg(inner)))));
  int mb4 = b.n4({mb3}, F::imp(F::conj(nb(F::neg(F::neg(P))), F::box(Q)),
                               F::conj(nb(F::neg(inner)), F::box(Q))));
  int a4x = b.axiom(SchemaId::Ma4, sub({{"phi", Q}, {"psi", F::neg(D)}}));
  int mb5 = b.n4({mb4, a4x}, F::imp(F::conj(nb(F::neg(F::neg(P))), F::box(Q)),
                                    F::neg(F::box(F::neg(F::neg(D))))));
  int mb6 = b.axiom(SchemaId::Ma6, sub({{"phi", D}}));
  Formula goal = F::imp(F::conj(nb(P), F::box(Q)), nb(D));
  b.n4({mb1, mb5, mb6}, goal);
  return makeScript("t3", b.finish(Goal::single(goal)),
                    "Step (E:mb5) of the appendix cites (a4) through an elided modus\n"
                    "ponens chain; the N4 step here carries that chain explicitly.");
}

ScriptRegistry buildCorpus() {
  ScriptRegistry reg;
  Script rcbox = buildRCbox();
  Script nec = buildNec();
  Script rmbox = buildRMbox();
  Script rmnbox = buildRMnbox();
  reg.add(rcbox);
  reg.add(nec);
  reg.add(rmbox);
  reg.add(rmnbox);
  reg.add(buildRMdiam(rmnbox));
  reg.add(buildT1(rmbox, SystemId::N4CK, "T1"));
  reg.add(buildT2(rmnbox));
  reg.add(buildT3(rmnbox));
  reg.add(buildT4(rmnbox));
  reg.add(buildT5(rmbox));
  reg.add(buildT6());

  reg.add(buildT1(rmbox, SystemId::CK, "T1ck"));
  reg.add(buildA2ck(rmbox));
  reg.add(buildA3ck(rmbox));
  reg.add(buildRC2ck());

  Script fsk_rmnbox = buildrmnbox();
  Script fsk_rnbox = buildrnbox(fsk_rmnbox);
  reg.add(buildt1());
  reg.add(fsk_rmnbox);
  reg.add(buildrbox());
  reg.add(fsk_rnbox);
  reg.add(buildt2(fsk_rmnbox, fsk_rnbox));
  reg.add(buildt3());
  return reg;
}

}  // namespace

const ScriptRegistry& scriptCorpus() {
  static const ScriptRegistry corpus = buildCorpus();
  return corpus;
}

// ---------------------------------------------------------------------------
// CK port
// ---------------------------------------------------------------------------

Script portScriptToCK(const Script& s, const ScriptRegistry& source, ScriptRegistry& target) {
  if (s.derivation.system != SystemId::N4CK)
    throw std::runtime_error("portScriptToCK: source script is not an N4CK script");
  const SystemInfo& ck = systemInfo(SystemId::CK);
  const Script* rc2 = scriptCorpus().find("RC2ck");

  DerivationBuilder b(SystemId::CK, s.derivation.mode);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < s.derivation.steps.size(); i++) {
    const auto& [f, j] = s.derivation.steps[i];
    const int idx = static_cast<int>(i);
    switch (j.kind) {
      case Justification::Kind::Premise:
        remap[idx] = b.premise(f);
        break;
      case Justification::Kind::Axiom: {
        bool inCK = std::find(ck.axioms.begin(), ck.axioms.end(), j.schema) != ck.axioms.end();
        if (inCK) {
          remap[idx] = b.raw(f, j);
        } else if (j.schema == SchemaId::A2) {
          remap[idx] = b.cite("A2ck",
                              sub({{"p0", j.subst.at("phi")},
                                   {"p1", j.subst.at("psi")},
                                   {"p2", j.subst.at("chi")}}),
                              f);
        } else if (j.schema == SchemaId::An1 || j.schema == SchemaId::An2 ||
                   j.schema == SchemaId::An3 || j.schema == SchemaId::An4) {
          remap[idx] = b.n4({}, f);  // N4-valid, so a classical tautology
        } else {
          throw std::runtime_error("portScriptToCK: no CK justification for axiom " +
                                   schemaName(j.schema));
        }
        break;
      }
      case Justification::Kind::Rule: {
        if (j.rule == RuleId::RCbox2) {
          auto sigma = matchSchema(
              Schema::iff(Schema::neg(Schema::boxto(Schema::meta("c"), Schema::meta("a"))),
                          Schema::neg(Schema::boxto(Schema::meta("c"), Schema::meta("b")))),
              f);
          if (!sigma) throw std::runtime_error("portScriptToCK: RCbox2 conclusion mismatch");
          remap[idx] = b.inlineScript(
              *rc2, atomSub(sigma->at("a"), sigma->at("b"), sigma->at("c")),
              {remap.at(j.refs[0])});
        } else {
          Justification nj = j;
          for (int& r : nj.refs) r = remap.at(r);
          remap[idx] = b.raw(f, std::move(nj));
        }
        break;
      }
      case Justification::Kind::N4Step: {
        Justification nj = j;
        for (int& r : nj.refs) r = remap.at(r);
        remap[idx] = b.raw(f, std::move(nj));
        break;
      }
      case Justification::Kind::Cite: {
        const Script* cited = source.find(j.cite);
        if (!cited) throw std::runtime_error("portScriptToCK: unknown cite " + j.cite);
        remap[idx] = b.raw(f, Justification::citation(j.cite + "@ck", j.subst));
        break;
      }
    }
  }
  Script out = makeScript(s.id + "@ck", b.finish(s.derivation.goal));
  out.vars = s.vars;
  target.add(out);
  return out;
}

}  // namespace n4ck
