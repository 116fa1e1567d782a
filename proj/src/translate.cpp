#include "n4ck/translate.hpp"

#include <functional>

#include "n4ck/semantics.hpp"

namespace n4ck {

std::string mappingName(MappingId id) {
  switch (id) {
    case MappingId::E: return "e";
    case MappingId::Epm: return "epm";
    case MappingId::Emp: return "emp";
    case MappingId::Eplus: return "eplus";
    case MappingId::Eminus: return "eminus";
    case MappingId::Em: return "em";
    case MappingId::TrI: return "tri";
    case MappingId::Tr: return "tr";
    case MappingId::TrBar: return "trbar";
  }
  return "?";
}

std::optional<MappingId> mappingFromName(const std::string& name) {
  for (MappingId id : {MappingId::E, MappingId::Epm, MappingId::Emp, MappingId::Eplus,
                       MappingId::Eminus, MappingId::Em, MappingId::TrI, MappingId::Tr,
                       MappingId::TrBar})
    if (mappingName(id) == name) return id;
  return std::nullopt;
}

LanguageId mappingSourceLanguage(MappingId id) {
  switch (id) {
    case MappingId::E: return LanguageId::L;
    case MappingId::Epm:
    case MappingId::Emp:
    case MappingId::Eplus:
    case MappingId::Eminus: return LanguageId::LBoxto;
    case MappingId::Em: return LanguageId::LBox;
    case MappingId::TrI: return LanguageId::LBoxDiamond;
    case MappingId::Tr: return LanguageId::LBox;
    case MappingId::TrBar: return LanguageId::LBoxto;
  }
  return LanguageId::L;
}

LanguageId mappingTargetLanguage(MappingId id) {
  switch (id) {
    case MappingId::E: return LanguageId::LePlus;
    case MappingId::Epm:
    case MappingId::Emp:
    case MappingId::Eplus:
    case MappingId::Eminus: return LanguageId::LeBoxtoDiamto;
    case MappingId::Em: return LanguageId::LeBoxDiamond;
    case MappingId::TrI: return LanguageId::LBoxto;  // with <>-> as abbreviation
    case MappingId::Tr: return LanguageId::LBoxto;
    case MappingId::TrBar: return LanguageId::LBox;
  }
  return LanguageId::L;
}

namespace {

using F = Formula;

// The negation-structured recursion shared by the whole E family. The
// conditional/modal clauses differ per mapping and are supplied as hooks;
// a missing hook means the connective is not part of the source language.
struct EHooks {
  std::function<Formula(const Formula&, const Formula&)> boxtoPos, boxtoNeg;
  std::function<Formula(const Formula&)> boxPos, boxNeg;
};

Formula mapE(const Formula& f, const EHooks& h) {
  auto rec = [&](const Formula& g) { return mapE(g, h); };
  switch (f.conn()) {
    case Conn::Atom:
      if (f.atomValue().primed) throw IllFormed("primed atom in E-translation source");
      return f;
    case Conn::And:
      return F::conj(rec(f.left()), rec(f.right()));
    case Conn::Or:
      return F::disj(rec(f.left()), rec(f.right()));
    case Conn::Imp:
      return F::imp(rec(f.left()), rec(f.right()));
    case Conn::BoxTo:
      if (!h.boxtoPos) throw IllFormed("[]-> outside the mapping's source language");
      return h.boxtoPos(f.left(), f.right());
    case Conn::Box:
      if (!h.boxPos) throw IllFormed("[] outside the mapping's source language");
      return h.boxPos(f.left());
    case Conn::Neg: {
      const Formula& g = f.left();
      switch (g.conn()) {
        case Conn::Atom:
          if (g.atomValue().primed) throw IllFormed("primed atom in E-translation source");
          return F::primed(g.atomValue().index);
        case Conn::And:
          return F::disj(rec(F::neg(g.left())), rec(F::neg(g.right())));
        case Conn::Or:
          return F::conj(rec(F::neg(g.left())), rec(F::neg(g.right())));
        case Conn::Neg:
          return rec(g.left());
        case Conn::Imp:
          return F::conj(rec(g.left()), rec(F::neg(g.right())));
        case Conn::BoxTo:
          if (!h.boxtoNeg) throw IllFormed("[]-> outside the mapping's source language");
          return h.boxtoNeg(g.left(), g.right());
        case Conn::Box:
          if (!h.boxNeg) throw IllFormed("[] outside the mapping's source language");
          return h.boxNeg(g.left());
        default:
          throw IllFormed("negated connective outside the mapping's source language");
      }
    }
    default:
      throw IllFormed("connective outside the mapping's source language");
  }
}

EHooks hooksFor(MappingId id) {
  EHooks h;
  auto E = [id](const Formula& g) { return mapE(g, hooksFor(id)); };
  switch (id) {
    case MappingId::E:
      break;
    case MappingId::Epm:
      h.boxtoPos = [E](const Formula& a, const Formula& c) {
        return F::boxto(E(a), F::boxto(E(F::neg(a)), E(c)));
      };
      h.boxtoNeg = [E](const Formula& a, const Formula& c) {
        return F::diamto(E(a), F::diamto(E(F::neg(a)), E(F::neg(c))));
      };
      break;
    case MappingId::Emp:
      h.boxtoPos = [E](const Formula& a, const Formula& c) {
        return F::boxto(E(F::neg(a)), F::boxto(E(a), E(c)));
      };
      h.boxtoNeg = [E](const Formula& a, const Formula& c) {
        return F::diamto(E(F::neg(a)), F::diamto(E(a), E(F::neg(c))));
      };
      break;
    case MappingId::Eplus:
      h.boxtoPos = [E](const Formula& a, const Formula& c) {
        return F::boxto(E(a), E(c));
      };
      h.boxtoNeg = [E](const Formula& a, const Formula& c) {
        return F::diamto(E(a), E(F::neg(c)));
      };
      break;
    case MappingId::Eminus:
      h.boxtoPos = [E](const Formula& a, const Formula& c) {
        return F::boxto(E(F::neg(a)), E(c));
      };
      h.boxtoNeg = [E](const Formula& a, const Formula& c) {
        return F::diamto(E(F::neg(a)), E(F::neg(c)));
      };
      break;
    case MappingId::Em:
      h.boxPos = [E](const Formula& a) { return F::box(E(a)); };
      h.boxNeg = [E](const Formula& a) { return F::diamond(E(F::neg(a))); };
      break;
    default:
      throw std::logic_error("hooksFor: not an E-family mapping");
  }
  return h;
}

Formula mapTr(const Formula& f, const Formula& anchor, bool keepDiamto) {
  auto rec = [&](const Formula& g) { return mapTr(g, anchor, keepDiamto); };
  switch (f.conn()) {
    case Conn::Atom: return f;
    case Conn::Neg: return F::neg(rec(f.left()));
    case Conn::And: return F::conj(rec(f.left()), rec(f.right()));
    case Conn::Or: return F::disj(rec(f.left()), rec(f.right()));
    case Conn::Imp: return F::imp(rec(f.left()), rec(f.right()));
    case Conn::Box: return F::boxto(anchor, rec(f.left()));
    case Conn::Diamond:
      return keepDiamto ? F::diamto(anchor, rec(f.left()))
                        : expandDiamTo(anchor, rec(f.left()));
    default:
      throw IllFormed("conditional connective in a modal-translation source");
  }
}

Formula mapTrBar(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom: return f;
    case Conn::Neg: return F::neg(mapTrBar(f.left()));
    case Conn::And: return F::conj(mapTrBar(f.left()), mapTrBar(f.right()));
    case Conn::Or: return F::disj(mapTrBar(f.left()), mapTrBar(f.right()));
    case Conn::Imp: return F::imp(mapTrBar(f.left()), mapTrBar(f.right()));
    case Conn::BoxTo: return F::box(mapTrBar(f.right()));
    default:
      throw IllFormed("modal connective in a conditional-translation source");
  }
}

}  // namespace

Formula applyMapping(const Mapping& m, const Formula& f) {
  switch (m.id) {
    case MappingId::E:
    case MappingId::Epm:
    case MappingId::Emp:
    case MappingId::Eplus:
    case MappingId::Eminus:
    case MappingId::Em:
      // <>-> and <> are abbreviations in the source languages here.
      return mapE(expandSugar(f), hooksFor(m.id));
    case MappingId::TrI: {
      if (!m.anchor) throw AnchorMissing("tri needs an anchor formula");
      return mapTr(f, m.anchor, true);
    }
    case MappingId::Tr: {
      if (!m.anchor) throw AnchorMissing("tr needs an anchor formula");
      if (auto bad = wellFormedIn(m.anchor, LanguageId::LBoxto))
        throw IllFormed("tr anchor: " + *bad);
      return mapTr(expandSugar(f), m.anchor, false);
    }
    case MappingId::TrBar:
      return mapTrBar(expandSugar(f));
  }
  throw std::logic_error("applyMapping: bad mapping");
}

// ---------------------------------------------------------------------------
// Proof translation
// ---------------------------------------------------------------------------

namespace {

Substitution trSubst(const Substitution& sigma, const Formula& anchor) {
  Substitution out;
  for (const auto& [name, f] : sigma)
    out[name] = mapTr(expandSugar(f), anchor, false);
  return out;
}

Substitution trBarSubst(const Substitution& sigma) {
  Substitution out;
  for (const auto& [name, f] : sigma) out[name] = mapTrBar(expandSugar(f));
  return out;
}

bool isN4Axiom(SchemaId id) {
  switch (id) {
    case SchemaId::Alpha1: case SchemaId::Alpha2: case SchemaId::Alpha3:
    case SchemaId::Alpha4: case SchemaId::Alpha5: case SchemaId::Alpha6:
    case SchemaId::Alpha7: case SchemaId::Alpha8:
    case SchemaId::An1: case SchemaId::An2: case SchemaId::An3: case SchemaId::An4:
      return true;
    default:
      return false;
  }
}

}  // namespace

Derivation translateProofToN4CK(const Derivation& d, const Formula& anchor) {
  return translateProofToN4CK(d, anchor, scriptCorpus());
}

Derivation translateProofToN4CK(const Derivation& src, const Formula& anchor,
                                const ScriptRegistry& registry) {
  if (src.system != SystemId::FSKd)
    throw UnmappableStep("translateProofToN4CK: source is not an FSKd derivation");
  if (auto e = checkDerivation(src, registry))
    throw SourceUnchecked("source fails at step " + std::to_string(e->step) + ": " + e->message);
  if (auto bad = wellFormedIn(anchor, LanguageId::LBoxto))
    throw IllFormed("anchor: " + *bad);

  Derivation d = expandCites(src, registry);
  auto tr = [&](const Formula& f) { return mapTr(expandSugar(f), anchor, false); };

  const Script* rmbox = registry.find("RMbox");
  const Script* rmdiam = registry.find("RMdiam");
  std::map<Atom, Formula> id;  // per-use substitutions built below

  DerivationBuilder b(SystemId::N4CK, d.mode);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < d.steps.size(); i++) {
    const auto& [f0, j] = d.steps[i];
    const Formula f = expandSugar(f0);
    const Formula tf = tr(f);
    const int idx = static_cast<int>(i);
    switch (j.kind) {
      case Justification::Kind::Premise:
        remap[idx] = b.premise(tf);
        break;
      case Justification::Kind::N4Step: {
        std::vector<int> refs;
        for (int r : j.refs) refs.push_back(remap.at(r));
        remap[idx] = b.n4(refs, tf);
        break;
      }
      case Justification::Kind::Rule: {
        if (j.rule == RuleId::MP) {
          remap[idx] = b.rule(RuleId::MP, {remap.at(j.refs[0]), remap.at(j.refs[1])}, tf);
        } else if (j.rule == RuleId::RmBox || j.rule == RuleId::RmDiam) {
          const Formula& prem = expandSugar(d.steps[j.refs[0]].first);
          std::map<Atom, Formula> sigma = {{Atom{false, 0}, tr(prem.left())},
                                           {Atom{false, 1}, tr(prem.right())},
                                           {Atom{false, 2}, anchor}};
          const Script* s = j.rule == RuleId::RmBox ? rmbox : rmdiam;
          remap[idx] = b.inlineScript(*s, sigma, {remap.at(j.refs[0])});
        } else {
          throw UnmappableStep("rule " + ruleName(j.rule) + " has no translation");
        }
        break;
      }
      case Justification::Kind::Axiom: {
        if (isN4Axiom(j.schema)) {
          remap[idx] = b.axiom(j.schema, trSubst(j.subst, anchor));
          break;
        }
        const Formula A = j.subst.count("phi") ? tr(j.subst.at("phi")) : Formula();
        const Formula B = j.subst.count("psi") ? tr(j.subst.at("psi")) : Formula();
        switch (j.schema) {
          case SchemaId::Ma1: {
            int ax = b.axiom(SchemaId::A1, {{"phi", anchor}, {"psi", A}, {"chi", B}});
            remap[idx] = b.n4({ax}, tf);
            break;
          }
          case SchemaId::Ma2:
            remap[idx] = b.axiom(SchemaId::A4, {{"phi", anchor}, {"psi", A}});
            break;
          case SchemaId::Ma3:
            remap[idx] =
                b.cite("T4", {{"p0", anchor}, {"p1", A}, {"p2", B}}, tf);
            break;
          case SchemaId::Ma4: {
            const Script* t5 = registry.find("T5");
            Formula inst = substAtoms(
                t5->derivation.goal.formula,
                {{Atom{false, 0}, anchor}, {Atom{false, 1}, A}, {Atom{false, 2}, B}});
            int c = b.cite("T5", {{"p0", anchor}, {"p1", A}, {"p2", B}}, inst);
            remap[idx] = b.n4({c}, tf);
            break;
          }
          case SchemaId::Ma5:
            remap[idx] = b.axiom(SchemaId::A3, {{"phi", anchor}, {"psi", A}, {"chi", B}});
            break;
          case SchemaId::Ma6:
            remap[idx] = b.cite("T6", {{"p0", anchor}, {"p1", A}}, tf);
            break;
          default:
            throw UnmappableStep("axiom " + schemaName(j.schema) + " has no translation");
        }
        break;
      }
      case Justification::Kind::Cite:
        throw std::logic_error("translateProofToN4CK: cite after expansion");
    }
  }
  (void)id;

  Goal goal = d.goal;
  if (goal.formula) goal.formula = tr(goal.formula);
  for (auto& g : goal.delta) g = tr(g);
  return b.finish(goal);
}

Derivation translateProofToFSKd(const Derivation& d) {
  return translateProofToFSKd(d, scriptCorpus());
}

Derivation translateProofToFSKd(const Derivation& src, const ScriptRegistry& registry) {
  if (src.system != SystemId::N4CK)
    throw UnmappableStep("translateProofToFSKd: source is not an N4CK derivation");
  if (auto e = checkDerivation(src, registry))
    throw SourceUnchecked("source fails at step " + std::to_string(e->step) + ": " + e->message);

  Derivation d = expandCites(src, registry);
  auto tr = [](const Formula& f) { return mapTrBar(expandSugar(f)); };

  const Script* rbox = registry.find("rbox");
  const Script* rnbox = registry.find("rnbox");

  DerivationBuilder b(SystemId::FSKd, d.mode);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < d.steps.size(); i++) {
    const auto& [f0, j] = d.steps[i];
    const Formula f = expandSugar(f0);
    const Formula tf = tr(f);
    const int idx = static_cast<int>(i);
    switch (j.kind) {
      case Justification::Kind::Premise:
        remap[idx] = b.premise(tf);
        break;
      case Justification::Kind::N4Step: {
        std::vector<int> refs;
        for (int r : j.refs) refs.push_back(remap.at(r));
        remap[idx] = b.n4(refs, tf);
        break;
      }
      case Justification::Kind::Rule: {
        switch (j.rule) {
          case RuleId::MP:
            remap[idx] = b.rule(RuleId::MP, {remap.at(j.refs[0]), remap.at(j.refs[1])}, tf);
            break;
          case RuleId::RCbox1:
          case RuleId::RCbox2: {
            // iff((chi []-> a), (chi []-> b)) maps to an r[]/r~[] application.
            const Formula& prem = expandSugar(d.steps[j.refs[0]].first);
            Formula a, bb;
            if (j.rule == RuleId::RCbox1) {
              a = prem.left().left();
              bb = prem.left().right();
            } else {
              a = prem.left().left().left();
              bb = prem.left().right().left();
            }
            std::map<Atom, Formula> sigma = {{Atom{false, 0}, tr(a)},
                                             {Atom{false, 1}, tr(bb)},
                                             {Atom{false, 2}, Formula::plain(2)}};
            const Script* s = j.rule == RuleId::RCbox1 ? rbox : rnbox;
            remap[idx] = b.inlineScript(*s, sigma, {remap.at(j.refs[0])});
            break;
          }
          case RuleId::RAbox:
            // conclusion maps to box(psi) <=> box(psi): an N4 tautology
            remap[idx] = b.n4({}, tf);
            break;
          default:
            throw UnmappableStep("rule " + ruleName(j.rule) + " has no reverse translation");
        }
        break;
      }
      case Justification::Kind::Axiom: {
        if (isN4Axiom(j.schema)) {
          remap[idx] = b.axiom(j.schema, trBarSubst(j.subst));
          break;
        }
        switch (j.schema) {
          case SchemaId::A1: {
            Formula A = mapTrBar(expandSugar(j.subst.at("psi")));
            Formula B = mapTrBar(expandSugar(j.subst.at("chi")));
            const Script* t2 = registry.find("t2");
            Formula inst = substAtoms(t2->derivation.goal.formula,
                                      {{Atom{false, 0}, A}, {Atom{false, 1}, B}});
            int c = b.cite("t2", {{"p0", A}, {"p1", B}}, inst);
            remap[idx] = b.n4({c}, tf);
            break;
          }
          case SchemaId::A2: {
            Formula A = mapTrBar(expandSugar(j.subst.at("psi")));
            Formula B = mapTrBar(expandSugar(j.subst.at("chi")));
            remap[idx] = b.cite("t3", {{"p0", A}, {"p1", B}}, tf);
            break;
          }
          case SchemaId::A3: {
            Formula A = mapTrBar(expandSugar(j.subst.at("psi")));
            Formula B = mapTrBar(expandSugar(j.subst.at("chi")));
            remap[idx] = b.axiom(SchemaId::Ma5, {{"phi", A}, {"psi", B}});
            break;
          }
          case SchemaId::A4: {
            Formula A = mapTrBar(expandSugar(j.subst.at("psi")));
            remap[idx] = b.axiom(SchemaId::Ma2, {{"phi", A}});
            break;
          }
          default:
            throw UnmappableStep("axiom " + schemaName(j.schema) + " has no reverse translation");
        }
        break;
      }
      case Justification::Kind::Cite:
        throw std::logic_error("translateProofToFSKd: cite after expansion");
    }
  }

  Goal goal = d.goal;
  if (goal.formula) goal.formula = tr(goal.formula);
  for (auto& g : goal.delta) g = tr(g);
  return b.finish(goal);
}

// ---------------------------------------------------------------------------
// Faithfulness harnesses
// ---------------------------------------------------------------------------

namespace {

std::string witnessText(const std::string& what, const Formula& f, WorldId w) {
  return what + " at world " + std::to_string(w) + " for " + print(f);
}

}  // namespace

HarnessReport faithfulnessHarness(MappingId id, int trials, const SearchBudget& budget) {
  HarnessReport report;
  std::mt19937_64 rng(budget.seed * 0x517cc1b727220a95ULL + 3);
  const std::vector<Atom> atoms = {{false, 0}, {false, 1}};
  const std::vector<Atom> extAtoms = {{false, 0}, {false, 1}, {true, 0}, {true, 1}};

  auto note = [&](const std::string& w) {
    report.violations++;
    if (report.firstWitness.empty()) report.firstWitness = w;
  };

  FormulaGen gen;
  gen.atoms = atoms;
  gen.maxDepth = 4;
  gen.allowBoxto = id == MappingId::Epm || id == MappingId::Emp || id == MappingId::Eplus ||
                   id == MappingId::Eminus;
  gen.allowDiamto = gen.allowBoxto;
  gen.allowBox = id == MappingId::Em;
  gen.allowDiamond = id == MappingId::Em;

  for (int t = 0; t < trials; t++) {
    SearchBudget b = budget;
    b.seed = rng();
    Formula phi = gen(rng);
    report.trials++;
    switch (id) {
      case MappingId::E: {
        Formula image = applyMapping(Mapping::plain(MappingId::E), phi);
        if (t % 2 == 0) {
          NelsonianModel m = sampleNelModel(atoms, b);
          CondIntModel mi;
          mi.worldCount = m.worldCount;
          mi.leq = m.leq;
          for (const auto& [a, s] : m.val.plus)
            if (!a.primed && s) mi.val.plus[a] = s;
          for (const auto& [a, s] : m.val.minus)
            if (!a.primed && s) mi.val.plus[Atom{true, a.index}] = s;
          for (int w = 0; w < m.worldCount; w++)
            if (evalN4(m, w, phi, Sign::Plus) != evalIntCK(mi, w, image)) {
              note(witnessText("E relabel mismatch", phi, w));
              break;
            }
        } else {
          CondIntModel mi = sampleCondIntModel(extAtoms, b);
          mi.blocks.clear();
          NelsonianModel m;
          m.worldCount = mi.worldCount;
          m.leq = mi.leq;
          for (const auto& [a, s] : mi.val.plus) {
            if (!s) continue;
            if (a.primed)
              m.val.minus[Atom{false, a.index}] |= s;
            else
              m.val.plus[a] |= s;
          }
          for (int w = 0; w < m.worldCount; w++)
            if (evalN4(m, w, phi, Sign::Plus) != evalIntCK(mi, w, image)) {
              note(witnessText("E reverse relabel mismatch", phi, w));
              break;
            }
        }
        break;
      }
      case MappingId::Epm:
      case MappingId::Emp: {
        const RoleOrder order =
            id == MappingId::Epm ? RoleOrder::PlusFirst : RoleOrder::MinusFirst;
        Formula image = applyMapping(Mapping::plain(id), phi);
        if (t % 2 == 0) {
          CondNelsonianModel m = sampleCondModel(atoms, b);
          CondIntModel mi = toCondInt(m, order);
          for (int w = 0; w < m.worldCount(); w++)
            if (evalN4CK(m, w, phi, Sign::Plus) != evalIntCK(mi, w, image)) {
              note(witnessText(mappingName(id) + " triple-model mismatch", phi, w));
              break;
            }
        } else {
          CondIntModel mi = sampleCondIntModel(extAtoms, b);
          CondNelsonianModel m = toCondNelson(mi, order);
          for (int w = 0; w < mi.worldCount; w++)
            if (evalN4CK(m, w, phi, Sign::Plus) != evalIntCK(mi, w, image)) {
              note(witnessText(mappingName(id) + " composition mismatch", phi, w));
              break;
            }
        }
        break;
      }
      case MappingId::Eplus:
      case MappingId::Eminus: {
        const RoleOrder order =
            id == MappingId::Eplus ? RoleOrder::PlusFirst : RoleOrder::MinusFirst;
        Formula image = applyMapping(Mapping::plain(id), phi);
        CondIntModel mi = sampleCondIntModel(extAtoms, b);
        CondNelsonianModel m = toCondNelsonSingleRole(mi, order);
        for (int w = 0; w < mi.worldCount; w++)
          if (evalN4CK(m, w, phi, Sign::Plus) != evalIntCK(mi, w, image)) {
            note(witnessText(mappingName(id) + " preservation mismatch", phi, w));
            break;
          }
        break;
      }
      case MappingId::Em: {
        Formula image = applyMapping(Mapping::plain(MappingId::Em), phi);
        ModalModel m = sampleModalModel(atoms, b);
        if (t % 2 == 0) {
          ModalModel mi = relabelModal(m, RelabelDirection::NelsonToInt);
          for (int w = 0; w < m.worldCount; w++)
            if (evalModal(m, w, phi, Sign::Plus) != evalModalInt(mi, w, image)) {
              note(witnessText("em relabel mismatch", phi, w));
              break;
            }
        } else {
          ModalModel mi = relabelModal(m, RelabelDirection::NelsonToInt);
          ModalModel back = relabelModal(mi, RelabelDirection::IntToNelson);
          for (int w = 0; w < mi.worldCount; w++)
            if (evalModal(back, w, phi, Sign::Plus) != evalModalInt(mi, w, image)) {
              note(witnessText("em reverse relabel mismatch", phi, w));
              break;
            }
        }
        break;
      }
      default:
        throw IllFormed("faithfulnessHarness: mapping has no paired model transformation");
    }
  }
  return report;
}

CollisionWitness bothDirectionsWitness(MappingId id, const SearchBudget& budget) {
  CollisionWitness out;
  const Formula p1 = Formula::plain(1), p2 = Formula::plain(2), p3 = Formula::plain(3);
  Formula gamma, delta;
  if (id == MappingId::Eplus) {
    gamma = Formula::boxto(Formula::conj(p1, Formula::neg(p2)), p3);
    delta = Formula::boxto(Formula::neg(Formula::imp(p1, p2)), p3);
  } else if (id == MappingId::Eminus) {
    gamma = Formula::boxto(Formula::neg(Formula::conj(p1, Formula::neg(p2))), p3);
    delta = Formula::boxto(Formula::imp(p1, p2), p3);
  } else {
    throw IllFormed("bothDirectionsWitness: only eplus/eminus fail faithfulness");
  }
  Formula gi = applyMapping(Mapping::plain(id), gamma);
  Formula di = applyMapping(Mapping::plain(id), delta);
  if (gi != di) return out;  // no syntactic collision, no witness

  SearchOutcome found = findCountermodel(SearchLogic::N4CK, {gamma}, {delta}, budget);
  if (!found.found()) return out;
  out.found = true;
  out.gamma = gamma;
  out.delta = delta;
  out.image = gi;
  out.certificate = *found.certificate;
  return out;
}

}  // namespace n4ck
