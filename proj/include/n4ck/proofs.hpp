#ifndef N4CK_PROOFS_HPP
#define N4CK_PROOFS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "n4ck/decide.hpp"
#include "n4ck/syntax.hpp"

namespace n4ck {

// ---------------------------------------------------------------------------
// Systems, schemas, rules
// ---------------------------------------------------------------------------

enum class SystemId { ILplus, N4, IL, CL, N4CK, N4CKprime, CK, FSKd };

enum class SchemaId {
  Alpha1, Alpha2, Alpha3, Alpha4, Alpha5, Alpha6, Alpha7, Alpha8,
  An1, An2, An3, An4, An5, An6, An7,
  A1, A2, A3, A4,
  Ma1, Ma2, Ma3, Ma4, Ma5, Ma6,  // the modal (a1)-(a6)
};

enum class RuleId { MP, RAbox, RCbox1, RCbox2, RAprimeBox, RmBox, RmDiam };

struct SystemInfo {
  SystemId id;
  std::string name;
  std::vector<SchemaId> axioms;
  std::vector<RuleId> rules;
  LanguageId lang;
  bool iotaClosed;   // admits the absurdity goal (S^iota)
  bool n4Steps;      // N4-consequence steps licensed
  bool classicalSteps;  // propositional steps may use the classical base
};

const SystemInfo& systemInfo(SystemId id);
const Schema& schemaOf(SchemaId id);
std::string schemaName(SchemaId id);
std::optional<SchemaId> schemaFromName(const std::string& name);
std::string ruleName(RuleId id);
std::optional<RuleId> ruleFromName(const std::string& name);
std::string systemName(SystemId id);
std::optional<SystemId> systemFromName(const std::string& name);

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

enum class DerivationMode { Theorem, Consequence, DerivedRule };

struct Goal {
  enum class Kind { SingleFormula, DeltaDisjunction, Absurdity };
  Kind kind = Kind::SingleFormula;
  Formula formula;              // SingleFormula
  std::vector<Formula> delta;   // DeltaDisjunction

  static Goal single(Formula f) { return {Kind::SingleFormula, std::move(f), {}}; }
  static Goal deltaDisj(std::vector<Formula> fs) { return {Kind::DeltaDisjunction, {}, std::move(fs)}; }
  static Goal absurdity() { return {Kind::Absurdity, {}, {}}; }
};

struct Justification {
  enum class Kind { Axiom, Premise, Rule, N4Step, Cite };
  Kind kind = Kind::N4Step;
  SchemaId schema = SchemaId::Alpha1;
  Substitution subst;       // Axiom and Cite bindings
  int premise = -1;
  RuleId rule = RuleId::MP;
  std::vector<int> refs;    // Rule and N4Step, strictly backward
  std::string cite;

  static Justification axiom(SchemaId s, Substitution sigma);
  static Justification prem(int index);
  static Justification byRule(RuleId r, std::vector<int> refs);
  static Justification n4(std::vector<int> refs);
  static Justification citation(const std::string& scriptId, Substitution sigma);
};

struct Derivation {
  SystemId system = SystemId::N4CK;
  DerivationMode mode = DerivationMode::Theorem;
  std::vector<Formula> premises;
  Goal goal;
  std::vector<std::pair<Formula, Justification>> steps;
};

struct StepError {
  int step = -1;  // -1: derivation-level
  std::string code;  // BadRef, SchemaMismatch, RuleShapeError, ModeViolation,
                     // N4StepRefuted, GoalMismatch, IllFormed, CiteError
  std::string message;
};

// ---------------------------------------------------------------------------
// Scripts
// ---------------------------------------------------------------------------

// A schematic derivation: `vars` lists the plain atoms that play the role of
// metavariables. Instantiation is simultaneous substitution for those atoms.
struct Script {
  std::string id;
  std::vector<Atom> vars;
  Derivation derivation;
  std::string comment;  // emitted as leading # lines in script files
};

class ScriptRegistry {
 public:
  // Checks the script against the registry built so far; throws on failure.
  void add(Script s);
  const Script* find(const std::string& id) const;
  const std::vector<Script>& all() const { return scripts_; }

 private:
  std::vector<Script> scripts_;
  std::map<std::string, std::size_t> index_;
};

// The bundled transcriptions of the appendix derivations, checked at first
// use: RCbox/Nec/RMbox/RMnbox/RMdiam/T1-T6 (N4CK), T1ck/A2ck/A3ck/RC2ck (CK),
// t1/rmnbox/rbox/rnbox/t2/t3 (FSKd).
const ScriptRegistry& scriptCorpus();

std::optional<StepError> checkDerivation(const Derivation& d);
std::optional<StepError> checkDerivation(const Derivation& d, const ScriptRegistry& registry);

// ---------------------------------------------------------------------------
// Derivation surgery
// ---------------------------------------------------------------------------

// Incremental construction with mechanical inlining of previously built
// scripts (substitute metavariable atoms, remap references, drop premise
// steps onto host steps).
class DerivationBuilder {
 public:
  DerivationBuilder(SystemId system, DerivationMode mode) {
    d_.system = system;
    d_.mode = mode;
  }

  int premise(Formula f);
  int axiom(SchemaId id, const Substitution& sigma);
  int rule(RuleId r, std::vector<int> refs, Formula f);
  int n4(std::vector<int> refs, Formula f);
  int cite(const std::string& scriptId, const Substitution& sigma, Formula f);
  int inlineScript(const Script& s, const std::map<Atom, Formula>& sigma,
                   const std::vector<int>& premiseRefs);
  int raw(Formula f, Justification j);

  const Formula& formulaAt(int i) const { return d_.steps[i].first; }
  Derivation finish(Goal goal);

 private:
  Derivation d_;
};

// Replaces every Cite step by the cited script's body, recursively.
Derivation expandCites(const Derivation& d, const ScriptRegistry& registry);

// Deduction-theorem transforms. addPremiseMP turns a derivation of an
// implication into one of its consequent from the extra premise; discharge
// goes the other way for rule-free derivations (Premise/Axiom/Cite/N4Step/MP).
Derivation addPremiseMP(const Derivation& d);
Derivation dischargePremise(const Derivation& d, int premiseIndex);

// Mechanical port of an N4CK script to CK: N4-valid axiom steps become
// N4 steps, A2 instances cite the CK derivation of A2, RCbox2 applications
// inline its CK derivation, cites are remapped to ported ids.
Script portScriptToCK(const Script& s, const ScriptRegistry& source, ScriptRegistry& target);

// ---------------------------------------------------------------------------
// Soundness sampling
// ---------------------------------------------------------------------------

struct SoundnessReport {
  struct AxiomFailure {
    int schemaIndex;
    Formula instance;
    int modelIndex;
    WorldId world;
  };
  struct RuleFailure {
    RuleId rule;
    Formula conclusion;
    int modelIndex;
    WorldId world;
  };
  std::vector<AxiomFailure> axiomFailures;
  std::vector<RuleFailure> ruleFailures;
  int axiomChecks = 0;
  int ruleChecks = 0;
  int ruleNonVacuous = 0;
};

SoundnessReport soundnessSample(SystemId system, int trials, std::uint64_t seed);
// Same sampling against an explicit schema list (for fault injection).
SoundnessReport soundnessSampleSchemas(SystemId system, const std::vector<Schema>& schemas,
                                       int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Script files
// ---------------------------------------------------------------------------

std::string writeScript(const Script& s);
Script parseScript(const std::string& text);

}  // namespace n4ck

#endif
