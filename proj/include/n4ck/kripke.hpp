#ifndef N4CK_KRIPKE_HPP
#define N4CK_KRIPKE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "n4ck/syntax.hpp"

namespace n4ck {

// Worlds are dense indices 0..worldCount-1; world sets are bit masks.
// Models are capped at 64 worlds, far beyond anything the finite
// constructions here produce.
using WorldId = int;
using WorldSet = std::uint64_t;

constexpr int kMaxWorlds = 64;

inline WorldSet worldBit(WorldId w) { return WorldSet{1} << w; }
inline bool inSet(WorldSet s, WorldId w) { return (s >> w) & 1; }
inline WorldSet fullSet(int n) { return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1; }
std::vector<WorldId> setToList(WorldSet s);

// Binary relation as successor-row masks: rows[v] = {u | (v,u) in R}.
struct RelMat {
  std::vector<WorldSet> rows;

  static RelMat empty(int n) { return RelMat{std::vector<WorldSet>(n, 0)}; }
  static RelMat identity(int n);
  int worldCount() const { return static_cast<int>(rows.size()); }
  bool at(WorldId v, WorldId u) const { return inSet(rows[v], u); }
  void add(WorldId v, WorldId u) { rows[v] |= worldBit(u); }
  bool isEmpty() const;
  friend bool operator==(const RelMat& a, const RelMat& b) { return a.rows == b.rows; }
};

RelMat compose(const RelMat& a, const RelMat& b);
RelMat reflTransClosure(RelMat r);

// Ordered pair of world sets: (positive extension, negative extension).
struct BiSet {
  WorldSet plus = 0;
  WorldSet minus = 0;
  friend bool operator==(const BiSet& a, const BiSet& b) {
    return a.plus == b.plus && a.minus == b.minus;
  }
  friend bool operator!=(const BiSet& a, const BiSet& b) { return !(a == b); }
  friend bool operator<(const BiSet& a, const BiSet& b) {
    return a.plus != b.plus ? a.plus < b.plus : a.minus < b.minus;
  }
};

// Positive/negative atom extensions. `minus` stays empty in the
// intuitionistic flavors.
struct Valuation {
  std::map<Atom, WorldSet> plus;
  std::map<Atom, WorldSet> minus;

  WorldSet plusOf(const Atom& a) const;
  WorldSet minusOf(const Atom& a) const;
};

struct NelsonianModel {
  int worldCount = 0;
  RelMat leq;
  Valuation val;
  bool extended = false;
};

// Conditional accessibility, stored as a finite partial map with empty
// default. A block carries a stratum: a lookup key is normalized by
// intersecting both components with the stratum before the exact match.
// Plain models have one block whose stratum is the full carrier; the
// dp-join and the claim-1/claim-2 constructions produce proper strata.
// PlusOnly/MinusOnly matching keys on one component only (the Remark 3.4
// single-role companions).
enum class KeyMatch { Exact, PlusOnly, MinusOnly };

struct CondRelBlock {
  WorldSet stratum = 0;
  KeyMatch match = KeyMatch::Exact;
  std::vector<std::pair<BiSet, RelMat>> entries;
};

struct CondNelsonianModel {
  NelsonianModel base;
  std::vector<CondRelBlock> blocks;

  int worldCount() const { return base.worldCount; }
  // Effective relation at a bi-set key (union over blocks, empty default).
  RelMat lookup(const BiSet& key) const;
};

struct IntRelBlock {
  WorldSet stratum = 0;
  std::vector<std::pair<WorldSet, RelMat>> entries;
};

// Extended conditional intuitionistic model: single positive valuation over
// p- and q-atoms, accessibility keyed by single world sets.
struct CondIntModel {
  int worldCount = 0;
  RelMat leq;
  Valuation val;  // plus only
  std::vector<IntRelBlock> blocks;

  RelMat lookup(WorldSet key) const;
};

// Nelsonian or intuitionistic modal model (one accessibility relation).
struct ModalModel {
  int worldCount = 0;
  RelMat leq;
  Valuation val;
  RelMat r;
  bool nelsonian = true;  // false: intuitionistic flavor (vminus unused)
  bool extended = false;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
  std::string condition;  // "reflexivity", "transitivity", "mon", "c1", ...
  std::string witness;
};

std::vector<Violation> validate(const NelsonianModel& m);
std::vector<Violation> validate(const CondNelsonianModel& m);
std::vector<Violation> validate(const CondIntModel& m);
std::vector<Violation> validate(const ModalModel& m);

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

// One world w that both verifies and falsifies every given atom, with
// R = {(w, ({w},{w}), w)}. Verifies every formula over those atoms.
CondNelsonianModel singleWorldTotal(const std::vector<Atom>& atoms);

// Disjoint-union-with-root construction from the disjunction-property proof:
// worlds of m1 first, then m2, fresh root last; the root lies below every
// world and satisfies no atom; relations keep their strata.
std::pair<CondNelsonianModel, WorldId> joinWithRoot(const CondNelsonianModel& m1,
                                                    const CondNelsonianModel& m2);

// Which antecedent role keys the first conditional layer of the translated
// model: PlusFirst follows E^+/E^± (positive extension first), MinusFirst
// the E^- /E^∓ variants.
enum class RoleOrder { PlusFirst, MinusFirst };

// Conditional-intuitionistic companion: one fresh world per accessibility
// triple, relations split into an entry layer keyed by the (normalized)
// positive part and an exit layer keyed by the negative part. Requires a
// plain (single full-stratum block) input.
CondIntModel toCondInt(const CondNelsonianModel& m, RoleOrder order = RoleOrder::PlusFirst);

// Composition companion: R(X,Y) := R_X o R_Y (or R_Y o R_X for MinusFirst),
// p/q valuation split into positive/negative extensions.
CondNelsonianModel toCondNelson(const CondIntModel& m, RoleOrder order = RoleOrder::PlusFirst);

// Remark 3.4 preservation variants: R(X,Y) := R_X (PlusFirst) or R_Y.
CondNelsonianModel toCondNelsonSingleRole(const CondIntModel& m, RoleOrder order);

enum class RelabelDirection { NelsonToInt, IntToNelson };

// Same frame, valuation relabeled p_i/q_i <-> V+/V-.
ModalModel relabelModal(const ModalModel& m, RelabelDirection direction);

// ---------------------------------------------------------------------------
// File format (canonical JSON, byte-reproducible)
// ---------------------------------------------------------------------------

enum class ModelKind { Nel, CNel, CInt, MNel, MInt };

struct AnyModel {
  ModelKind kind;
  NelsonianModel nel;        // Nel
  CondNelsonianModel cnel;   // CNel
  CondIntModel cint;         // CInt
  ModalModel modal;          // MNel / MInt
};

std::string writeModel(const NelsonianModel& m);
std::string writeModel(const CondNelsonianModel& m);
std::string writeModel(const CondIntModel& m);
std::string writeModel(const ModalModel& m);
AnyModel readModel(const std::string& text);

}  // namespace n4ck

#endif
