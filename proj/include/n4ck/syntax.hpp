#ifndef N4CK_SYNTAX_HPP
#define N4CK_SYNTAX_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace n4ck {

// ---------------------------------------------------------------------------
// Atoms and formulas
// ---------------------------------------------------------------------------

// Propositional letters. Plain atoms render as p<i>, primed as q<i>; primed
// atoms are only well-formed in the extended languages.
struct Atom {
  bool primed = false;
  std::uint32_t index = 0;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.primed == b.primed && a.index == b.index;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.primed != b.primed) return !a.primed;
    return a.index < b.index;
  }
};

std::string atomName(const Atom& a);

enum class Conn : std::uint8_t {
  Atom,
  Neg,      // strong negation ~
  And,      // conjunction
  Or,       // disjunction
  Imp,      // implication ->
  BoxTo,    // would-conditional []->
  DiamTo,   // might-conditional <>->
  Box,      // necessity []
  Diamond,  // possibility <>
};

bool isBinary(Conn c);
bool isUnary(Conn c);

// Immutable formula tree with shared subterms. Copy is cheap (shared_ptr).
// Structural equality; node count and a structural hash are cached.
class Formula {
 public:
  Formula() = default;

  static Formula atom(Atom a);
  static Formula plain(std::uint32_t index);
  static Formula primed(std::uint32_t index);
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula boxto(Formula ante, Formula cons);
  static Formula diamto(Formula ante, Formula cons);
  static Formula box(Formula f);
  static Formula diamond(Formula f);

  explicit operator bool() const { return n_ != nullptr; }

  Conn conn() const;
  const Atom& atomValue() const;
  const Formula& left() const;  // also the unary child
  const Formula& right() const;

  std::uint32_t size() const;  // node count
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  // Deterministic total order (size, then structure).
  static int compare(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  static Formula make(Conn c, Atom a, Formula l, Formula r);
  const Node& node() const;
  std::shared_ptr<const Node> n_;
};

struct Formula::Node {
  Conn conn;
  Atom atom;
  Formula lhs, rhs;
  std::uint32_t size;
  std::size_t hash;
};

inline const Formula::Node& Formula::node() const {
  if (!n_) throw std::logic_error("empty Formula");
  return *n_;
}
inline Conn Formula::conn() const { return node().conn; }
inline const Atom& Formula::atomValue() const { return node().atom; }
inline const Formula& Formula::left() const { return node().lhs; }
inline const Formula& Formula::right() const { return node().rhs; }
inline std::uint32_t Formula::size() const { return node().size; }
inline std::size_t Formula::hash() const { return node().hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Abbreviations. Iff/StrongImp/StrongIff always expand; the might-conditional
// and the modal diamond have explicit constructors, these return the expanded
// forms for contexts where they are abbreviations.
Formula makeIff(Formula a, Formula b);          // (a->b) /\ (b->a)
Formula makeStrongImp(Formula a, Formula b);    // (a->b) /\ (~b->~a)
Formula makeStrongIff(Formula a, Formula b);    // strongImp both ways
Formula expandDiamTo(Formula ante, Formula cons);  // ~(ante []-> ~cons)
Formula expandDiamond(Formula f);                  // ~[]~f
// Recursively expands every DiamTo/Diamond node.
Formula expandSugar(const Formula& f);

// Simultaneous substitution of formulas for atoms (propositional, no capture).
Formula substAtoms(const Formula& f, const std::map<Atom, Formula>& sigma);

std::vector<Atom> atomsOf(const Formula& f);
std::vector<Atom> atomsOf(const std::vector<Formula>& fs);

// ---------------------------------------------------------------------------
// Languages
// ---------------------------------------------------------------------------

enum class LanguageId {
  L,              // p-atoms; ~ /\ \/ ->
  LBoxto,         // L + []->  (<>-> admitted as an abbreviation)
  LeBoxtoDiamto,  // p,q-atoms; /\ \/ -> []-> <>->   (positive, <>-> elementary)
  LBox,           // L + []    (<> admitted as an abbreviation)
  LBoxDiamond,    // L + [] <>
  LeBoxDiamond,   // p,q-atoms; /\ \/ -> [] <>       (positive)
  LePlus,         // p,q-atoms; /\ \/ ->             (positive)
};

std::string languageName(LanguageId lang);
std::optional<LanguageId> languageFromName(const std::string& name);

// Empty result means well-formed; otherwise a description of the offence.
std::optional<std::string> wellFormedIn(const Formula& f, LanguageId lang);

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, Language };
  Kind kind;
  std::size_t position;
  ParseError(Kind k, std::size_t pos, const std::string& msg)
      : std::runtime_error(msg), kind(k), position(pos) {}
};

// Grammar (ASCII): atoms p<digits>/q<digits>; prefix ~ [] <> (tightest);
// /\ (left), \/ (left); -> => []-> <>-> share one right-associative level;
// <-> <=> are loosest and non-associative. =>, <->, <=> expand at parse time.
Formula parse(const std::string& text, LanguageId lang);

std::string print(const Formula& f);
std::string printUnicode(const Formula& f);

// ---------------------------------------------------------------------------
// Schemas (formula skeletons with metavariable leaves)
// ---------------------------------------------------------------------------

using Substitution = std::map<std::string, Formula>;

class Schema {
 public:
  Schema() = default;

  static Schema meta(const std::string& name);
  static Schema lift(const Formula& f);  // no metavariables
  static Schema atom(Atom a);
  static Schema neg(Schema f);
  static Schema conj(Schema l, Schema r);
  static Schema disj(Schema l, Schema r);
  static Schema imp(Schema l, Schema r);
  static Schema boxto(Schema l, Schema r);
  static Schema diamto(Schema l, Schema r);
  static Schema box(Schema f);
  static Schema diamond(Schema f);

  static Schema iff(Schema a, Schema b);
  static Schema strongImp(Schema a, Schema b);
  static Schema strongIff(Schema a, Schema b);

  explicit operator bool() const { return n_ != nullptr; }
  bool isMeta() const;
  const std::string& metaName() const;
  Conn conn() const;
  const Atom& atomValue() const;
  const Schema& left() const;
  const Schema& right() const;

  std::vector<std::string> metaNames() const;

 private:
  struct Node;
  static Schema make(std::optional<std::string> meta, Conn c, Atom a, Schema l, Schema r);
  const Node& node() const;
  std::shared_ptr<const Node> n_;
};

struct Schema::Node {
  std::optional<std::string> meta;
  Conn conn;
  Atom atom;
  Schema lhs, rhs;
};

inline const Schema::Node& Schema::node() const {
  if (!n_) throw std::logic_error("empty Schema");
  return *n_;
}
inline bool Schema::isMeta() const { return node().meta.has_value(); }
inline const std::string& Schema::metaName() const { return *node().meta; }
inline Conn Schema::conn() const { return node().conn; }
inline const Atom& Schema::atomValue() const { return node().atom; }
inline const Schema& Schema::left() const { return node().lhs; }
inline const Schema& Schema::right() const { return node().rhs; }

struct MissingBinding : std::runtime_error {
  explicit MissingBinding(const std::string& name)
      : std::runtime_error("no binding for metavariable " + name), name(name) {}
  std::string name;
};

// Most general substitution with applySubst(s, sigma) == f, if one exists.
std::optional<Substitution> matchSchema(const Schema& s, const Formula& f);
Formula applySubst(const Schema& s, const Substitution& sigma);

// ---------------------------------------------------------------------------
// Antecedent extraction
// ---------------------------------------------------------------------------

// All distinct first arguments of []->/<>->, collected in post order (inner
// conditionals before their hosts) and stably sorted by increasing size. This
// is the evaluation and relation-assignment order: every conditional nested
// inside an antecedent appears before it.
std::vector<Formula> antecedents(const Formula& f);
std::vector<Formula> antecedents(const std::vector<Formula>& fs);

}  // namespace n4ck

#endif
