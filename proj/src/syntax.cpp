#include "n4ck/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace n4ck {

std::string atomName(const Atom& a) {
  return (a.primed ? "q" : "p") + std::to_string(a.index);
}

bool isBinary(Conn c) {
  switch (c) {
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
    case Conn::BoxTo:
    case Conn::DiamTo:
      return true;
    default:
      return false;
  }
}

bool isUnary(Conn c) {
  return c == Conn::Neg || c == Conn::Box || c == Conn::Diamond;
}

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

namespace {
std::size_t hashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

Formula Formula::make(Conn c, Atom a, Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->conn = c;
  n->atom = a;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  std::uint32_t size = 1;
  std::size_t h = hashCombine(static_cast<std::size_t>(c) + 1, 0);
  if (c == Conn::Atom) {
    h = hashCombine(h, (static_cast<std::size_t>(a.index) << 1) | (a.primed ? 1 : 0));
  }
  if (n->lhs) {
    size += n->lhs.size();
    h = hashCombine(h, n->lhs.hash());
  }
  if (n->rhs) {
    size += n->rhs.size();
    h = hashCombine(h, n->rhs.hash());
  }
  n->size = size;
  n->hash = h;
  Formula f;
  f.n_ = std::move(n);
  return f;
}

Formula Formula::atom(Atom a) { return make(Conn::Atom, a, {}, {}); }
Formula Formula::plain(std::uint32_t index) { return atom(Atom{false, index}); }
Formula Formula::primed(std::uint32_t index) { return atom(Atom{true, index}); }
Formula Formula::neg(Formula f) { return make(Conn::Neg, {}, std::move(f), {}); }
Formula Formula::conj(Formula l, Formula r) { return make(Conn::And, {}, std::move(l), std::move(r)); }
Formula Formula::disj(Formula l, Formula r) { return make(Conn::Or, {}, std::move(l), std::move(r)); }
Formula Formula::imp(Formula l, Formula r) { return make(Conn::Imp, {}, std::move(l), std::move(r)); }
Formula Formula::boxto(Formula l, Formula r) { return make(Conn::BoxTo, {}, std::move(l), std::move(r)); }
Formula Formula::diamto(Formula l, Formula r) { return make(Conn::DiamTo, {}, std::move(l), std::move(r)); }
Formula Formula::box(Formula f) { return make(Conn::Box, {}, std::move(f), {}); }
Formula Formula::diamond(Formula f) { return make(Conn::Diamond, {}, std::move(f), {}); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  if (a.conn() != b.conn()) return false;
  if (a.conn() == Conn::Atom) return a.atomValue() == b.atomValue();
  if (isUnary(a.conn())) return a.left() == b.left();
  return a.left() == b.left() && a.right() == b.right();
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (!a.n_) return -1;
  if (!b.n_) return 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.conn() != b.conn()) return a.conn() < b.conn() ? -1 : 1;
  if (a.conn() == Conn::Atom) {
    if (a.atomValue() == b.atomValue()) return 0;
    return a.atomValue() < b.atomValue() ? -1 : 1;
  }
  if (int c = compare(a.left(), b.left()); c != 0) return c;
  if (isBinary(a.conn())) return compare(a.right(), b.right());
  return 0;
}

Formula makeIff(Formula a, Formula b) {
  return Formula::conj(Formula::imp(a, b), Formula::imp(b, a));
}

Formula makeStrongImp(Formula a, Formula b) {
  return Formula::conj(Formula::imp(a, b),
                       Formula::imp(Formula::neg(b), Formula::neg(a)));
}

Formula makeStrongIff(Formula a, Formula b) {
  return Formula::conj(makeStrongImp(a, b), makeStrongImp(b, a));
}

Formula expandDiamTo(Formula ante, Formula cons) {
  return Formula::neg(Formula::boxto(std::move(ante), Formula::neg(std::move(cons))));
}

Formula expandDiamond(Formula f) {
  return Formula::neg(Formula::box(Formula::neg(std::move(f))));
}

Formula expandSugar(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
      return f;
    case Conn::Neg:
      return Formula::neg(expandSugar(f.left()));
    case Conn::Box:
      return Formula::box(expandSugar(f.left()));
    case Conn::Diamond:
      return expandDiamond(expandSugar(f.left()));
    case Conn::DiamTo:
      return expandDiamTo(expandSugar(f.left()), expandSugar(f.right()));
    case Conn::And:
      return Formula::conj(expandSugar(f.left()), expandSugar(f.right()));
    case Conn::Or:
      return Formula::disj(expandSugar(f.left()), expandSugar(f.right()));
    case Conn::Imp:
      return Formula::imp(expandSugar(f.left()), expandSugar(f.right()));
    case Conn::BoxTo:
      return Formula::boxto(expandSugar(f.left()), expandSugar(f.right()));
  }
  throw std::logic_error("expandSugar: bad connective");
}

Formula substAtoms(const Formula& f, const std::map<Atom, Formula>& sigma) {
  switch (f.conn()) {
    case Conn::Atom: {
      auto it = sigma.find(f.atomValue());
      return it == sigma.end() ? f : it->second;
    }
    case Conn::Neg:
      return Formula::neg(substAtoms(f.left(), sigma));
    case Conn::Box:
      return Formula::box(substAtoms(f.left(), sigma));
    case Conn::Diamond:
      return Formula::diamond(substAtoms(f.left(), sigma));
    case Conn::And:
      return Formula::conj(substAtoms(f.left(), sigma), substAtoms(f.right(), sigma));
    case Conn::Or:
      return Formula::disj(substAtoms(f.left(), sigma), substAtoms(f.right(), sigma));
    case Conn::Imp:
      return Formula::imp(substAtoms(f.left(), sigma), substAtoms(f.right(), sigma));
    case Conn::BoxTo:
      return Formula::boxto(substAtoms(f.left(), sigma), substAtoms(f.right(), sigma));
    case Conn::DiamTo:
      return Formula::diamto(substAtoms(f.left(), sigma), substAtoms(f.right(), sigma));
  }
  throw std::logic_error("substAtoms: bad connective");
}

namespace {
void collectAtoms(const Formula& f, std::set<Atom>& out) {
  if (f.conn() == Conn::Atom) {
    out.insert(f.atomValue());
    return;
  }
  if (f.left()) collectAtoms(f.left(), out);
  if (isBinary(f.conn())) collectAtoms(f.right(), out);
}
}  // namespace

std::vector<Atom> atomsOf(const Formula& f) {
  std::set<Atom> s;
  collectAtoms(f, s);
  return {s.begin(), s.end()};
}

std::vector<Atom> atomsOf(const std::vector<Formula>& fs) {
  std::set<Atom> s;
  for (const auto& f : fs) collectAtoms(f, s);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Languages
// ---------------------------------------------------------------------------

namespace {
struct LangInfo {
  bool primedAtoms;
  bool hasNeg;
  bool hasBoxto;
  bool diamtoElementary;  // <>-> part of the language (not just sugar)
  bool diamtoSugar;       // <>-> admitted as an abbreviation
  bool hasBox;
  bool diamondElementary;
  bool diamondSugar;
};

LangInfo langInfo(LanguageId lang) {
  switch (lang) {
    case LanguageId::L:
      return {false, true, false, false, false, false, false, false};
    case LanguageId::LBoxto:
      return {false, true, true, false, true, false, false, false};
    case LanguageId::LeBoxtoDiamto:
      return {true, false, true, true, true, false, false, false};
    case LanguageId::LBox:
      return {false, true, false, false, false, true, false, true};
    case LanguageId::LBoxDiamond:
      return {false, true, false, false, false, true, true, true};
    case LanguageId::LeBoxDiamond:
      return {true, false, false, false, false, true, true, true};
    case LanguageId::LePlus:
      return {true, false, false, false, false, false, false, false};
  }
  throw std::logic_error("bad LanguageId");
}
}  // namespace

std::string languageName(LanguageId lang) {
  switch (lang) {
    case LanguageId::L: return "L";
    case LanguageId::LBoxto: return "L[]->";
    case LanguageId::LeBoxtoDiamto: return "Le+([]->,<>->)";
    case LanguageId::LBox: return "L[]";
    case LanguageId::LBoxDiamond: return "L([],<>)";
    case LanguageId::LeBoxDiamond: return "Le+([],<>)";
    case LanguageId::LePlus: return "Le+";
  }
  throw std::logic_error("bad LanguageId");
}

std::optional<LanguageId> languageFromName(const std::string& name) {
  if (name == "l" || name == "L") return LanguageId::L;
  if (name == "lboxto" || name == "L[]->") return LanguageId::LBoxto;
  if (name == "leboxtodiamto" || name == "Le+([]->,<>->)") return LanguageId::LeBoxtoDiamto;
  if (name == "lbox" || name == "L[]") return LanguageId::LBox;
  if (name == "lboxdiamond" || name == "L([],<>)") return LanguageId::LBoxDiamond;
  if (name == "leboxdiamond" || name == "Le+([],<>)") return LanguageId::LeBoxDiamond;
  if (name == "leplus" || name == "Le+") return LanguageId::LePlus;
  return std::nullopt;
}

std::optional<std::string> wellFormedIn(const Formula& f, LanguageId lang) {
  const LangInfo info = langInfo(lang);
  std::optional<std::string> bad;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (bad) return;
    switch (g.conn()) {
      case Conn::Atom:
        if (g.atomValue().primed && !info.primedAtoms)
          bad = "atom " + atomName(g.atomValue()) + " not in " + languageName(lang);
        return;
      case Conn::Neg:
        if (!info.hasNeg) bad = "~ not in " + languageName(lang);
        break;
      case Conn::And:
      case Conn::Or:
      case Conn::Imp:
        break;
      case Conn::BoxTo:
        if (!info.hasBoxto) bad = "[]-> not in " + languageName(lang);
        break;
      case Conn::DiamTo:
        if (!(info.diamtoElementary || info.diamtoSugar))
          bad = "<>-> not in " + languageName(lang);
        else if (!info.diamtoElementary && !info.hasNeg)
          bad = "<>-> abbreviation needs ~ in " + languageName(lang);
        break;
      case Conn::Box:
        if (!info.hasBox) bad = "[] not in " + languageName(lang);
        break;
      case Conn::Diamond:
        if (!(info.diamondElementary || info.diamondSugar))
          bad = "<> not in " + languageName(lang);
        break;
    }
    if (bad) return;
    if (g.left()) walk(g.left());
    if (isBinary(g.conn())) walk(g.right());
  };
  walk(f);
  return bad;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  AtomTok, Neg, BoxPrefix, DiamondPrefix, And, Or, Imp, StrongImp,
  BoxTo, DiamTo, Iff, StrongIff, LParen, RParen, End
};

struct Token {
  Tok kind;
  Atom atom;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    skipWs();
    std::size_t pos = i_;
    if (i_ >= s_.size()) return {Tok::End, {}, pos};
    char c = s_[i_];
    if (c == '(') { i_++; return {Tok::LParen, {}, pos}; }
    if (c == ')') { i_++; return {Tok::RParen, {}, pos}; }
    if (c == '~') { i_++; return {Tok::Neg, {}, pos}; }
    if (c == 'p' || c == 'q') {
      std::size_t j = i_ + 1;
      if (j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j])))
        throw ParseError(ParseError::Kind::Syntax, pos, "expected digits after atom letter");
      std::uint64_t idx = 0;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        idx = idx * 10 + static_cast<std::uint64_t>(s_[j] - '0');
        if (idx > 0xffffffffULL)
          throw ParseError(ParseError::Kind::Syntax, pos, "atom index too large");
        j++;
      }
      Atom a{c == 'q', static_cast<std::uint32_t>(idx)};
      i_ = j;
      return {Tok::AtomTok, a, pos};
    }
    if (startsWith("[]->")) { i_ += 4; return {Tok::BoxTo, {}, pos}; }
    if (startsWith("[]")) { i_ += 2; return {Tok::BoxPrefix, {}, pos}; }
    if (startsWith("<>->")) { i_ += 4; return {Tok::DiamTo, {}, pos}; }
    if (startsWith("<>")) { i_ += 2; return {Tok::DiamondPrefix, {}, pos}; }
    if (startsWith("/\\")) { i_ += 2; return {Tok::And, {}, pos}; }
    if (startsWith("\\/")) { i_ += 2; return {Tok::Or, {}, pos}; }
    if (startsWith("<->")) { i_ += 3; return {Tok::Iff, {}, pos}; }
    if (startsWith("<=>")) { i_ += 3; return {Tok::StrongIff, {}, pos}; }
    if (startsWith("->")) { i_ += 2; return {Tok::Imp, {}, pos}; }
    if (startsWith("=>")) { i_ += 2; return {Tok::StrongImp, {}, pos}; }
    throw ParseError(ParseError::Kind::Syntax, pos,
                     std::string("unexpected character '") + c + "'");
  }

 private:
  void skipWs() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) i_++;
  }
  bool startsWith(const char* t) const {
    std::size_t n = 0;
    while (t[n]) n++;
    return s_.compare(i_, n, t) == 0;
  }
  const std::string& s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, LanguageId lang)
      : lex_(text), lang_(lang), info_(langInfo(lang)) {
    advance();
  }

  Formula parseAll() {
    Formula f = parseIff();
    if (cur_.kind != Tok::End)
      throw ParseError(ParseError::Kind::Syntax, cur_.pos, "trailing input");
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void langErr(std::size_t pos, const std::string& what) {
    throw ParseError(ParseError::Kind::Language, pos,
                     what + " not in " + languageName(lang_));
  }

  Formula parseIff() {
    Formula l = parseImp();
    if (cur_.kind == Tok::Iff || cur_.kind == Tok::StrongIff) {
      Tok op = cur_.kind;
      std::size_t pos = cur_.pos;
      advance();
      Formula r = parseImp();
      if (cur_.kind == Tok::Iff || cur_.kind == Tok::StrongIff)
        throw ParseError(ParseError::Kind::Syntax, cur_.pos,
                         "<-> and <=> are non-associative");
      if (op == Tok::StrongIff && !info_.hasNeg) langErr(pos, "<=> (needs ~)");
      return op == Tok::Iff ? makeIff(l, r) : makeStrongIff(l, r);
    }
    return l;
  }

  Formula parseImp() {
    Formula l = parseOr();
    switch (cur_.kind) {
      case Tok::Imp: {
        advance();
        return Formula::imp(l, parseImp());
      }
      case Tok::StrongImp: {
        std::size_t pos = cur_.pos;
        advance();
        if (!info_.hasNeg) langErr(pos, "=> (needs ~)");
        return makeStrongImp(l, parseImp());
      }
      case Tok::BoxTo: {
        std::size_t pos = cur_.pos;
        advance();
        if (!info_.hasBoxto) langErr(pos, "[]->");
        return Formula::boxto(l, parseImp());
      }
      case Tok::DiamTo: {
        std::size_t pos = cur_.pos;
        advance();
        if (!(info_.diamtoElementary || info_.diamtoSugar)) langErr(pos, "<>->");
        return Formula::diamto(l, parseImp());
      }
      default:
        return l;
    }
  }

  Formula parseOr() {
    Formula f = parseAnd();
    while (cur_.kind == Tok::Or) {
      advance();
      f = Formula::disj(f, parseAnd());
    }
    return f;
  }

  Formula parseAnd() {
    Formula f = parseUnary();
    while (cur_.kind == Tok::And) {
      advance();
      f = Formula::conj(f, parseUnary());
    }
    return f;
  }

  Formula parseUnary() {
    switch (cur_.kind) {
      case Tok::Neg: {
        std::size_t pos = cur_.pos;
        advance();
        if (!info_.hasNeg) langErr(pos, "~");
        return Formula::neg(parseUnary());
      }
      case Tok::BoxPrefix: {
        std::size_t pos = cur_.pos;
        advance();
        if (!info_.hasBox) langErr(pos, "[]");
        return Formula::box(parseUnary());
      }
      case Tok::DiamondPrefix: {
        std::size_t pos = cur_.pos;
        advance();
        if (!(info_.diamondElementary || info_.diamondSugar)) langErr(pos, "<>");
        return Formula::diamond(parseUnary());
      }
      case Tok::AtomTok: {
        if (cur_.atom.primed && !info_.primedAtoms)
          langErr(cur_.pos, "atom " + atomName(cur_.atom));
        Formula f = Formula::atom(cur_.atom);
        advance();
        return f;
      }
      case Tok::LParen: {
        advance();
        Formula f = parseIff();
        if (cur_.kind != Tok::RParen)
          throw ParseError(ParseError::Kind::Syntax, cur_.pos, "expected ')'");
        advance();
        return f;
      }
      default:
        throw ParseError(ParseError::Kind::Syntax, cur_.pos, "expected a formula");
    }
  }

  Lexer lex_;
  LanguageId lang_;
  LangInfo info_;
  Token cur_{};
};

}  // namespace

Formula parse(const std::string& text, LanguageId lang) {
  return Parser(text, lang).parseAll();
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// atom/prefix-chain = 4, /\ = 3, \/ = 2, implication level = 1
int connLevel(Conn c) {
  switch (c) {
    case Conn::Atom:
    case Conn::Neg:
    case Conn::Box:
    case Conn::Diamond:
      return 4;
    case Conn::And:
      return 3;
    case Conn::Or:
      return 2;
    default:
      return 1;
  }
}

struct PrintSyms {
  const char* neg;
  const char* box;
  const char* diamond;
  const char* andS;
  const char* orS;
  const char* imp;
  const char* boxto;
  const char* diamto;
};

const PrintSyms asciiSyms{"~", "[]", "<>", " /\\ ", " \\/ ", " -> ", " []-> ", " <>-> "};
const PrintSyms unicodeSyms{"∼", "□", "◇", " ∧ ",
                            " ∨ ", " → ", " ⊡ ", " ◇→ "};

void printRec(const Formula& f, const PrintSyms& sy, std::string& out) {
  auto paren = [&](const Formula& g, bool need) {
    if (need) out += '(';
    printRec(g, sy, out);
    if (need) out += ')';
  };
  switch (f.conn()) {
    case Conn::Atom:
      out += atomName(f.atomValue());
      return;
    case Conn::Neg:
      out += sy.neg;
      paren(f.left(), connLevel(f.left().conn()) < 4);
      return;
    case Conn::Box:
      out += sy.box;
      paren(f.left(), connLevel(f.left().conn()) < 4);
      return;
    case Conn::Diamond:
      out += sy.diamond;
      paren(f.left(), connLevel(f.left().conn()) < 4);
      return;
    case Conn::And:
      paren(f.left(), connLevel(f.left().conn()) < 3);
      out += sy.andS;
      paren(f.right(), connLevel(f.right().conn()) <= 3);
      return;
    case Conn::Or:
      paren(f.left(), connLevel(f.left().conn()) < 2);
      out += sy.orS;
      paren(f.right(), connLevel(f.right().conn()) <= 2);
      return;
    case Conn::Imp:
      paren(f.left(), connLevel(f.left().conn()) <= 1);
      out += sy.imp;
      printRec(f.right(), sy, out);
      return;
    case Conn::BoxTo:
    case Conn::DiamTo:
      // Conditionals keep both arguments visually atomic.
      paren(f.left(), connLevel(f.left().conn()) < 4);
      out += (f.conn() == Conn::BoxTo) ? sy.boxto : sy.diamto;
      paren(f.right(), connLevel(f.right().conn()) < 4);
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  printRec(f, asciiSyms, out);
  return out;
}

std::string printUnicode(const Formula& f) {
  std::string out;
  printRec(f, unicodeSyms, out);
  return out;
}

// ---------------------------------------------------------------------------
// Schemas
// ---------------------------------------------------------------------------

Schema Schema::make(std::optional<std::string> meta, Conn c, Atom a, Schema l, Schema r) {
  auto n = std::make_shared<Node>();
  n->meta = std::move(meta);
  n->conn = c;
  n->atom = a;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  Schema s;
  s.n_ = std::move(n);
  return s;
}

Schema Schema::meta(const std::string& name) { return make(name, Conn::Atom, {}, {}, {}); }
Schema Schema::atom(Atom a) { return make(std::nullopt, Conn::Atom, a, {}, {}); }
Schema Schema::neg(Schema f) { return make(std::nullopt, Conn::Neg, {}, std::move(f), {}); }
Schema Schema::conj(Schema l, Schema r) { return make(std::nullopt, Conn::And, {}, std::move(l), std::move(r)); }
Schema Schema::disj(Schema l, Schema r) { return make(std::nullopt, Conn::Or, {}, std::move(l), std::move(r)); }
Schema Schema::imp(Schema l, Schema r) { return make(std::nullopt, Conn::Imp, {}, std::move(l), std::move(r)); }
Schema Schema::boxto(Schema l, Schema r) { return make(std::nullopt, Conn::BoxTo, {}, std::move(l), std::move(r)); }
Schema Schema::diamto(Schema l, Schema r) { return make(std::nullopt, Conn::DiamTo, {}, std::move(l), std::move(r)); }
Schema Schema::box(Schema f) { return make(std::nullopt, Conn::Box, {}, std::move(f), {}); }
Schema Schema::diamond(Schema f) { return make(std::nullopt, Conn::Diamond, {}, std::move(f), {}); }

Schema Schema::iff(Schema a, Schema b) {
  return Schema::conj(Schema::imp(a, b), Schema::imp(b, a));
}
Schema Schema::strongImp(Schema a, Schema b) {
  return Schema::conj(Schema::imp(a, b), Schema::imp(Schema::neg(b), Schema::neg(a)));
}
Schema Schema::strongIff(Schema a, Schema b) {
  return Schema::conj(strongImp(a, b), strongImp(b, a));
}

Schema Schema::lift(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom: return Schema::atom(f.atomValue());
    case Conn::Neg: return Schema::neg(lift(f.left()));
    case Conn::Box: return Schema::box(lift(f.left()));
    case Conn::Diamond: return Schema::diamond(lift(f.left()));
    case Conn::And: return Schema::conj(lift(f.left()), lift(f.right()));
    case Conn::Or: return Schema::disj(lift(f.left()), lift(f.right()));
    case Conn::Imp: return Schema::imp(lift(f.left()), lift(f.right()));
    case Conn::BoxTo: return Schema::boxto(lift(f.left()), lift(f.right()));
    case Conn::DiamTo: return Schema::diamto(lift(f.left()), lift(f.right()));
  }
  throw std::logic_error("Schema::lift: bad connective");
}

std::vector<std::string> Schema::metaNames() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::function<void(const Schema&)> walk = [&](const Schema& s) {
    if (s.isMeta()) {
      if (seen.insert(s.metaName()).second) out.push_back(s.metaName());
      return;
    }
    if (s.node().lhs) walk(s.node().lhs);
    if (s.node().rhs) walk(s.node().rhs);
  };
  walk(*this);
  return out;
}

namespace {
bool matchRec(const Schema& s, const Formula& f, Substitution& sigma) {
  if (s.isMeta()) {
    auto [it, inserted] = sigma.emplace(s.metaName(), f);
    return inserted || it->second == f;
  }
  if (s.conn() != f.conn()) return false;
  if (s.conn() == Conn::Atom) return s.atomValue() == f.atomValue();
  if (isUnary(s.conn())) return matchRec(s.left(), f.left(), sigma);
  return matchRec(s.left(), f.left(), sigma) && matchRec(s.right(), f.right(), sigma);
}
}  // namespace

std::optional<Substitution> matchSchema(const Schema& s, const Formula& f) {
  Substitution sigma;
  if (matchRec(s, f, sigma)) return sigma;
  return std::nullopt;
}

Formula applySubst(const Schema& s, const Substitution& sigma) {
  if (s.isMeta()) {
    auto it = sigma.find(s.metaName());
    if (it == sigma.end()) throw MissingBinding(s.metaName());
    return it->second;
  }
  switch (s.conn()) {
    case Conn::Atom: return Formula::atom(s.atomValue());
    case Conn::Neg: return Formula::neg(applySubst(s.left(), sigma));
    case Conn::Box: return Formula::box(applySubst(s.left(), sigma));
    case Conn::Diamond: return Formula::diamond(applySubst(s.left(), sigma));
    case Conn::And: return Formula::conj(applySubst(s.left(), sigma), applySubst(s.right(), sigma));
    case Conn::Or: return Formula::disj(applySubst(s.left(), sigma), applySubst(s.right(), sigma));
    case Conn::Imp: return Formula::imp(applySubst(s.left(), sigma), applySubst(s.right(), sigma));
    case Conn::BoxTo: return Formula::boxto(applySubst(s.left(), sigma), applySubst(s.right(), sigma));
    case Conn::DiamTo: return Formula::diamto(applySubst(s.left(), sigma), applySubst(s.right(), sigma));
  }
  throw std::logic_error("applySubst: bad connective");
}

// ---------------------------------------------------------------------------
// Antecedents
// ---------------------------------------------------------------------------

namespace {
void collectAntecedents(const Formula& f, std::vector<Formula>& order,
                        std::set<Formula>& seen) {
  if (f.conn() == Conn::Atom) return;
  collectAntecedents(f.left(), order, seen);
  if (isBinary(f.conn())) collectAntecedents(f.right(), order, seen);
  if (f.conn() == Conn::BoxTo || f.conn() == Conn::DiamTo) {
    if (seen.insert(f.left()).second) order.push_back(f.left());
  }
}
}  // namespace

std::vector<Formula> antecedents(const Formula& f) {
  return antecedents(std::vector<Formula>{f});
}

std::vector<Formula> antecedents(const std::vector<Formula>& fs) {
  std::vector<Formula> order;
  std::set<Formula> seen;
  for (const auto& f : fs) collectAntecedents(f, order, seen);
  std::stable_sort(order.begin(), order.end(),
                   [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
  return order;
}

}  // namespace n4ck
