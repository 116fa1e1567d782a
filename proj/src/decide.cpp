#include "n4ck/decide.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace n4ck {

namespace {

using Label = std::set<SignedFormula>;

bool isTSign(SignTag s) { return s == SignTag::TPlus || s == SignTag::TMinus; }

SignTag clashSign(SignTag s) {
  switch (s) {
    case SignTag::TPlus: return SignTag::FPlus;
    case SignTag::FPlus: return SignTag::TPlus;
    case SignTag::TMinus: return SignTag::FMinus;
    case SignTag::FMinus: return SignTag::TMinus;
  }
  return s;
}

struct LocalRule {
  enum Kind { None, Alpha, Beta } kind = None;
  std::vector<SignedFormula> alpha;
  std::vector<std::vector<SignedFormula>> beta;
};

// The N4 satisfaction clauses read as expansion rules at a single world.
// FPlus/Imp has no local content: it is a successor demand.
LocalRule localRule(const SignedFormula& sf) {
  const Formula& f = sf.f;
  LocalRule r;
  auto A = [&](std::vector<SignedFormula> xs) {
    r.kind = LocalRule::Alpha;
    r.alpha = std::move(xs);
  };
  auto B = [&](std::vector<std::vector<SignedFormula>> xs) {
    r.kind = LocalRule::Beta;
    r.beta = std::move(xs);
  };
  switch (f.conn()) {
    case Conn::Atom:
      return r;
    case Conn::And:
      switch (sf.sign) {
        case SignTag::TPlus: A({{SignTag::TPlus, f.left()}, {SignTag::TPlus, f.right()}}); break;
        case SignTag::FPlus: B({{{SignTag::FPlus, f.left()}}, {{SignTag::FPlus, f.right()}}}); break;
        case SignTag::TMinus: B({{{SignTag::TMinus, f.left()}}, {{SignTag::TMinus, f.right()}}}); break;
        case SignTag::FMinus: A({{SignTag::FMinus, f.left()}, {SignTag::FMinus, f.right()}}); break;
      }
      return r;
    case Conn::Or:
      switch (sf.sign) {
        case SignTag::TPlus: B({{{SignTag::TPlus, f.left()}}, {{SignTag::TPlus, f.right()}}}); break;
        case SignTag::FPlus: A({{SignTag::FPlus, f.left()}, {SignTag::FPlus, f.right()}}); break;
        case SignTag::TMinus: A({{SignTag::TMinus, f.left()}, {SignTag::TMinus, f.right()}}); break;
        case SignTag::FMinus: B({{{SignTag::FMinus, f.left()}}, {{SignTag::FMinus, f.right()}}}); break;
      }
      return r;
    case Conn::Neg:
      switch (sf.sign) {
        case SignTag::TPlus: A({{SignTag::TMinus, f.left()}}); break;
        case SignTag::FPlus: A({{SignTag::FMinus, f.left()}}); break;
        case SignTag::TMinus: A({{SignTag::TPlus, f.left()}}); break;
        case SignTag::FMinus: A({{SignTag::FPlus, f.left()}}); break;
      }
      return r;
    case Conn::Imp:
      switch (sf.sign) {
        case SignTag::TPlus: B({{{SignTag::FPlus, f.left()}}, {{SignTag::TPlus, f.right()}}}); break;
        case SignTag::FPlus: break;  // successor demand
        case SignTag::TMinus: A({{SignTag::TPlus, f.left()}, {SignTag::TMinus, f.right()}}); break;
        case SignTag::FMinus: B({{{SignTag::FPlus, f.left()}}, {{SignTag::FMinus, f.right()}}}); break;
      }
      return r;
    default:
      throw IllFormed("decideN4: conditional or modal operator in input");
  }
}

bool clashes(const Label& label, const SignedFormula& sf) {
  return label.count({clashSign(sf.sign), sf.f}) > 0;
}

// All consistent saturations of `base`, deterministically ordered.
void saturate(Label base, std::vector<Label>& out) {
  for (const auto& sf : base) {
    LocalRule rule = localRule(sf);
    if (rule.kind == LocalRule::Alpha) {
      bool all = true;
      for (const auto& c : rule.alpha)
        if (!base.count(c)) all = false;
      if (all) continue;
      for (const auto& c : rule.alpha) {
        if (clashes(base, c)) return;  // closed branch
        base.insert(c);
      }
      saturate(std::move(base), out);
      return;
    }
    if (rule.kind == LocalRule::Beta) {
      bool some = false;
      for (const auto& option : rule.beta) {
        bool all = true;
        for (const auto& c : option)
          if (!base.count(c)) all = false;
        if (all) some = true;
      }
      if (some) continue;
      for (const auto& option : rule.beta) {
        Label next = base;
        bool ok = true;
        for (const auto& c : option) {
          if (clashes(next, c)) {
            ok = false;
            break;
          }
          next.insert(c);
        }
        if (ok) saturate(std::move(next), out);
      }
      return;
    }
  }
  out.push_back(std::move(base));
}

std::vector<Label> saturations(const std::vector<SignedFormula>& base) {
  Label seed;
  for (const auto& sf : base) {
    if (clashes(seed, sf)) return {};
    seed.insert(sf);
  }
  std::vector<Label> out;
  saturate(std::move(seed), out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Label persistT(const Label& label) {
  Label out;
  for (const auto& sf : label)
    if (isTSign(sf.sign)) out.insert(sf);
  return out;
}

// A realized upward-submodel: worlds are labels, edges mean <=; backTargets
// are looped-to ancestors still on the search stack.
struct Piece {
  std::set<Label> worlds;
  std::vector<std::pair<Label, Label>> edges;
  std::set<Label> backTargets;
};

class Search {
 public:
  std::optional<Piece> realize(const Label& label) {
    if (failed_.count(label)) return std::nullopt;
    if (auto it = done_.find(label); it != done_.end()) return it->second;

    stack_.insert(label);
    Piece piece;
    piece.worlds.insert(label);
    bool ok = true;
    for (const auto& sf : label) {
      if (sf.sign != SignTag::FPlus || sf.f.conn() != Conn::Imp) continue;
      SignedFormula needT{SignTag::TPlus, sf.f.left()};
      SignedFormula needF{SignTag::FPlus, sf.f.right()};
      if (label.count(needT) && label.count(needF)) continue;  // witnessed here

      Label heritage = persistT(label);
      std::vector<SignedFormula> base(heritage.begin(), heritage.end());
      base.push_back(needT);
      base.push_back(needF);
      bool fulfilled = false;
      for (const Label& child : saturations(base)) {
        if (stack_.count(child)) {
          piece.edges.emplace_back(label, child);
          piece.backTargets.insert(child);
          fulfilled = true;
          break;
        }
        if (auto sub = realize(child)) {
          piece.worlds.insert(sub->worlds.begin(), sub->worlds.end());
          piece.edges.insert(piece.edges.end(), sub->edges.begin(), sub->edges.end());
          piece.backTargets.insert(sub->backTargets.begin(), sub->backTargets.end());
          piece.edges.emplace_back(label, child);
          fulfilled = true;
          break;
        }
      }
      if (!fulfilled) {
        ok = false;
        break;
      }
    }
    stack_.erase(label);
    if (!ok) {
      failed_.insert(label);
      return std::nullopt;
    }
    piece.backTargets.erase(label);
    // Only loop-free results are context-independent and safe to cache.
    if (piece.backTargets.empty()) done_.emplace(label, piece);
    return piece;
  }

 private:
  std::set<Label> stack_;
  std::map<Label, Piece> done_;
  std::set<Label> failed_;
};

NelsonianModel extractModel(const Piece& piece, const Label& root, WorldId& rootOut) {
  std::vector<Label> worlds(piece.worlds.begin(), piece.worlds.end());
  const int n = static_cast<int>(worlds.size());
  if (n > kMaxWorlds) throw IllFormed("decideN4: extracted model too large");
  auto indexOf = [&](const Label& l) {
    return static_cast<WorldId>(
        std::lower_bound(worlds.begin(), worlds.end(), l) - worlds.begin());
  };
  NelsonianModel m;
  m.worldCount = n;
  RelMat edges = RelMat::empty(n);
  for (const auto& [a, b] : piece.edges) edges.add(indexOf(a), indexOf(b));
  m.leq = reflTransClosure(edges);
  for (int i = 0; i < n; i++) {
    for (const auto& sf : worlds[static_cast<std::size_t>(i)]) {
      if (sf.f.conn() != Conn::Atom) continue;
      if (sf.sign == SignTag::TPlus) m.val.plus[sf.f.atomValue()] |= worldBit(i);
      if (sf.sign == SignTag::TMinus) m.val.minus[sf.f.atomValue()] |= worldBit(i);
      if (sf.f.atomValue().primed) m.extended = true;
    }
  }
  rootOut = indexOf(root);
  return m;
}

}  // namespace

Verdict decideN4(const std::vector<Formula>& gamma, const Formula& phi) {
  std::vector<SignedFormula> base;
  for (const auto& g : gamma) base.push_back({SignTag::TPlus, g});
  base.push_back({SignTag::FPlus, phi});

  Search search;
  for (const Label& root : saturations(base)) {
    if (auto piece = search.realize(root)) {
      Verdict v;
      v.valid = false;
      v.model = extractModel(*piece, root, v.world);
      return v;
    }
  }
  return Verdict{};
}

std::pair<std::vector<Formula>, std::map<Formula, Atom>> abstractConditionals(
    const std::vector<Formula>& fs) {
  std::uint32_t next = 0;
  for (const Atom& a : atomsOf(fs))
    if (!a.primed && a.index >= next) next = a.index + 1;

  std::map<Formula, Atom> table;
  std::function<Formula(const Formula&)> walk = [&](const Formula& f) -> Formula {
    switch (f.conn()) {
      case Conn::BoxTo:
      case Conn::DiamTo:
      case Conn::Box:
      case Conn::Diamond: {
        auto it = table.find(f);
        if (it == table.end()) it = table.emplace(f, Atom{false, next++}).first;
        return Formula::atom(it->second);
      }
      case Conn::Atom:
        return f;
      case Conn::Neg:
        return Formula::neg(walk(f.left()));
      case Conn::And:
        return Formula::conj(walk(f.left()), walk(f.right()));
      case Conn::Or:
        return Formula::disj(walk(f.left()), walk(f.right()));
      case Conn::Imp:
        return Formula::imp(walk(f.left()), walk(f.right()));
    }
    throw std::logic_error("abstractConditionals: bad connective");
  };
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(walk(f));
  return {out, table};
}

}  // namespace n4ck
