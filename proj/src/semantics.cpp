#include "n4ck/semantics.hpp"

namespace n4ck {

namespace {

// {w | up(w) and bad are disjoint}
WorldSet noUpperIn(const RelMat& leq, WorldSet bad, int n) {
  WorldSet out = 0;
  for (int w = 0; w < n; w++)
    if (!(leq.rows[w] & bad)) out |= worldBit(w);
  return out;
}

// {v | rel(v) meets target}
WorldSet meets(const RelMat& rel, WorldSet target, int n) {
  WorldSet out = 0;
  for (int v = 0; v < n; v++)
    if (rel.rows[v] & target) out |= worldBit(v);
  return out;
}

}  // namespace

BiSet TruthTable::truthSet(const Formula& f) {
  auto it = memo_.find(f);
  if (it != memo_.end()) return it->second;

  const int n = m_->worldCount();
  const WorldSet full = fullSet(n);
  const RelMat& leq = m_->base.leq;
  BiSet r;
  switch (f.conn()) {
    case Conn::Atom:
      r = {m_->base.val.plusOf(f.atomValue()), m_->base.val.minusOf(f.atomValue())};
      break;
    case Conn::Neg: {
      BiSet a = truthSet(f.left());
      r = {a.minus, a.plus};
      break;
    }
    case Conn::And: {
      BiSet a = truthSet(f.left()), b = truthSet(f.right());
      r = {a.plus & b.plus, a.minus | b.minus};
      break;
    }
    case Conn::Or: {
      BiSet a = truthSet(f.left()), b = truthSet(f.right());
      r = {a.plus | b.plus, a.minus & b.minus};
      break;
    }
    case Conn::Imp: {
      BiSet a = truthSet(f.left()), b = truthSet(f.right());
      r = {noUpperIn(leq, a.plus & ~b.plus & full, n), a.plus & b.minus};
      break;
    }
    case Conn::BoxTo: {
      BiSet key = truthSet(f.left());
      BiSet b = truthSet(f.right());
      RelMat rel = m_->lookup(key);
      WorldSet bad = meets(rel, ~b.plus & full, n);
      r = {noUpperIn(leq, bad, n), meets(rel, b.minus, n)};
      break;
    }
    case Conn::DiamTo: {
      BiSet key = truthSet(f.left());
      BiSet b = truthSet(f.right());
      RelMat rel = m_->lookup(key);
      WorldSet bad = meets(rel, ~b.minus & full, n);
      r = {meets(rel, b.plus, n), noUpperIn(leq, bad, n)};
      break;
    }
    case Conn::Box:
    case Conn::Diamond:
      throw IllFormed("modal operator in conditional language");
  }
  memo_.emplace(f, r);
  return r;
}

bool evalN4CK(const CondNelsonianModel& m, WorldId w, const Formula& f, Sign s) {
  if (w < 0 || w >= m.worldCount()) throw IllFormed("world out of range");
  TruthTable tt(m);
  BiSet ts = tt.truthSet(f);
  return inSet(s == Sign::Plus ? ts.plus : ts.minus, w);
}

BiSet truthSet(const CondNelsonianModel& m, const Formula& f) {
  TruthTable tt(m);
  return tt.truthSet(f);
}

bool evalN4(const NelsonianModel& m, WorldId w, const Formula& f, Sign s) {
  CondNelsonianModel cm;
  cm.base = m;
  return evalN4CK(cm, w, f, s);
}

BiSet truthSetN4(const NelsonianModel& m, const Formula& f) {
  CondNelsonianModel cm;
  cm.base = m;
  return truthSet(cm, f);
}

// ---------------------------------------------------------------------------
// IntCK^{e+}
// ---------------------------------------------------------------------------

namespace {

class IntTable {
 public:
  explicit IntTable(const CondIntModel& m) : m_(&m) {}

  WorldSet truthSet(const Formula& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    const int n = m_->worldCount;
    const WorldSet full = fullSet(n);
    const RelMat& leq = m_->leq;
    WorldSet r = 0;
    switch (f.conn()) {
      case Conn::Atom:
        r = m_->val.plusOf(f.atomValue());
        break;
      case Conn::Neg:
        r = noUpperIn(leq, truthSet(f.left()), n);
        break;
      case Conn::And:
        r = truthSet(f.left()) & truthSet(f.right());
        break;
      case Conn::Or:
        r = truthSet(f.left()) | truthSet(f.right());
        break;
      case Conn::Imp:
        r = noUpperIn(leq, truthSet(f.left()) & ~truthSet(f.right()) & full, n);
        break;
      case Conn::BoxTo: {
        RelMat rel = m_->lookup(truthSet(f.left()));
        WorldSet bad = meets(rel, ~truthSet(f.right()) & full, n);
        r = noUpperIn(leq, bad, n);
        break;
      }
      case Conn::DiamTo: {
        RelMat rel = m_->lookup(truthSet(f.left()));
        r = meets(rel, truthSet(f.right()), n);
        break;
      }
      case Conn::Box:
      case Conn::Diamond:
        throw IllFormed("modal operator in conditional language");
    }
    memo_.emplace(f, r);
    return r;
  }

 private:
  const CondIntModel* m_;
  std::unordered_map<Formula, WorldSet, FormulaHash> memo_;
};

}  // namespace

bool evalIntCK(const CondIntModel& m, WorldId w, const Formula& f) {
  if (w < 0 || w >= m.worldCount) throw IllFormed("world out of range");
  IntTable tt(m);
  return inSet(tt.truthSet(f), w);
}

WorldSet truthSetIntCK(const CondIntModel& m, const Formula& f) {
  IntTable tt(m);
  return tt.truthSet(f);
}

// ---------------------------------------------------------------------------
// Modal evaluators
// ---------------------------------------------------------------------------

namespace {

class ModalTable {
 public:
  explicit ModalTable(const ModalModel& m) : m_(&m) {}

  BiSet truthSet(const Formula& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    const int n = m_->worldCount;
    const WorldSet full = fullSet(n);
    const RelMat& leq = m_->leq;
    BiSet r;
    switch (f.conn()) {
      case Conn::Atom:
        r = {m_->val.plusOf(f.atomValue()), m_->val.minusOf(f.atomValue())};
        break;
      case Conn::Neg: {
        BiSet a = truthSet(f.left());
        r = {a.minus, a.plus};
        break;
      }
      case Conn::And: {
        BiSet a = truthSet(f.left()), b = truthSet(f.right());
        r = {a.plus & b.plus, a.minus | b.minus};
        break;
      }
      case Conn::Or: {
        BiSet a = truthSet(f.left()), b = truthSet(f.right());
        r = {a.plus | b.plus, a.minus & b.minus};
        break;
      }
      case Conn::Imp: {
        BiSet a = truthSet(f.left()), b = truthSet(f.right());
        r = {noUpperIn(leq, a.plus & ~b.plus & full, n), a.plus & b.minus};
        break;
      }
      case Conn::Box: {
        BiSet a = truthSet(f.left());
        WorldSet bad = meets(m_->r, ~a.plus & full, n);
        r = {noUpperIn(leq, bad, n), meets(m_->r, a.minus, n)};
        break;
      }
      case Conn::Diamond: {
        // <> abbreviates ~[]~ over the Nelsonian flavor.
        BiSet a = truthSet(f.left());
        WorldSet bad = meets(m_->r, ~a.minus & full, n);
        r = {meets(m_->r, a.plus, n), noUpperIn(leq, bad, n)};
        break;
      }
      case Conn::BoxTo:
      case Conn::DiamTo:
        throw IllFormed("conditional operator in modal language");
    }
    memo_.emplace(f, r);
    return r;
  }

 private:
  const ModalModel* m_;
  std::unordered_map<Formula, BiSet, FormulaHash> memo_;
};

class ModalIntTable {
 public:
  explicit ModalIntTable(const ModalModel& m) : m_(&m) {}

  WorldSet truthSet(const Formula& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    const int n = m_->worldCount;
    const WorldSet full = fullSet(n);
    const RelMat& leq = m_->leq;
    WorldSet r = 0;
    switch (f.conn()) {
      case Conn::Atom:
        r = m_->val.plusOf(f.atomValue());
        break;
      case Conn::Neg:
        r = noUpperIn(leq, truthSet(f.left()), n);
        break;
      case Conn::And:
        r = truthSet(f.left()) & truthSet(f.right());
        break;
      case Conn::Or:
        r = truthSet(f.left()) | truthSet(f.right());
        break;
      case Conn::Imp:
        r = noUpperIn(leq, truthSet(f.left()) & ~truthSet(f.right()) & full, n);
        break;
      case Conn::Box: {
        WorldSet bad = meets(m_->r, ~truthSet(f.left()) & full, n);
        r = noUpperIn(leq, bad, n);
        break;
      }
      case Conn::Diamond:
        r = meets(m_->r, truthSet(f.left()), n);
        break;
      case Conn::BoxTo:
      case Conn::DiamTo:
        throw IllFormed("conditional operator in modal language");
    }
    memo_.emplace(f, r);
    return r;
  }

 private:
  const ModalModel* m_;
  std::unordered_map<Formula, WorldSet, FormulaHash> memo_;
};

}  // namespace

bool evalModal(const ModalModel& m, WorldId w, const Formula& f, Sign s) {
  if (!m.nelsonian) throw FlavorMismatch("two-signed evaluation needs a Nelsonian modal model");
  if (w < 0 || w >= m.worldCount) throw IllFormed("world out of range");
  ModalTable tt(m);
  BiSet ts = tt.truthSet(f);
  return inSet(s == Sign::Plus ? ts.plus : ts.minus, w);
}

BiSet truthSetModal(const ModalModel& m, const Formula& f) {
  if (!m.nelsonian) throw FlavorMismatch("two-signed evaluation needs a Nelsonian modal model");
  ModalTable tt(m);
  return tt.truthSet(f);
}

bool evalModalInt(const ModalModel& m, WorldId w, const Formula& f) {
  if (m.nelsonian) throw FlavorMismatch("single-signed evaluation needs an intuitionistic modal model");
  if (w < 0 || w >= m.worldCount) throw IllFormed("world out of range");
  ModalIntTable tt(m);
  return inSet(tt.truthSet(f), w);
}

WorldSet truthSetModalInt(const ModalModel& m, const Formula& f) {
  if (m.nelsonian) throw FlavorMismatch("single-signed evaluation needs an intuitionistic modal model");
  ModalIntTable tt(m);
  return tt.truthSet(f);
}

// ---------------------------------------------------------------------------
// Pointed-pair satisfaction
// ---------------------------------------------------------------------------

bool holdsPair(const CondNelsonianModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta) {
  TruthTable tt(m);
  for (const auto& g : gamma)
    if (!inSet(tt.truthSet(g).plus, w)) return false;
  for (const auto& d : delta)
    if (inSet(tt.truthSet(d).plus, w)) return false;
  return true;
}

bool holdsPair(const NelsonianModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta) {
  CondNelsonianModel cm;
  cm.base = m;
  return holdsPair(cm, w, gamma, delta);
}

bool holdsPair(const CondIntModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta) {
  IntTable tt(m);
  for (const auto& g : gamma)
    if (!inSet(tt.truthSet(g), w)) return false;
  for (const auto& d : delta)
    if (inSet(tt.truthSet(d), w)) return false;
  return true;
}

bool holdsPair(const ModalModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta) {
  if (m.nelsonian) {
    ModalTable tt(m);
    for (const auto& g : gamma)
      if (!inSet(tt.truthSet(g).plus, w)) return false;
    for (const auto& d : delta)
      if (inSet(tt.truthSet(d).plus, w)) return false;
    return true;
  }
  ModalIntTable tt(m);
  for (const auto& g : gamma)
    if (!inSet(tt.truthSet(g), w)) return false;
  for (const auto& d : delta)
    if (inSet(tt.truthSet(d), w)) return false;
  return true;
}

}  // namespace n4ck
