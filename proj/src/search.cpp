#include "n4ck/search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <functional>
#include <numeric>

namespace n4ck {

namespace {

// Allocation-free relation for the enumeration loops (n <= 8).
struct FlatRel {
  std::array<WorldSet, 8> rows{};
  bool at(int v, int u) const { return inSet(rows[v], u); }
};

FlatRel flatten(const RelMat& r) {
  FlatRel out;
  for (int v = 0; v < r.worldCount() && v < 8; v++) out.rows[v] = r.rows[v];
  return out;
}

RelMat unflatten(const FlatRel& r, int n) {
  RelMat out = RelMat::empty(n);
  for (int v = 0; v < n; v++) out.rows[v] = r.rows[v];
  return out;
}

bool isPreorder(const FlatRel& r, int n) {
  for (int w = 0; w < n; w++)
    if (!r.at(w, w)) return false;
  for (int v = 0; v < n; v++)
    for (int u = 0; u < n; u++)
      if (r.at(v, u) && (r.rows[u] & ~r.rows[v])) return false;
  return true;
}

bool satisfiesFrameConditions(const FlatRel& leq, const FlatRel& rel, int n) {
  for (int v = 0; v < n; v++) {
    WorldSet succ = rel.rows[v];
    if (!succ) continue;
    for (int u = 0; u < n; u++) {
      if (!inSet(succ, u)) continue;
      // (c1): every v' >= v reaches some u' >= u
      for (int vp = 0; vp < n; vp++)
        if (leq.at(v, vp) && !(rel.rows[vp] & leq.rows[u])) return false;
      // (c2): every u' >= u is reached from some v' >= v
      for (int up = 0; up < n; up++) {
        if (!leq.at(u, up)) continue;
        bool ok = false;
        for (int vp = 0; vp < n && !ok; vp++)
          if (leq.at(v, vp) && rel.at(vp, up)) ok = true;
        if (!ok) return false;
      }
    }
  }
  return true;
}

FlatRel permute(const FlatRel& r, const std::vector<int>& perm, int n) {
  FlatRel out;
  for (int v = 0; v < n; v++)
    for (int u = 0; u < n; u++)
      if (r.at(v, u)) out.rows[perm[v]] |= worldBit(perm[u]);
  return out;
}

bool rowsLess(const FlatRel& a, const FlatRel& b, int n) {
  for (int v = 0; v < n; v++)
    if (a.rows[v] != b.rows[v]) return a.rows[v] < b.rows[v];
  return false;
}

std::vector<FlatRel> computeCanonicalPreorders(int n) {
  std::vector<FlatRel> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const int offBits = n * (n - 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << offBits); mask++) {
    FlatRel r;
    int bit = 0;
    for (int v = 0; v < n; v++) {
      r.rows[v] |= worldBit(v);
      for (int u = 0; u < n; u++) {
        if (u == v) continue;
        if ((mask >> bit) & 1) r.rows[v] |= worldBit(u);
        bit++;
      }
    }
    if (!isPreorder(r, n)) continue;
    bool minimal = true;
    std::vector<int> p = perm;
    while (std::next_permutation(p.begin(), p.end())) {
      if (rowsLess(permute(r, p, n), r, n)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(r);
  }
  return out;
}

std::vector<FlatRel> computeRelationCandidates(const FlatRel& leq, int n, int cap) {
  std::vector<FlatRel> out;
  const int bits = n * n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); mask++) {
    FlatRel r;
    for (int v = 0; v < n; v++)
      for (int u = 0; u < n; u++)
        if ((mask >> (v * n + u)) & 1) r.rows[v] |= worldBit(u);
    if (!satisfiesFrameConditions(leq, r, n)) continue;
    out.push_back(r);
    if (static_cast<int>(out.size()) >= cap) break;
  }
  return out;
}

std::vector<WorldSet> computeUpSets(const FlatRel& leq, int n) {
  std::vector<WorldSet> out;
  for (WorldSet s = 0; s <= fullSet(n); s++) {
    bool up = true;
    for (int w = 0; w < n && up; w++)
      if (inSet(s, w) && (leq.rows[w] & ~s)) up = false;
    if (up) out.push_back(s);
    if (s == fullSet(n)) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compiled two-signed evaluation
// ---------------------------------------------------------------------------

struct CompileUnit {
  struct Op {
    Conn conn;
    int atom = -1;   // atom index for Conn::Atom
    int left = -1;   // child slots
    int right = -1;
  };
  std::vector<Op> ops;               // postorder over shared subformulas
  std::map<Formula, int> slotOf;
  std::vector<Atom> atoms;           // atom index -> atom
  std::map<Atom, int> atomIndex;

  int add(const Formula& f) {
    auto it = slotOf.find(f);
    if (it != slotOf.end()) return it->second;
    Op op;
    op.conn = f.conn();
    if (f.conn() == Conn::Atom) {
      auto [ait, fresh] = atomIndex.emplace(f.atomValue(), static_cast<int>(atoms.size()));
      if (fresh) atoms.push_back(f.atomValue());
      op.atom = ait->second;
    } else {
      op.left = add(f.left());
      if (isBinary(f.conn())) op.right = add(f.right());
    }
    int slot = static_cast<int>(ops.size());
    ops.push_back(op);
    slotOf.emplace(f, slot);
    return slot;
  }
};

struct KeyedRel {
  BiSet key;
  FlatRel rel;
};

WorldSet noUpperInF(const FlatRel& leq, WorldSet bad, int n) {
  WorldSet out = 0;
  for (int w = 0; w < n; w++)
    if (!(leq.rows[w] & bad)) out |= worldBit(w);
  return out;
}

WorldSet meetsF(const FlatRel& rel, WorldSet target, int n) {
  WorldSet out = 0;
  for (int v = 0; v < n; v++)
    if (rel.rows[v] & target) out |= worldBit(v);
  return out;
}

// modalR: single accessibility for Box/Diamond (FSK^d); keyed: conditional table.
void evalUnit(const CompileUnit& unit, int n, const FlatRel& leq,
              const std::vector<BiSet>& atomVals, const std::vector<KeyedRel>& keyed,
              const FlatRel* modalR, std::vector<BiSet>& slots) {
  const WorldSet full = fullSet(n);
  static const FlatRel emptyRel{};
  slots.resize(unit.ops.size());
  for (std::size_t i = 0; i < unit.ops.size(); i++) {
    const auto& op = unit.ops[i];
    BiSet r;
    switch (op.conn) {
      case Conn::Atom:
        r = atomVals[op.atom];
        break;
      case Conn::Neg:
        r = {slots[op.left].minus, slots[op.left].plus};
        break;
      case Conn::And:
        r = {slots[op.left].plus & slots[op.right].plus,
             slots[op.left].minus | slots[op.right].minus};
        break;
      case Conn::Or:
        r = {slots[op.left].plus | slots[op.right].plus,
             slots[op.left].minus & slots[op.right].minus};
        break;
      case Conn::Imp:
        r = {noUpperInF(leq, slots[op.left].plus & ~slots[op.right].plus & full, n),
             slots[op.left].plus & slots[op.right].minus};
        break;
      case Conn::BoxTo:
      case Conn::DiamTo: {
        const FlatRel* rel = &emptyRel;
        for (const auto& kr : keyed)
          if (kr.key == slots[op.left]) {
            rel = &kr.rel;
            break;
          }
        const BiSet b = slots[op.right];
        if (op.conn == Conn::BoxTo) {
          r = {noUpperInF(leq, meetsF(*rel, ~b.plus & full, n), n), meetsF(*rel, b.minus, n)};
        } else {
          r = {meetsF(*rel, b.plus, n), noUpperInF(leq, meetsF(*rel, ~b.minus & full, n), n)};
        }
        break;
      }
      case Conn::Box: {
        const BiSet b = slots[op.left];
        r = {noUpperInF(leq, meetsF(*modalR, ~b.plus & full, n), n), meetsF(*modalR, b.minus, n)};
        break;
      }
      case Conn::Diamond: {
        const BiSet b = slots[op.left];
        r = {meetsF(*modalR, b.plus, n), noUpperInF(leq, meetsF(*modalR, ~b.minus & full, n), n)};
        break;
      }
    }
    slots[i] = r;
  }
}

// ---------------------------------------------------------------------------
// Search driver
// ---------------------------------------------------------------------------

struct Problem {
  SearchLogic logic;
  std::vector<Formula> gamma, delta;
  CompileUnit unit;
  std::vector<int> gammaSlots, deltaSlots;
  std::vector<Formula> ants;
  std::vector<int> antSlots;
};

Problem compileProblem(SearchLogic logic, const std::vector<Formula>& gamma,
                       const std::vector<Formula>& delta) {
  Problem p;
  p.logic = logic;
  p.gamma = gamma;
  p.delta = delta;
  std::vector<Formula> all = gamma;
  all.insert(all.end(), delta.begin(), delta.end());
  for (const auto& f : gamma) p.gammaSlots.push_back(p.unit.add(f));
  for (const auto& f : delta) p.deltaSlots.push_back(p.unit.add(f));
  if (logic == SearchLogic::N4CK) {
    p.ants = antecedents(all);
    for (const auto& a : p.ants) p.antSlots.push_back(p.unit.slotOf.at(a));
  }
  return p;
}

// Worlds where all of gamma holds and none of delta does.
WorldSet goodWorlds(const Problem& p, const std::vector<BiSet>& slots, int n) {
  WorldSet ok = fullSet(n);
  for (int s : p.gammaSlots) ok &= slots[s].plus;
  for (int s : p.deltaSlots) ok &= ~slots[s].plus;
  return ok & fullSet(n);
}

struct ModelUnderTest {
  int n = 0;
  FlatRel leq;
  std::vector<BiSet> atomVals;
  std::vector<KeyedRel> keyed;
  FlatRel modalR;
};

Certificate buildCertificate(const Problem& p, const ModelUnderTest& mut, WorldId w) {
  Certificate cert;
  cert.logic = p.logic;
  cert.world = w;
  cert.gamma = p.gamma;
  cert.delta = p.delta;

  NelsonianModel base;
  base.worldCount = mut.n;
  base.leq = unflatten(mut.leq, mut.n);
  for (std::size_t i = 0; i < p.unit.atoms.size(); i++) {
    const Atom& a = p.unit.atoms[i];
    if (mut.atomVals[i].plus) base.val.plus[a] = mut.atomVals[i].plus;
    if (mut.atomVals[i].minus) base.val.minus[a] = mut.atomVals[i].minus;
    if (a.primed) base.extended = true;
  }
  switch (p.logic) {
    case SearchLogic::N4:
      cert.model = base;
      break;
    case SearchLogic::N4CK: {
      CondNelsonianModel m;
      m.base = base;
      CondRelBlock block;
      block.stratum = fullSet(mut.n);
      for (const auto& kr : mut.keyed) block.entries.push_back({kr.key, unflatten(kr.rel, mut.n)});
      m.blocks.push_back(std::move(block));
      cert.model = m;
      break;
    }
    case SearchLogic::FSKd: {
      ModalModel m;
      m.worldCount = mut.n;
      m.leq = base.leq;
      m.val = base.val;
      m.extended = base.extended;
      m.nelsonian = true;
      m.r = unflatten(mut.modalR, mut.n);
      cert.model = m;
      break;
    }
  }
  return cert;
}

// Assign relations to antecedent keys in increasing-size order; a key that
// already has a relation is reused (R is a function of the bi-set).
bool assignAndTest(const Problem& p, ModelUnderTest& mut,
                   const std::vector<FlatRel>& candidates, std::size_t idx,
                   std::vector<BiSet>& slots, std::uint64_t& tried, WorldId& foundWorld) {
  if (idx == p.ants.size()) {
    tried++;
    evalUnit(p.unit, mut.n, mut.leq, mut.atomVals, mut.keyed, &mut.modalR, slots);
    WorldSet ok = goodWorlds(p, slots, mut.n);
    if (ok) {
      foundWorld = setToList(ok).front();
      return true;
    }
    return false;
  }
  evalUnit(p.unit, mut.n, mut.leq, mut.atomVals, mut.keyed, &mut.modalR, slots);
  BiSet key = slots[p.antSlots[idx]];
  for (const auto& kr : mut.keyed)
    if (kr.key == key) return assignAndTest(p, mut, candidates, idx + 1, slots, tried, foundWorld);
  for (const auto& cand : candidates) {
    mut.keyed.push_back({key, cand});
    if (assignAndTest(p, mut, candidates, idx + 1, slots, tried, foundWorld)) return true;
    mut.keyed.pop_back();
  }
  return false;
}

std::mt19937_64 seededRng(std::uint64_t seed) { return std::mt19937_64(seed ^ 0x5eed5eed1234ULL); }

FlatRel randomPreorder(std::mt19937_64& rng, int n) {
  FlatRel r;
  for (int v = 0; v < n; v++) {
    r.rows[v] |= worldBit(v);
    for (int u = 0; u < n; u++)
      if (u != v && rng() % 3 == 0) r.rows[v] |= worldBit(u);
  }
  // transitive closure
  for (int k = 0; k < n; k++)
    for (int v = 0; v < n; v++)
      if (r.at(v, k)) r.rows[v] |= r.rows[k];
  return r;
}

WorldSet randomUpset(std::mt19937_64& rng, const FlatRel& leq, int n) {
  WorldSet s = 0;
  for (int w = 0; w < n; w++)
    if (rng() % 3 == 0) s |= leq.rows[w];
  return s & fullSet(n);
}

}  // namespace

const std::vector<RelMat>& canonicalPreorders(int n) {
  static std::map<int, std::vector<RelMat>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<RelMat> out;
    for (const FlatRel& r : computeCanonicalPreorders(n)) out.push_back(unflatten(r, n));
    it = cache.emplace(n, std::move(out)).first;
  }
  return it->second;
}

std::vector<RelMat> frameRelationCandidates(const RelMat& leq, int cap) {
  const int n = leq.worldCount();
  std::vector<RelMat> out;
  for (const FlatRel& r : computeRelationCandidates(flatten(leq), n, cap))
    out.push_back(unflatten(r, n));
  return out;
}

std::vector<WorldSet> upSets(const RelMat& leq) {
  return computeUpSets(flatten(leq), leq.worldCount());
}

Formula FormulaGen::operator()(std::mt19937_64& rng) const {
  std::vector<Conn> conns = {Conn::Neg, Conn::And, Conn::Or, Conn::Imp};
  if (!allowNeg) conns.erase(conns.begin());
  if (allowBoxto) conns.push_back(Conn::BoxTo);
  if (allowDiamto) conns.push_back(Conn::DiamTo);
  if (allowBox) conns.push_back(Conn::Box);
  if (allowDiamond) conns.push_back(Conn::Diamond);

  std::function<Formula(int)> gen = [&](int depth) -> Formula {
    if (depth <= 0 || rng() % 4 == 0)
      return Formula::atom(atoms[rng() % atoms.size()]);
    Conn c = conns[rng() % conns.size()];
    switch (c) {
      case Conn::Neg: return Formula::neg(gen(depth - 1));
      case Conn::Box: return Formula::box(gen(depth - 1));
      case Conn::Diamond: return Formula::diamond(gen(depth - 1));
      case Conn::And: return Formula::conj(gen(depth - 1), gen(depth - 1));
      case Conn::Or: return Formula::disj(gen(depth - 1), gen(depth - 1));
      case Conn::Imp: return Formula::imp(gen(depth - 1), gen(depth - 1));
      case Conn::BoxTo: return Formula::boxto(gen(depth - 1), gen(depth - 1));
      case Conn::DiamTo: return Formula::diamto(gen(depth - 1), gen(depth - 1));
      default: return Formula::atom(atoms[0]);
    }
  };
  return gen(maxDepth);
}

SearchOutcome findCountermodel(SearchLogic logic, const std::vector<Formula>& gamma,
                               const std::vector<Formula>& delta, const SearchBudget& budget) {
  Problem p = compileProblem(logic, gamma, delta);
  SearchOutcome outcome;
  outcome.budget = budget;
  const int atomCount = static_cast<int>(p.unit.atoms.size());
  std::vector<BiSet> slots;

  if (budget.exhaustive) {
    for (int n = 1; n <= budget.maxWorlds && n <= 8; n++) {
      for (const RelMat& leqM : canonicalPreorders(n)) {
        ModelUnderTest mut;
        mut.n = n;
        mut.leq = flatten(leqM);
        std::vector<WorldSet> ups = computeUpSets(mut.leq, n);
        std::vector<FlatRel> candidates;
        if (logic != SearchLogic::N4)
          candidates = computeRelationCandidates(mut.leq, n, budget.relationCandidateCap);

        // Odometer over (V+, V-) pairs of up-sets per atom.
        const int digits = 2 * atomCount;
        std::vector<std::size_t> odo(static_cast<std::size_t>(digits), 0);
        mut.atomVals.assign(static_cast<std::size_t>(atomCount), BiSet{});
        for (;;) {
          for (int a = 0; a < atomCount; a++)
            mut.atomVals[a] = {ups[odo[2 * a]], ups[odo[2 * a + 1]]};

          if (logic == SearchLogic::N4CK) {
            mut.keyed.clear();
            WorldId w = 0;
            if (assignAndTest(p, mut, candidates, 0, slots, outcome.modelsTried, w)) {
              outcome.certificate = buildCertificate(p, mut, w);
              return outcome;
            }
          } else if (logic == SearchLogic::FSKd) {
            for (const auto& cand : candidates) {
              mut.modalR = cand;
              outcome.modelsTried++;
              evalUnit(p.unit, n, mut.leq, mut.atomVals, mut.keyed, &mut.modalR, slots);
              if (WorldSet ok = goodWorlds(p, slots, n)) {
                outcome.certificate = buildCertificate(p, mut, setToList(ok).front());
                return outcome;
              }
            }
          } else {
            outcome.modelsTried++;
            evalUnit(p.unit, n, mut.leq, mut.atomVals, mut.keyed, nullptr, slots);
            if (WorldSet ok = goodWorlds(p, slots, n)) {
              outcome.certificate = buildCertificate(p, mut, setToList(ok).front());
              return outcome;
            }
          }

          // advance odometer
          if (digits == 0) break;
          int d = 0;
          while (d < digits) {
            if (++odo[d] < ups.size()) break;
            odo[d] = 0;
            d++;
          }
          if (d == digits) break;
        }
      }
    }
    return outcome;
  }

  // Random mode
  std::mt19937_64 rng = seededRng(budget.seed);
  for (int trial = 0; trial < budget.trials; trial++) {
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(budget.maxWorlds));
    ModelUnderTest mut;
    mut.n = n;
    mut.leq = randomPreorder(rng, n);
    mut.atomVals.clear();
    for (int a = 0; a < atomCount; a++)
      mut.atomVals.push_back({randomUpset(rng, mut.leq, n), randomUpset(rng, mut.leq, n)});
    std::vector<FlatRel> candidates;
    if (logic != SearchLogic::N4) {
      candidates = computeRelationCandidates(mut.leq, n, budget.relationCandidateCap);
      if (candidates.empty()) continue;
    }
    if (logic == SearchLogic::FSKd) mut.modalR = candidates[rng() % candidates.size()];
    if (logic == SearchLogic::N4CK) {
      for (std::size_t i = 0; i < p.ants.size(); i++) {
        evalUnit(p.unit, n, mut.leq, mut.atomVals, mut.keyed, &mut.modalR, slots);
        BiSet key = slots[p.antSlots[i]];
        bool present = false;
        for (const auto& kr : mut.keyed)
          if (kr.key == key) present = true;
        if (!present) mut.keyed.push_back({key, candidates[rng() % candidates.size()]});
      }
    }
    outcome.modelsTried++;
    evalUnit(p.unit, n, mut.leq, mut.atomVals, mut.keyed,
             logic == SearchLogic::FSKd ? &mut.modalR : nullptr, slots);
    if (WorldSet ok = goodWorlds(p, slots, n)) {
      outcome.certificate = buildCertificate(p, mut, setToList(ok).front());
      return outcome;
    }
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

NelsonianModel sampleNelModel(const std::vector<Atom>& atomSet, const SearchBudget& budget) {
  std::mt19937_64 rng = seededRng(budget.seed);
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(budget.maxWorlds));
  FlatRel leq = randomPreorder(rng, n);
  NelsonianModel m;
  m.worldCount = n;
  m.leq = unflatten(leq, n);
  for (const Atom& a : atomSet) {
    if (WorldSet s = randomUpset(rng, leq, n)) m.val.plus[a] = s;
    if (WorldSet s = randomUpset(rng, leq, n)) m.val.minus[a] = s;
    if (a.primed) m.extended = true;
  }
  return m;
}

CondNelsonianModel sampleCondModel(const std::vector<Atom>& atomSet, const SearchBudget& budget) {
  std::mt19937_64 rng = seededRng(budget.seed * 0x9e37 + 17);
  CondNelsonianModel m;
  SearchBudget inner = budget;
  inner.seed = rng();
  m.base = sampleNelModel(atomSet, inner);
  const int n = m.base.worldCount;
  FlatRel leq = flatten(m.base.leq);
  std::vector<FlatRel> candidates =
      computeRelationCandidates(leq, n, budget.relationCandidateCap);

  CondRelBlock block;
  block.stratum = fullSet(n);
  const int keyCount = static_cast<int>(rng() % 4);
  FormulaGen gen{atomSet, 2, true, false, false, false, false};
  for (int i = 0; i < keyCount; i++) {
    Formula keyFormula = gen(rng);
    BiSet key = truthSetN4(m.base, keyFormula);
    bool dup = false;
    for (const auto& [k, rel] : block.entries)
      if (k == key) dup = true;
    if (dup) continue;
    block.entries.push_back({key, unflatten(candidates[rng() % candidates.size()], n)});
  }
  m.blocks.push_back(std::move(block));
  return m;
}

ModalModel sampleModalModel(const std::vector<Atom>& atomSet, const SearchBudget& budget) {
  std::mt19937_64 rng = seededRng(budget.seed * 0x51ed + 29);
  ModalModel m;
  SearchBudget inner = budget;
  inner.seed = rng();
  NelsonianModel base = sampleNelModel(atomSet, inner);
  m.worldCount = base.worldCount;
  m.leq = base.leq;
  m.val = base.val;
  m.extended = base.extended;
  m.nelsonian = true;
  std::vector<FlatRel> candidates =
      computeRelationCandidates(flatten(m.leq), m.worldCount, budget.relationCandidateCap);
  m.r = unflatten(candidates[rng() % candidates.size()], m.worldCount);
  return m;
}

CondIntModel sampleCondIntModel(const std::vector<Atom>& atomSet, const SearchBudget& budget) {
  std::mt19937_64 rng = seededRng(budget.seed * 0xc0de + 41);
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(budget.maxWorlds));
  FlatRel leq = randomPreorder(rng, n);
  CondIntModel m;
  m.worldCount = n;
  m.leq = unflatten(leq, n);
  for (const Atom& a : atomSet)
    if (WorldSet s = randomUpset(rng, leq, n)) m.val.plus[a] = s;
  std::vector<FlatRel> candidates = computeRelationCandidates(leq, n, budget.relationCandidateCap);
  IntRelBlock block;
  block.stratum = fullSet(n);
  const int keyCount = static_cast<int>(rng() % 4);
  for (int i = 0; i < keyCount; i++) {
    WorldSet key = randomUpset(rng, leq, n);
    bool dup = false;
    for (const auto& [k, rel] : block.entries)
      if (k == key) dup = true;
    if (dup) continue;
    block.entries.push_back({key, unflatten(candidates[rng() % candidates.size()], n)});
  }
  m.blocks.push_back(std::move(block));
  return m;
}

bool verifyCertificate(const Certificate& c) {
  if (std::holds_alternative<CondNelsonianModel>(c.model)) {
    const auto& m = std::get<CondNelsonianModel>(c.model);
    return validate(m).empty() && holdsPair(m, c.world, c.gamma, c.delta);
  }
  if (std::holds_alternative<NelsonianModel>(c.model)) {
    const auto& m = std::get<NelsonianModel>(c.model);
    return validate(m).empty() && holdsPair(m, c.world, c.gamma, c.delta);
  }
  const auto& m = std::get<ModalModel>(c.model);
  return validate(m).empty() && holdsPair(m, c.world, c.gamma, c.delta);
}

}  // namespace n4ck
