#include "n4ck/kripke.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace n4ck {

std::vector<WorldId> setToList(WorldSet s) {
  std::vector<WorldId> out;
  for (int w = 0; w < kMaxWorlds; w++)
    if (inSet(s, w)) out.push_back(w);
  return out;
}

RelMat RelMat::identity(int n) {
  RelMat r = empty(n);
  for (int w = 0; w < n; w++) r.add(w, w);
  return r;
}

bool RelMat::isEmpty() const {
  for (WorldSet row : rows)
    if (row) return false;
  return true;
}

RelMat compose(const RelMat& a, const RelMat& b) {
  const int n = a.worldCount();
  RelMat out = RelMat::empty(n);
  for (int v = 0; v < n; v++) {
    WorldSet mid = a.rows[v];
    for (int u = 0; u < n; u++)
      if (inSet(mid, u)) out.rows[v] |= b.rows[u];
  }
  return out;
}

RelMat reflTransClosure(RelMat r) {
  const int n = r.worldCount();
  for (int w = 0; w < n; w++) r.add(w, w);
  for (int k = 0; k < n; k++)
    for (int v = 0; v < n; v++)
      if (r.at(v, k)) r.rows[v] |= r.rows[k];
  return r;
}

WorldSet Valuation::plusOf(const Atom& a) const {
  auto it = plus.find(a);
  return it == plus.end() ? 0 : it->second;
}

WorldSet Valuation::minusOf(const Atom& a) const {
  auto it = minus.find(a);
  return it == minus.end() ? 0 : it->second;
}

RelMat CondNelsonianModel::lookup(const BiSet& key) const {
  RelMat out = RelMat::empty(worldCount());
  for (const auto& block : blocks) {
    BiSet norm{key.plus & block.stratum, key.minus & block.stratum};
    for (const auto& [k, rel] : block.entries) {
      bool hit = false;
      switch (block.match) {
        case KeyMatch::Exact: hit = (k == norm); break;
        case KeyMatch::PlusOnly: hit = (k.plus == norm.plus); break;
        case KeyMatch::MinusOnly: hit = (k.minus == norm.minus); break;
      }
      if (hit)
        for (int v = 0; v < worldCount(); v++) out.rows[v] |= rel.rows[v];
    }
  }
  return out;
}

RelMat CondIntModel::lookup(WorldSet key) const {
  RelMat out = RelMat::empty(worldCount);
  for (const auto& block : blocks) {
    WorldSet norm = key & block.stratum;
    for (const auto& [k, rel] : block.entries)
      if (k == norm)
        for (int v = 0; v < worldCount; v++) out.rows[v] |= rel.rows[v];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

std::string worldSetStr(WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (WorldId w : setToList(s)) {
    if (!first) out += ",";
    out += std::to_string(w);
    first = false;
  }
  return out + "}";
}

void checkPreorder(const RelMat& leq, int n, std::vector<Violation>& out) {
  for (int w = 0; w < n; w++)
    if (!leq.at(w, w))
      out.push_back({"reflexivity", "world " + std::to_string(w)});
  for (int v = 0; v < n; v++)
    for (int u = 0; u < n; u++)
      if (leq.at(v, u) && (leq.rows[u] & ~leq.rows[v]))
        out.push_back({"transitivity",
                       std::to_string(v) + " <= " + std::to_string(u) +
                           " <= " + worldSetStr(leq.rows[u] & ~leq.rows[v])});
}

void checkMon(const RelMat& leq, int n, const std::map<Atom, WorldSet>& ext,
              const char* which, std::vector<Violation>& out) {
  for (const auto& [a, set] : ext)
    for (int w = 0; w < n; w++)
      if (inSet(set, w) && (leq.rows[w] & ~set))
        out.push_back({"mon", std::string(which) + "(" + atomName(a) + ") at " +
                                  std::to_string(w) + " not upward-closed"});
}

// (c1): v <= v' and R(v,u) demand some u' >= u with R(v',u').
// (c2): R(v,u) and u <= u' demand some v' >= v with R(v',u').
void checkFrameConditions(const RelMat& leq, const RelMat& rel, int n,
                          const std::string& tag, std::vector<Violation>& out) {
  for (int v = 0; v < n; v++) {
    for (int u = 0; u < n; u++) {
      if (!rel.at(v, u)) continue;
      for (int vp = 0; vp < n; vp++) {
        if (!leq.at(v, vp)) continue;
        if (!(rel.rows[vp] & leq.rows[u]))
          out.push_back({"c1" + tag, "(" + std::to_string(vp) + "," +
                                         std::to_string(v) + "," + std::to_string(u) + ")"});
      }
      for (int up = 0; up < n; up++) {
        if (!leq.at(u, up)) continue;
        bool ok = false;
        for (int vp = 0; vp < n && !ok; vp++)
          if (leq.at(v, vp) && rel.at(vp, up)) ok = true;
        if (!ok)
          out.push_back({"c2" + tag, "(" + std::to_string(v) + "," +
                                         std::to_string(u) + "," + std::to_string(up) + ")"});
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate(const NelsonianModel& m) {
  std::vector<Violation> out;
  if (m.worldCount <= 0) out.push_back({"carrier", "W empty"});
  checkPreorder(m.leq, m.worldCount, out);
  checkMon(m.leq, m.worldCount, m.val.plus, "V+", out);
  checkMon(m.leq, m.worldCount, m.val.minus, "V-", out);
  if (!m.extended)
    for (const auto* ext : {&m.val.plus, &m.val.minus})
      for (const auto& [a, set] : *ext)
        if (a.primed && set)
          out.push_back({"language", "primed atom " + atomName(a) + " in non-extended model"});
  return out;
}

std::vector<Violation> validate(const CondNelsonianModel& m) {
  std::vector<Violation> out = validate(m.base);
  const int n = m.worldCount();
  const WorldSet full = fullSet(n);
  for (std::size_t bi = 0; bi < m.blocks.size(); bi++) {
    const auto& block = m.blocks[bi];
    std::string tag = m.blocks.size() > 1 ? " block " + std::to_string(bi) : "";
    if (block.stratum & ~full)
      out.push_back({"block", "stratum outside carrier" + tag});
    std::set<std::pair<WorldSet, WorldSet>> seen;
    for (const auto& [key, rel] : block.entries) {
      if ((key.plus & ~block.stratum) || (key.minus & ~block.stratum))
        out.push_back({"key", "key " + worldSetStr(key.plus) + "/" + worldSetStr(key.minus) +
                                  " not normalized to stratum" + tag});
      std::pair<WorldSet, WorldSet> id;
      switch (block.match) {
        case KeyMatch::Exact: id = {key.plus, key.minus}; break;
        case KeyMatch::PlusOnly: id = {key.plus, ~WorldSet{0}}; break;
        case KeyMatch::MinusOnly: id = {~WorldSet{0}, key.minus}; break;
      }
      if (!seen.insert(id).second)
        out.push_back({"key", "duplicate key " + worldSetStr(key.plus) + "/" +
                                  worldSetStr(key.minus) + tag});
      checkFrameConditions(m.base.leq, rel, n, tag, out);
    }
  }
  return out;
}

std::vector<Violation> validate(const CondIntModel& m) {
  std::vector<Violation> out;
  if (m.worldCount <= 0) out.push_back({"carrier", "W empty"});
  checkPreorder(m.leq, m.worldCount, out);
  checkMon(m.leq, m.worldCount, m.val.plus, "V", out);
  if (!m.val.minus.empty()) out.push_back({"flavor", "negative extension in CInt model"});
  for (std::size_t bi = 0; bi < m.blocks.size(); bi++) {
    const auto& block = m.blocks[bi];
    std::string tag = m.blocks.size() > 1 ? " block " + std::to_string(bi) : "";
    std::set<WorldSet> seen;
    for (const auto& [key, rel] : block.entries) {
      if (key & ~block.stratum)
        out.push_back({"key", "key " + worldSetStr(key) + " not normalized to stratum" + tag});
      if (!seen.insert(key).second)
        out.push_back({"key", "duplicate key " + worldSetStr(key) + tag});
      checkFrameConditions(m.leq, rel, m.worldCount, "-i" + tag, out);
    }
  }
  return out;
}

std::vector<Violation> validate(const ModalModel& m) {
  std::vector<Violation> out;
  if (m.worldCount <= 0) out.push_back({"carrier", "W empty"});
  checkPreorder(m.leq, m.worldCount, out);
  checkMon(m.leq, m.worldCount, m.val.plus, "V+", out);
  checkMon(m.leq, m.worldCount, m.val.minus, "V-", out);
  if (!m.nelsonian && !m.val.minus.empty())
    out.push_back({"flavor", "negative extension in intuitionistic modal model"});
  checkFrameConditions(m.leq, m.r, m.worldCount, "-m", out);
  return out;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

CondNelsonianModel singleWorldTotal(const std::vector<Atom>& atoms) {
  CondNelsonianModel m;
  m.base.worldCount = 1;
  m.base.leq = RelMat::identity(1);
  for (const Atom& a : atoms) {
    m.base.val.plus[a] = 1;
    m.base.val.minus[a] = 1;
    if (a.primed) m.base.extended = true;
  }
  CondRelBlock block;
  block.stratum = 1;
  RelMat loop = RelMat::identity(1);
  block.entries.push_back({BiSet{1, 1}, loop});
  m.blocks.push_back(block);
  return m;
}

namespace {
WorldSet shiftSet(WorldSet s, int by) { return s << by; }

RelMat shiftRel(const RelMat& r, int by, int newCount) {
  RelMat out = RelMat::empty(newCount);
  for (int v = 0; v < r.worldCount(); v++) out.rows[v + by] = r.rows[v] << by;
  return out;
}
}  // namespace

std::pair<CondNelsonianModel, WorldId> joinWithRoot(const CondNelsonianModel& m1,
                                                    const CondNelsonianModel& m2) {
  const int n1 = m1.worldCount(), n2 = m2.worldCount();
  const int n = n1 + n2 + 1;
  if (n > kMaxWorlds) throw InvalidInput("joinWithRoot: too many worlds");
  const WorldId root = n1 + n2;

  CondNelsonianModel m;
  m.base.worldCount = n;
  m.base.extended = m1.base.extended || m2.base.extended;
  m.base.leq = RelMat::empty(n);
  for (int v = 0; v < n1; v++) m.base.leq.rows[v] = m1.base.leq.rows[v];
  for (int v = 0; v < n2; v++) m.base.leq.rows[n1 + v] = m2.base.leq.rows[v] << n1;
  m.base.leq.rows[root] = fullSet(n);

  auto mergeVal = [&](const std::map<Atom, WorldSet>& a, const std::map<Atom, WorldSet>& b,
                      std::map<Atom, WorldSet>& out) {
    for (const auto& [atom, set] : a) out[atom] |= set;
    for (const auto& [atom, set] : b) out[atom] |= shiftSet(set, n1);
  };
  mergeVal(m1.base.val.plus, m2.base.val.plus, m.base.val.plus);
  mergeVal(m1.base.val.minus, m2.base.val.minus, m.base.val.minus);

  for (const auto& block : m1.blocks) {
    CondRelBlock nb;
    nb.stratum = block.stratum;
    nb.match = block.match;
    for (const auto& [key, rel] : block.entries) {
      RelMat nr = RelMat::empty(n);
      for (int v = 0; v < n1; v++) nr.rows[v] = rel.rows[v];
      nb.entries.push_back({key, nr});
    }
    m.blocks.push_back(std::move(nb));
  }
  for (const auto& block : m2.blocks) {
    CondRelBlock nb;
    nb.stratum = shiftSet(block.stratum, n1);
    nb.match = block.match;
    for (const auto& [key, rel] : block.entries)
      nb.entries.push_back({BiSet{shiftSet(key.plus, n1), shiftSet(key.minus, n1)},
                            shiftRel(rel, n1, n)});
    m.blocks.push_back(std::move(nb));
  }
  return {m, root};
}

CondIntModel toCondInt(const CondNelsonianModel& m, RoleOrder order) {
  if (!validate(m).empty()) throw InvalidInput("toCondInt: invalid model");
  if (m.blocks.size() > 1 ||
      (!m.blocks.empty() &&
       (m.blocks[0].stratum != fullSet(m.worldCount()) || m.blocks[0].match != KeyMatch::Exact)))
    throw InvalidInput("toCondInt: stratified or non-exact input not supported");

  const int n = m.worldCount();
  struct Triple {
    WorldId w, v;
    BiSet key;
  };
  std::vector<Triple> triples;
  if (!m.blocks.empty())
    for (const auto& [key, rel] : m.blocks[0].entries)
      for (int w = 0; w < n; w++)
        for (int v = 0; v < n; v++)
          if (rel.at(w, v)) triples.push_back({w, v, key});

  const int ni = n + static_cast<int>(triples.size());
  if (ni > kMaxWorlds) throw InvalidInput("toCondInt: too many worlds");

  CondIntModel out;
  out.worldCount = ni;
  out.leq = RelMat::empty(ni);
  for (int v = 0; v < n; v++) out.leq.rows[v] = m.base.leq.rows[v];
  for (std::size_t i = 0; i < triples.size(); i++)
    for (std::size_t j = 0; j < triples.size(); j++)
      if (triples[i].key == triples[j].key && m.base.leq.at(triples[i].w, triples[j].w) &&
          m.base.leq.at(triples[i].v, triples[j].v))
        out.leq.add(n + static_cast<int>(i), n + static_cast<int>(j));

  // V(p_i) := V+(p_i), V(q_i) := V-(p_i)
  for (const auto& [a, set] : m.base.val.plus)
    if (!a.primed && set) out.val.plus[a] |= set;
  for (const auto& [a, set] : m.base.val.minus)
    if (!a.primed && set) out.val.plus[Atom{true, a.index}] |= set;

  IntRelBlock block;
  block.stratum = fullSet(n);
  std::map<WorldSet, RelMat> merged;
  auto addPair = [&](WorldSet key, WorldId from, WorldId to) {
    auto it = merged.emplace(key, RelMat::empty(ni)).first;
    it->second.add(from, to);
  };
  for (std::size_t i = 0; i < triples.size(); i++) {
    const auto& t = triples[i];
    const WorldId tw = n + static_cast<int>(i);
    WorldSet entryKey = order == RoleOrder::PlusFirst ? t.key.plus : t.key.minus;
    WorldSet exitKey = order == RoleOrder::PlusFirst ? t.key.minus : t.key.plus;
    addPair(entryKey, t.w, tw);
    addPair(exitKey, tw, t.v);
  }
  for (auto& [key, rel] : merged) block.entries.push_back({key, std::move(rel)});
  out.blocks.push_back(std::move(block));
  return out;
}

CondNelsonianModel toCondNelson(const CondIntModel& m, RoleOrder order) {
  if (!validate(m).empty()) throw InvalidInput("toCondNelson: invalid model");
  if (m.blocks.size() > 1) throw InvalidInput("toCondNelson: multi-block input not supported");

  CondNelsonianModel out;
  out.base.worldCount = m.worldCount;
  out.base.leq = m.leq;
  for (const auto& [a, set] : m.val.plus) {
    if (!set) continue;
    if (a.primed)
      out.base.val.minus[Atom{false, a.index}] |= set;
    else
      out.base.val.plus[a] |= set;
  }

  CondRelBlock block;
  if (m.blocks.empty()) {
    block.stratum = fullSet(m.worldCount);
  } else {
    const auto& in = m.blocks[0];
    block.stratum = in.stratum;
    for (const auto& [kx, rx] : in.entries) {
      for (const auto& [ky, ry] : in.entries) {
        RelMat comp = order == RoleOrder::PlusFirst ? compose(rx, ry) : compose(ry, rx);
        if (comp.isEmpty()) continue;
        block.entries.push_back({BiSet{kx, ky}, std::move(comp)});
      }
    }
  }
  out.blocks.push_back(std::move(block));
  return out;
}

CondNelsonianModel toCondNelsonSingleRole(const CondIntModel& m, RoleOrder order) {
  if (!validate(m).empty()) throw InvalidInput("toCondNelsonSingleRole: invalid model");
  if (m.blocks.size() > 1)
    throw InvalidInput("toCondNelsonSingleRole: multi-block input not supported");

  CondNelsonianModel out;
  out.base.worldCount = m.worldCount;
  out.base.leq = m.leq;
  for (const auto& [a, set] : m.val.plus) {
    if (!set) continue;
    if (a.primed)
      out.base.val.minus[Atom{false, a.index}] |= set;
    else
      out.base.val.plus[a] |= set;
  }
  CondRelBlock block;
  block.match = order == RoleOrder::PlusFirst ? KeyMatch::PlusOnly : KeyMatch::MinusOnly;
  block.stratum = m.blocks.empty() ? fullSet(m.worldCount) : m.blocks[0].stratum;
  if (!m.blocks.empty())
    for (const auto& [k, rel] : m.blocks[0].entries) {
      BiSet key = order == RoleOrder::PlusFirst ? BiSet{k, 0} : BiSet{0, k};
      block.entries.push_back({key, rel});
    }
  out.blocks.push_back(std::move(block));
  return out;
}

ModalModel relabelModal(const ModalModel& m, RelabelDirection direction) {
  if (!validate(m).empty()) throw InvalidInput("relabelModal: invalid model");
  ModalModel out;
  out.worldCount = m.worldCount;
  out.leq = m.leq;
  out.r = m.r;
  if (direction == RelabelDirection::NelsonToInt) {
    if (!m.nelsonian) throw InvalidInput("relabelModal: expected Nelsonian flavor");
    out.nelsonian = false;
    out.extended = true;
    for (const auto& [a, set] : m.val.plus)
      if (!a.primed && set) out.val.plus[a] |= set;
    for (const auto& [a, set] : m.val.minus)
      if (!a.primed && set) out.val.plus[Atom{true, a.index}] |= set;
  } else {
    if (m.nelsonian) throw InvalidInput("relabelModal: expected intuitionistic flavor");
    out.nelsonian = true;
    out.extended = false;
    for (const auto& [a, set] : m.val.plus) {
      if (!set) continue;
      if (a.primed)
        out.val.minus[Atom{false, a.index}] |= set;
      else
        out.val.plus[a] |= set;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

namespace {

using Json = nlohmann::ordered_json;

Json pairsJson(const RelMat& r) {
  Json out = Json::array();
  for (int v = 0; v < r.worldCount(); v++)
    for (int u = 0; u < r.worldCount(); u++)
      if (r.at(v, u)) out.push_back(Json::array({v, u}));
  return out;
}

RelMat pairsFromJson(const Json& j, int n) {
  RelMat r = RelMat::empty(n);
  for (const auto& p : j) {
    int v = p.at(0).get<int>(), u = p.at(1).get<int>();
    if (v < 0 || v >= n || u < 0 || u >= n) throw InvalidInput("world out of range in pair list");
    r.add(v, u);
  }
  return r;
}

Json valJson(const std::map<Atom, WorldSet>& ext) {
  Json out = Json::object();
  for (const auto& [a, set] : ext) {
    if (!set) continue;
    Json worlds = Json::array();
    for (WorldId w : setToList(set)) worlds.push_back(w);
    out[atomName(a)] = worlds;
  }
  return out;
}

std::map<Atom, WorldSet> valFromJson(const Json& j, int n) {
  std::map<Atom, WorldSet> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& name = it.key();
    if (name.size() < 2 || (name[0] != 'p' && name[0] != 'q'))
      throw InvalidInput("bad atom name " + name);
    Atom a{name[0] == 'q', static_cast<std::uint32_t>(std::stoul(name.substr(1)))};
    WorldSet s = 0;
    for (const auto& w : it.value()) {
      int v = w.get<int>();
      if (v < 0 || v >= n) throw InvalidInput("world out of range in valuation");
      s |= worldBit(v);
    }
    out[a] = s;
  }
  return out;
}

Json worldsJson(WorldSet s) {
  Json out = Json::array();
  for (WorldId w : setToList(s)) out.push_back(w);
  return out;
}

WorldSet worldsFromJson(const Json& j, int n) {
  WorldSet s = 0;
  for (const auto& w : j) {
    int v = w.get<int>();
    if (v < 0 || v >= n) throw InvalidInput("world out of range in key");
    s |= worldBit(v);
  }
  return s;
}

const char* matchName(KeyMatch m) {
  switch (m) {
    case KeyMatch::Exact: return "exact";
    case KeyMatch::PlusOnly: return "plus";
    case KeyMatch::MinusOnly: return "minus";
  }
  return "exact";
}

KeyMatch matchFromName(const std::string& s) {
  if (s == "exact") return KeyMatch::Exact;
  if (s == "plus") return KeyMatch::PlusOnly;
  if (s == "minus") return KeyMatch::MinusOnly;
  throw InvalidInput("bad keyMatch " + s);
}

bool extendedVal(const Valuation& v) {
  for (const auto& [a, set] : v.plus)
    if (a.primed && set) return true;
  for (const auto& [a, set] : v.minus)
    if (a.primed && set) return true;
  return false;
}

}  // namespace

std::string writeModel(const NelsonianModel& m) {
  Json j;
  j["type"] = "nel";
  j["worlds"] = m.worldCount;
  j["leq"] = pairsJson(m.leq);
  j["vplus"] = valJson(m.val.plus);
  j["vminus"] = valJson(m.val.minus);
  return j.dump(2) + "\n";
}

std::string writeModel(const CondNelsonianModel& m) {
  Json j;
  j["type"] = "cnel";
  j["worlds"] = m.worldCount();
  j["leq"] = pairsJson(m.base.leq);
  j["vplus"] = valJson(m.base.val.plus);
  j["vminus"] = valJson(m.base.val.minus);
  bool plain = m.blocks.size() <= 1 &&
               (m.blocks.empty() || (m.blocks[0].stratum == fullSet(m.worldCount()) &&
                                     m.blocks[0].match == KeyMatch::Exact));
  if (plain) {
    Json rels = Json::array();
    if (!m.blocks.empty())
      for (const auto& [key, rel] : m.blocks[0].entries) {
        Json e;
        e["plusKey"] = worldsJson(key.plus);
        e["minusKey"] = worldsJson(key.minus);
        e["pairs"] = pairsJson(rel);
        rels.push_back(e);
      }
    j["relations"] = rels;
  } else {
    Json blocks = Json::array();
    for (const auto& block : m.blocks) {
      Json b;
      b["stratum"] = worldsJson(block.stratum);
      b["keyMatch"] = matchName(block.match);
      Json rels = Json::array();
      for (const auto& [key, rel] : block.entries) {
        Json e;
        e["plusKey"] = worldsJson(key.plus);
        e["minusKey"] = worldsJson(key.minus);
        e["pairs"] = pairsJson(rel);
        rels.push_back(e);
      }
      b["relations"] = rels;
      blocks.push_back(b);
    }
    j["blocks"] = blocks;
  }
  return j.dump(2) + "\n";
}

std::string writeModel(const CondIntModel& m) {
  Json j;
  j["type"] = "cint";
  j["worlds"] = m.worldCount;
  j["leq"] = pairsJson(m.leq);
  j["vplus"] = valJson(m.val.plus);
  bool plain = m.blocks.size() <= 1 &&
               (m.blocks.empty() || m.blocks[0].stratum == fullSet(m.worldCount));
  if (plain) {
    Json rels = Json::array();
    if (!m.blocks.empty())
      for (const auto& [key, rel] : m.blocks[0].entries) {
        Json e;
        e["plusKey"] = worldsJson(key);
        e["pairs"] = pairsJson(rel);
        rels.push_back(e);
      }
    j["relations"] = rels;
  } else {
    Json blocks = Json::array();
    for (const auto& block : m.blocks) {
      Json b;
      b["stratum"] = worldsJson(block.stratum);
      Json rels = Json::array();
      for (const auto& [key, rel] : block.entries) {
        Json e;
        e["plusKey"] = worldsJson(key);
        e["pairs"] = pairsJson(rel);
        rels.push_back(e);
      }
      b["relations"] = rels;
      blocks.push_back(b);
    }
    j["blocks"] = blocks;
  }
  return j.dump(2) + "\n";
}

std::string writeModel(const ModalModel& m) {
  Json j;
  j["type"] = m.nelsonian ? "mnel" : "mint";
  j["worlds"] = m.worldCount;
  j["leq"] = pairsJson(m.leq);
  j["vplus"] = valJson(m.val.plus);
  if (m.nelsonian) j["vminus"] = valJson(m.val.minus);
  j["r"] = pairsJson(m.r);
  return j.dump(2) + "\n";
}

AnyModel readModel(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("model parse error: ") + e.what());
  }
  AnyModel out;
  const std::string type = j.at("type").get<std::string>();
  const int n = j.at("worlds").get<int>();
  if (n <= 0 || n > kMaxWorlds) throw InvalidInput("bad world count");
  RelMat leq = pairsFromJson(j.at("leq"), n);

  auto readCnelBlocks = [&](CondNelsonianModel& m) {
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) {
        CondRelBlock block;
        block.stratum = worldsFromJson(b.at("stratum"), n);
        block.match = b.contains("keyMatch") ? matchFromName(b.at("keyMatch").get<std::string>())
                                             : KeyMatch::Exact;
        for (const auto& e : b.at("relations"))
          block.entries.push_back({BiSet{worldsFromJson(e.at("plusKey"), n),
                                         worldsFromJson(e.at("minusKey"), n)},
                                   pairsFromJson(e.at("pairs"), n)});
        m.blocks.push_back(std::move(block));
      }
    } else {
      CondRelBlock block;
      block.stratum = fullSet(n);
      for (const auto& e : j.at("relations"))
        block.entries.push_back({BiSet{worldsFromJson(e.at("plusKey"), n),
                                       worldsFromJson(e.at("minusKey"), n)},
                                 pairsFromJson(e.at("pairs"), n)});
      m.blocks.push_back(std::move(block));
    }
  };

  if (type == "nel") {
    out.kind = ModelKind::Nel;
    out.nel.worldCount = n;
    out.nel.leq = leq;
    out.nel.val.plus = valFromJson(j.at("vplus"), n);
    out.nel.val.minus = valFromJson(j.at("vminus"), n);
    out.nel.extended = extendedVal(out.nel.val);
  } else if (type == "cnel") {
    out.kind = ModelKind::CNel;
    out.cnel.base.worldCount = n;
    out.cnel.base.leq = leq;
    out.cnel.base.val.plus = valFromJson(j.at("vplus"), n);
    out.cnel.base.val.minus = valFromJson(j.at("vminus"), n);
    out.cnel.base.extended = extendedVal(out.cnel.base.val);
    readCnelBlocks(out.cnel);
  } else if (type == "cint") {
    out.kind = ModelKind::CInt;
    out.cint.worldCount = n;
    out.cint.leq = leq;
    out.cint.val.plus = valFromJson(j.at("vplus"), n);
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) {
        IntRelBlock block;
        block.stratum = worldsFromJson(b.at("stratum"), n);
        for (const auto& e : b.at("relations"))
          block.entries.push_back(
              {worldsFromJson(e.at("plusKey"), n), pairsFromJson(e.at("pairs"), n)});
        out.cint.blocks.push_back(std::move(block));
      }
    } else {
      IntRelBlock block;
      block.stratum = fullSet(n);
      for (const auto& e : j.at("relations"))
        block.entries.push_back(
            {worldsFromJson(e.at("plusKey"), n), pairsFromJson(e.at("pairs"), n)});
      out.cint.blocks.push_back(std::move(block));
    }
  } else if (type == "mnel" || type == "mint") {
    out.kind = type == "mnel" ? ModelKind::MNel : ModelKind::MInt;
    out.modal.worldCount = n;
    out.modal.leq = leq;
    out.modal.nelsonian = type == "mnel";
    out.modal.val.plus = valFromJson(j.at("vplus"), n);
    if (out.modal.nelsonian) out.modal.val.minus = valFromJson(j.at("vminus"), n);
    out.modal.r = pairsFromJson(j.at("r"), n);
    out.modal.extended = extendedVal(out.modal.val);
  } else {
    throw InvalidInput("unknown model type " + type);
  }
  return out;
}

}  // namespace n4ck
