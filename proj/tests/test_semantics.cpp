#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "n4ck/search.hpp"
#include "n4ck/semantics.hpp"

using namespace n4ck;
using F = Formula;

namespace {

const Atom p{false, 0};
const Atom q{false, 1};

CondNelsonianModel oneWorld() {
  CondNelsonianModel m;
  m.base.worldCount = 1;
  m.base.leq = RelMat::identity(1);
  CondRelBlock block;
  block.stratum = 1;
  m.blocks.push_back(block);
  return m;
}

Formula parseC(const std::string& s) { return parse(s, LanguageId::LBoxto); }

}  // namespace

TEST_CASE("empty-table conditionals are vacuously verified") {
  CondNelsonianModel m = oneWorld();
  CHECK(evalN4CK(m, 0, parseC("p0 []-> p1"), Sign::Plus));
  CHECK(!evalN4CK(m, 0, parseC("p0 []-> p1"), Sign::Minus));
  CHECK(!evalN4CK(m, 0, parseC("p0 <>-> p1"), Sign::Plus));
}

TEST_CASE("contraposition fails for the weak implication") {
  // vplus(p)={w}, vplus(q)={w}, vminus(p)={}, vminus(q)={w}
  CondNelsonianModel m = oneWorld();
  m.base.val.plus[p] = 1;
  m.base.val.plus[q] = 1;
  m.base.val.minus[q] = 1;
  REQUIRE(validate(m).empty());
  CHECK(!evalN4CK(m, 0, parseC("(p0 -> p1) -> (~p1 -> ~p0)"), Sign::Plus));
}

TEST_CASE("truth sets follow the clauses") {
  CondNelsonianModel m = oneWorld();
  m.base.val.plus[p] = 1;
  m.base.val.minus[p] = 1;
  BiSet ts = truthSet(m, F::atom(p));
  CHECK(ts.plus == 1);
  CHECK(ts.minus == 1);
  BiSet neg = truthSet(m, F::neg(F::atom(p)));
  CHECK(neg.plus == ts.minus);
  CHECK(neg.minus == ts.plus);
}

TEST_CASE("might-conditional positive component is the existential image") {
  CondNelsonianModel m = oneWorld();
  m.base.val.plus[p] = 1;
  m.base.val.plus[q] = 1;
  RelMat loop = RelMat::identity(1);
  m.blocks[0].entries.push_back({BiSet{1, 0}, loop});
  REQUIRE(validate(m).empty());
  CHECK(evalN4CK(m, 0, parseC("p0 <>-> p1"), Sign::Plus));
  m.blocks[0].entries[0].second = RelMat::empty(1);
  CHECK(!evalN4CK(m, 0, parseC("p0 <>-> p1"), Sign::Plus));
}

TEST_CASE("hereditariness of all four evaluators") {
  std::mt19937_64 rng(811);
  FormulaGen condGen{{{false, 0}, {false, 1}, {false, 2}}, 5, true, true, true, false, false};
  FormulaGen modalGen{{{false, 0}, {false, 1}}, 5, true, false, false, true, true};
  const std::vector<Atom> extAtoms = {{false, 0}, {true, 0}, {false, 1}, {true, 1}};
  for (int t = 0; t < 2500; t++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();

    CondNelsonianModel m = sampleCondModel(condGen.atoms, b);
    Formula f = condGen(rng);
    BiSet ts = truthSet(m, f);
    for (int w = 0; w < m.worldCount(); w++) {
      if (inSet(ts.plus, w)) REQUIRE((m.base.leq.rows[w] & ~ts.plus) == 0);
      if (inSet(ts.minus, w)) REQUIRE((m.base.leq.rows[w] & ~ts.minus) == 0);
    }

    CondIntModel mi = sampleCondIntModel(extAtoms, b);
    FormulaGen intGen{extAtoms, 4, false, true, true, false, false};
    Formula fi = intGen(rng);
    WorldSet si = truthSetIntCK(mi, fi);
    for (int w = 0; w < mi.worldCount; w++)
      if (inSet(si, w)) REQUIRE((mi.leq.rows[w] & ~si) == 0);

    ModalModel mm = sampleModalModel(modalGen.atoms, b);
    Formula fm = modalGen(rng);
    BiSet tm = truthSetModal(mm, fm);
    for (int w = 0; w < mm.worldCount; w++) {
      if (inSet(tm.plus, w)) REQUIRE((mm.leq.rows[w] & ~tm.plus) == 0);
      if (inSet(tm.minus, w)) REQUIRE((mm.leq.rows[w] & ~tm.minus) == 0);
    }
  }
}

TEST_CASE("the might-conditional agrees with its abbreviation") {
  std::mt19937_64 rng(812);
  FormulaGen gen{{{false, 0}, {false, 1}}, 4, true, true, true, false, false};
  for (int t = 0; t < 2000; t++) {
    SearchBudget b;
    b.maxWorlds = 3;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel(gen.atoms, b);
    Formula a = gen(rng), c = gen(rng);
    Formula direct = F::diamto(a, c);
    Formula abbrev = F::neg(F::boxto(a, F::neg(c)));
    for (int w = 0; w < m.worldCount(); w++)
      for (Sign s : {Sign::Plus, Sign::Minus})
        REQUIRE(evalN4CK(m, w, direct, s) == evalN4CK(m, w, abbrev, s));
  }
}

TEST_CASE("strong implication matches its displayed satisfaction conditions") {
  std::mt19937_64 rng(813);
  FormulaGen gen{{{false, 0}, {false, 1}}, 3, true, false, false, false, false};
  for (int t = 0; t < 2000; t++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel(gen.atoms, b);
    Formula a = gen(rng), c = gen(rng);
    BiSet ta = truthSet(m, a), tc = truthSet(m, c);
    BiSet ts = truthSet(m, makeStrongImp(a, c));
    const int n = m.worldCount();
    for (int w = 0; w < n; w++) {
      bool plus = true;
      for (int v = 0; v < n && plus; v++) {
        if (!m.base.leq.at(w, v)) continue;
        if (inSet(ta.plus, v) && !inSet(tc.plus, v)) plus = false;
        if (inSet(tc.minus, v) && !inSet(ta.minus, v)) plus = false;
      }
      REQUIRE(inSet(ts.plus, w) == plus);
      REQUIRE(inSet(ts.minus, w) == (inSet(ta.plus, w) && inSet(tc.minus, w)));
    }
  }
}

TEST_CASE("conservativity over the box-free fragment") {
  std::mt19937_64 rng(814);
  FormulaGen gen{{{false, 0}, {false, 1}, {false, 2}}, 5, true, false, false, false, false};
  for (int t = 0; t < 2000; t++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel(gen.atoms, b);
    Formula f = gen(rng);
    BiSet viaCond = truthSet(m, f);
    BiSet viaN4 = truthSetN4(m.base, f);
    REQUIRE(viaCond.plus == viaN4.plus);
    REQUIRE(viaCond.minus == viaN4.minus);
  }
}

TEST_CASE("double negation is semantically transparent") {
  std::mt19937_64 rng(815);
  FormulaGen gen{{{false, 0}, {false, 1}}, 4, true, true, true, false, false};
  for (int t = 0; t < 1000; t++) {
    SearchBudget b;
    b.maxWorlds = 3;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel(gen.atoms, b);
    Formula f = gen(rng);
    BiSet a = truthSet(m, f);
    BiSet d = truthSet(m, F::neg(F::neg(f)));
    REQUIRE(a.plus == d.plus);
    REQUIRE(a.minus == d.minus);
  }
}

TEST_CASE("intuitionistic negation quantifies over successors") {
  CondIntModel m;
  m.worldCount = 2;
  m.leq = RelMat::identity(2);
  m.leq.add(0, 1);
  m.val.plus[q] = worldBit(1);
  IntRelBlock block;
  block.stratum = fullSet(2);
  m.blocks.push_back(block);
  REQUIRE(validate(m).empty());
  // ~q fails at 0 because a successor satisfies q; ~p holds everywhere
  CHECK(!evalIntCK(m, 0, F::neg(F::atom(q))));
  CHECK(evalIntCK(m, 0, F::neg(F::atom(p))));
  // empty table: conditionals hold everywhere
  CHECK(evalIntCK(m, 0, F::boxto(F::atom(p), F::atom(q))));
  CHECK(!evalIntCK(m, 0, F::diamto(F::atom(p), F::atom(q))));
}

TEST_CASE("modal clauses") {
  ModalModel m;
  m.worldCount = 2;
  m.leq = RelMat::identity(2);
  m.val.minus[p] = worldBit(1);
  m.r = RelMat::empty(2);
  m.nelsonian = true;
  REQUIRE(validate(m).empty());
  // r empty: box vacuously verified, not falsified
  CHECK(evalModal(m, 0, F::box(F::atom(p)), Sign::Plus));
  CHECK(!evalModal(m, 0, F::box(F::atom(p)), Sign::Minus));
  // box is falsified through an R-successor falsifying the body
  m.r.add(0, 1);
  REQUIRE(validate(m).empty());
  CHECK(evalModal(m, 0, F::box(F::atom(p)), Sign::Minus));
  CHECK(!evalModal(m, 0, F::box(F::atom(p)), Sign::Plus));
  // <> abbreviates ~[]~
  std::mt19937_64 rng(816);
  FormulaGen gen{{{false, 0}, {false, 1}}, 4, true, false, false, true, true};
  for (int t = 0; t < 1000; t++) {
    SearchBudget b;
    b.maxWorlds = 3;
    b.seed = rng();
    ModalModel mm = sampleModalModel(gen.atoms, b);
    Formula f = gen(rng);
    for (int w = 0; w < mm.worldCount; w++)
      for (Sign s : {Sign::Plus, Sign::Minus})
        REQUIRE(evalModal(mm, w, F::diamond(f), s) ==
                evalModal(mm, w, expandDiamond(f), s));
  }
  CHECK_THROWS_AS(evalModalInt(m, 0, F::box(F::atom(p))), FlavorMismatch);
}

TEST_CASE("holdsPair") {
  CondNelsonianModel m = oneWorld();
  CHECK(holdsPair(m, 0, {}, {}));
  m.base.val.plus[p] = 1;
  CHECK(!holdsPair(m, 0, {F::atom(p)}, {F::atom(p)}));
  CHECK(holdsPair(m, 0, {F::atom(p)}, {F::atom(q)}));
}
