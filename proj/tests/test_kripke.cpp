#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "n4ck/kripke.hpp"
#include "n4ck/search.hpp"
#include "n4ck/semantics.hpp"

using namespace n4ck;
using F = Formula;

namespace {

CondNelsonianModel plainModel(int n, const RelMat& leq) {
  CondNelsonianModel m;
  m.base.worldCount = n;
  m.base.leq = leq;
  CondRelBlock block;
  block.stratum = fullSet(n);
  m.blocks.push_back(block);
  return m;
}

}  // namespace

TEST_CASE("validate accepts the single reflexive world with empty table") {
  CondNelsonianModel m = plainModel(1, RelMat::identity(1));
  CHECK(validate(m).empty());
}

TEST_CASE("validate reports a missing (c2) completion with a witness") {
  // two worlds w=0 <= v=1, key ({0},{}), rel {(1,0)}: from 1 R 0 <= 0 fine,
  // but 1 R 0 <= 1 demands some v' >= 1 with R(v',1), which is absent.
  CondNelsonianModel m;
  m.base.worldCount = 2;
  m.base.leq = RelMat::identity(2);
  m.base.leq.add(0, 1);
  CondRelBlock block;
  block.stratum = fullSet(2);
  RelMat rel = RelMat::empty(2);
  rel.add(1, 0);
  block.entries.push_back({BiSet{worldBit(0), 0}, rel});
  m.blocks.push_back(block);

  auto violations = validate(m);
  REQUIRE(!violations.empty());
  bool c2seen = false;
  for (const auto& v : violations)
    if (v.condition.rfind("c2", 0) == 0) {
      c2seen = true;
      CHECK(v.witness == "(1,0,1)");
    }
  CHECK(c2seen);
}

TEST_CASE("validate flags broken preorders and monotonicity") {
  NelsonianModel m;
  m.worldCount = 2;
  m.leq = RelMat::empty(2);  // not reflexive
  CHECK(!validate(m).empty());

  m.leq = RelMat::identity(2);
  m.leq.add(0, 1);
  m.val.plus[Atom{false, 0}] = worldBit(0);  // not upward closed
  auto violations = validate(m);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].condition == "mon");
}

TEST_CASE("singleWorldTotal verifies everything over its atoms") {
  CondNelsonianModel m = singleWorldTotal({{false, 0}});
  CHECK(validate(m).empty());
  std::mt19937_64 rng(99);
  FormulaGen gen;
  gen.atoms = {{false, 0}};
  gen.maxDepth = 5;
  gen.allowBoxto = true;
  gen.allowDiamto = true;
  for (int t = 0; t < 300; t++) CHECK(evalN4CK(m, 0, gen(rng), Sign::Plus));

  CondNelsonianModel empty = singleWorldTotal({});
  CHECK(validate(empty).empty());
}

TEST_CASE("joinWithRoot builds a validating model whose parts keep their theory") {
  CondNelsonianModel m1 = singleWorldTotal({{false, 0}});
  CondNelsonianModel m2 = singleWorldTotal({{false, 0}});
  auto [joined, root] = joinWithRoot(m1, m2);
  CHECK(joined.worldCount() == 3);
  CHECK(root == 2);
  CHECK(validate(joined).empty());

  std::mt19937_64 rng(1234);
  FormulaGen gen;
  gen.atoms = {{false, 0}, {false, 1}};
  gen.maxDepth = 4;
  gen.allowBoxto = true;
  for (int t = 0; t < 200; t++) {
    SearchBudget b;
    b.maxWorlds = 3;
    b.seed = rng();
    CondNelsonianModel ma = sampleCondModel(gen.atoms, b);
    b.seed = rng();
    CondNelsonianModel mb = sampleCondModel(gen.atoms, b);
    auto [j, r] = joinWithRoot(ma, mb);
    REQUIRE(validate(j).empty());
    Formula f = gen(rng);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (int w = 0; w < ma.worldCount(); w++)
        REQUIRE(evalN4CK(j, w, f, s) == evalN4CK(ma, w, f, s));
      for (int w = 0; w < mb.worldCount(); w++)
        REQUIRE(evalN4CK(j, ma.worldCount() + w, f, s) == evalN4CK(mb, w, f, s));
    }
    (void)r;
  }
}

TEST_CASE("join root verifies neither p0 nor ~p0 when the parts disagree") {
  CondNelsonianModel m1 = plainModel(1, RelMat::identity(1));
  m1.base.val.plus[Atom{false, 0}] = 1;
  CondNelsonianModel m2 = plainModel(1, RelMat::identity(1));
  m2.base.val.minus[Atom{false, 0}] = 1;
  auto [joined, root] = joinWithRoot(m1, m2);
  CHECK(!evalN4CK(joined, root, F::plain(0), Sign::Plus));
  CHECK(!evalN4CK(joined, root, F::neg(F::plain(0)), Sign::Plus));
}

TEST_CASE("toCondInt of the total single world is a validating 2-world model") {
  CondNelsonianModel m = singleWorldTotal({{false, 0}});
  CondIntModel mi = toCondInt(m);
  CHECK(mi.worldCount == 2);
  CHECK(validate(mi).empty());
}

TEST_CASE("toCondInt of an empty table keeps the worlds and an empty table") {
  CondNelsonianModel m = plainModel(2, RelMat::identity(2));
  CondIntModel mi = toCondInt(m);
  CHECK(mi.worldCount == 2);
  CHECK(mi.blocks.size() == 1);
  CHECK(mi.blocks[0].entries.empty());
  CHECK(validate(mi).empty());
}

TEST_CASE("toCondInt always validates on sampled models") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 300; t++) {
    SearchBudget b;
    b.maxWorlds = 3;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel({{false, 0}, {false, 1}}, b);
    REQUIRE(validate(toCondInt(m)).empty());
    REQUIRE(validate(toCondInt(m, RoleOrder::MinusFirst)).empty());
  }
}

TEST_CASE("toCondNelson composes stored relations") {
  CondIntModel m;
  m.worldCount = 3;
  m.leq = RelMat::identity(3);
  IntRelBlock block;
  block.stratum = fullSet(3);
  RelMat rx = RelMat::empty(3);
  rx.add(0, 1);
  RelMat ry = RelMat::empty(3);
  ry.add(1, 2);
  block.entries.push_back({worldBit(0), rx});
  block.entries.push_back({worldBit(1), ry});
  m.blocks.push_back(block);
  REQUIRE(validate(m).empty());

  CondNelsonianModel out = toCondNelson(m);
  RelMat composed = out.lookup(BiSet{worldBit(0), worldBit(1)});
  CHECK(composed.at(0, 2));
  CHECK(!composed.at(0, 1));
  // empty compositions default to the empty relation
  CHECK(out.lookup(BiSet{worldBit(1), worldBit(1)}).isEmpty());
}

TEST_CASE("toCondNelson of an empty table is an empty table") {
  CondIntModel m;
  m.worldCount = 1;
  m.leq = RelMat::identity(1);
  IntRelBlock block;
  block.stratum = 1;
  m.blocks.push_back(block);
  CondNelsonianModel out = toCondNelson(m);
  CHECK(out.blocks.size() == 1);
  CHECK(out.blocks[0].entries.empty());
}

TEST_CASE("toCondNelson always validates on sampled models") {
  std::mt19937_64 rng(556);
  const std::vector<Atom> atoms = {{false, 0}, {true, 0}, {false, 1}, {true, 1}};
  for (int t = 0; t < 300; t++) {
    SearchBudget b;
    b.maxWorlds = 3;
    b.seed = rng();
    CondIntModel m = sampleCondIntModel(atoms, b);
    REQUIRE(validate(m).empty());
    REQUIRE(validate(toCondNelson(m)).empty());
    REQUIRE(validate(toCondNelson(m, RoleOrder::MinusFirst)).empty());
    REQUIRE(validate(toCondNelsonSingleRole(m, RoleOrder::PlusFirst)).empty());
    REQUIRE(validate(toCondNelsonSingleRole(m, RoleOrder::MinusFirst)).empty());
  }
}

TEST_CASE("relabelModal round trip and frame identity") {
  SearchBudget b;
  b.maxWorlds = 4;
  b.seed = 77;
  ModalModel m = sampleModalModel({{false, 0}, {false, 1}}, b);
  REQUIRE(validate(m).empty());
  ModalModel mi = relabelModal(m, RelabelDirection::NelsonToInt);
  CHECK(validate(mi).empty());
  CHECK(mi.leq == m.leq);
  CHECK(mi.r == m.r);
  ModalModel back = relabelModal(mi, RelabelDirection::IntToNelson);
  CHECK(back.leq == m.leq);
  CHECK(back.r == m.r);
  CHECK(back.val.plus == m.val.plus);
  CHECK(back.val.minus == m.val.minus);
  CHECK_THROWS_AS(relabelModal(mi, RelabelDirection::NelsonToInt), InvalidInput);
}

TEST_CASE("empty relation tables satisfy the frame conditions vacuously") {
  for (int n = 1; n <= 3; n++)
    for (const RelMat& leq : canonicalPreorders(n)) {
      CondNelsonianModel m = plainModel(n, leq);
      m.blocks[0].entries.push_back({BiSet{0, 0}, RelMat::empty(n)});
      CHECK(validate(m).empty());
    }
}

TEST_CASE("model files are byte-reproducible and round trip") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 100; t++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel({{false, 0}, {false, 1}}, b);
    std::string text = writeModel(m);
    AnyModel round = readModel(text);
    REQUIRE(round.kind == ModelKind::CNel);
    CHECK(writeModel(round.cnel) == text);

    ModalModel mm = sampleModalModel({{false, 0}}, b);
    std::string mtext = writeModel(mm);
    AnyModel mread = readModel(mtext);
    REQUIRE(mread.kind == ModelKind::MNel);
    CHECK(writeModel(mread.modal) == mtext);
  }
  // stratified models keep their block structure through the file format
  CondNelsonianModel m1 = singleWorldTotal({{false, 0}});
  auto [joined, root] = joinWithRoot(m1, m1);
  (void)root;
  std::string text = writeModel(joined);
  AnyModel round = readModel(text);
  REQUIRE(round.kind == ModelKind::CNel);
  CHECK(writeModel(round.cnel) == text);
  CHECK(round.cnel.blocks.size() == joined.blocks.size());
}

TEST_CASE("sampled models always validate and are seed-reproducible") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 2000; t++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel({{false, 0}, {false, 1}}, b);
    REQUIRE(validate(m).empty());
  }
  SearchBudget b;
  b.maxWorlds = 4;
  b.seed = 42;
  CHECK(writeModel(sampleCondModel({{false, 0}}, b)) ==
        writeModel(sampleCondModel({{false, 0}}, b)));
}
