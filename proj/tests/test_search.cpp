#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "n4ck/decide.hpp"
#include "n4ck/proofs.hpp"
#include "n4ck/search.hpp"
#include "n4ck/semantics.hpp"

using namespace n4ck;
using F = Formula;

namespace {

Formula parseC(const std::string& s) { return parse(s, LanguageId::LBoxto); }

}  // namespace

TEST_CASE("one-world countermodel for the contraposition formula") {
  SearchBudget b;
  b.maxWorlds = 1;
  SearchOutcome out =
      findCountermodel(SearchLogic::N4, {}, {parseC("(p0 -> p1) -> (~p1 -> ~p0)")}, b);
  REQUIRE(out.found());
  CHECK(verifyCertificate(*out.certificate));
  CHECK(std::get<NelsonianModel>(out.certificate->model).worldCount == 1);
}

TEST_CASE("the Remark 3.2 pairs are separated within three worlds") {
  SearchBudget b;
  b.maxWorlds = 3;
  {
    SearchOutcome out = findCountermodel(
        SearchLogic::N4CK, {parseC("(p1 /\\ ~p2) []-> p3")},
        {parseC("(~(p1 -> p2)) []-> p3")}, b);
    REQUIRE(out.found());
    CHECK(verifyCertificate(*out.certificate));
  }
  {
    SearchOutcome out = findCountermodel(
        SearchLogic::N4CK, {parseC("(~(p1 /\\ ~p2)) []-> p3")},
        {parseC("(p1 -> p2) []-> p3")}, b);
    REQUIRE(out.found());
    CHECK(verifyCertificate(*out.certificate));
  }
}

TEST_CASE("A4 instances stay exhausted") {
  SearchBudget b;
  b.maxWorlds = 3;
  SearchOutcome out = findCountermodel(SearchLogic::N4CK, {}, {parseC("p0 []-> (p1 -> p1)")}, b);
  CHECK(!out.found());
  CHECK(out.modelsTried > 0);
}

TEST_CASE("negative controls: axioms and corpus theorems are not refuted") {
  SearchBudget b;
  b.maxWorlds = 2;
  Substitution sigma{{"phi", F::plain(0)}, {"psi", F::plain(1)}, {"chi", F::plain(2)}};
  for (SchemaId id : {SchemaId::A1, SchemaId::A2, SchemaId::A3}) {
    Formula inst = expandSugar(applySubst(schemaOf(id), sigma));
    SearchOutcome out = findCountermodel(SearchLogic::N4CK, {}, {inst}, b);
    CHECK(!out.found());
  }
  for (const char* id : {"T1", "T2", "T3", "T4", "T5", "T6"}) {
    const Script* s = scriptCorpus().find(id);
    REQUIRE(s != nullptr);
    SearchOutcome out =
        findCountermodel(SearchLogic::N4CK, {}, {s->derivation.goal.formula}, b);
    CHECK(!out.found());
  }
}

TEST_CASE("FSKd axioms are not refuted and a wrong modal schema is") {
  SearchBudget b;
  b.maxWorlds = 2;
  Substitution sigma{{"phi", F::plain(0)}, {"psi", F::plain(1)}};
  for (SchemaId id : {SchemaId::Ma1, SchemaId::Ma2, SchemaId::Ma3, SchemaId::Ma4, SchemaId::Ma5,
                      SchemaId::Ma6}) {
    Formula inst = expandSugar(applySubst(schemaOf(id), sigma));
    SearchOutcome out = findCountermodel(SearchLogic::FSKd, {}, {inst}, b);
    CHECK(!out.found());
  }
  // box does not distribute over disjunction upward
  Formula bad = parse("[](p0 \\/ p1) -> []p0 \\/ []p1", LanguageId::LBox);
  SearchOutcome out = findCountermodel(SearchLogic::FSKd, {}, {bad}, b);
  REQUIRE(out.found());
  CHECK(verifyCertificate(*out.certificate));
}

TEST_CASE("agreement with the decision procedure on the box-free fragment") {
  std::mt19937_64 rng(90210);
  FormulaGen gen{{{false, 0}, {false, 1}, {false, 2}}, 4, true, false, false, false, false};
  SearchBudget b;
  b.maxWorlds = 3;
  for (int t = 0; t < 400; t++) {
    Formula f = gen(rng);
    Verdict v = decideN4({}, f);
    SearchOutcome out = findCountermodel(SearchLogic::N4, {}, {f}, b);
    if (out.found()) {
      REQUIRE(!v.valid);
      REQUIRE(verifyCertificate(*out.certificate));
    }
    if (v.valid) REQUIRE(!out.found());
  }
}

TEST_CASE("no two table entries share a key in produced models") {
  std::mt19937_64 rng(90211);
  for (int t = 0; t < 500; t++) {
    SearchBudget b;
    b.maxWorlds = 4;
    b.seed = rng();
    CondNelsonianModel m = sampleCondModel({{false, 0}, {false, 1}}, b);
    for (const auto& block : m.blocks)
      for (std::size_t i = 0; i < block.entries.size(); i++)
        for (std::size_t j = i + 1; j < block.entries.size(); j++)
          REQUIRE(!(block.entries[i].first == block.entries[j].first));
  }
  // and in found certificates
  SearchBudget b;
  b.maxWorlds = 2;
  SearchOutcome out = findCountermodel(
      SearchLogic::N4CK, {}, {parseC("(p0 []-> p1) \\/ ~(p0 []-> p1)")}, b);
  REQUIRE(out.found());
  const auto& m = std::get<CondNelsonianModel>(out.certificate->model);
  for (const auto& block : m.blocks)
    for (std::size_t i = 0; i < block.entries.size(); i++)
      for (std::size_t j = i + 1; j < block.entries.size(); j++)
        REQUIRE(!(block.entries[i].first == block.entries[j].first));
  CHECK(verifyCertificate(*out.certificate));
}

TEST_CASE("mutating a load-bearing relation pair breaks the certificate") {
  SearchBudget b;
  b.maxWorlds = 2;
  // ~(p0 []-> p1) needs a relation pair reaching a p1-falsifying world
  SearchOutcome out = findCountermodel(SearchLogic::N4CK, {parseC("~(p0 []-> p1)")}, {}, b);
  REQUIRE(out.found());
  Certificate broken = *out.certificate;
  auto& m = std::get<CondNelsonianModel>(broken.model);
  bool removed = false;
  for (auto& block : m.blocks)
    for (auto& [key, rel] : block.entries)
      for (auto& row : rel.rows)
        if (row && !removed) {
          row = 0;
          removed = true;
        }
  REQUIRE(removed);
  CHECK(verifyCertificate(*out.certificate));
  CHECK(!verifyCertificate(broken));
}

TEST_CASE("random mode finds easy countermodels and respects the seed") {
  SearchBudget b;
  b.maxWorlds = 3;
  b.exhaustive = false;
  b.trials = 500;
  b.seed = 7;
  SearchOutcome out = findCountermodel(SearchLogic::N4, {}, {parseC("p0")}, b);
  REQUIRE(out.found());
  CHECK(verifyCertificate(*out.certificate));
  SearchOutcome again = findCountermodel(SearchLogic::N4, {}, {parseC("p0")}, b);
  CHECK(out.modelsTried == again.modelsTried);
}

TEST_CASE("exhausted outcomes carry the budget") {
  SearchBudget b;
  b.maxWorlds = 1;
  SearchOutcome out = findCountermodel(SearchLogic::N4, {}, {parseC("p0 -> p0")}, b);
  CHECK(!out.found());
  CHECK(out.budget.maxWorlds == 1);
}
