#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "n4ck/search.hpp"
#include "n4ck/syntax.hpp"

using namespace n4ck;
using F = Formula;

TEST_CASE("parse atoms and constructors") {
  CHECK(parse("p0", LanguageId::L) == F::plain(0));
  CHECK(parse("~(p1 []-> ~p2)", LanguageId::LBoxto) ==
        F::neg(F::boxto(F::plain(1), F::neg(F::plain(2)))));
  CHECK_THROWS_AS(parse("q0 /\\ p0", LanguageId::L), ParseError);
  try {
    parse("q0 /\\ p0", LanguageId::L);
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::Language);
    CHECK(e.position == 0);
  }
  CHECK_THROWS_AS(parse("p0 ->", LanguageId::L), ParseError);
  CHECK_THROWS_AS(parse("p0 []-> p1", LanguageId::L), ParseError);
  CHECK_THROWS_AS(parse("~p0", LanguageId::LePlus), ParseError);
}

TEST_CASE("printing is canonical") {
  CHECK(print(F::neg(F::plain(0))) == "~p0");
  CHECK(print(F::boxto(F::plain(0), F::conj(F::plain(1), F::plain(2)))) ==
        "p0 []-> (p1 /\\ p2)");
  CHECK(print(F::imp(F::plain(0), F::imp(F::plain(1), F::plain(2)))) == "p0 -> p1 -> p2");
  CHECK(print(F::imp(F::imp(F::plain(0), F::plain(1)), F::plain(2))) == "(p0 -> p1) -> p2");
  CHECK(print(F::conj(F::plain(0), F::conj(F::plain(1), F::plain(2)))) == "p0 /\\ (p1 /\\ p2)");
  CHECK(print(F::disj(F::conj(F::plain(0), F::plain(1)), F::plain(2))) == "p0 /\\ p1 \\/ p2");
}

TEST_CASE("implication level is right-associative and shared") {
  CHECK(parse("p0 -> p1 -> p2", LanguageId::L) ==
        F::imp(F::plain(0), F::imp(F::plain(1), F::plain(2))));
  CHECK(parse("p0 []-> p1 -> p2", LanguageId::LBoxto) ==
        F::boxto(F::plain(0), F::imp(F::plain(1), F::plain(2))));
  CHECK(parse("p0 <-> p1", LanguageId::L) == makeIff(F::plain(0), F::plain(1)));
  CHECK(parse("p0 => p1", LanguageId::L) == makeStrongImp(F::plain(0), F::plain(1)));
  CHECK(parse("p0 <=> p1", LanguageId::L) == makeStrongIff(F::plain(0), F::plain(1)));
  CHECK_THROWS_AS(parse("p0 <-> p1 <-> p2", LanguageId::L), ParseError);
}

TEST_CASE("sugar expansions") {
  const F p0 = F::plain(0), p1 = F::plain(1);
  CHECK(expandDiamTo(p0, p1) == F::neg(F::boxto(p0, F::neg(p1))));
  CHECK(expandDiamond(p0) == F::neg(F::box(F::neg(p0))));
  CHECK(makeStrongIff(p0, p0) ==
        F::conj(makeStrongImp(p0, p0), makeStrongImp(p0, p0)));
  // expanding twice equals expanding once
  F f = F::diamto(p0, F::diamto(p1, p0));
  CHECK(expandSugar(expandSugar(f)) == expandSugar(f));
  CHECK(print(expandSugar(f)).find("<>->") == std::string::npos);
}

TEST_CASE("round trip on random formulas") {
  std::mt19937_64 rng(20240811);
  FormulaGen gen;
  gen.atoms = {{false, 0}, {false, 1}, {false, 2}};
  gen.maxDepth = 6;
  gen.allowBoxto = true;
  gen.allowDiamto = true;
  int checked = 0;
  for (int t = 0; t < 10000; t++) {
    Formula f = gen(rng);
    Formula g = parse(print(f), LanguageId::LBoxto);
    REQUIRE(f == g);
    checked++;
  }
  CHECK(checked == 10000);

  // modal flavor
  FormulaGen modalGen;
  modalGen.atoms = {{false, 0}, {false, 1}};
  modalGen.maxDepth = 6;
  modalGen.allowBox = true;
  modalGen.allowDiamond = true;
  for (int t = 0; t < 2000; t++) {
    Formula f = modalGen(rng);
    REQUIRE(parse(print(f), LanguageId::LBoxDiamond) == f);
  }
}

TEST_CASE("schema matching and substitution") {
  Schema s = Schema::imp(Schema::meta("phi"), Schema::imp(Schema::meta("psi"), Schema::meta("phi")));
  Formula ok = parse("p0 -> p1 -> p0", LanguageId::L);
  auto sigma = matchSchema(s, ok);
  REQUIRE(sigma.has_value());
  CHECK(sigma->at("phi") == F::plain(0));
  CHECK(sigma->at("psi") == F::plain(1));
  CHECK(applySubst(s, *sigma) == ok);

  CHECK(!matchSchema(s, parse("p0 -> p1 -> p2", LanguageId::L)).has_value());

  // left side of (A1) against ((p0 []-> p1) /\ (p0 []-> p2))
  Schema a1left = Schema::conj(Schema::boxto(Schema::meta("phi"), Schema::meta("psi")),
                               Schema::boxto(Schema::meta("phi"), Schema::meta("chi")));
  auto m = matchSchema(a1left, parse("(p0 []-> p1) /\\ (p0 []-> p2)", LanguageId::LBoxto));
  REQUIRE(m.has_value());
  CHECK(m->at("phi") == F::plain(0));
  CHECK(m->at("psi") == F::plain(1));
  CHECK(m->at("chi") == F::plain(2));

  // missing binding
  CHECK_THROWS_AS(applySubst(s, Substitution{{"phi", F::plain(0)}}), MissingBinding);
  // metavariable-free schema ignores the substitution
  Schema closed = Schema::lift(parse("p0 \\/ ~p0", LanguageId::L));
  CHECK(applySubst(closed, Substitution{{"phi", F::plain(3)}}) ==
        parse("p0 \\/ ~p0", LanguageId::L));
  // (An7) instance
  Schema an7 = Schema::disj(Schema::meta("phi"), Schema::neg(Schema::meta("phi")));
  CHECK(applySubst(an7, Substitution{{"phi", F::plain(3)}}) ==
        parse("p3 \\/ ~p3", LanguageId::L));
}

TEST_CASE("matchSchema/applySubst adjunction on random instances") {
  std::mt19937_64 rng(7);
  FormulaGen gen;
  gen.atoms = {{false, 0}, {false, 1}};
  gen.maxDepth = 3;
  Schema s = Schema::imp(Schema::conj(Schema::meta("a"), Schema::meta("b")),
                         Schema::disj(Schema::meta("b"), Schema::meta("a")));
  for (int t = 0; t < 500; t++) {
    Substitution sigma{{"a", gen(rng)}, {"b", gen(rng)}};
    Formula inst = applySubst(s, sigma);
    auto back = matchSchema(s, inst);
    REQUIRE(back.has_value());
    CHECK(applySubst(s, *back) == inst);
  }
}

TEST_CASE("antecedents ordering") {
  Formula f1 = parse("p0 []-> p1", LanguageId::LBoxto);
  CHECK(antecedents(f1) == std::vector<Formula>{F::plain(0)});

  Formula f2 = parse("p0 []-> (p1 []-> p2)", LanguageId::LBoxto);
  CHECK(antecedents(f2) == std::vector<Formula>{F::plain(1), F::plain(0)});

  Formula f3 = parse("~(p0 []-> ~p1) /\\ (p0 []-> p2)", LanguageId::LBoxto);
  CHECK(antecedents(f3) == std::vector<Formula>{F::plain(0)});

  // nested antecedent comes before its host
  Formula f4 = parse("(p2 []-> p3) []-> p0", LanguageId::LBoxto);
  auto a4 = antecedents(f4);
  REQUIRE(a4.size() == 2);
  CHECK(a4[0] == F::plain(2));
  CHECK(a4[1] == parse("p2 []-> p3", LanguageId::LBoxto));
}

TEST_CASE("language membership") {
  Formula condPos = parse("q0 /\\ p0 []-> p1", LanguageId::LeBoxtoDiamto);
  CHECK(!wellFormedIn(condPos, LanguageId::LeBoxtoDiamto).has_value());
  CHECK(wellFormedIn(condPos, LanguageId::L).has_value());
  CHECK(wellFormedIn(parse("~p0", LanguageId::L), LanguageId::LePlus).has_value());
  CHECK(!wellFormedIn(parse("p0 <>-> p1", LanguageId::LBoxto), LanguageId::LBoxto).has_value());
  CHECK(wellFormedIn(parse("[]p0", LanguageId::LBox), LanguageId::LBoxto).has_value());
}

TEST_CASE("unicode pretty printer") {
  CHECK(printUnicode(parse("~p0 /\\ p1", LanguageId::L)) ==
        "∼p0 ∧ p1");
}
