#ifndef N4CK_SEARCH_HPP
#define N4CK_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "n4ck/kripke.hpp"
#include "n4ck/semantics.hpp"
#include "n4ck/syntax.hpp"

namespace n4ck {

enum class SearchLogic { N4CK, N4, FSKd };

struct SearchBudget {
  int maxWorlds = 3;
  int maxFormulaAtoms = 3;
  int relationCandidateCap = 4096;
  std::uint64_t seed = 0;
  bool exhaustive = true;
  int trials = 0;  // random mode when exhaustive is false
};

struct Certificate {
  SearchLogic logic;
  std::variant<CondNelsonianModel, NelsonianModel, ModalModel> model;
  WorldId world = 0;
  std::vector<Formula> gamma, delta;
};

struct SearchOutcome {
  std::optional<Certificate> certificate;  // empty: budget exhausted
  SearchBudget budget;                     // the budget that was exhausted
  std::uint64_t modelsTried = 0;

  bool found() const { return certificate.has_value(); }
};

// Bounded countermodel search: a world satisfying every member of gamma and
// refuting every member of delta. An empty outcome is a budget statement,
// never a validity proof.
SearchOutcome findCountermodel(SearchLogic logic, const std::vector<Formula>& gamma,
                               const std::vector<Formula>& delta, const SearchBudget& budget);

// Seed-reproducible random validated model with relation keys drawn from
// bi-truth-sets of small formulas over atomSet.
CondNelsonianModel sampleCondModel(const std::vector<Atom>& atomSet, const SearchBudget& budget);
NelsonianModel sampleNelModel(const std::vector<Atom>& atomSet, const SearchBudget& budget);
ModalModel sampleModalModel(const std::vector<Atom>& atomSet, const SearchBudget& budget);
CondIntModel sampleCondIntModel(const std::vector<Atom>& atomSet, const SearchBudget& budget);

bool verifyCertificate(const Certificate& c);

// Shared enumeration helpers (also used by test oracles).

// All reflexive-transitive relations on n worlds, canonical under world
// permutation (lexicographically least row vector), ascending order.
const std::vector<RelMat>& canonicalPreorders(int n);
// All relations on n worlds satisfying (c1)/(c2) for the given preorder.
std::vector<RelMat> frameRelationCandidates(const RelMat& leq, int cap);
// Upward-closed world sets of a preorder, ascending as bit masks.
std::vector<WorldSet> upSets(const RelMat& leq);

// Seeded random formula, used by samplers, harnesses and property tests.
struct FormulaGen {
  std::vector<Atom> atoms;
  int maxDepth = 4;
  bool allowNeg = true;
  bool allowBoxto = false;
  bool allowDiamto = false;
  bool allowBox = false;
  bool allowDiamond = false;

  Formula operator()(std::mt19937_64& rng) const;
};

}  // namespace n4ck

#endif
