#ifndef N4CK_DECIDE_HPP
#define N4CK_DECIDE_HPP

#include <map>
#include <optional>
#include <vector>

#include "n4ck/kripke.hpp"
#include "n4ck/semantics.hpp"
#include "n4ck/syntax.hpp"

namespace n4ck {

// Signed formulas for the tableau: TPlus/FPlus assert/deny verification,
// TMinus/FMinus assert/deny falsification at the current world.
enum class SignTag : std::uint8_t { TPlus, FPlus, TMinus, FMinus };

struct SignedFormula {
  SignTag sign;
  Formula f;
  friend bool operator==(const SignedFormula& a, const SignedFormula& b) {
    return a.sign == b.sign && a.f == b.f;
  }
  friend bool operator<(const SignedFormula& a, const SignedFormula& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    return Formula::compare(a.f, b.f) < 0;
  }
};

struct Verdict {
  bool valid = true;
  NelsonianModel model;  // countermodel when refuted
  WorldId world = 0;

  bool refuted() const { return !valid; }
};

// Sound and complete decision for gamma |=_N4 phi over the []-free fragment.
// A Refuted verdict carries a finite monotone countermodel that verifies
// every member of gamma and fails to verify phi at `world`.
Verdict decideN4(const std::vector<Formula>& gamma, const Formula& phi);

// Replaces each maximal conditional- or modal-rooted subformula by a fresh
// plain atom, shared across the list; fresh indices start above every plain
// index in use. Returns the rewritten list and the subformula-to-atom map.
std::pair<std::vector<Formula>, std::map<Formula, Atom>> abstractConditionals(
    const std::vector<Formula>& fs);

}  // namespace n4ck

#endif
