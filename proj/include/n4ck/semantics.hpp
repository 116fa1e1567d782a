#ifndef N4CK_SEMANTICS_HPP
#define N4CK_SEMANTICS_HPP

#include <unordered_map>
#include <vector>

#include "n4ck/kripke.hpp"
#include "n4ck/syntax.hpp"

namespace n4ck {

enum class Sign { Plus, Minus };

struct IllFormed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlavorMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Memoized bottom-up truth sets over a fixed conditional Nelsonian model.
// Antecedent truth sets are computed before their hosts, so the conditional
// lookup is total with the empty default.
class TruthTable {
 public:
  explicit TruthTable(const CondNelsonianModel& m) : m_(&m) {}
  BiSet truthSet(const Formula& f);

 private:
  const CondNelsonianModel* m_;
  std::unordered_map<Formula, BiSet, FormulaHash> memo_;
};

// Two-signed evaluation over CNel (boxes and diamonds rejected).
bool evalN4CK(const CondNelsonianModel& m, WorldId w, const Formula& f, Sign s);
BiSet truthSet(const CondNelsonianModel& m, const Formula& f);

// Pure N4 over Nel: the []->-free fragment.
bool evalN4(const NelsonianModel& m, WorldId w, const Formula& f, Sign s);
BiSet truthSetN4(const NelsonianModel& m, const Formula& f);

// IntCK^{e+} over CInt^e: single satisfaction sign, strong negation read
// intuitionistically, <>-> elementary.
bool evalIntCK(const CondIntModel& m, WorldId w, const Formula& f);
WorldSet truthSetIntCK(const CondIntModel& m, const Formula& f);

// FSK^d (Nelsonian flavor, two signs; <> expands to ~[]~) and IK
// (intuitionistic flavor, single sign, [] and <> elementary).
bool evalModal(const ModalModel& m, WorldId w, const Formula& f, Sign s);
BiSet truthSetModal(const ModalModel& m, const Formula& f);
bool evalModalInt(const ModalModel& m, WorldId w, const Formula& f);
WorldSet truthSetModalInt(const ModalModel& m, const Formula& f);

enum class Logic { N4, N4CK, IntCK, FSKd, IK };

// Every member of gamma satisfied and every member of delta refuted at
// (m, w) under the logic's positive satisfaction.
bool holdsPair(const CondNelsonianModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta);
bool holdsPair(const NelsonianModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta);
bool holdsPair(const CondIntModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta);
bool holdsPair(const ModalModel& m, WorldId w, const std::vector<Formula>& gamma,
               const std::vector<Formula>& delta);

}  // namespace n4ck

#endif
