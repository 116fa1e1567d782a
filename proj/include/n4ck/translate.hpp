#ifndef N4CK_TRANSLATE_HPP
#define N4CK_TRANSLATE_HPP

#include <optional>
#include <string>

#include "n4ck/proofs.hpp"
#include "n4ck/search.hpp"
#include "n4ck/syntax.hpp"

namespace n4ck {

// E embeds N4 into positive extended intuitionistic logic; Epm/Emp extend it
// to the conditional language (would/might layers keyed by the positive or
// the negative extension first); Eplus/Eminus are the single-layer variants
// that only preserve consequence. Em is the modal analogue. TrI/Tr read
// modalities as conditionals with a fixed anchor antecedent; TrBar erases
// antecedents back to boxes.
enum class MappingId { E, Epm, Emp, Eplus, Eminus, Em, TrI, Tr, TrBar };

struct AnchorMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mapping {
  MappingId id;
  Formula anchor;  // required for TrI/Tr

  static Mapping plain(MappingId id) { return {id, {}}; }
  static Mapping anchored(MappingId id, Formula a) { return {id, std::move(a)}; }
};

std::string mappingName(MappingId id);
std::optional<MappingId> mappingFromName(const std::string& name);
LanguageId mappingSourceLanguage(MappingId id);
LanguageId mappingTargetLanguage(MappingId id);

Formula applyMapping(const Mapping& m, const Formula& f);

// ---------------------------------------------------------------------------
// Proof translation (the embedding tables of the modal companion section)
// ---------------------------------------------------------------------------

struct SourceUnchecked : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnmappableStep : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maps a checking FSK^d derivation to a checking N4CK derivation along
// Tr_anchor: modal axioms become conditional axioms, theorem citations, or
// N4-bridged instances; rm-rule applications inline the corresponding
// derived-rule scripts.
Derivation translateProofToN4CK(const Derivation& d, const Formula& anchor);
Derivation translateProofToN4CK(const Derivation& d, const Formula& anchor,
                                const ScriptRegistry& registry);

// The reverse direction along TrBar.
Derivation translateProofToFSKd(const Derivation& d);
Derivation translateProofToFSKd(const Derivation& d, const ScriptRegistry& registry);

// ---------------------------------------------------------------------------
// Faithfulness harnesses
// ---------------------------------------------------------------------------

struct HarnessReport {
  int trials = 0;
  int violations = 0;
  std::string firstWitness;
};

// Samples models and formulas and checks the per-world equivalence of the
// mapping against its paired model transformation (relabeling for E/Em,
// the triple-world and composition companions for Epm/Emp, the single-role
// companions for Eplus/Eminus, which are checked in the preservation
// direction only).
HarnessReport faithfulnessHarness(MappingId id, int trials, const SearchBudget& budget);

// The failed faithfulness direction for Eplus/Eminus: returns the concrete
// countermodel-backed witness pair whose translations collide syntactically.
struct CollisionWitness {
  bool found = false;
  Formula gamma, delta;
  Formula image;
  Certificate certificate;
};

CollisionWitness bothDirectionsWitness(MappingId id, const SearchBudget& budget);

}  // namespace n4ck

#endif
