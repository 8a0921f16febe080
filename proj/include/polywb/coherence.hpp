#pragma once

// Built-in presentations and the coherence decider. In the aspherical mode
// any two parallel traces are equal; in the braided mode each trace is sent
// to a braid through the crossings created by its non-involutive steps.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polywb/braid.hpp"
#include "polywb/critical.hpp"
#include "polywb/termination.hpp"

namespace polywb {

enum class DecisionMode { aspherical, braided };

std::string_view to_string(DecisionMode m);

struct Preset {
  std::string name;
  std::string description;
  Polygraph polygraph;
  DecisionMode mode = DecisionMode::aspherical;
  // Rules whose steps are identities in the quotient; only braided presets
  // have rules outside this list (besides the structural ones).
  std::vector<std::string> aspherical_subrules;
  std::optional<Interpretation> interpretation;
};

std::vector<std::string> preset_names();
// Throws InputError for unknown names.
Preset load_preset(std::string_view name);

// Leaf bundles of each output wire: tau swaps, other generators concatenate
// their inputs. Leaves are input positions, 0-based.
std::vector<std::vector<std::size_t>> leaf_bundles(const Signature& sig, const Diagram& d);
std::vector<std::size_t> leaf_order(const Signature& sig, const Diagram& d);

Permutation permutation_of_symmetry(const Signature& sig, const Diagram& d);
Diagram permutation_diagram(const Signature& sig, const Permutation& sigma);

struct AlgebraicDecomposition {
  Permutation sigma;
  Diagram pure;  // tau-free
};

// d = permutation_diagram(sigma) ; pure modulo the structural rules.
AlgebraicDecomposition decompose_algebraic(const Polygraph& p, const Diagram& d);

BraidWord braid_of_step(const Preset& preset, const Step& s);
BraidWord braid_of_trace(const Preset& preset, const Trace& t);

enum class CoherenceVerdict { equal, not_equal, not_parallel };

std::string_view to_string(CoherenceVerdict v);

struct CoherenceReport {
  CoherenceVerdict verdict = CoherenceVerdict::not_parallel;
  DecisionMode mode = DecisionMode::aspherical;
  std::optional<BraidWord> braid_first, braid_second;
  std::optional<GarsideNormalForm> nf_first, nf_second;
  std::string reason;
};

// Throws InputError when a trace is invalid for the preset.
CoherenceReport decide_coherence(const Preset& preset, const Trace& a, const Trace& b);

// Whiskers every diagram of t by `top` from above.
Trace whisker_top(const Polygraph& p, const Diagram& top, const Trace& t);

// Composite of morphisms of the initial algebra: a and b are aligned by
// undoing the permutations of a's target and b's source, then composed.
// Throws InputError when the pure parts of those two diagrams differ.
Trace initial_algebra_compose(const Polygraph& p, const Trace& a, const Trace& b);

}  // namespace polywb
