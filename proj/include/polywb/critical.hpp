#pragma once

// Critical branchings, local confluence and homotopy bases of 3-polygraphs,
// plus the construction turning an algebraic presentation into a
// presentation of a prop by adding a symmetry.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polywb/rewrite.hpp"
#include "polywb/termination.hpp"

namespace polywb {

// Adds tau with its involution, Yang-Baxter and naturality rules. The
// structural rules come first, then the rules of p.
Polygraph s_construction(const Polygraph& p);
// Appends algebraic rules, possibly mentioning tau; throws on bad rules.
Polygraph with_rules(Polygraph p, std::vector<Rule> rules);

// tau_{n,1} moves a bundle of n wires across one wire; tau_{1,n} the reverse.
Diagram tau_block_over_one(const Signature& sig, std::size_t n);
Diagram tau_one_over_block(const Signature& sig, std::size_t n);

struct Branching {
  Diagram source;  // canonical
  Step first;
  Step second;
  std::vector<std::uint32_t> first_occurrence;
  std::vector<std::uint32_t> second_occurrence;
};

struct EnumerationOptions {
  std::size_t max_extra_width = 2;  // extra wires beyond the wider source
  std::size_t max_trapped = 1;      // slices between the two matches owned by neither
  // Trapped slices other than the symmetry make the branching an instance of
  // an indexed family; those are skipped unless this is false.
  bool trapped_symmetry_only = true;
};

std::vector<Branching> enumerate_critical_branchings(const Polygraph& p, const EnumerationOptions& opts = {});

struct ConfluenceDiagram {
  bool joinable = false;
  // Both reducts normalise to the same diagram. When only `joinable` holds,
  // the lower leg ends with a step applied to a structurally equivalent
  // representative, so both legs are traces modulo the prop congruence.
  bool strict = false;
  Diagram target_first, target_second;
  Diagram normal_first, normal_second;
  Trace upper;  // first step, then normalisation
  Trace lower;  // second step, then normalisation
  std::string failure;
};

ConfluenceDiagram check_local_confluence(const Polygraph& p, const Branching& b,
                                         std::size_t budget = kDefaultBudget);

// A trace from `from` to `to` whose first step applies an algebraic rule to a
// diagram structurally equivalent to `from`, followed by normalisation.
std::optional<Trace> bridge_modulo_structure(const Polygraph& p, const Diagram& from, const Diagram& to,
                                             std::size_t budget = kDefaultBudget, std::size_t class_limit = 5000);

enum class BranchingFamily { sym_yb, naturality_vs_sym, left_vs_right_naturality, algebraic_vs_naturality, proper };

std::string_view to_string(BranchingFamily f);
BranchingFamily classify_branching(const Polygraph& p, const Branching& b);

struct HomotopyCell {
  std::string name;
  Branching branching;
  ConfluenceDiagram diagram;
};

struct HomotopyBasis {
  std::vector<HomotopyCell> cells;
  bool complete = true;  // every branching was joinable
};

HomotopyBasis homotopy_basis(const Polygraph& p, const EnumerationOptions& opts = {},
                             std::size_t budget = kDefaultBudget);
HomotopyBasis homotopy_basis(const Polygraph& p, const std::vector<Branching>& branchings,
                             std::size_t budget = kDefaultBudget);

// Closed traces (upper leg followed by the inverse of the lower leg).
std::vector<Trace> export_identity_generators(const Polygraph& p, const HomotopyBasis& basis);

struct TerminationEvidence {
  std::string method;  // "interpretation" or "bounded-normalisation"
  bool passed = false;
  std::optional<TerminationReport> report;
  std::size_t longest_normalisation = 0;
  std::string detail;
};

// For props a complete basis only proves asphericity up to the Tietze
// equivalence between the proper branchings and the intended 4-cells, which
// is left as an obligation.
// With an interpretation, the grid check; otherwise every rule source (and
// each extra probe) must normalise within the budget.
TerminationEvidence termination_evidence(const Polygraph& p, const Interpretation* interp,
                                         std::size_t budget = kDefaultBudget,
                                         const std::vector<Diagram>& probes = {});

enum class PipelineVerdict { aspherical, aspherical_modulo_tietze, not_confluent, termination_failed };

std::string_view to_string(PipelineVerdict v);

struct PipelineReport {
  std::string polygraph;
  TerminationEvidence termination;
  std::vector<Branching> branchings;
  HomotopyBasis basis;
  std::size_t confluent = 0;
  std::size_t strictly_confluent = 0;
  std::vector<std::size_t> proper;  // indices into basis.cells, props only
  std::string obligation;
  PipelineVerdict verdict = PipelineVerdict::not_confluent;
};

// Without an interpretation, termination evidence falls back to normalising
// every rule source and branching source within the budget.
PipelineReport asphericity_pipeline(const Polygraph& p, const Interpretation* interp,
                                    const EnumerationOptions& opts = {}, std::size_t budget = kDefaultBudget);

}  // namespace polywb
