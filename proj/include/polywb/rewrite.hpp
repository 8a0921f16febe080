#pragma once

// Rewriting 2-cells by 3-cells modulo exchange, with rewriting steps,
// traces (zig-zag sequences of steps) and a leftmost-uppermost normaliser.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polywb/diagram.hpp"

namespace polywb {

enum class RuleFamily { algebraic, symmetry, yang_baxter, naturality };
enum class NaturalitySide { none, left, right };

std::string_view to_string(RuleFamily f);

struct Rule {
  std::string name;
  Diagram lhs;
  Diagram rhs;
  RuleFamily family = RuleFamily::algebraic;
  NaturalitySide side = NaturalitySide::none;
  std::optional<GenId> subject;  // generator moved by a naturality rule
};

struct Polygraph {
  Signature signature;
  std::vector<Rule> rules;
  bool s_constructed = false;

  const std::string& name() const { return signature.name(); }
  std::optional<std::size_t> find_rule(std::string_view name) const;
  const Rule& rule(std::size_t i) const;
  // Throws InputError on duplicate names or mismatched rule boundaries.
  void validate() const;
};

Rule make_rule(const Signature& sig, std::string name, std::string_view lhs, std::string_view rhs,
               RuleFamily family = RuleFamily::algebraic);

struct Context {
  Diagram top;
  std::size_t left = 0;
  std::size_t right = 0;
  Diagram bottom;

  Diagram plug(const Diagram& d) const;
  friend bool operator==(const Context&, const Context&) = default;
};

enum class Direction { forward, backward };

struct Step {
  std::size_t rule = 0;
  Direction direction = Direction::forward;
  Context context;
  friend bool operator==(const Step&, const Step&) = default;
};

Step inverse(const Step& s);
Diagram step_source(const Polygraph& p, const Step& s);
Diagram step_target(const Polygraph& p, const Step& s);

enum class Congruence { exchange_only, prop };

std::string_view to_string(Congruence c);

struct Trace {
  Diagram source;
  std::vector<Step> steps;
  Congruence congruence = Congruence::exchange_only;
};

struct Match {
  Context context;
  std::vector<std::uint32_t> occurrence;  // slice indices in canonical_form(d)
};

// All occurrences of a non-empty pattern in d modulo exchange, ordered by
// their position in the canonical form of d.
std::vector<Match> find_matches(const Diagram& d, const Diagram& pattern);
std::vector<std::vector<Match>> find_matches(const Diagram& d, std::span<const Diagram> patterns);

// Reference matcher working on the brute-force exchange closure.
std::vector<Match> find_matches_bruteforce(const Diagram& d, const Diagram& pattern);

// Throws ApplicationError when d is not the source of s.
Diagram apply_step(const Polygraph& p, const Diagram& d, const Step& s);

inline constexpr std::size_t kDefaultBudget = 10000;

struct Normalization {
  Diagram normal_form;
  Trace trace;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t budget, Trace partial)
      : Error("normalisation exceeded the budget of " + std::to_string(budget) + " steps"),
        partial_(std::move(partial)) {}
  const Trace& partial() const { return partial_; }

 private:
  Trace partial_;
};

// Rewrites with the first rule (in declaration order) that matches, at its
// leftmost-uppermost occurrence, until no rule applies.
Normalization normalize(const Diagram& d, const Polygraph& p, std::size_t budget = kDefaultBudget);
bool is_normal(const Diagram& d, const Polygraph& p);

// Rules of a prop presentation that are not algebraic.
Polygraph structural_part(const Polygraph& p);
bool congruent(const Polygraph& p, Congruence c, const Diagram& a, const Diagram& b);

Diagram trace_target(const Polygraph& p, const Trace& t);
// Throws ApplicationError when consecutive steps do not chain.
void validate_trace(const Polygraph& p, const Trace& t);
Trace compose_traces(const Polygraph& p, const Trace& a, const Trace& b);
Trace invert_trace(const Polygraph& p, const Trace& t);
bool parallel(const Polygraph& p, const Trace& a, const Trace& b);
bool same_steps(const Trace& a, const Trace& b);

}  // namespace polywb
