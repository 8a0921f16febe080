#pragma once

// Termination evidence by derivations: every generator gets a monotone map
// X on the naturals and a derivation d; a rule decreases when X does not
// grow and d strictly drops. Checked on a finite grid, so a pass is
// evidence rather than proof.

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polywb/rewrite.hpp"

namespace polywb {

class MonotoneExpr {
 public:
  enum class Kind { constant, variable, sum, max };

  MonotoneExpr() : MonotoneExpr(constant(0)) {}
  static MonotoneExpr constant(std::uint64_t c);
  static MonotoneExpr variable(std::size_t index);
  static MonotoneExpr sum(MonotoneExpr a, MonotoneExpr b);
  static MonotoneExpr max(MonotoneExpr a, MonotoneExpr b);

  Kind kind() const { return kind_; }
  std::uint64_t eval(std::span<const std::uint64_t> args) const;
  std::size_t max_variable() const;  // 1 + largest index used, 0 when closed
  std::string print(std::span<const std::string> names) const;

 private:
  MonotoneExpr(Kind k, std::uint64_t v, std::shared_ptr<const MonotoneExpr> a,
               std::shared_ptr<const MonotoneExpr> b)
      : kind_(k), value_(v), a_(std::move(a)), b_(std::move(b)) {}

  Kind kind_;
  std::uint64_t value_;
  std::shared_ptr<const MonotoneExpr> a_, b_;
};

struct GeneratorInterp {
  std::vector<std::string> vars;
  std::vector<MonotoneExpr> x;
  MonotoneExpr d;
  bool has_x = false;
  bool has_d = false;
};

struct Interpretation {
  std::string polygraph;
  std::map<std::string, GeneratorInterp> generators;
  std::uint64_t bound = 4;
};

Interpretation parse_interpretation(std::string_view text, const Signature& sig);
// Fills in tau as the swap with zero derivation when absent; throws InputError
// when a generator has no interpretation or the arities disagree.
Interpretation complete_interpretation(Interpretation interp, const Signature& sig);

std::vector<std::uint64_t> eval_X(const Signature& sig, const Interpretation& interp, const Diagram& d,
                                  std::span<const std::uint64_t> inputs);
std::uint64_t eval_deriv(const Signature& sig, const Interpretation& interp, const Diagram& d,
                         std::span<const std::uint64_t> inputs);

struct RuleDecrease {
  std::string rule;
  bool passed = true;
  std::vector<std::uint64_t> witness;  // first failing input when !passed
  std::vector<std::uint64_t> x_lhs, x_rhs;
  std::uint64_t d_lhs = 0, d_rhs = 0;
  std::string reason;
};

struct TerminationReport {
  bool passed = true;
  std::uint64_t bound = 0;
  std::vector<RuleDecrease> rules;
};

TerminationReport check_decrease(const Polygraph& p, const Interpretation& interp);

}  // namespace polywb
