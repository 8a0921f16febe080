#pragma once

// String diagrams over a one-object signature, stored as lists of whiskered
// slices. Two diagrams are equal when they are related by exchange moves,
// which is decided by comparing canonical forms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polywb/errors.hpp"

namespace polywb {

using GenId = std::uint32_t;

inline constexpr std::string_view kTauName = "tau";

struct GeneratorSym {
  std::string name;
  std::size_t arity = 0;
  std::size_t coarity = 0;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::string name, std::vector<GeneratorSym> generators, bool is_prop = false);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  bool is_prop() const { return is_prop_; }
  std::span<const GeneratorSym> generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const GeneratorSym& at(GenId id) const;
  std::optional<GenId> find(std::string_view name) const;
  std::optional<GenId> tau() const;
  bool is_tau(GenId id) const { return is_prop_ && tau() == id; }

  // Same generators plus the symmetry tau : 2 -> 2.
  Signature with_symmetry() const;

 private:
  std::string name_;
  std::vector<GeneratorSym> generators_;
  bool is_prop_ = false;
};

struct Slice {
  std::size_t offset = 0;
  GenId gen = 0;
  std::size_t arity = 0;
  std::size_t coarity = 0;

  friend bool operator==(const Slice&, const Slice&) = default;
  friend auto operator<=>(const Slice&, const Slice&) = default;
};

Slice make_slice(const Signature& sig, GenId gen, std::size_t offset);

class Diagram {
 public:
  Diagram() = default;
  // Throws CompositionError when a slice does not fit the width above it.
  Diagram(std::size_t input_width, std::vector<Slice> slices);

  static Diagram identity(std::size_t n);
  static Diagram generator(const Signature& sig, GenId gen);

  std::size_t input_width() const { return input_width_; }
  std::size_t output_width() const { return output_width_; }
  std::span<const Slice> slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }
  bool is_identity() const { return slices_.empty(); }
  // Width of the level directly above slice i; width_before(size()) is the output width.
  std::size_t width_before(std::size_t i) const;
  std::size_t max_width() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;
  friend auto operator<=>(const Diagram&, const Diagram&) = default;

 private:
  std::size_t input_width_ = 0;
  std::size_t output_width_ = 0;
  std::vector<Slice> slices_;
};

Diagram identity(std::size_t n);
Diagram hcomp(const Diagram& left, const Diagram& right);
Diagram vcomp(const Diagram& upper, const Diagram& lower);
Diagram whisker(std::size_t left, const Diagram& d, std::size_t right);

Diagram canonical_form(const Diagram& d);
bool diagram_equal(const Diagram& a, const Diagram& b);

// Every slice ordering reachable by exchange moves. Exponential; meant for
// small diagrams and as a reference for canonical_form.
std::vector<Diagram> exchange_closure(const Diagram& d, std::size_t limit = 100000);

// Grammar: expr := term (';' term)*, term := atom ('*' atom)*,
// atom := 'id' nat | ident | '(' expr ')'.
Diagram parse_diagram(std::string_view text, const Signature& sig);
std::string print_diagram(const Diagram& d, const Signature& sig);

namespace exchange {

// If `upper` immediately followed by `lower` may be swapped, returns the pair
// (lower', upper') in the new order.
std::optional<std::pair<Slice, Slice>> commute(const Slice& upper, const Slice& lower);

struct Tagged {
  Slice slice;
  std::uint32_t id = 0;
};
using Sequence = std::vector<Tagged>;

Sequence tag(const Diagram& d);
Diagram untag(std::size_t input_width, const Sequence& seq, std::size_t from, std::size_t to);

// Moves seq[j] up to position k by adjacent swaps. Returns the slice as it
// would sit at position k, or nullopt when some swap is illegal.
std::optional<Slice> lifted(const Sequence& seq, std::size_t j, std::size_t k);
void lift(Sequence& seq, std::size_t j, std::size_t k);

// Calls visit(seq, k) once per order ideal of the slice poset, with the
// ideal's slices forming seq[0, k) and seq a valid linear order.
template <class Visit>
void for_each_ideal(const Diagram& d, Visit&& visit);

// before[a][b]: slice a precedes slice b in every linear order (ids as in tag).
std::vector<std::vector<bool>> precedence(const Diagram& d);

}  // namespace exchange

}  // namespace polywb

#include "polywb/detail/ideals.hpp"
