#pragma once

// Artin braid words, the Garside left normal form and Dehornoy handle
// reduction. Letter s_i (1-based) crosses the strands at positions i and
// i+1; a positive letter takes the left strand over the right one. Words
// read left to right, top to bottom.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "polywb/errors.hpp"

namespace polywb {

struct BraidLetter {
  std::size_t index = 1;
  int sign = 1;
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  std::size_t strands = 1;
  std::vector<BraidLetter> letters;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// Throws InputError when a letter is out of range for the strand count.
BraidWord make_braid(std::size_t strands, std::vector<BraidLetter> letters);
BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord inverse(const BraidWord& w);

// image[s] is the final position of the strand starting at position s (0-based).
struct Permutation {
  std::vector<std::size_t> image;
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

Permutation identity_permutation(std::size_t n);
// The permutation of doing a, then b.
Permutation then(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
// Strands listed by final position, i.e. the inverse of image.
std::vector<std::size_t> arrangement(const Permutation& p);

Permutation perm_of_braid(const BraidWord& w);

// Delta^delta_power followed by simple factors, each a permutation braid in
// arrangement form (factor[p] = strand at position p after the factor).
struct GarsideNormalForm {
  std::size_t strands = 1;
  long delta_power = 0;
  std::vector<std::vector<std::size_t>> factors;
  friend bool operator==(const GarsideNormalForm&, const GarsideNormalForm&) = default;
};

GarsideNormalForm garside_nf(const BraidWord& w);
bool braid_equal(const BraidWord& a, const BraidWord& b);

// Returns a handle-free word; empty iff w is trivial.
BraidWord handle_reduce(const BraidWord& w, std::size_t budget = 1000000);
bool is_trivial_by_handles(const BraidWord& w);

// Left block (strands p+1..p+a) crossing the right block (p+a+1..p+a+b),
// positive sign taking the left block over.
BraidWord block_crossing(std::size_t p, std::size_t a, std::size_t b, int sign, std::size_t strands);

std::string print_braid(const BraidWord& w);
BraidWord parse_braid(std::string_view text, std::size_t strands);
std::string print_garside(const GarsideNormalForm& nf);

}  // namespace polywb
