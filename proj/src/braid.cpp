#include "polywb/braid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polywb {

namespace {

using Arr = std::vector<std::size_t>;

Arr identity_arr(std::size_t n) {
  Arr a(n);
  std::iota(a.begin(), a.end(), std::size_t{0});
  return a;
}

// x then y, in arrangement form.
Arr compose(const Arr& x, const Arr& y) {
  Arr r(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) r[p] = x[y[p]];
  return r;
}

Arr delta(std::size_t n) {
  Arr a(n);
  for (std::size_t p = 0; p < n; ++p) a[p] = n - 1 - p;
  return a;
}

Arr flip(const Arr& x) {
  const std::size_t n = x.size();
  Arr r(n);
  for (std::size_t p = 0; p < n; ++p) r[p] = n - 1 - x[n - 1 - p];
  return r;
}

Arr swap_arr(std::size_t n, std::size_t i) {
  Arr a = identity_arr(n);
  std::swap(a[i - 1], a[i]);
  return a;
}

Arr invert(const Arr& x) {
  Arr r(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) r[x[p]] = p;
  return r;
}

// i (1-based) such that the factor may end with s_i.
bool finishes_with(const Arr& a, std::size_t i) { return a[i - 1] > a[i]; }

// i (1-based) such that the factor may start with s_i.
bool starts_with(const Arr& b, std::size_t i) {
  const Arr pos = invert(b);
  return pos[i - 1] > pos[i];
}

void check_letters(const BraidWord& w) {
  if (w.strands == 0) throw InputError("a braid needs at least one strand");
  for (const auto& l : w.letters) {
    if (l.index == 0 || l.index >= w.strands)
      throw InputError("letter s" + std::to_string(l.index) + " out of range for " + std::to_string(w.strands) +
                       " strands");
    if (l.sign != 1 && l.sign != -1) throw InputError("braid letter sign must be +1 or -1");
  }
}

}  // namespace

BraidWord make_braid(std::size_t strands, std::vector<BraidLetter> letters) {
  BraidWord w{strands, std::move(letters)};
  check_letters(w);
  return w;
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands) throw InputError("cannot concatenate braids on different strand counts");
  BraidWord r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

BraidWord inverse(const BraidWord& w) {
  BraidWord r{w.strands, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back({it->index, -it->sign});
  return r;
}

Permutation identity_permutation(std::size_t n) { return {identity_arr(n)}; }

Permutation then(const Permutation& a, const Permutation& b) {
  if (a.image.size() != b.image.size()) throw InputError("permutations of different sizes");
  Permutation r{Arr(a.image.size())};
  for (std::size_t s = 0; s < a.image.size(); ++s) r.image[s] = b.image[a.image[s]];
  return r;
}

Permutation inverse(const Permutation& p) { return {invert(p.image)}; }

std::vector<std::size_t> arrangement(const Permutation& p) { return invert(p.image); }

Permutation perm_of_braid(const BraidWord& w) {
  check_letters(w);
  Arr arr = identity_arr(w.strands);
  for (const auto& l : w.letters) std::swap(arr[l.index - 1], arr[l.index]);
  return {invert(arr)};
}

GarsideNormalForm garside_nf(const BraidWord& w) {
  check_letters(w);
  const std::size_t n = w.strands;
  std::vector<Arr> factors;
  long inverse_deltas = 0;
  const Arr d = delta(n);
  for (const auto& l : w.letters) {
    if (l.sign > 0) {
      factors.push_back(swap_arr(n, l.index));
      continue;
    }
    // s_i^-1 = Delta^-1 (Delta s_i^-1); move Delta^-1 to the front.
    for (auto& f : factors) f = flip(f);
    ++inverse_deltas;
    factors.push_back(compose(d, swap_arr(n, l.index)));
  }
  const Arr id = identity_arr(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = factors.size(); k-- > 1;) {
      Arr& a = factors[k - 1];
      Arr& b = factors[k];
      for (std::size_t i = 1; i < n;) {
        if (starts_with(b, i) && !finishes_with(a, i)) {
          a = compose(a, swap_arr(n, i));
          b = compose(swap_arr(n, i), b);
          changed = true;
          i = 1;
        } else {
          ++i;
        }
      }
    }
  }
  GarsideNormalForm nf{n, -inverse_deltas, {}};
  std::size_t k = 0;
  while (k < factors.size() && factors[k] == d) {
    ++nf.delta_power;
    ++k;
  }
  for (; k < factors.size(); ++k)
    if (factors[k] != id) nf.factors.push_back(factors[k]);
  if (n == 1) nf.delta_power = 0;
  return nf;
}

bool braid_equal(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands) return false;
  return garside_nf(a) == garside_nf(b);
}

BraidWord handle_reduce(const BraidWord& w, std::size_t budget) {
  check_letters(w);
  std::vector<BraidLetter> cur = w.letters;
  std::size_t steps = 0;
  for (;;) {
    // The handle ending leftmost has no inner handle, so it is permitted.
    std::size_t start = 0, end = 0;
    bool found = false;
    for (std::size_t j = 1; j < cur.size() && !found; ++j) {
      const std::size_t i = cur[j].index;
      for (std::size_t k = j; k-- > 0;) {
        const std::size_t x = cur[k].index;
        if (x != i && x + 1 != i) continue;
        if (x == i && cur[k].sign == -cur[j].sign) {
          start = k;
          end = j;
          found = true;
        }
        break;
      }
    }
    if (!found) return BraidWord{w.strands, std::move(cur)};
    if (++steps > budget) throw Error("handle reduction exceeded its budget");
    const std::size_t i = cur[start].index;
    const int e = cur[start].sign;
    std::vector<BraidLetter> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(start));
    for (std::size_t k = start + 1; k < end; ++k) {
      if (cur[k].index == i + 1) {
        next.push_back({i + 1, -e});
        next.push_back({i, cur[k].sign});
        next.push_back({i + 1, e});
      } else {
        next.push_back(cur[k]);
      }
    }
    next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(end) + 1, cur.end());
    cur = std::move(next);
  }
}

bool is_trivial_by_handles(const BraidWord& w) { return handle_reduce(w).letters.empty(); }

BraidWord block_crossing(std::size_t p, std::size_t a, std::size_t b, int sign, std::size_t strands) {
  if (p + a + b > strands) throw InputError("block crossing does not fit the strand count");
  if (sign != 1 && sign != -1) throw InputError("block crossing sign must be +1 or -1");
  BraidWord w{strands, {}};
  for (std::size_t t = a; t >= 1; --t)
    for (std::size_t k = 0; k < b; ++k) w.letters.push_back({p + t + k, sign});
  return w;
}

std::string print_braid(const BraidWord& w) {
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += "s" + std::to_string(l.index);
    if (l.sign < 0) out += "^-1";
  }
  return out.empty() ? "e" : out;
}

BraidWord parse_braid(std::string_view text, std::size_t strands) {
  std::istringstream in{std::string(text)};
  std::string tok;
  BraidWord w{strands, {}};
  while (in >> tok) {
    if (tok == "e") continue;
    int sign = 1;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      sign = -1;
      tok.resize(tok.size() - 3);
    }
    if (tok.size() < 2 || tok[0] != 's' || !std::all_of(tok.begin() + 1, tok.end(), ::isdigit))
      throw InputError("bad braid letter '" + tok + "'");
    w.letters.push_back({std::stoul(tok.substr(1)), sign});
  }
  check_letters(w);
  return w;
}

std::string print_garside(const GarsideNormalForm& nf) {
  std::string out = "D^" + std::to_string(nf.delta_power);
  for (const auto& f : nf.factors) {
    out += " |";
    for (auto s : f) out += " " + std::to_string(s + 1);
  }
  return out;
}

}  // namespace polywb
