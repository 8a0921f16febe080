#pragma once

#include <string>
#include <unordered_set>

namespace polywb::exchange {

namespace detail {

template <class Visit>
void walk_ideals(Sequence& seq, std::size_t k, std::string& key, std::unordered_set<std::string>& seen,
                 Visit& visit) {
  if (!seen.insert(key).second) return;
  visit(static_cast<const Sequence&>(seq), k);
  for (std::size_t j = k; j < seq.size(); ++j) {
    if (!lifted(seq, j, k)) continue;
    Sequence next = seq;
    lift(next, j, k);
    const std::uint32_t id = next[k].id;
    key[id] = '1';
    walk_ideals(next, k + 1, key, seen, visit);
    key[id] = '0';
  }
}

}  // namespace detail

template <class Visit>
void for_each_ideal(const Diagram& d, Visit&& visit) {
  Sequence seq = tag(d);
  std::string key(seq.size(), '0');
  std::unordered_set<std::string> seen;
  detail::walk_ideals(seq, 0, key, seen, visit);
}

}  // namespace polywb::exchange
