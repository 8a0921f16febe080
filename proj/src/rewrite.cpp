#include "polywb/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace polywb {

std::string_view to_string(RuleFamily f) {
  switch (f) {
    case RuleFamily::algebraic: return "algebraic";
    case RuleFamily::symmetry: return "symmetry";
    case RuleFamily::yang_baxter: return "yang_baxter";
    case RuleFamily::naturality: return "naturality";
  }
  return "?";
}

std::string_view to_string(Congruence c) { return c == Congruence::prop ? "prop" : "exchange_only"; }

std::optional<std::size_t> Polygraph::find_rule(std::string_view name) const {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].name == name) return i;
  return std::nullopt;
}

const Rule& Polygraph::rule(std::size_t i) const {
  if (i >= rules.size()) throw InputError("rule index out of range");
  return rules[i];
}

void Polygraph::validate() const {
  std::set<std::string> names;
  for (const auto& r : rules) {
    if (r.name.empty()) throw InputError("rule with empty name");
    if (!names.insert(r.name).second) throw InputError("duplicate rule '" + r.name + "'");
    if (r.lhs.input_width() != r.rhs.input_width() || r.lhs.output_width() != r.rhs.output_width())
      throw InputError("rule '" + r.name + "' has mismatched boundaries");
    if (r.lhs.is_identity()) throw InputError("rule '" + r.name + "' has an identity source");
    for (const auto* d : {&r.lhs, &r.rhs})
      for (const auto& s : d->slices()) signature.at(s.gen);
  }
}

Rule make_rule(const Signature& sig, std::string name, std::string_view lhs, std::string_view rhs,
               RuleFamily family) {
  Rule r;
  r.name = std::move(name);
  r.lhs = canonical_form(parse_diagram(lhs, sig));
  r.rhs = canonical_form(parse_diagram(rhs, sig));
  r.family = family;
  if (r.lhs.input_width() != r.rhs.input_width() || r.lhs.output_width() != r.rhs.output_width())
    throw InputError("rule '" + r.name + "' has mismatched boundaries");
  if (r.lhs.is_identity()) throw InputError("rule '" + r.name + "' has an identity source");
  return r;
}

Diagram Context::plug(const Diagram& d) const {
  return vcomp(vcomp(top, whisker(left, d, right)), bottom);
}

Step inverse(const Step& s) {
  Step r = s;
  r.direction = s.direction == Direction::forward ? Direction::backward : Direction::forward;
  return r;
}

Diagram step_source(const Polygraph& p, const Step& s) {
  const auto& r = p.rule(s.rule);
  return s.context.plug(s.direction == Direction::forward ? r.lhs : r.rhs);
}

Diagram step_target(const Polygraph& p, const Step& s) {
  const auto& r = p.rule(s.rule);
  return s.context.plug(s.direction == Direction::forward ? r.rhs : r.lhs);
}

namespace {

using exchange::Sequence;

class MatchCollector {
 public:
  MatchCollector(std::size_t input_width, const Diagram& pattern)
      : input_width_(input_width), pattern_(pattern) {}

  void at_ideal(const Sequence& seq, std::size_t start, std::size_t width) {
    std::vector<std::uint32_t> occ;
    place(seq, start, 0, 0, width, occ);
  }

  std::vector<Match> take() {
    std::vector<Match> out;
    out.reserve(found_.size());
    for (auto& [k, m] : found_) out.push_back(std::move(m));
    return out;
  }

 private:
  void place(const Sequence& seq, std::size_t start, std::size_t i, std::size_t shift, std::size_t width,
             std::vector<std::uint32_t>& occ) {
    const auto ps = pattern_.slices();
    if (i == ps.size()) {
      record(seq, start, shift, width, occ);
      return;
    }
    const std::size_t pos = start + i;
    const Slice& want = ps[i];
    for (std::size_t j = pos; j < seq.size(); ++j) {
      if (seq[j].slice.gen != want.gen) continue;
      auto s = exchange::lifted(seq, j, pos);
      if (!s) continue;
      std::size_t sh = shift;
      if (i == 0) {
        if (s->offset < want.offset) continue;
        sh = s->offset - want.offset;
        if (sh + pattern_.input_width() > width) continue;
      } else if (s->offset != want.offset + shift) {
        continue;
      }
      Sequence next = seq;
      exchange::lift(next, j, pos);
      occ.push_back(next[pos].id);
      place(next, start, i + 1, sh, width, occ);
      occ.pop_back();
    }
  }

  void record(const Sequence& seq, std::size_t start, std::size_t shift, std::size_t width,
              const std::vector<std::uint32_t>& occ) {
    auto key = occ;
    std::sort(key.begin(), key.end());
    if (found_.count(key)) return;
    const std::size_t end = start + pattern_.size();
    Match m;
    m.context.top = exchange::untag(input_width_, seq, 0, start);
    m.context.left = shift;
    m.context.right = width - shift - pattern_.input_width();
    const std::size_t below = width - pattern_.input_width() + pattern_.output_width();
    m.context.bottom = exchange::untag(below, seq, end, seq.size());
    m.occurrence = key;
    found_.emplace(std::move(key), std::move(m));
  }

  std::size_t input_width_;
  const Diagram& pattern_;
  std::map<std::vector<std::uint32_t>, Match> found_;
};

std::size_t prefix_width(std::size_t input_width, const Sequence& seq, std::size_t k) {
  std::size_t w = input_width;
  for (std::size_t i = 0; i < k; ++i) w = w - seq[i].slice.arity + seq[i].slice.coarity;
  return w;
}

}  // namespace

std::vector<std::vector<Match>> find_matches(const Diagram& d, std::span<const Diagram> patterns) {
  const Diagram c = canonical_form(d);
  std::vector<Diagram> pats;
  pats.reserve(patterns.size());
  for (const auto& p : patterns) {
    if (p.is_identity()) throw InputError("cannot match an identity pattern");
    pats.push_back(canonical_form(p));
  }
  std::vector<MatchCollector> collectors;
  collectors.reserve(pats.size());
  for (const auto& p : pats) collectors.emplace_back(c.input_width(), p);
  exchange::for_each_ideal(c, [&](const Sequence& seq, std::size_t k) {
    const std::size_t w = prefix_width(c.input_width(), seq, k);
    for (std::size_t i = 0; i < pats.size(); ++i)
      if (pats[i].size() <= seq.size() - k) collectors[i].at_ideal(seq, k, w);
  });
  std::vector<std::vector<Match>> out;
  out.reserve(pats.size());
  for (auto& col : collectors) out.push_back(col.take());
  return out;
}

std::vector<Match> find_matches(const Diagram& d, const Diagram& pattern) {
  return std::move(find_matches(d, std::span<const Diagram>(&pattern, 1)).front());
}

std::vector<Match> find_matches_bruteforce(const Diagram& d, const Diagram& pattern) {
  if (pattern.is_identity()) throw InputError("cannot match an identity pattern");
  const Diagram c = canonical_form(d);
  auto key_of = [](const Sequence& s) {
    std::vector<std::pair<Slice, std::uint32_t>> k;
    for (const auto& t : s) k.emplace_back(t.slice, t.id);
    return k;
  };
  std::set<std::vector<std::pair<Slice, std::uint32_t>>> seen;
  std::deque<Sequence> queue;
  queue.push_back(exchange::tag(c));
  seen.insert(key_of(queue.front()));
  std::map<std::vector<std::uint32_t>, Match> found;
  const std::size_t m = pattern.size();
  while (!queue.empty()) {
    Sequence seq = std::move(queue.front());
    queue.pop_front();
    for (std::size_t start = 0; start + m <= seq.size(); ++start) {
      const std::size_t w = prefix_width(c.input_width(), seq, start);
      for (std::size_t shift = 0; shift + pattern.input_width() <= w; ++shift) {
        std::vector<Slice> window;
        bool ok = true;
        for (std::size_t i = start; i < start + m && ok; ++i) {
          Slice s = seq[i].slice;
          if (s.offset < shift) ok = false;
          s.offset -= shift;
          window.push_back(s);
        }
        if (!ok) continue;
        try {
          // Throws when a slice leaves the pattern's columns.
          Diagram wd(pattern.input_width(), window);
          if (!diagram_equal(wd, pattern)) continue;
        } catch (const CompositionError&) {
          continue;
        }
        std::vector<std::uint32_t> occ;
        for (std::size_t i = start; i < start + m; ++i) occ.push_back(seq[i].id);
        std::sort(occ.begin(), occ.end());
        if (found.count(occ)) continue;
        Match mt;
        mt.context.top = exchange::untag(c.input_width(), seq, 0, start);
        mt.context.left = shift;
        mt.context.right = w - shift - pattern.input_width();
        mt.context.bottom = exchange::untag(w - pattern.input_width() + pattern.output_width(), seq, start + m,
                                            seq.size());
        mt.occurrence = occ;
        found.emplace(occ, std::move(mt));
      }
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      auto sw = exchange::commute(seq[i].slice, seq[i + 1].slice);
      if (!sw) continue;
      Sequence next = seq;
      next[i] = {sw->first, seq[i + 1].id};
      next[i + 1] = {sw->second, seq[i].id};
      if (seen.insert(key_of(next)).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Match> out;
  for (auto& [k, mt] : found) out.push_back(std::move(mt));
  return out;
}

Diagram apply_step(const Polygraph& p, const Diagram& d, const Step& s) {
  Diagram src;
  try {
    src = step_source(p, s);
  } catch (const CompositionError& e) {
    throw ApplicationError(std::string("step context does not fit: ") + e.what());
  }
  if (!diagram_equal(d, src)) throw ApplicationError("stale context: step source differs from the diagram");
  return step_target(p, s);
}

Normalization normalize(const Diagram& d, const Polygraph& p, std::size_t budget) {
  std::vector<Diagram> lhs;
  lhs.reserve(p.rules.size());
  for (const auto& r : p.rules) lhs.push_back(r.lhs);
  Trace trace{canonical_form(d), {}, Congruence::exchange_only};
  Diagram cur = trace.source;
  for (;;) {
    auto all = find_matches(cur, lhs);
    std::optional<Step> next;
    for (std::size_t i = 0; i < all.size() && !next; ++i)
      if (!all[i].empty()) next = Step{i, Direction::forward, all[i].front().context};
    if (!next) break;
    if (trace.steps.size() >= budget) throw BudgetExceeded(budget, std::move(trace));
    cur = canonical_form(step_target(p, *next));
    trace.steps.push_back(std::move(*next));
  }
  return {cur, std::move(trace)};
}

bool is_normal(const Diagram& d, const Polygraph& p) {
  std::vector<Diagram> lhs;
  for (const auto& r : p.rules) lhs.push_back(r.lhs);
  for (const auto& ms : find_matches(d, lhs))
    if (!ms.empty()) return false;
  return true;
}

Polygraph structural_part(const Polygraph& p) {
  Polygraph s;
  s.signature = p.signature;
  s.s_constructed = p.s_constructed;
  for (const auto& r : p.rules)
    if (r.family != RuleFamily::algebraic) s.rules.push_back(r);
  return s;
}

bool congruent(const Polygraph& p, Congruence c, const Diagram& a, const Diagram& b) {
  if (diagram_equal(a, b)) return true;
  if (c == Congruence::exchange_only || !p.signature.is_prop()) return false;
  if (a.input_width() != b.input_width() || a.output_width() != b.output_width()) return false;
  const auto s = structural_part(p);
  return diagram_equal(normalize(a, s).normal_form, normalize(b, s).normal_form);
}

Diagram trace_target(const Polygraph& p, const Trace& t) {
  if (t.steps.empty()) return t.source;
  return step_target(p, t.steps.back());
}

void validate_trace(const Polygraph& p, const Trace& t) {
  Diagram cur = t.source;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    Diagram src;
    try {
      src = step_source(p, t.steps[i]);
    } catch (const CompositionError& e) {
      throw ApplicationError("step " + std::to_string(i + 1) + ": context does not fit: " + e.what());
    }
    if (!congruent(p, t.congruence, cur, src))
      throw ApplicationError("step " + std::to_string(i + 1) + " does not start where the previous one ends");
    cur = step_target(p, t.steps[i]);
  }
}

Trace compose_traces(const Polygraph& p, const Trace& a, const Trace& b) {
  if (a.congruence != b.congruence) throw InputError("cannot compose traces with different congruences");
  if (!congruent(p, a.congruence, trace_target(p, a), b.source))
    throw CompositionError("cannot compose traces: target and source differ");
  Trace out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

Trace invert_trace(const Polygraph& p, const Trace& t) {
  Trace out{trace_target(p, t), {}, t.congruence};
  for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) out.steps.push_back(inverse(*it));
  return out;
}

bool parallel(const Polygraph& p, const Trace& a, const Trace& b) {
  if (a.congruence != b.congruence) throw InputError("cannot compare traces with different congruences");
  return congruent(p, a.congruence, a.source, b.source) &&
         congruent(p, a.congruence, trace_target(p, a), trace_target(p, b));
}

bool same_steps(const Trace& a, const Trace& b) {
  return a.congruence == b.congruence && diagram_equal(a.source, b.source) && a.steps == b.steps;
}

}  // namespace polywb
