#include "polywb/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <tuple>

namespace polywb {

Signature::Signature(std::string name, std::vector<GeneratorSym> generators, bool is_prop)
    : name_(std::move(name)), generators_(std::move(generators)), is_prop_(is_prop) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.name.empty()) throw InputError("generator with empty name");
    if (g.name == "id") throw InputError("'id' is reserved");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[j].name == g.name) throw InputError("duplicate generator '" + g.name + "'");
  }
  if (is_prop_) {
    auto t = find(kTauName);
    if (!t) throw InputError("prop signature without tau");
    const auto& g = generators_[*t];
    if (g.arity != 2 || g.coarity != 2) throw InputError("tau must be 2 -> 2");
  }
}

const GeneratorSym& Signature::at(GenId id) const {
  if (id >= generators_.size()) throw InputError("generator id out of range");
  return generators_[id];
}

std::optional<GenId> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return static_cast<GenId>(i);
  return std::nullopt;
}

std::optional<GenId> Signature::tau() const {
  if (!is_prop_) return std::nullopt;
  return find(kTauName);
}

Signature Signature::with_symmetry() const {
  if (is_prop_) return *this;
  if (find(kTauName)) throw InputError("signature already has a generator named tau");
  auto gens = generators_;
  gens.push_back({std::string(kTauName), 2, 2});
  return Signature(name_, std::move(gens), true);
}

Slice make_slice(const Signature& sig, GenId gen, std::size_t offset) {
  const auto& g = sig.at(gen);
  return Slice{offset, gen, g.arity, g.coarity};
}

Diagram::Diagram(std::size_t input_width, std::vector<Slice> slices)
    : input_width_(input_width), slices_(std::move(slices)) {
  std::size_t w = input_width_;
  for (const auto& s : slices_) {
    if (s.offset + s.arity > w)
      throw CompositionError("slice at offset " + std::to_string(s.offset) + " with arity " +
                             std::to_string(s.arity) + " does not fit width " + std::to_string(w));
    w = w - s.arity + s.coarity;
  }
  output_width_ = w;
}

Diagram Diagram::identity(std::size_t n) { return Diagram(n, {}); }

Diagram Diagram::generator(const Signature& sig, GenId gen) {
  auto s = make_slice(sig, gen, 0);
  return Diagram(s.arity, {s});
}

std::size_t Diagram::width_before(std::size_t i) const {
  std::size_t w = input_width_;
  for (std::size_t k = 0; k < i && k < slices_.size(); ++k) w = w - slices_[k].arity + slices_[k].coarity;
  return w;
}

std::size_t Diagram::max_width() const {
  std::size_t w = input_width_, m = w;
  for (const auto& s : slices_) {
    w = w - s.arity + s.coarity;
    m = std::max(m, w);
  }
  return m;
}

Diagram identity(std::size_t n) { return Diagram::identity(n); }

Diagram hcomp(const Diagram& left, const Diagram& right) {
  std::vector<Slice> out(left.slices().begin(), left.slices().end());
  const std::size_t shift = left.output_width();
  for (auto s : right.slices()) {
    s.offset += shift;
    out.push_back(s);
  }
  return canonical_form(Diagram(left.input_width() + right.input_width(), std::move(out)));
}

Diagram vcomp(const Diagram& upper, const Diagram& lower) {
  if (upper.output_width() != lower.input_width())
    throw CompositionError("cannot compose: output width " + std::to_string(upper.output_width()) +
                           " against input width " + std::to_string(lower.input_width()));
  std::vector<Slice> out(upper.slices().begin(), upper.slices().end());
  out.insert(out.end(), lower.slices().begin(), lower.slices().end());
  return Diagram(upper.input_width(), std::move(out));
}

Diagram whisker(std::size_t left, const Diagram& d, std::size_t right) {
  std::vector<Slice> out;
  out.reserve(d.size());
  for (auto s : d.slices()) {
    s.offset += left;
    out.push_back(s);
  }
  return Diagram(left + d.input_width() + right, std::move(out));
}

namespace exchange {

std::optional<std::pair<Slice, Slice>> commute(const Slice& upper, const Slice& lower) {
  const auto& [o1, g1, a1, c1] = upper;
  const auto& [o2, g2, a2, c2] = lower;
  // A nullary slice sitting exactly where a coarity-0 slice vanished is ambiguous.
  if (a2 == 0 && c1 == 0 && o2 == o1) return std::nullopt;
  if (o2 + a2 <= o1) {
    Slice l = lower, u = upper;
    u.offset = o1 - a2 + c2;
    return std::make_pair(l, u);
  }
  if (o2 >= o1 + c1) {
    Slice l = lower, u = upper;
    l.offset = o2 - c1 + a1;
    return std::make_pair(l, u);
  }
  return std::nullopt;
}

Sequence tag(const Diagram& d) {
  Sequence seq;
  seq.reserve(d.size());
  std::uint32_t id = 0;
  for (const auto& s : d.slices()) seq.push_back({s, id++});
  return seq;
}

Diagram untag(std::size_t input_width, const Sequence& seq, std::size_t from, std::size_t to) {
  std::vector<Slice> out;
  out.reserve(to - from);
  for (std::size_t i = from; i < to; ++i) out.push_back(seq[i].slice);
  return Diagram(input_width, std::move(out));
}

std::optional<Slice> lifted(const Sequence& seq, std::size_t j, std::size_t k) {
  Slice cur = seq[j].slice;
  for (std::size_t m = j; m > k; --m) {
    auto sw = commute(seq[m - 1].slice, cur);
    if (!sw) return std::nullopt;
    cur = sw->first;
  }
  return cur;
}

void lift(Sequence& seq, std::size_t j, std::size_t k) {
  for (std::size_t m = j; m > k; --m) {
    auto sw = commute(seq[m - 1].slice, seq[m].slice);
    const auto upper_id = seq[m - 1].id;
    const auto lower_id = seq[m].id;
    seq[m - 1] = {sw->first, lower_id};
    seq[m] = {sw->second, upper_id};
  }
}

std::vector<std::vector<bool>> precedence(const Diagram& d) {
  const std::size_t n = d.size();
  // b can come before a iff some ideal holds b but not a.
  std::vector<std::vector<bool>> can_precede(n, std::vector<bool>(n, false));
  for_each_ideal(d, [&](const Sequence& seq, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = k; j < n; ++j) can_precede[seq[i].id][seq[j].id] = true;
  });
  std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && !can_precede[b][a]) before[a][b] = true;
  return before;
}

}  // namespace exchange

Diagram canonical_form(const Diagram& d) {
  using exchange::Sequence;
  Sequence seq = exchange::tag(d);
  const std::size_t n = seq.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> best;
    std::tuple<std::size_t, std::size_t, GenId> best_key{};
    for (std::size_t j = k; j < n; ++j) {
      auto s = exchange::lifted(seq, j, k);
      if (!s) continue;
      std::tuple<std::size_t, std::size_t, GenId> key{s->offset, s->offset + s->arity, s->gen};
      if (best.empty() || key < best_key) {
        best = {j};
        best_key = key;
      } else if (key == best_key) {
        best.push_back(j);
      }
    }
    std::size_t pick = best.front();
    if (best.size() > 1) {
      // Nullary slices in the same gap: take the leftmost one, i.e. the one
      // after which no other tied slice still sits at the gap.
      const std::size_t gap = std::get<0>(best_key);
      for (std::size_t x : best) {
        Sequence trial = seq;
        exchange::lift(trial, x, k);
        bool leftmost = true;
        for (std::size_t y : best) {
          if (y == x) continue;
          const std::uint32_t id = seq[y].id;
          std::size_t at = k + 1;
          while (trial[at].id != id) ++at;
          auto s = exchange::lifted(trial, at, k + 1);
          if (s && s->offset == gap) leftmost = false;
        }
        if (leftmost) {
          pick = x;
          break;
        }
      }
    }
    exchange::lift(seq, pick, k);
  }
  return exchange::untag(d.input_width(), seq, 0, n);
}

bool diagram_equal(const Diagram& a, const Diagram& b) {
  if (a.input_width() != b.input_width() || a.output_width() != b.output_width() || a.size() != b.size())
    return false;
  return canonical_form(a) == canonical_form(b);
}

std::vector<Diagram> exchange_closure(const Diagram& d, std::size_t limit) {
  std::set<std::vector<Slice>> seen;
  std::deque<std::vector<Slice>> queue;
  std::vector<Slice> start(d.slices().begin(), d.slices().end());
  seen.insert(start);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      auto sw = exchange::commute(cur[i], cur[i + 1]);
      if (!sw) continue;
      auto next = cur;
      next[i] = sw->first;
      next[i + 1] = sw->second;
      if (seen.insert(next).second) {
        if (seen.size() > limit) throw InputError("exchange closure exceeds limit");
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Diagram> out;
  out.reserve(seen.size());
  for (const auto& s : seen) out.emplace_back(d.input_width(), s);
  return out;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Diagram parse() {
    auto d = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return d;
  }

 private:
  Diagram expr() {
    auto d = term();
    while (accept(';')) {
      const std::size_t at = pos_;
      auto rhs = term();
      if (d.output_width() != rhs.input_width()) {
        pos_ = at;
        fail("width mismatch in ';': " + std::to_string(d.output_width()) + " vs " +
             std::to_string(rhs.input_width()));
      }
      d = vcomp(d, rhs);
    }
    return d;
  }

  Diagram term() {
    auto d = atom();
    while (accept('*')) {
      auto rhs = atom();
      std::vector<Slice> out(d.slices().begin(), d.slices().end());
      for (auto s : rhs.slices()) {
        s.offset += d.output_width();
        out.push_back(s);
      }
      d = Diagram(d.input_width() + rhs.input_width(), std::move(out));
    }
    return d;
  }

  Diagram atom() {
    skip_space();
    if (accept('(')) {
      auto d = expr();
      if (!accept(')')) fail("expected ')'");
      return d;
    }
    const std::size_t at = pos_;
    auto word = ident();
    if (word.empty()) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                               : "unexpected end of expression");
    if (word == "id") {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected width after 'id'");
      return Diagram::identity(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }
    auto g = sig_.find(word);
    if (!g) {
      pos_ = at;
      fail("unknown generator '" + word + "'");
    }
    return Diagram::generator(sig_, *g);
  }

  std::string ident() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start < pos_ && std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      return {};
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Diagram parse_diagram(std::string_view text, const Signature& sig) { return ExprParser(text, sig).parse(); }

std::string print_diagram(const Diagram& d, const Signature& sig) {
  if (d.is_identity()) return "id " + std::to_string(d.input_width());
  const auto c = canonical_form(d);
  std::string out;
  std::size_t w = c.input_width();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& s = c.slices()[i];
    const std::size_t right = w - s.offset - s.arity;
    std::string t;
    if (s.offset > 0) t += "id " + std::to_string(s.offset) + " * ";
    t += sig.at(s.gen).name;
    if (right > 0) t += " * id " + std::to_string(right);
    const bool whiskered = s.offset > 0 || right > 0;
    if (whiskered && c.size() > 1) t = "(" + t + ")";
    if (i > 0) out += " ; ";
    out += t;
    w = w - s.arity + s.coarity;
  }
  return out;
}

}  // namespace polywb
