#include "polywb/termination.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace polywb {

MonotoneExpr MonotoneExpr::constant(std::uint64_t c) { return MonotoneExpr(Kind::constant, c, nullptr, nullptr); }

MonotoneExpr MonotoneExpr::variable(std::size_t index) {
  return MonotoneExpr(Kind::variable, index, nullptr, nullptr);
}

MonotoneExpr MonotoneExpr::sum(MonotoneExpr a, MonotoneExpr b) {
  return MonotoneExpr(Kind::sum, 0, std::make_shared<const MonotoneExpr>(std::move(a)),
                      std::make_shared<const MonotoneExpr>(std::move(b)));
}

MonotoneExpr MonotoneExpr::max(MonotoneExpr a, MonotoneExpr b) {
  return MonotoneExpr(Kind::max, 0, std::make_shared<const MonotoneExpr>(std::move(a)),
                      std::make_shared<const MonotoneExpr>(std::move(b)));
}

std::uint64_t MonotoneExpr::eval(std::span<const std::uint64_t> args) const {
  switch (kind_) {
    case Kind::constant: return value_;
    case Kind::variable:
      if (value_ >= args.size()) throw InputError("interpretation uses an unbound variable");
      return args[value_];
    case Kind::sum: return a_->eval(args) + b_->eval(args);
    case Kind::max: return std::max(a_->eval(args), b_->eval(args));
  }
  return 0;
}

std::size_t MonotoneExpr::max_variable() const {
  switch (kind_) {
    case Kind::constant: return 0;
    case Kind::variable: return value_ + 1;
    default: return std::max(a_->max_variable(), b_->max_variable());
  }
}

std::string MonotoneExpr::print(std::span<const std::string> names) const {
  switch (kind_) {
    case Kind::constant: return std::to_string(value_);
    case Kind::variable: return value_ < names.size() ? names[value_] : "x" + std::to_string(value_ + 1);
    case Kind::sum: return a_->print(names) + " + " + b_->print(names);
    case Kind::max: return "max(" + a_->print(names) + ", " + b_->print(names) + ")";
  }
  return "";
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::string word() {
    skip();
    const std::size_t s = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    if (s == pos_) fail("expected a name");
    return std::string(text_.substr(s, pos_ - s));
  }

  std::uint64_t number() {
    skip();
    const std::size_t s = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (s == pos_) fail("expected a number");
    return std::stoull(std::string(text_.substr(s, pos_ - s)));
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_end() {
    skip();
    return pos_ == text_.size();
  }

  bool peek_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  MonotoneExpr expr(const std::vector<std::string>& vars) {
    auto e = term(vars);
    while (accept('+')) e = MonotoneExpr::sum(std::move(e), term(vars));
    return e;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

 private:
  MonotoneExpr term(const std::vector<std::string>& vars) {
    if (accept('(')) {
      auto e = expr(vars);
      expect(')');
      return e;
    }
    if (peek_digit()) return MonotoneExpr::constant(number());
    const std::size_t at = pos_;
    auto w = word();
    if (w == "max") {
      expect('(');
      auto a = expr(vars);
      expect(',');
      auto b = expr(vars);
      expect(')');
      return MonotoneExpr::max(std::move(a), std::move(b));
    }
    auto it = std::find(vars.begin(), vars.end(), w);
    if (it == vars.end()) {
      pos_ = at;
      fail("unknown variable '" + w + "'");
    }
    return MonotoneExpr::variable(static_cast<std::size_t>(it - vars.begin()));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Interpretation parse_interpretation(std::string_view text, const Signature& sig) {
  Interpretation out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    LineParser lp(raw, lineno);
    if (lp.at_end()) continue;
    const auto kw = lp.word();
    if (kw == "interp") {
      if (lp.word() != "for") lp.fail("expected 'for'");
      out.polygraph = lp.word();
      header = true;
    } else if (kw == "bound") {
      out.bound = lp.number();
      if (out.bound == 0) lp.fail("bound must be positive");
    } else if (kw == "X" || kw == "d") {
      const auto name = lp.word();
      const auto gid = sig.find(name);
      if (!gid) lp.fail("unknown generator '" + name + "'");
      const auto& g = sig.at(*gid);
      std::vector<std::string> vars;
      lp.expect('(');
      if (!lp.accept(')')) {
        do vars.push_back(lp.word());
        while (lp.accept(','));
        lp.expect(')');
      }
      if (vars.size() != g.arity) lp.fail("generator '" + name + "' takes " + std::to_string(g.arity) + " inputs");
      lp.expect('=');
      auto& gi = out.generators[name];
      if (!gi.vars.empty() && gi.vars != vars) lp.fail("inconsistent variable names for '" + name + "'");
      gi.vars = vars;
      if (kw == "X") {
        gi.x.clear();
        do gi.x.push_back(lp.expr(vars));
        while (lp.accept(','));
        if (gi.x.size() != g.coarity)
          lp.fail("generator '" + name + "' has " + std::to_string(g.coarity) + " outputs");
        gi.has_x = true;
      } else {
        gi.d = lp.expr(vars);
        gi.has_d = true;
      }
    } else {
      lp.fail("unknown directive '" + kw + "'");
    }
    if (!lp.at_end()) lp.fail("trailing input");
  }
  if (!header) throw ParseError("missing 'interp for' header", 1, 1);
  return complete_interpretation(std::move(out), sig);
}

Interpretation complete_interpretation(Interpretation interp, const Signature& sig) {
  for (const auto& g : sig.generators()) {
    auto it = interp.generators.find(g.name);
    if (it == interp.generators.end() && sig.is_prop() && g.name == kTauName) {
      GeneratorInterp t;
      t.vars = {"i", "j"};
      t.x = {MonotoneExpr::variable(1), MonotoneExpr::variable(0)};
      t.d = MonotoneExpr::constant(0);
      t.has_x = t.has_d = true;
      interp.generators.emplace(g.name, std::move(t));
      continue;
    }
    if (it == interp.generators.end()) throw InputError("no interpretation for generator '" + g.name + "'");
    if (!it->second.has_x || !it->second.has_d)
      throw InputError("generator '" + g.name + "' needs both X and d");
    if (it->second.x.size() != g.coarity) throw InputError("X of '" + g.name + "' has the wrong number of outputs");
  }
  return interp;
}

namespace {

template <class OnSlice>
std::vector<std::uint64_t> run(const Signature& sig, const Interpretation& interp, const Diagram& d,
                               std::span<const std::uint64_t> inputs, OnSlice&& on_slice) {
  if (inputs.size() != d.input_width())
    throw InputError("expected " + std::to_string(d.input_width()) + " inputs, got " +
                     std::to_string(inputs.size()));
  for (auto v : inputs)
    if (v == 0) throw InputError("interpretation inputs must be at least 1");
  std::vector<std::uint64_t> vals(inputs.begin(), inputs.end());
  for (const auto& s : d.slices()) {
    const auto& name = sig.at(s.gen).name;
    auto it = interp.generators.find(name);
    if (it == interp.generators.end()) throw InputError("no interpretation for generator '" + name + "'");
    std::span<const std::uint64_t> args(vals.data() + s.offset, s.arity);
    on_slice(it->second, args);
    std::vector<std::uint64_t> outs;
    for (const auto& e : it->second.x) outs.push_back(e.eval(args));
    vals.erase(vals.begin() + static_cast<std::ptrdiff_t>(s.offset),
               vals.begin() + static_cast<std::ptrdiff_t>(s.offset + s.arity));
    vals.insert(vals.begin() + static_cast<std::ptrdiff_t>(s.offset), outs.begin(), outs.end());
  }
  return vals;
}

}  // namespace

std::vector<std::uint64_t> eval_X(const Signature& sig, const Interpretation& interp, const Diagram& d,
                                  std::span<const std::uint64_t> inputs) {
  return run(sig, interp, d, inputs, [](const GeneratorInterp&, std::span<const std::uint64_t>) {});
}

std::uint64_t eval_deriv(const Signature& sig, const Interpretation& interp, const Diagram& d,
                         std::span<const std::uint64_t> inputs) {
  std::uint64_t total = 0;
  run(sig, interp, d, inputs,
      [&](const GeneratorInterp& g, std::span<const std::uint64_t> args) { total += g.d.eval(args); });
  return total;
}

TerminationReport check_decrease(const Polygraph& p, const Interpretation& interp) {
  const auto full = complete_interpretation(interp, p.signature);
  TerminationReport rep;
  rep.bound = full.bound;
  for (const auto& r : p.rules) {
    RuleDecrease rd;
    rd.rule = r.name;
    const std::size_t m = r.lhs.input_width();
    std::vector<std::uint64_t> x(m, 1);
    for (;;) {
      auto xl = eval_X(p.signature, full, r.lhs, x);
      auto xr = eval_X(p.signature, full, r.rhs, x);
      auto dl = eval_deriv(p.signature, full, r.lhs, x);
      auto dr = eval_deriv(p.signature, full, r.rhs, x);
      bool x_ok = true;
      for (std::size_t k = 0; k < xl.size(); ++k) x_ok = x_ok && xl[k] >= xr[k];
      if (!x_ok || dl <= dr) {
        rd.passed = false;
        rd.witness = x;
        rd.x_lhs = xl;
        rd.x_rhs = xr;
        rd.d_lhs = dl;
        rd.d_rhs = dr;
        rd.reason = !x_ok ? "X increases" : "derivation does not decrease";
        break;
      }
      std::size_t k = m;
      while (k > 0 && x[k - 1] == full.bound) x[--k] = 1;
      if (k == 0) break;
      ++x[k - 1];
    }
    rep.passed = rep.passed && rd.passed;
    rep.rules.push_back(std::move(rd));
  }
  return rep;
}

}  // namespace polywb
