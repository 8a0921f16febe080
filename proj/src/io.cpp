#include "polywb/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "polywb/critical.hpp"

namespace polywb {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

// Parses an expression that sits inside `line`, reporting errors in file
// coordinates.
Diagram expr_at(std::string_view line, std::string_view part, std::size_t lineno, const Signature& sig) {
  part = trim(part);
  if (part.empty()) throw ParseError("expected an expression", lineno, column_of(line, part));
  try {
    return parse_diagram(part, sig);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), lineno, column_of(line, part) + e.column() - 1);
  } catch (const InputError& e) {
    throw ParseError(e.what(), lineno, column_of(line, part));
  }
}

bool is_ident(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

std::size_t parse_nat(std::string_view line, std::string_view s, std::size_t lineno) {
  s = trim(s);
  if (s.empty() || s.size() > 9) throw ParseError("expected a natural number", lineno, column_of(line, s));
  std::size_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("expected a natural number", lineno, column_of(line, s));
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    out.push_back({n, raw});
  }
  return out;
}

// Splits "<kw> <name> : rest" and returns {name, rest}.
std::pair<std::string_view, std::string_view> named(std::string_view line, std::string_view after_kw,
                                                    std::size_t lineno) {
  const auto colon = after_kw.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected ':'", lineno, line.size() + 1);
  const auto name = trim(after_kw.substr(0, colon));
  if (!is_ident(name)) throw ParseError("expected a name", lineno, column_of(line, after_kw));
  return {name, after_kw.substr(colon + 1)};
}

}  // namespace

Polygraph parse_polygraph(std::string_view text, std::string name) {
  bool prop = false;
  std::vector<GeneratorSym> gens;
  struct PendingRule {
    std::size_t lineno;
    std::string line;
    std::string name;
    std::size_t lhs_at, lhs_len, rhs_at, rhs_len;
  };
  std::vector<PendingRule> pending;
  for (const auto& [lineno, line] : content_lines(text)) {
    const std::string_view lv = line;
    const auto body = trim(lv);
    const auto sp = body.find_first_of(" \t");
    const auto kw = body.substr(0, sp);
    const auto rest = sp == std::string_view::npos ? std::string_view{} : body.substr(sp);
    if (kw == "prop") {
      if (!trim(rest).empty()) throw ParseError("trailing input", lineno, column_of(lv, trim(rest)));
      if (!gens.empty() || !pending.empty())
        throw ParseError("'prop' must come before generators and rules", lineno, column_of(lv, body));
      prop = true;
    } else if (kw == "gen") {
      const auto [gname, type] = named(lv, rest, lineno);
      const auto arrow = type.find("->");
      if (arrow == std::string_view::npos) throw ParseError("expected '->'", lineno, column_of(lv, type));
      if (gname == kTauName) throw ParseError("'tau' is reserved for the symmetry", lineno, column_of(lv, gname));
      for (const auto& g : gens)
        if (g.name == gname)
          throw ParseError("duplicate generator '" + std::string(gname) + "'", lineno, column_of(lv, gname));
      gens.push_back({std::string(gname), parse_nat(lv, type.substr(0, arrow), lineno),
                      parse_nat(lv, type.substr(arrow + 2), lineno)});
    } else if (kw == "rule") {
      const auto [rname, sides] = named(lv, rest, lineno);
      const auto arrow = sides.find("=>");
      if (arrow == std::string_view::npos) throw ParseError("expected '=>'", lineno, column_of(lv, sides));
      const auto lhs = sides.substr(0, arrow), rhs = sides.substr(arrow + 2);
      pending.push_back({lineno, line, std::string(rname), column_of(lv, lhs) - 1, lhs.size(),
                         column_of(lv, rhs) - 1, rhs.size()});
    } else {
      throw ParseError("unknown directive '" + std::string(kw) + "'", lineno, column_of(lv, body));
    }
  }
  Polygraph p;
  p.signature = Signature(name, gens);
  if (prop) p = s_construction(p);
  std::vector<Rule> rules;
  for (const auto& r : pending) {
    const std::string_view lv = r.line;
    Rule rule;
    rule.name = r.name;
    rule.lhs = canonical_form(expr_at(lv, lv.substr(r.lhs_at, r.lhs_len), r.lineno, p.signature));
    rule.rhs = canonical_form(expr_at(lv, lv.substr(r.rhs_at, r.rhs_len), r.lineno, p.signature));
    if (rule.lhs.size() == 0) throw ParseError("rule source has no generator", r.lineno, r.lhs_at + 1);
    if (rule.lhs.input_width() != rule.rhs.input_width() || rule.lhs.output_width() != rule.rhs.output_width())
      throw ParseError("rule '" + r.name + "' has sides with different boundaries", r.lineno, r.lhs_at + 1);
    rules.push_back(std::move(rule));
  }
  return with_rules(std::move(p), std::move(rules));
}

std::string print_polygraph(const Polygraph& p) {
  std::ostringstream out;
  if (p.s_constructed) out << "prop\n";
  for (const auto& g : p.signature.generators()) {
    if (p.signature.is_prop() && g.name == kTauName) continue;
    out << "gen " << g.name << " : " << g.arity << " -> " << g.coarity << "\n";
  }
  for (const auto& r : p.rules) {
    if (p.s_constructed && r.family != RuleFamily::algebraic) continue;
    out << "rule " << r.name << " : " << print_diagram(r.lhs, p.signature) << " => "
        << print_diagram(r.rhs, p.signature) << "\n";
  }
  return out.str();
}

NamedTrace parse_trace(std::string_view text, const Polygraph& p) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing 'trace' header", 1, 1);
  NamedTrace out;
  out.trace.congruence = p.signature.is_prop() ? Congruence::prop : Congruence::exchange_only;
  {
    const auto& [lineno, line] = lines.front();
    const std::string_view lv = line;
    const auto body = trim(lv);
    if (body.substr(0, 6) != "trace ") throw ParseError("expected 'trace <name> on <expr>'", lineno, 1);
    const auto on = body.find(" on ");
    if (on == std::string_view::npos) throw ParseError("expected 'on'", lineno, column_of(lv, body));
    const auto name = trim(body.substr(6, on - 6));
    if (!is_ident(name)) throw ParseError("expected a name", lineno, column_of(lv, body) + 6);
    out.name = std::string(name);
    out.trace.source = expr_at(lv, body.substr(on + 4), lineno, p.signature);
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [lineno, line] = lines[i];
    const std::string_view lv = line;
    const auto body = trim(lv);
    if (body.substr(0, 5) != "step ") throw ParseError("expected 'step'", lineno, column_of(lv, body));
    const auto top = body.find(" top=");
    const auto left = body.find(" left=");
    const auto right = body.find(" right=");
    const auto bot = body.find(" bot=");
    if (top == std::string_view::npos || left == std::string_view::npos || right == std::string_view::npos ||
        bot == std::string_view::npos || !(top < left && left < right && right < bot))
      throw ParseError("expected 'step <rule> <+|-> top=<expr> left=<n> right=<n> bot=<expr>'", lineno,
                       column_of(lv, body));
    std::istringstream head{std::string(body.substr(5, top - 5))};
    std::string rule, dir, extra;
    head >> rule >> dir;
    if (head >> extra || (dir != "+" && dir != "-"))
      throw ParseError("expected a rule name and a direction '+' or '-'", lineno, column_of(lv, body) + 5);
    const auto rid = p.find_rule(rule);
    if (!rid) throw ParseError("unknown rule '" + rule + "'", lineno, column_of(lv, body) + 5);
    Step s;
    s.rule = *rid;
    s.direction = dir == "+" ? Direction::forward : Direction::backward;
    s.context.top = expr_at(lv, body.substr(top + 5, left - top - 5), lineno, p.signature);
    s.context.left = parse_nat(lv, body.substr(left + 6, right - left - 6), lineno);
    s.context.right = parse_nat(lv, body.substr(right + 7, bot - right - 7), lineno);
    s.context.bottom = expr_at(lv, body.substr(bot + 5), lineno, p.signature);
    try {
      (void)step_source(p, s);
    } catch (const InputError& e) {
      throw ParseError(e.what(), lineno, column_of(lv, body));
    }
    out.trace.steps.push_back(std::move(s));
  }
  validate_trace(p, out.trace);
  return out;
}

std::string print_trace(const Polygraph& p, const Trace& t, std::string_view name) {
  std::ostringstream out;
  out << "trace " << name << " on " << print_diagram(t.source, p.signature) << "\n";
  for (const auto& s : t.steps) {
    out << "step " << p.rule(s.rule).name << (s.direction == Direction::forward ? " + " : " - ")
        << "top=" << print_diagram(s.context.top, p.signature) << " left=" << s.context.left
        << " right=" << s.context.right << " bot=" << print_diagram(s.context.bottom, p.signature) << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polywb
