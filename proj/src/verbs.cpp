#include "polywb/verbs.hpp"

#include <map>
#include <sstream>

#include "json.hpp"
#include "polywb/io.hpp"

namespace polywb {

using nlohmann::json;

namespace {

std::string expr(const Polygraph& p, const Diagram& d) { return print_diagram(d, p.signature); }

json diagram_json(const Polygraph& p, const Diagram& d) {
  return {{"expr", expr(p, d)}, {"input", d.input_width()}, {"output", d.output_width()}, {"slices", d.size()}};
}

json step_json(const Polygraph& p, const Step& s) {
  return {{"rule", p.rule(s.rule).name},
          {"direction", s.direction == Direction::forward ? "+" : "-"},
          {"top", expr(p, s.context.top)},
          {"left", s.context.left},
          {"right", s.context.right},
          {"bot", expr(p, s.context.bottom)}};
}

json trace_json(const Polygraph& p, const Trace& t, std::string_view name) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(step_json(p, s));
  return {{"name", name},
          {"congruence", to_string(t.congruence)},
          {"source", expr(p, t.source)},
          {"target", expr(p, trace_target(p, t))},
          {"steps", steps},
          {"text", print_trace(p, t, name)}};
}

std::string pair_name(const Polygraph& p, const Branching& b) {
  return p.rule(b.first.rule).name + "/" + p.rule(b.second.rule).name;
}

json branching_json(const Polygraph& p, const Branching& b, std::size_t index) {
  json j{{"name", "c" + std::to_string(index + 1)},
         {"rules", {p.rule(b.first.rule).name, p.rule(b.second.rule).name}},
         {"source", diagram_json(p, b.source)},
         {"first", step_json(p, b.first)},
         {"second", step_json(p, b.second)},
         {"first_occurrence", b.first_occurrence},
         {"second_occurrence", b.second_occurrence}};
  if (p.s_constructed) j["family"] = to_string(classify_branching(p, b));
  return j;
}

json confluence_json(const Polygraph& p, const HomotopyCell& c) {
  const auto& cd = c.diagram;
  json j{{"name", c.name}, {"rules", {p.rule(c.branching.first.rule).name, p.rule(c.branching.second.rule).name}},
         {"source", expr(p, c.branching.source)}, {"joinable", cd.joinable},
         {"strict", cd.strict}};
  if (p.s_constructed) j["family"] = to_string(classify_branching(p, c.branching));
  if (cd.joinable) {
    j["upper"] = trace_json(p, cd.upper, c.name + "_upper");
    j["lower"] = trace_json(p, cd.lower, c.name + "_lower");
    j["target"] = expr(p, trace_target(p, cd.upper));
  } else {
    j["failure"] = cd.failure;
    j["normal_first"] = expr(p, cd.normal_first);
    j["normal_second"] = expr(p, cd.normal_second);
  }
  return j;
}

json termination_json(const TerminationEvidence& ev) {
  json j{{"method", ev.method}, {"passed", ev.passed}, {"detail", ev.detail}};
  if (ev.method == "bounded-normalisation") j["longest_normalisation"] = ev.longest_normalisation;
  if (ev.report) {
    j["bound"] = ev.report->bound;
    json rules = json::array();
    for (const auto& r : ev.report->rules) {
      json rj{{"rule", r.rule}, {"passed", r.passed}};
      if (!r.passed)
        rj.update({{"witness", r.witness},
                   {"x_lhs", r.x_lhs},
                   {"x_rhs", r.x_rhs},
                   {"d_lhs", r.d_lhs},
                   {"d_rhs", r.d_rhs},
                   {"reason", r.reason}});
      rules.push_back(rj);
    }
    j["rules"] = rules;
  }
  return j;
}

std::string termination_text(const TerminationEvidence& ev) {
  std::ostringstream out;
  out << "termination: " << ev.method << ", " << (ev.passed ? "passed" : "FAILED");
  if (!ev.detail.empty()) out << " (" << ev.detail << ")";
  out << "\n";
  if (ev.report) {
    auto list = [](const std::vector<std::uint64_t>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return "(" + s + ")";
    };
    out << "  grid bound " << ev.report->bound << "\n";
    for (const auto& r : ev.report->rules) {
      out << "  " << r.rule << ": " << (r.passed ? "decreases" : "FAILS");
      if (!r.passed)
        out << " at " << list(r.witness) << ": " << r.reason << ", X " << list(r.x_lhs) << " vs " << list(r.x_rhs)
            << ", d " << r.d_lhs << " vs " << r.d_rhs;
      out << "\n";
    }
  }
  return out.str();
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

EnumerationOptions enum_opts(const VerbOptions& o) {
  EnumerationOptions e;
  e.max_extra_width = o.max_extra_width;
  return e;
}

std::optional<Interpretation> interpretation(const Workbench& wb, const VerbOptions& o) {
  std::optional<Interpretation> in;
  if (o.interpretation)
    in = parse_interpretation(*o.interpretation, wb.preset.polygraph.signature);
  else if (wb.preset.interpretation)
    in = complete_interpretation(*wb.preset.interpretation, wb.preset.polygraph.signature);
  if (in && o.bound) {
    if (*o.bound == 0) throw InputError("bound must be positive");
    in->bound = *o.bound;
  }
  return in;
}

}  // namespace

Workbench open_preset(std::string_view name) { return {load_preset(name), true}; }

Workbench open_polygraph(std::string_view text, std::string name) {
  Workbench wb;
  wb.builtin = false;
  wb.preset.name = name;
  wb.preset.description = "polygraph read from a file";
  wb.preset.polygraph = parse_polygraph(text, std::move(name));
  for (const auto& r : wb.preset.polygraph.rules)
    if (r.family == RuleFamily::algebraic) wb.preset.aspherical_subrules.push_back(r.name);
  return wb;
}

VerbResult run_normalize(const Workbench& wb, std::string_view text, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const Diagram d = parse_diagram(text, p.signature);
  VerbResult res;
  json j{{"verb", "normalize"}, {"polygraph", p.name()}, {"input", expr(p, d)}, {"budget", o.budget}};
  std::ostringstream out;
  try {
    auto n = normalize(d, p, o.budget);
    j["status"] = "normal_form";
    j["normal_form"] = diagram_json(p, n.normal_form);
    j["steps"] = n.trace.steps.size();
    j["trace"] = trace_json(p, n.trace, "normalisation");
    out << expr(p, n.normal_form) << "\n" << n.trace.steps.size() << (n.trace.steps.size() == 1 ? " step" : " steps")
        << "\n";
  } catch (const BudgetExceeded& e) {
    res.status = 1;
    j["status"] = "budget_exceeded";
    j["message"] = e.what();
    j["trace"] = trace_json(p, e.partial(), "partial");
    out << "nontermination suspected: " << e.what() << "\n"
        << "last diagram: " << expr(p, trace_target(p, e.partial())) << "\n";
  }
  res.output = o.format == Format::json ? render(j) : out.str();
  return res;
}

VerbResult run_critical(const Workbench& wb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const auto bs = enumerate_critical_branchings(p, enum_opts(o));
  json list = json::array();
  std::map<std::string, std::size_t> tally;
  std::ostringstream out;
  out << p.name() << ": " << bs.size() << " critical branching" << (bs.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    list.push_back(branching_json(p, bs[i], i));
    out << "  c" << i + 1 << "  " << pair_name(p, bs[i]);
    if (p.s_constructed) {
      const auto f = std::string(to_string(classify_branching(p, bs[i])));
      ++tally[f];
      out << "  [" << f << "]";
    }
    out << "  " << expr(p, bs[i].source) << "\n";
  }
  json j{{"verb", "critical"}, {"polygraph", p.name()}, {"count", bs.size()},
         {"max_extra_width", o.max_extra_width}, {"branchings", list}};
  if (p.s_constructed) {
    for (auto f : {BranchingFamily::sym_yb, BranchingFamily::naturality_vs_sym,
                   BranchingFamily::left_vs_right_naturality, BranchingFamily::algebraic_vs_naturality,
                   BranchingFamily::proper})
      tally.emplace(std::string(to_string(f)), 0);
    j["families"] = tally;
    out << "families:";
    for (const auto& [f, n] : tally) out << " " << f << "=" << n;
    out << "\n";
  }
  return {0, o.format == Format::json ? render(j) : out.str()};
}

VerbResult run_confluence(const Workbench& wb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const auto in = interpretation(wb, o);
  const auto rep = asphericity_pipeline(p, in ? &*in : nullptr, enum_opts(o), o.budget);
  json cells = json::array();
  std::ostringstream out;
  out << "polygraph " << p.name() << "\n" << termination_text(rep.termination);
  out << "branchings: " << rep.branchings.size();
  if (rep.verdict != PipelineVerdict::termination_failed)
    out << ", confluent: " << rep.confluent << " (by normalisation alone: " << rep.strictly_confluent << ")";
  out << "\n";
  for (const auto& c : rep.basis.cells) {
    cells.push_back(confluence_json(p, c));
    out << "  " << c.name << "  " << pair_name(p, c.branching) << "  ";
    if (c.diagram.joinable)
      out << (c.diagram.strict ? "joinable" : "joinable modulo structure") << "  " << c.diagram.upper.steps.size()
          << "/" << c.diagram.lower.steps.size() << " steps";
    else
      out << "NOT JOINABLE: " << expr(p, c.diagram.normal_first) << "  vs  " << expr(p, c.diagram.normal_second);
    out << "\n";
  }
  json j{{"verb", "confluence"},
         {"polygraph", p.name()},
         {"termination", termination_json(rep.termination)},
         {"branchings", rep.branchings.size()},
         {"confluent", rep.confluent},
         {"strictly_confluent", rep.strictly_confluent},
         {"diagrams", cells},
         {"verdict", to_string(rep.verdict)}};
  if (p.s_constructed && rep.verdict != PipelineVerdict::termination_failed) {
    json proper = json::array();
    out << "proper basis (" << rep.proper.size() << "):";
    for (auto i : rep.proper) {
      proper.push_back(rep.basis.cells[i].name);
      out << " " << rep.basis.cells[i].name;
    }
    out << "\n";
    j["proper"] = proper;
    j["proper_count"] = rep.proper.size();
  }
  if (!rep.obligation.empty()) {
    j["obligation"] = rep.obligation;
    out << "obligation: " << rep.obligation << "\n";
  }
  out << "verdict: " << to_string(rep.verdict) << "\n";
  const bool ok =
      rep.verdict == PipelineVerdict::aspherical || rep.verdict == PipelineVerdict::aspherical_modulo_tietze;
  return {ok ? 0 : 1, o.format == Format::json ? render(j) : out.str()};
}

VerbResult run_termination(const Workbench& wb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const auto in = interpretation(wb, o);
  const auto ev = termination_evidence(p, in ? &*in : nullptr, o.budget);
  json j{{"verb", "termination"}, {"polygraph", p.name()}, {"termination", termination_json(ev)}};
  return {ev.passed ? 0 : 1, o.format == Format::json ? render(j) : "polygraph " + p.name() + "\n" + termination_text(ev)};
}

VerbResult run_homotopy_basis(const Workbench& wb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const auto hb = homotopy_basis(p, enum_opts(o), o.budget);
  json cells = json::array(), failures = json::array();
  std::ostringstream out;
  out << p.name() << ": " << hb.cells.size() << " four-cell" << (hb.cells.size() == 1 ? "" : "s") << "\n";
  for (const auto& c : hb.cells) {
    cells.push_back(confluence_json(p, c));
    if (!c.diagram.joinable) {
      failures.push_back(c.name);
      out << "  " << c.name << "  " << pair_name(p, c.branching) << "  NOT JOINABLE\n";
      continue;
    }
    out << "  " << c.name << " : " << expr(p, c.branching.source) << "\n"
        << "    upper " << c.diagram.upper.steps.size() << " steps, lower " << c.diagram.lower.steps.size()
        << " steps, meeting at " << expr(p, trace_target(p, c.diagram.upper)) << "\n";
  }
  if (!hb.complete) out << "incomplete: " << failures.size() << " branching(s) failed local confluence\n";
  json j{{"verb", "homotopy-basis"}, {"polygraph", p.name()}, {"complete", hb.complete},
         {"cells", cells},         {"failures", failures}};
  return {hb.complete ? 0 : 1, o.format == Format::json ? render(j) : out.str()};
}

VerbResult run_decide(const Workbench& wb, std::string_view ta, std::string_view tb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const auto a = parse_trace(ta, p);
  const auto b = parse_trace(tb, p);
  std::string basis;
  if (!wb.builtin) {
    const auto in = interpretation(wb, o);
    const auto rep = asphericity_pipeline(p, in ? &*in : nullptr, enum_opts(o), o.budget);
    if (rep.verdict != PipelineVerdict::aspherical && rep.verdict != PipelineVerdict::aspherical_modulo_tietze)
      throw InputError("cannot decide over '" + p.name() + "': its convergence check ended with " +
                       std::string(to_string(rep.verdict)));
    basis = std::string(to_string(rep.verdict));
  }
  const auto rep = decide_coherence(wb.preset, a.trace, b.trace);
  json j{{"verb", "decide"},
         {"polygraph", p.name()},
         {"mode", to_string(rep.mode)},
         {"verdict", to_string(rep.verdict)},
         {"reason", rep.reason},
         {"first", trace_json(p, a.trace, a.name)},
         {"second", trace_json(p, b.trace, b.name)}};
  if (!basis.empty()) j["convergence"] = basis;
  std::ostringstream out;
  out << to_string(rep.verdict) << "\n" << rep.reason << "\n";
  if (rep.braid_first) {
    j["braid_first"] = print_braid(*rep.braid_first);
    j["braid_second"] = print_braid(*rep.braid_second);
    j["garside_first"] = print_garside(*rep.nf_first);
    j["garside_second"] = print_garside(*rep.nf_second);
    out << a.name << ": " << print_braid(*rep.braid_first) << "  nf " << print_garside(*rep.nf_first) << "\n"
        << b.name << ": " << print_braid(*rep.braid_second) << "  nf " << print_garside(*rep.nf_second) << "\n";
  }
  return {rep.verdict == CoherenceVerdict::equal ? 0 : 1, o.format == Format::json ? render(j) : out.str()};
}

VerbResult run_info(const Workbench& wb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  json gens = json::array(), rules = json::array();
  std::ostringstream out;
  out << p.name() << (wb.builtin ? " (preset)" : "") << ": " << wb.preset.description << "\n"
      << (p.signature.is_prop() ? "prop" : "pro") << ", decision mode " << to_string(wb.preset.mode) << "\n"
      << "generators:";
  for (const auto& g : p.signature.generators()) {
    gens.push_back({{"name", g.name}, {"arity", g.arity}, {"coarity", g.coarity}});
    out << " " << g.name << ":" << g.arity << "->" << g.coarity;
  }
  out << "\nrules:\n";
  for (const auto& r : p.rules) {
    rules.push_back(
        {{"name", r.name}, {"family", to_string(r.family)}, {"lhs", expr(p, r.lhs)}, {"rhs", expr(p, r.rhs)}});
    out << "  " << r.name << " [" << to_string(r.family) << "] : " << expr(p, r.lhs) << " => " << expr(p, r.rhs)
        << "\n";
  }
  json j{{"verb", "info"},
         {"polygraph", p.name()},
         {"builtin", wb.builtin},
         {"description", wb.preset.description},
         {"prop", p.signature.is_prop()},
         {"mode", to_string(wb.preset.mode)},
         {"generators", gens},
         {"rules", rules},
         {"aspherical_subrules", wb.preset.aspherical_subrules},
         {"has_interpretation", wb.preset.interpretation.has_value()},
         {"text", print_polygraph(p)}};
  return {0, o.format == Format::json ? render(j) : out.str()};
}

VerbResult run_export(const Workbench& wb, const VerbOptions& o) {
  const Polygraph& p = wb.preset.polygraph;
  const auto hb = homotopy_basis(p, enum_opts(o), o.budget);
  const auto gens = export_identity_generators(p, hb);
  json list = json::array();
  std::ostringstream out;
  std::size_t k = 0;
  for (const auto& c : hb.cells) {
    if (!c.diagram.joinable) continue;
    const auto& t = gens[k++];
    list.push_back(trace_json(p, t, c.name));
    out << print_trace(p, t, c.name) << "\n";
  }
  json j{{"verb", "export"}, {"polygraph", p.name()}, {"complete", hb.complete}, {"generators", list}};
  return {hb.complete ? 0 : 1, o.format == Format::json ? render(j) : out.str()};
}

Trace trace_from_json(const Polygraph& p, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    Trace t;
    t.source = parse_diagram(j.at("source").get<std::string>(), p.signature);
    t.congruence = j.at("congruence").get<std::string>() == "prop" ? Congruence::prop : Congruence::exchange_only;
    for (const auto& s : j.at("steps")) {
      const auto name = s.at("rule").get<std::string>();
      const auto rid = p.find_rule(name);
      if (!rid) throw InputError("unknown rule '" + name + "'");
      Step st;
      st.rule = *rid;
      st.direction = s.at("direction").get<std::string>() == "+" ? Direction::forward : Direction::backward;
      st.context.top = parse_diagram(s.at("top").get<std::string>(), p.signature);
      st.context.left = s.at("left").get<std::size_t>();
      st.context.right = s.at("right").get<std::size_t>();
      st.context.bottom = parse_diagram(s.at("bot").get<std::string>(), p.signature);
      t.steps.push_back(std::move(st));
    }
    validate_trace(p, t);
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed trace object: ") + e.what());
  }
}

}  // namespace polywb
