#include "doctest.h"
#include "json.hpp"
#include "polywb/io.hpp"
#include "polywb/verbs.hpp"

using namespace polywb;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return read_file(std::string(POLYWB_TEST_DATA) + "/" + name); }

VerbOptions as_json() {
  VerbOptions o;
  o.format = Format::json;
  return o;
}

}  // namespace

TEST_CASE("polygraph files") {
  const auto p = parse_polygraph(data("monoid.pg"), "monoid");
  CHECK(p.name() == "monoid");
  CHECK(p.rules.size() == 3);
  CHECK_FALSE(p.signature.is_prop());
  const auto again = parse_polygraph(print_polygraph(p), "monoid");
  REQUIRE(again.rules.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(again.rules[i].name == p.rules[i].name);
    CHECK(diagram_equal(again.rules[i].lhs, p.rules[i].lhs));
    CHECK(diagram_equal(again.rules[i].rhs, p.rules[i].rhs));
  }

  const auto c = parse_polygraph(data("commutative.pg"), "c");
  CHECK(c.s_constructed);
  CHECK(c.rules.size() == 11);
  CHECK(parse_polygraph(print_polygraph(c), "c").rules.size() == 11);
}

TEST_CASE("polygraph file errors") {
  const std::string bad = data("bad.pg");
  try {
    parse_polygraph(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    const auto line2 = bad.substr(bad.find('\n') + 1);
    CHECK(e.column() == line2.find("nu") + 1);
  }
  CHECK_THROWS_AS(parse_polygraph("gen mu : 2 -> 1\ngen mu : 1 -> 1\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("gen tau : 2 -> 2\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("gen mu : 2 => 1\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("frobnicate\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("gen mu : 2 -> 1\nrule a : mu => id 2\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("gen mu : 2 -> 1\nrule a : id 1 => id 1\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("gen mu : 2 -> 1\nrule a : mu => mu\nrule a : mu => mu\n"), InputError);
  CHECK_THROWS_AS(parse_polygraph("gen mu : 2 -> 1\nprop\n"), ParseError);
  CHECK_THROWS_AS(parse_polygraph("prop\ngen d : 1 -> 2\n"), InputError);
}

TEST_CASE("trace files") {
  const auto br = load_preset("br").polygraph;
  const auto t = parse_trace(data("daleth_lower.tr"), br);
  CHECK(t.name == "daleth_lower");
  CHECK(t.trace.steps.size() == 3);
  CHECK(t.trace.congruence == Congruence::prop);
  const auto again = parse_trace(print_trace(br, t.trace, t.name), br);
  CHECK(again.name == t.name);
  CHECK(same_steps(again.trace, t.trace));
  CHECK(diagram_equal(again.trace.source, t.trace.source));

  CHECK_THROWS_AS(parse_trace("", br), ParseError);
  CHECK_THROWS_AS(parse_trace("trace t on mu\nstep nope + top=id 2 left=0 right=0 bot=id 1\n", br), ParseError);
  CHECK_THROWS_AS(parse_trace("trace t on mu\nstep beta * top=id 2 left=0 right=0 bot=id 1\n", br), ParseError);
  CHECK_THROWS_AS(parse_trace("trace t on mu\nstep beta + top=id 2 left=x right=0 bot=id 1\n", br), ParseError);
  // Well-formed step that does not chain with the source.
  CHECK_THROWS_AS(parse_trace("trace t on mu\nstep beta + top=id 2 left=0 right=0 bot=id 1\n", br), InputError);
  try {
    parse_trace("trace t on mu\nstep beta + top=id 2 left=0 right=0 bot=nu\n", br);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 41);
  }
}

TEST_CASE("verb statuses") {
  const auto as = open_preset("as");
  CHECK(run_normalize(as, "(mu * id 1) ; mu", {}).output == "(id 1 * mu) ; mu\n1 step\n");
  CHECK(run_critical(open_preset("mon"), {}).status == 0);
  CHECK(run_confluence(open_preset("mon"), {}).status == 0);
  CHECK(run_confluence(open_preset("sym"), {}).status == 1);
  CHECK(run_homotopy_basis(open_preset("sym"), {}).status == 1);
  CHECK(run_termination(open_preset("mon"), {}).status == 0);

  auto file = open_polygraph(data("monoid.pg"), "monoid");
  CHECK_FALSE(file.builtin);
  VerbOptions o;
  o.interpretation = data("monoid.interp");
  CHECK(run_termination(file, o).status == 0);
  o.interpretation = data("reversed.interp");
  CHECK(run_termination(file, o).status == 1);
  CHECK(run_confluence(file, o).status == 1);
  o.bound = 0;
  CHECK_THROWS_AS(run_termination(open_preset("mon"), o), InputError);

  const auto loop = open_polygraph(data("loop.pg"), "loop");
  VerbOptions small;
  small.budget = 20;
  CHECK(run_normalize(loop, "(mu * id 1) ; mu", small).status == 1);
  CHECK_THROWS_AS(run_normalize(as, "(mu * id 1) ; nu", {}), ParseError);

  const auto br = open_preset("br");
  CHECK(run_decide(br, data("beta.tr"), data("beta_inverse.tr"), {}).status == 1);
  CHECK(run_decide(br, data("daleth_upper.tr"), data("daleth_lower.tr"), {}).status == 0);
  CHECK(run_decide(br, data("beta.tr"), data("daleth_lower.tr"), {}).status == 1);

  const auto comm = open_polygraph(data("commutative.pg"), "commutative");
  CHECK(run_decide(comm, data("beta.tr"), data("beta_inverse.tr"), {}).status == 0);
  const auto sym = open_polygraph(print_polygraph(load_preset("sym").polygraph), "sym_file");
  CHECK_THROWS_AS(run_decide(sym, data("beta.tr"), data("beta_inverse.tr"), {}), InputError);
}

TEST_CASE("json reports round-trip their payloads") {
  const auto mon = open_preset("mon");
  const auto& p = mon.preset.polygraph;
  const auto n = json::parse(run_normalize(mon, "(mu * id 2) ; (mu * id 1) ; mu", as_json()).output);
  // The first match is the upper alpha, so the long leg of the pentagon is taken.
  CHECK(n["steps"] == 3);
  CHECK(n["trace"]["steps"].size() == 3);
  const auto t = trace_from_json(p, n["trace"].dump());
  CHECK(diagram_equal(t.source, parse_diagram("(mu * id 2) ; (mu * id 1) ; mu", p.signature)));
  CHECK(print_diagram(trace_target(p, t), p.signature) == n["normal_form"]["expr"]);
  CHECK(same_steps(parse_trace(n["trace"]["text"].get<std::string>(), p).trace, t));

  const auto c = json::parse(run_critical(mon, as_json()).output);
  CHECK(c["count"] == 5);
  for (const auto& b : c["branchings"]) {
    const auto src = parse_diagram(b["source"]["expr"].get<std::string>(), p.signature);
    CHECK(print_diagram(src, p.signature) == b["source"]["expr"]);
  }

  const auto sp = open_preset("sym_prime");
  const auto& q = sp.preset.polygraph;
  const auto conf = json::parse(run_confluence(sp, as_json()).output);
  CHECK(conf["verdict"] == "aspherical_modulo_tietze");
  CHECK(conf.contains("obligation"));
  CHECK(conf["termination"]["method"] == "bounded-normalisation");
  for (const auto& cell : conf["diagrams"]) {
    const auto up = trace_from_json(q, cell["upper"].dump());
    const auto low = trace_from_json(q, cell["lower"].dump());
    CHECK(parallel(q, up, low));
  }

  const auto dec = json::parse(run_decide(open_preset("br"), data("beta.tr"), data("beta_inverse.tr"), as_json()).output);
  CHECK(dec["verdict"] == "NotEqual");
  CHECK(dec["braid_first"] == "s1");
  CHECK(dec["braid_second"] == "s1^-1");

  const auto info = json::parse(run_info(sp, as_json()).output);
  CHECK(info["rules"].size() == 11);
  const auto ex = json::parse(run_export(mon, as_json()).output);
  CHECK(ex["generators"].size() == 5);
  for (const auto& g : ex["generators"]) CHECK(g["source"] == g["target"]);

  CHECK_THROWS_AS(trace_from_json(p, "{\"source\": 3}"), InputError);
}
