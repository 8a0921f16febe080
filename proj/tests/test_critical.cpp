#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "polywb/coherence.hpp"
#include "polywb/critical.hpp"

using namespace polywb;

namespace {

std::string pair_name(const Polygraph& p, const Branching& b) {
  return p.rule(b.first.rule).name + "/" + p.rule(b.second.rule).name;
}

std::set<std::string> sources(const Polygraph& p, const std::vector<Branching>& bs) {
  std::set<std::string> out;
  for (const auto& b : bs) out.insert(print_diagram(b.source, p.signature));
  return out;
}

std::string canon(const Polygraph& p, std::string_view e) {
  return print_diagram(parse_diagram(e, p.signature), p.signature);
}

std::map<BranchingFamily, std::size_t> tally(const Polygraph& p, const std::vector<Branching>& bs) {
  std::map<BranchingFamily, std::size_t> t;
  for (const auto& b : bs) ++t[classify_branching(p, b)];
  return t;
}

}  // namespace

TEST_CASE("symmetry construction") {
  Polygraph mon_sig;
  mon_sig.signature = Signature("m", {{"mu", 2, 1}, {"eta", 0, 1}});
  const auto s = s_construction(mon_sig);
  CHECK(s.signature.size() == 3);
  CHECK(s.rules.size() == 6);
  CHECK(s.s_constructed);
  Polygraph empty;
  empty.signature = Signature("e", {});
  CHECK(s_construction(empty).rules.size() == 2);
  CHECK(load_preset("sym_prime").polygraph.rules.size() == 11);
  CHECK_THROWS_AS(s_construction(s), InputError);
  Polygraph bad;
  bad.signature = Signature("b", {{"delta", 1, 2}});
  CHECK_THROWS_AS(s_construction(bad), InputError);

  const auto& sig = s.signature;
  const auto& nat_l = s.rule(*s.find_rule("nat_l_mu"));
  CHECK(print_diagram(nat_l.lhs, sig) == canon(s, "(mu * id 1) ; tau"));
  CHECK(print_diagram(nat_l.rhs, sig) == canon(s, "(id 1 * tau) ; (tau * id 1) ; (id 1 * mu)"));
  CHECK(print_diagram(s.rule(*s.find_rule("nat_r_eta")).rhs, sig) == canon(s, "eta * id 1"));
}

TEST_CASE("associativity has a single critical branching") {
  const auto p = load_preset("as").polygraph;
  const auto bs = enumerate_critical_branchings(p);
  REQUIRE(bs.size() == 1);
  CHECK(diagram_equal(bs[0].source, parse_diagram("(mu * id 2);(mu * id 1);mu", p.signature)));
  const auto cd = check_local_confluence(p, bs[0]);
  CHECK(cd.joinable);
  CHECK(cd.strict);
  std::multiset<std::size_t> lens{cd.upper.steps.size() - 1, cd.lower.steps.size() - 1};
  CHECK(lens == std::multiset<std::size_t>{1, 2});
  CHECK(parallel(p, cd.upper, cd.lower));

  const auto gens = export_identity_generators(p, homotopy_basis(p));
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].steps.size() == 5);
  CHECK(diagram_equal(gens[0].source, trace_target(p, gens[0])));
}

TEST_CASE("monoids have five critical branchings") {
  const auto p = load_preset("mon").polygraph;
  const auto bs = enumerate_critical_branchings(p);
  REQUIRE(bs.size() == 5);
  const std::set<std::string> want{
      canon(p, "(mu * id 2) ; (mu * id 1) ; mu"), canon(p, "(id 1 * eta * id 1) ; (mu * id 1) ; mu"),
      canon(p, "(eta * id 2) ; (mu * id 1) ; mu"), canon(p, "(mu * eta) ; mu"), canon(p, "(eta * eta) ; mu")};
  CHECK(sources(p, bs) == want);
  const auto hb = homotopy_basis(p);
  CHECK(hb.complete);
  CHECK(hb.cells.size() == 5);
  for (const auto& c : hb.cells) {
    CHECK(c.diagram.strict);
    CHECK(parallel(p, c.diagram.upper, c.diagram.lower));
    if (print_diagram(c.branching.source, p.signature) == canon(p, "(eta * eta) ; mu")) {
      CHECK(print_diagram(c.diagram.normal_first, p.signature) == "eta");
      CHECK(print_diagram(c.diagram.normal_second, p.signature) == "eta");
    }
  }
  for (const auto& t : export_identity_generators(p, hb))
    CHECK(diagram_equal(t.source, trace_target(p, t)));
  const auto beth = std::find_if(hb.cells.begin(), hb.cells.end(), [&](const HomotopyCell& c) {
    return print_diagram(c.branching.source, p.signature) == canon(p, "(id 1 * eta * id 1) ; (mu * id 1) ; mu");
  });
  REQUIRE(beth != hb.cells.end());
  CHECK(beth->diagram.upper.steps.size() + beth->diagram.lower.steps.size() == 3);
}

TEST_CASE("a constructed non-confluent system") {
  Polygraph p;
  p.signature = Signature("abc", {{"a", 0, 1}, {"b", 0, 1}, {"c", 0, 1}});
  p.rules.push_back(make_rule(p.signature, "ab", "a", "b"));
  p.rules.push_back(make_rule(p.signature, "ac", "a", "c"));
  const auto bs = enumerate_critical_branchings(p);
  REQUIRE(bs.size() == 1);
  const auto cd = check_local_confluence(p, bs[0]);
  CHECK_FALSE(cd.joinable);
  CHECK(print_diagram(cd.normal_first, p.signature) != print_diagram(cd.normal_second, p.signature));
  CHECK_FALSE(homotopy_basis(p).complete);
  CHECK(asphericity_pipeline(p, nullptr).verdict == PipelineVerdict::not_confluent);
  CHECK(homotopy_basis(Polygraph{p.signature, {}, false}).cells.empty());
}

TEST_CASE("permutations: five branchings of symmetry and Yang-Baxter") {
  const auto p = load_preset("perm").polygraph;
  const auto bs = enumerate_critical_branchings(p);
  CHECK(bs.size() == 5);
  for (const auto& b : bs) {
    CHECK(classify_branching(p, b) == BranchingFamily::sym_yb);
    CHECK(check_local_confluence(p, b).strict);
  }
  CHECK(sources(p, bs).count(canon(p, "tau ; tau ; tau")) == 1);
  std::size_t widest = 0;
  for (const auto& b : bs) widest = std::max(widest, b.source.max_width());
  CHECK(widest == 4);
}

TEST_CASE("emitted branchings are critical") {
  for (const auto* name : {"mon", "sym_prime"}) {
    const auto p = load_preset(name).polygraph;
    for (const auto& b : enumerate_critical_branchings(p)) {
      CAPTURE(pair_name(p, b));
      CHECK(diagram_equal(step_source(p, b.first), b.source));
      CHECK(diagram_equal(step_source(p, b.second), b.source));
      std::vector<std::uint32_t> inter, uni;
      std::set_intersection(b.first_occurrence.begin(), b.first_occurrence.end(), b.second_occurrence.begin(),
                            b.second_occurrence.end(), std::back_inserter(inter));
      std::set_union(b.first_occurrence.begin(), b.first_occurrence.end(), b.second_occurrence.begin(),
                     b.second_occurrence.end(), std::back_inserter(uni));
      CHECK_FALSE(inter.empty());
      for (std::uint32_t x = 0; x < b.source.size(); ++x)
        if (!std::binary_search(uni.begin(), uni.end(), x)) CHECK(p.signature.is_tau(b.source.slices()[x].gen));
      // No unused outer wire.
      bool left = false, right = false;
      for (std::size_t i = 0; i < b.source.size(); ++i) {
        const auto& s = b.source.slices()[i];
        left = left || s.offset == 0;
        right = right || s.offset + s.arity >= b.source.width_before(i);
      }
      CHECK((b.source.input_width() == 0 || (left && right)));
    }
  }
}

TEST_CASE("enumeration does not depend on rule order") {
  auto p = load_preset("mon").polygraph;
  auto names = [](const Polygraph& q) {
    std::set<std::pair<std::string, std::set<std::string>>> out;
    for (const auto& b : enumerate_critical_branchings(q))
      out.insert({print_diagram(b.source, q.signature), {q.rule(b.first.rule).name, q.rule(b.second.rule).name}});
    return out;
  };
  const auto before = names(p);
  std::reverse(p.rules.begin(), p.rules.end());
  CHECK(names(p) == before);
}

TEST_CASE("disjoint redexes commute") {
  const auto p = load_preset("as").polygraph;
  const auto d = parse_diagram("((mu * id 1) ; mu) * ((mu * id 1) ; mu)", p.signature);
  const auto ms = find_matches(d, p.rules[0].lhs);
  REQUIRE(ms.size() == 2);
  const Step a{0, Direction::forward, ms[0].context}, b{0, Direction::forward, ms[1].context};
  const auto da = apply_step(p, d, a), db = apply_step(p, d, b);
  const auto mb = find_matches(da, p.rules[0].lhs), ma = find_matches(db, p.rules[0].lhs);
  REQUIRE(mb.size() == 1);
  REQUIRE(ma.size() == 1);
  CHECK(diagram_equal(apply_step(p, da, Step{0, Direction::forward, mb[0].context}),
                      apply_step(p, db, Step{0, Direction::forward, ma[0].context})));
}

TEST_CASE("classification on the commutative presentation") {
  const auto p = load_preset("sym_prime").polygraph;
  const auto bs = enumerate_critical_branchings(p);
  const auto t = tally(p, bs);
  CHECK(t.at(BranchingFamily::sym_yb) == 5);
  CHECK(t.at(BranchingFamily::naturality_vs_sym) == 10);
  CHECK(t.at(BranchingFamily::left_vs_right_naturality) == 4);
  CHECK(t.at(BranchingFamily::algebraic_vs_naturality) == 10);

  auto family_of = [&](std::string_view src, std::string_view pair) {
    for (const auto& b : bs)
      if (print_diagram(b.source, p.signature) == canon(p, src) && pair_name(p, b) == pair)
        return std::optional(classify_branching(p, b));
    return std::optional<BranchingFamily>();
  };
  CHECK(family_of("tau ; tau ; tau", "sym/sym") == BranchingFamily::sym_yb);
  CHECK(family_of("(id 1 * tau) ; (id 1 * mu) ; tau", "beta/nat_r_mu") == BranchingFamily::algebraic_vs_naturality);
  CHECK(family_of("(tau * id 1) ; (mu * id 1) ; mu", "beta/alpha") == BranchingFamily::proper);
  // Every critical source among the displayed proper 4-cells is proper.
  for (auto [src, pair] : std::vector<std::pair<const char*, const char*>>{
           {"(mu * id 2) ; (mu * id 1) ; mu", "alpha/alpha"},
           {"(id 1 * eta * id 1) ; (mu * id 1) ; mu", "rho/alpha"},
           {"tau ; tau ; mu", "sym/beta"},
           {"(tau * id 1) ; (id 1 * tau) ; (tau * id 1) ; (mu * id 1)", "yb/beta"},
           {"(eta * id 1) ; tau ; mu", "nat_l_eta/beta"},
           {"(id 1 * eta) ; tau ; mu", "nat_r_eta/beta"},
           {"(mu * id 1) ; tau ; mu", "nat_l_mu/beta"},
           {"(id 1 * mu) ; tau ; mu", "nat_r_mu/beta"}}) {
    CAPTURE(src);
    CHECK(family_of(src, pair) == BranchingFamily::proper);
  }
  CHECK_THROWS_AS(classify_branching(load_preset("mon").polygraph, enumerate_critical_branchings(load_preset("mon").polygraph)[0]),
                  InputError);
}

TEST_CASE("confluence modulo the structural rules") {
  const auto p = load_preset("sym_prime").polygraph;
  const auto bs = enumerate_critical_branchings(p);
  std::size_t modulo = 0;
  for (const auto& b : bs) {
    const auto cd = check_local_confluence(p, b);
    CAPTURE(pair_name(p, b));
    REQUIRE(cd.joinable);
    validate_trace(p, cd.upper);
    validate_trace(p, cd.lower);
    CHECK(parallel(p, cd.upper, cd.lower));
    if (!cd.strict) {
      ++modulo;
      CHECK(cd.lower.congruence == Congruence::prop);
    }
  }
  CHECK(modulo == 4);

  const auto yb = std::find_if(bs.begin(), bs.end(), [&](const Branching& b) { return pair_name(p, b) == "yb/beta"; });
  REQUIRE(yb != bs.end());
  const auto cd = check_local_confluence(p, *yb);
  CHECK_FALSE(cd.strict);
  CHECK(print_diagram(cd.normal_first, p.signature) != print_diagram(cd.normal_second, p.signature));
  CHECK_FALSE(bridge_modulo_structure(load_preset("mon").polygraph, identity(1), identity(1)).has_value());
}

TEST_CASE("without gamma the commutative presentation does not close") {
  const auto p = load_preset("sym").polygraph;
  std::set<std::string> failing;
  for (const auto& b : enumerate_critical_branchings(p))
    if (!check_local_confluence(p, b).joinable) failing.insert(pair_name(p, b));
  CHECK(failing == std::set<std::string>{"beta/alpha", "nat_r_mu/beta"});
}

TEST_CASE("pipeline verdicts") {
  const auto as = load_preset("as");
  CHECK(asphericity_pipeline(as.polygraph, &*as.interpretation).verdict == PipelineVerdict::aspherical);
  const auto mon = load_preset("mon");
  const auto rep = asphericity_pipeline(mon.polygraph, &*mon.interpretation);
  CHECK(rep.verdict == PipelineVerdict::aspherical);
  CHECK(rep.termination.method == "interpretation");
  CHECK(rep.confluent == 5);

  const auto sp = asphericity_pipeline(load_preset("sym_prime").polygraph, nullptr);
  CHECK(sp.verdict == PipelineVerdict::aspherical_modulo_tietze);
  CHECK(sp.termination.method == "bounded-normalisation");
  CHECK(sp.termination.passed);
  CHECK_FALSE(sp.obligation.empty());
  CHECK(sp.proper.size() >= 10);

  auto reversed = mon.polygraph;
  std::swap(reversed.rules[0].lhs, reversed.rules[0].rhs);
  CHECK(asphericity_pipeline(reversed, &*mon.interpretation).verdict == PipelineVerdict::termination_failed);
}
