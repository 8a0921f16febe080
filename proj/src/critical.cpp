#include "polywb/critical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace polywb {

std::string_view to_string(BranchingFamily f) {
  switch (f) {
    case BranchingFamily::sym_yb: return "sym_yb";
    case BranchingFamily::naturality_vs_sym: return "naturality_vs_sym";
    case BranchingFamily::left_vs_right_naturality: return "left_vs_right_naturality";
    case BranchingFamily::algebraic_vs_naturality: return "algebraic_vs_naturality";
    case BranchingFamily::proper: return "proper";
  }
  return "?";
}

std::string_view to_string(PipelineVerdict v) {
  switch (v) {
    case PipelineVerdict::aspherical: return "aspherical";
    case PipelineVerdict::aspherical_modulo_tietze: return "aspherical_modulo_tietze";
    case PipelineVerdict::not_confluent: return "not_confluent";
    case PipelineVerdict::termination_failed: return "termination_failed";
  }
  return "?";
}

Diagram tau_block_over_one(const Signature& sig, std::size_t n) {
  const GenId t = *sig.tau();
  Diagram d = identity(1);
  for (std::size_t k = 0; k < n; ++k)
    d = vcomp(whisker(k, Diagram::generator(sig, t), 0), whisker(0, d, 1));
  return canonical_form(d);
}

Diagram tau_one_over_block(const Signature& sig, std::size_t n) {
  const GenId t = *sig.tau();
  Diagram d = identity(1);
  for (std::size_t k = 0; k < n; ++k) d = vcomp(whisker(0, Diagram::generator(sig, t), k), whisker(1, d, 0));
  return canonical_form(d);
}

Polygraph s_construction(const Polygraph& p) {
  if (p.signature.is_prop()) throw InputError("polygraph is already a prop presentation");
  for (const auto& g : p.signature.generators())
    if (g.coarity != 1) throw InputError("generator '" + g.name + "' is not algebraic (coarity must be 1)");
  for (const auto& r : p.rules)
    if (r.lhs.output_width() != 1) throw InputError("rule '" + r.name + "' is not algebraic");
  Polygraph out;
  out.signature = p.signature.with_symmetry();
  out.s_constructed = true;
  const auto& sig = out.signature;
  const GenId t = *sig.tau();
  const Diagram tau = Diagram::generator(sig, t);
  auto structural = [&](std::string name, Diagram lhs, Diagram rhs, RuleFamily fam) {
    Rule r;
    r.name = std::move(name);
    r.lhs = canonical_form(lhs);
    r.rhs = canonical_form(rhs);
    r.family = fam;
    return r;
  };
  out.rules.push_back(structural("sym", vcomp(tau, tau), identity(2), RuleFamily::symmetry));
  const Diagram t1 = whisker(0, tau, 1), t2 = whisker(1, tau, 0);
  out.rules.push_back(
      structural("yb", vcomp(vcomp(t1, t2), t1), vcomp(vcomp(t2, t1), t2), RuleFamily::yang_baxter));
  for (GenId g = 0; g < p.signature.size(); ++g) {
    const auto& gs = sig.at(g);
    const Diagram f = Diagram::generator(sig, g);
    Rule l = structural("nat_l_" + gs.name, vcomp(whisker(0, f, 1), tau_block_over_one(sig, gs.coarity)),
                        vcomp(tau_block_over_one(sig, gs.arity), whisker(1, f, 0)), RuleFamily::naturality);
    l.side = NaturalitySide::left;
    l.subject = g;
    Rule r = structural("nat_r_" + gs.name, vcomp(whisker(1, f, 0), tau_one_over_block(sig, gs.coarity)),
                        vcomp(tau_one_over_block(sig, gs.arity), whisker(0, f, 1)), RuleFamily::naturality);
    r.side = NaturalitySide::right;
    r.subject = g;
    out.rules.push_back(std::move(l));
    out.rules.push_back(std::move(r));
  }
  for (const auto& r : p.rules) out.rules.push_back(r);
  out.validate();
  return out;
}

Polygraph with_rules(Polygraph p, std::vector<Rule> rules) {
  for (auto& r : rules) {
    r.lhs = canonical_form(r.lhs);
    r.rhs = canonical_form(r.rhs);
    p.rules.push_back(std::move(r));
  }
  p.validate();
  return p;
}

namespace {

std::string key_of(const Diagram& d) {
  std::string k = std::to_string(d.input_width()) + ":";
  for (const auto& s : d.slices()) k += std::to_string(s.gen) + "@" + std::to_string(s.offset) + ",";
  return k;
}

bool trimmable(const Diagram& d) {
  if (d.input_width() == 0) return false;
  bool left = true, right = true;
  std::size_t w = d.input_width();
  for (const auto& s : d.slices()) {
    if (s.offset == 0) left = false;
    if (s.offset + s.arity >= w) right = false;
    w = w - s.arity + s.coarity;
  }
  return left || right;
}

using Occ = std::vector<std::uint32_t>;

struct PairKey {
  std::string source;
  std::size_t rule_a;
  Occ occ_a;
  std::size_t rule_b;
  Occ occ_b;
  auto operator<=>(const PairKey&) const = default;
};

class Enumerator {
 public:
  Enumerator(const Polygraph& p, const EnumerationOptions& opts) : p_(p), opts_(opts) {
    for (const auto& r : p.rules) lhs_.push_back(r.lhs);
  }

  std::vector<Branching> run() {
    for (std::size_t i = 0; i < p_.rules.size(); ++i)
      for (std::size_t j = i; j < p_.rules.size(); ++j) pair(i, j);
    std::vector<Branching> out;
    out.reserve(found_.size());
    for (auto& [k, b] : found_) out.push_back(std::move(b));
    std::stable_sort(out.begin(), out.end(), [](const Branching& a, const Branching& b) {
      return std::tie(a.first.rule, a.second.rule) < std::tie(b.first.rule, b.second.rule);
    });
    return out;
  }

 private:
  void pair(std::size_t i, std::size_t j) {
    // Place the larger source and grow around it with slices of the other.
    std::size_t base = i, other = j;
    if (lhs_[j].size() > lhs_[i].size()) std::swap(base, other);
    const Diagram& b = lhs_[base];
    const Diagram& o = lhs_[other];
    width_ = std::max(b.max_width(), o.max_width()) + opts_.max_extra_width;
    budget_.assign(p_.signature.size(), 0);
    for (const auto& s : o.slices()) ++budget_[s.gen];
    rules_ = {i, j};
    seen_states_.clear();
    seen_candidates_.clear();
    for (std::size_t l = 0; l + b.max_width() <= width_; ++l)
      for (std::size_t r = 0; l + r + b.max_width() <= width_; ++r)
        grow(whisker(l, b, r), o.size() - 1, opts_.max_trapped);
  }

  void grow(const Diagram& d, std::size_t owned_left, std::size_t trapped_left) {
    const Diagram c = canonical_form(d);
    std::string state = key_of(c) + "|" + std::to_string(owned_left) + "/" + std::to_string(trapped_left);
    for (auto v : budget_) state += "," + std::to_string(v);
    if (!seen_states_.insert(state).second) return;
    if (seen_candidates_.insert(key_of(c)).second) analyse(c);
    for (GenId g = 0; g < p_.signature.size(); ++g) {
      const bool owned = owned_left > 0 && budget_[g] > 0;
      if (!owned && trapped_left == 0) continue;
      if (owned) --budget_[g];
      const std::size_t ol = owned ? owned_left - 1 : owned_left;
      const std::size_t tl = owned ? trapped_left : trapped_left - 1;
      const auto& gs = p_.signature.at(g);
      for (std::size_t o = 0; o + gs.coarity <= d.input_width(); ++o) {
        std::vector<Slice> sl{make_slice(p_.signature, g, o)};
        sl.insert(sl.end(), d.slices().begin(), d.slices().end());
        Diagram nd(d.input_width() - gs.coarity + gs.arity, std::move(sl));
        if (nd.max_width() <= width_) grow(nd, ol, tl);
      }
      for (std::size_t o = 0; o + gs.arity <= d.output_width(); ++o) {
        std::vector<Slice> sl(d.slices().begin(), d.slices().end());
        sl.push_back(make_slice(p_.signature, g, o));
        Diagram nd(d.input_width(), std::move(sl));
        if (nd.max_width() <= width_) grow(nd, ol, tl);
      }
      if (owned) ++budget_[g];
    }
  }

  void analyse(const Diagram& d) {
    if (trimmable(d)) return;
    const auto [i, j] = rules_;
    std::vector<Diagram> pats{lhs_[i], lhs_[j]};
    auto ms = find_matches(d, pats);
    if (ms[0].empty() || ms[1].empty()) return;
    const std::size_t n = d.size();
    std::optional<std::vector<std::vector<bool>>> before;
    std::optional<std::vector<std::vector<Match>>> all;
    for (const auto& m1 : ms[0]) {
      for (const auto& m2 : ms[1]) {
        if (i == j && m1.occurrence >= m2.occurrence) continue;
        Occ inter, uni;
        std::set_intersection(m1.occurrence.begin(), m1.occurrence.end(), m2.occurrence.begin(),
                              m2.occurrence.end(), std::back_inserter(inter));
        if (inter.empty()) continue;
        std::set_union(m1.occurrence.begin(), m1.occurrence.end(), m2.occurrence.begin(), m2.occurrence.end(),
                       std::back_inserter(uni));
        if (uni.size() + opts_.max_trapped < n) continue;
        std::vector<bool> in(n, false);
        for (auto x : uni) in[x] = true;
        Occ trapped;
        for (std::uint32_t x = 0; x < n; ++x)
          if (!in[x]) trapped.push_back(x);
        if (!trapped.empty()) {
          if (!before) before = exchange::precedence(d);
          bool hull = true;
          for (auto x : trapped) {
            bool above = false, below = false;
            for (auto u : uni) {
              above = above || (*before)[u][x];
              below = below || (*before)[x][u];
            }
            hull = hull && above && below;
          }
          if (!hull) continue;
          if (!all) all = find_matches(d, lhs_);
          bool reducible = false;
          for (const auto& rm : *all)
            for (const auto& m : rm)
              reducible = reducible || std::includes(trapped.begin(), trapped.end(), m.occurrence.begin(),
                                                     m.occurrence.end());
          if (reducible) continue;
          if (opts_.trapped_symmetry_only) {
            const auto tau = p_.signature.tau();
            bool structural = true;
            for (auto x : trapped) structural = structural && tau && d.slices()[x].gen == *tau;
            if (!structural) continue;
          }
        }
        record(d, i, m1, j, m2);
      }
    }
  }

  void record(const Diagram& d, std::size_t ra, const Match& ma, std::size_t rb, const Match& mb) {
    const Match* a = &ma;
    const Match* b = &mb;
    if (std::tie(b->occurrence, rb) < std::tie(a->occurrence, ra)) {
      std::swap(a, b);
      std::swap(ra, rb);
    }
    PairKey key{key_of(d), ra, a->occurrence, rb, b->occurrence};
    if (found_.count(key)) return;
    Branching br;
    br.source = d;
    br.first = Step{ra, Direction::forward, a->context};
    br.second = Step{rb, Direction::forward, b->context};
    br.first_occurrence = a->occurrence;
    br.second_occurrence = b->occurrence;
    found_.emplace(std::move(key), std::move(br));
  }

  const Polygraph& p_;
  EnumerationOptions opts_;
  std::vector<Diagram> lhs_;
  std::size_t width_ = 0;
  std::vector<std::size_t> budget_;
  std::pair<std::size_t, std::size_t> rules_;
  std::unordered_set<std::string> seen_states_;
  std::unordered_set<std::string> seen_candidates_;
  std::map<PairKey, Branching> found_;
};

}  // namespace

std::vector<Branching> enumerate_critical_branchings(const Polygraph& p, const EnumerationOptions& opts) {
  p.validate();
  return Enumerator(p, opts).run();
}

std::optional<Trace> bridge_modulo_structure(const Polygraph& p, const Diagram& from, const Diagram& to,
                                             std::size_t budget, std::size_t class_limit) {
  if (!p.s_constructed) return std::nullopt;
  // Explore the structural class of `from` with structural rules in both
  // directions, looking for an algebraic step whose target normalises to `to`.
  std::vector<std::pair<std::size_t, Direction>> moves;
  std::vector<Diagram> patterns;
  std::vector<std::size_t> algebraic;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    if (r.family == RuleFamily::algebraic) {
      algebraic.push_back(i);
      continue;
    }
    moves.push_back({i, Direction::forward});
    patterns.push_back(r.lhs);
    if (!r.rhs.is_identity()) {
      moves.push_back({i, Direction::backward});
      patterns.push_back(r.rhs);
    }
  }
  std::vector<Diagram> alg_patterns;
  for (auto i : algebraic) alg_patterns.push_back(p.rules[i].lhs);
  std::unordered_set<std::string> seen{key_of(canonical_form(from))};
  std::vector<Diagram> queue{canonical_form(from)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Diagram x = queue[head];
    const auto alg = find_matches(x, alg_patterns);
    for (std::size_t a = 0; a < algebraic.size(); ++a)
      for (const auto& m : alg[a]) {
        const Step st{algebraic[a], Direction::forward, m.context};
        try {
          auto n = normalize(step_target(p, st), p, budget);
          if (!diagram_equal(n.normal_form, to)) continue;
          Trace t{from, {st}, Congruence::prop};
          t.steps.insert(t.steps.end(), n.trace.steps.begin(), n.trace.steps.end());
          return t;
        } catch (const BudgetExceeded&) {
        }
      }
    const auto ms = find_matches(x, patterns);
    for (std::size_t k = 0; k < moves.size(); ++k)
      for (const auto& m : ms[k]) {
        Diagram y = canonical_form(step_target(p, Step{moves[k].first, moves[k].second, m.context}));
        if (!seen.insert(key_of(y)).second) continue;
        if (queue.size() >= class_limit) return std::nullopt;
        queue.push_back(std::move(y));
      }
  }
  return std::nullopt;
}

ConfluenceDiagram check_local_confluence(const Polygraph& p, const Branching& b, std::size_t budget) {
  ConfluenceDiagram cd;
  cd.target_first = canonical_form(step_target(p, b.first));
  cd.target_second = canonical_form(step_target(p, b.second));
  cd.upper = Trace{b.source, {b.first}, Congruence::exchange_only};
  cd.lower = Trace{b.source, {b.second}, Congruence::exchange_only};
  try {
    auto n1 = normalize(cd.target_first, p, budget);
    auto n2 = normalize(cd.target_second, p, budget);
    cd.normal_first = n1.normal_form;
    cd.normal_second = n2.normal_form;
    cd.upper.steps.insert(cd.upper.steps.end(), n1.trace.steps.begin(), n1.trace.steps.end());
    cd.lower.steps.insert(cd.lower.steps.end(), n2.trace.steps.begin(), n2.trace.steps.end());
    cd.strict = cd.joinable = diagram_equal(n1.normal_form, n2.normal_form);
    if (cd.joinable) return cd;
    // Distinct normal forms may still meet once a step is allowed to act on
    // a structurally equivalent representative.
    auto close = [&](Trace& leg, const Diagram& from, const Diagram& to) {
      auto br = bridge_modulo_structure(p, from, to, budget);
      if (!br) return false;
      leg.steps.insert(leg.steps.end(), br->steps.begin(), br->steps.end());
      cd.upper.congruence = cd.lower.congruence = Congruence::prop;
      return true;
    };
    cd.joinable = close(cd.lower, n2.normal_form, n1.normal_form) || close(cd.upper, n1.normal_form, n2.normal_form);
    if (!cd.joinable) cd.failure = "distinct normal forms";
  } catch (const BudgetExceeded& e) {
    cd.joinable = false;
    cd.failure = e.what();
  }
  return cd;
}

BranchingFamily classify_branching(const Polygraph& p, const Branching& b) {
  if (!p.s_constructed) throw InputError("classification needs a presentation built by the symmetry construction");
  const Rule& ra = p.rule(b.first.rule);
  const Rule& rb = p.rule(b.second.rule);
  auto structural = [](const Rule& r) {
    return r.family == RuleFamily::symmetry || r.family == RuleFamily::yang_baxter;
  };
  const bool na = ra.family == RuleFamily::naturality, nb = rb.family == RuleFamily::naturality;
  if (structural(ra) && structural(rb)) return BranchingFamily::sym_yb;
  if ((na && structural(rb)) || (nb && structural(ra))) return BranchingFamily::naturality_vs_sym;
  if (na && nb) return ra.side != rb.side ? BranchingFamily::left_vs_right_naturality : BranchingFamily::proper;
  if (na || nb) {
    const bool alg = na ? rb.family == RuleFamily::algebraic : ra.family == RuleFamily::algebraic;
    if (!alg) return BranchingFamily::proper;
    const auto& nat_occ = na ? b.first_occurrence : b.second_occurrence;
    const auto& alg_occ = na ? b.second_occurrence : b.first_occurrence;
    const auto tau = p.signature.tau();
    for (auto x : nat_occ)
      if (b.source.slices()[x].gen == tau && std::binary_search(alg_occ.begin(), alg_occ.end(), x))
        return BranchingFamily::proper;
    return BranchingFamily::algebraic_vs_naturality;
  }
  return BranchingFamily::proper;
}

HomotopyBasis homotopy_basis(const Polygraph& p, const std::vector<Branching>& branchings, std::size_t budget) {
  HomotopyBasis hb;
  std::size_t k = 0;
  for (const auto& b : branchings) {
    HomotopyCell cell;
    cell.name = "c" + std::to_string(++k);
    cell.branching = b;
    cell.diagram = check_local_confluence(p, b, budget);
    hb.complete = hb.complete && cell.diagram.joinable;
    hb.cells.push_back(std::move(cell));
  }
  return hb;
}

HomotopyBasis homotopy_basis(const Polygraph& p, const EnumerationOptions& opts, std::size_t budget) {
  return homotopy_basis(p, enumerate_critical_branchings(p, opts), budget);
}

std::vector<Trace> export_identity_generators(const Polygraph& p, const HomotopyBasis& basis) {
  std::vector<Trace> out;
  for (const auto& c : basis.cells) {
    if (!c.diagram.joinable) continue;
    out.push_back(compose_traces(p, c.diagram.upper, invert_trace(p, c.diagram.lower)));
  }
  return out;
}

TerminationEvidence termination_evidence(const Polygraph& p, const Interpretation* interp, std::size_t budget,
                                         const std::vector<Diagram>& probes) {
  TerminationEvidence ev;
  if (interp) {
    ev.method = "interpretation";
    ev.report = check_decrease(p, *interp);
    ev.passed = ev.report->passed;
    ev.detail = ev.passed ? "grid certificate passed (evidence, not proof)" : "grid certificate failed";
    return ev;
  }
  ev.method = "bounded-normalisation";
  ev.passed = true;
  std::vector<const Diagram*> all;
  for (const auto& r : p.rules) all.push_back(&r.lhs);
  for (const auto& d : probes) all.push_back(&d);
  for (const auto* d : all) {
    try {
      ev.longest_normalisation = std::max(ev.longest_normalisation, normalize(*d, p, budget).trace.steps.size());
    } catch (const BudgetExceeded& e) {
      ev.passed = false;
      ev.detail = e.what();
      return ev;
    }
  }
  ev.detail = "all probes normalised within the budget (evidence, not proof)";
  return ev;
}

PipelineReport asphericity_pipeline(const Polygraph& p, const Interpretation* interp,
                                    const EnumerationOptions& opts, std::size_t budget) {
  PipelineReport rep;
  rep.polygraph = p.name();
  rep.branchings = enumerate_critical_branchings(p, opts);
  std::vector<Diagram> probes;
  for (const auto& b : rep.branchings) probes.push_back(b.source);
  rep.termination = termination_evidence(p, interp, budget, probes);
  if (!rep.termination.passed) {
    rep.verdict = PipelineVerdict::termination_failed;
    return rep;
  }
  rep.basis = homotopy_basis(p, rep.branchings, budget);
  for (std::size_t i = 0; i < rep.basis.cells.size(); ++i) {
    const auto& c = rep.basis.cells[i];
    rep.confluent += c.diagram.joinable;
    rep.strictly_confluent += c.diagram.strict;
    if (p.s_constructed && classify_branching(p, c.branching) == BranchingFamily::proper) rep.proper.push_back(i);
  }
  if (!rep.basis.complete) {
    rep.verdict = PipelineVerdict::not_confluent;
  } else if (p.s_constructed) {
    rep.verdict = PipelineVerdict::aspherical_modulo_tietze;
    rep.obligation = "Tietze equivalence of the " + std::to_string(rep.proper.size()) +
                     " proper confluence diagrams with the intended 4-cells is not machine-checked";
  } else {
    rep.verdict = PipelineVerdict::aspherical;
  }
  return rep;
}

}  // namespace polywb
