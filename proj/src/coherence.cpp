#include "polywb/coherence.hpp"

#include <algorithm>

namespace polywb {

std::string_view to_string(DecisionMode m) { return m == DecisionMode::braided ? "braided" : "aspherical"; }

std::string_view to_string(CoherenceVerdict v) {
  switch (v) {
    case CoherenceVerdict::equal: return "Equal";
    case CoherenceVerdict::not_equal: return "NotEqual";
    case CoherenceVerdict::not_parallel: return "NotParallel";
  }
  return "?";
}

namespace {

Polygraph algebraic(std::string name, bool unit) {
  std::vector<GeneratorSym> gens{{"mu", 2, 1}};
  if (unit) gens.push_back({"eta", 0, 1});
  Polygraph p;
  p.signature = Signature(std::move(name), std::move(gens));
  p.rules.push_back(make_rule(p.signature, "alpha", "(mu * id 1) ; mu", "(id 1 * mu) ; mu"));
  if (unit) {
    p.rules.push_back(make_rule(p.signature, "lambda", "(eta * id 1) ; mu", "id 1"));
    p.rules.push_back(make_rule(p.signature, "rho", "(id 1 * eta) ; mu", "id 1"));
  }
  return p;
}

Interpretation monoid_interpretation(std::string polygraph, bool unit) {
  Interpretation in;
  in.polygraph = std::move(polygraph);
  in.bound = 4;
  GeneratorInterp mu;
  mu.vars = {"i", "j"};
  mu.x = {MonotoneExpr::sum(MonotoneExpr::variable(0), MonotoneExpr::variable(1))};
  mu.d = MonotoneExpr::variable(0);
  mu.has_x = mu.has_d = true;
  in.generators["mu"] = mu;
  if (unit) {
    GeneratorInterp eta;
    eta.x = {MonotoneExpr::constant(1)};
    eta.d = MonotoneExpr::constant(0);
    eta.has_x = eta.has_d = true;
    in.generators["eta"] = eta;
  }
  return in;
}

Polygraph symmetric(std::string name, bool with_gamma) {
  Polygraph p = s_construction(algebraic(std::move(name), true));
  std::vector<Rule> extra{make_rule(p.signature, "beta", "tau ; mu", "mu")};
  if (with_gamma)
    extra.push_back(make_rule(p.signature, "gamma", "(tau * id 1) ; (id 1 * mu) ; mu", "(id 1 * mu) ; mu"));
  return with_rules(std::move(p), std::move(extra));
}

}  // namespace

std::vector<std::string> preset_names() { return {"as", "mon", "sym", "sym_prime", "br", "perm"}; }

Preset load_preset(std::string_view name) {
  Preset pr;
  pr.name = std::string(name);
  if (name == "as") {
    pr.description = "associative magma: one product, associativity";
    pr.polygraph = algebraic("as", false);
    pr.interpretation = monoid_interpretation("as", false);
    pr.aspherical_subrules = {"alpha"};
  } else if (name == "mon") {
    pr.description = "monoids: product, unit, associativity and unit laws";
    pr.polygraph = algebraic("mon", true);
    pr.interpretation = monoid_interpretation("mon", true);
    pr.aspherical_subrules = {"alpha", "lambda", "rho"};
  } else if (name == "sym") {
    pr.description = "commutative monoids in a symmetric setting: monoid laws plus commutativity";
    pr.polygraph = symmetric("sym", false);
    pr.aspherical_subrules = {"alpha", "lambda", "rho", "beta"};
  } else if (name == "sym_prime") {
    pr.description = "commutative monoids completed with the extra rule gamma";
    pr.polygraph = symmetric("sym_prime", true);
    pr.aspherical_subrules = {"alpha", "lambda", "rho", "beta", "gamma"};
  } else if (name == "br") {
    pr.description = "braided commutative monoids: commutativity is not an involution";
    pr.polygraph = symmetric("br", false);
    pr.mode = DecisionMode::braided;
    pr.aspherical_subrules = {"alpha", "lambda", "rho"};
  } else if (name == "perm") {
    pr.description = "permutations: symmetry with no algebraic generators";
    Polygraph empty;
    empty.signature = Signature("perm", {});
    pr.polygraph = s_construction(empty);
  } else {
    throw InputError("unknown preset '" + std::string(name) + "'");
  }
  return pr;
}

std::vector<std::vector<std::size_t>> leaf_bundles(const Signature& sig, const Diagram& d) {
  std::vector<std::vector<std::size_t>> wires;
  for (std::size_t i = 0; i < d.input_width(); ++i) wires.push_back({i});
  for (const auto& s : d.slices()) {
    const auto first = wires.begin() + static_cast<std::ptrdiff_t>(s.offset);
    if (sig.is_tau(s.gen)) {
      std::iter_swap(first, first + 1);
      continue;
    }
    if (s.coarity != 1)
      throw InputError("generator '" + sig.at(s.gen).name + "' has no leaf semantics (coarity must be 1)");
    std::vector<std::size_t> merged;
    for (auto it = first; it != first + static_cast<std::ptrdiff_t>(s.arity); ++it)
      merged.insert(merged.end(), it->begin(), it->end());
    wires.erase(first, first + static_cast<std::ptrdiff_t>(s.arity));
    wires.insert(wires.begin() + static_cast<std::ptrdiff_t>(s.offset), std::move(merged));
  }
  return wires;
}

std::vector<std::size_t> leaf_order(const Signature& sig, const Diagram& d) {
  std::vector<std::size_t> out;
  for (const auto& b : leaf_bundles(sig, d)) out.insert(out.end(), b.begin(), b.end());
  return out;
}

Permutation permutation_of_symmetry(const Signature& sig, const Diagram& d) {
  std::vector<std::size_t> arr(d.input_width());
  for (std::size_t i = 0; i < arr.size(); ++i) arr[i] = i;
  for (const auto& s : d.slices()) {
    if (!sig.is_tau(s.gen)) throw InputError("diagram is not made of symmetries only");
    std::swap(arr[s.offset], arr[s.offset + 1]);
  }
  Permutation p{std::vector<std::size_t>(arr.size())};
  for (std::size_t q = 0; q < arr.size(); ++q) p.image[arr[q]] = q;
  return p;
}

Diagram permutation_diagram(const Signature& sig, const Permutation& sigma) {
  const auto tau = sig.tau();
  if (!tau) throw InputError("signature has no symmetry");
  const std::size_t n = sigma.image.size();
  const auto want = arrangement(sigma);
  std::vector<std::size_t> cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = i;
  std::vector<Slice> slices;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t q = p;
    while (cur[q] != want[p]) ++q;
    for (std::size_t m = q; m > p; --m) {
      slices.push_back(make_slice(sig, *tau, m - 1));
      std::swap(cur[m - 1], cur[m]);
    }
  }
  return Diagram(n, std::move(slices));
}

AlgebraicDecomposition decompose_algebraic(const Polygraph& p, const Diagram& d) {
  if (!p.s_constructed) throw InputError("decomposition needs a presentation built by the symmetry construction");
  if (d.output_width() != 1) throw InputError("diagram is not algebraic (output width must be 1)");
  const auto tau = *p.signature.tau();
  const Diagram nf = normalize(d, structural_part(p)).normal_form;
  auto seq = exchange::tag(nf);
  std::size_t k = 0;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t j = k; j < seq.size(); ++j) {
      if (seq[j].slice.gen != tau || !exchange::lifted(seq, j, k)) continue;
      exchange::lift(seq, j, k++);
      moved = true;
      break;
    }
  }
  for (std::size_t j = k; j < seq.size(); ++j)
    if (seq[j].slice.gen == tau) throw Error("structural normal form has a symmetry below a generator");
  const Diagram perm = exchange::untag(nf.input_width(), seq, 0, k);
  return {permutation_of_symmetry(p.signature, perm), exchange::untag(nf.input_width(), seq, k, seq.size())};
}

BraidWord braid_of_step(const Preset& preset, const Step& s) {
  const Polygraph& p = preset.polygraph;
  const Rule& r = p.rule(s.rule);
  const Diagram source = step_source(p, s);
  BraidWord none{std::max<std::size_t>(source.input_width(), 1), {}};
  if (r.family != RuleFamily::algebraic) return none;
  if (std::find(preset.aspherical_subrules.begin(), preset.aspherical_subrules.end(), r.name) !=
      preset.aspherical_subrules.end())
    return none;
  // A crossing rule: tau above a binary generator.
  const auto tau = p.signature.tau();
  if (!tau || r.lhs.size() != 2 || r.lhs.slices()[0].gen != *tau || r.lhs.slices()[1].arity != 2)
    throw InputError("rule '" + r.name + "' has no braid semantics");
  const auto bundles = leaf_bundles(p.signature, s.context.top);
  const auto& a = bundles.at(s.context.left);
  const auto& b = bundles.at(s.context.left + 1);
  const auto order = leaf_order(p.signature, source);
  std::size_t pos = order.size();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (std::find(a.begin(), a.end(), order[i]) != a.end() || std::find(b.begin(), b.end(), order[i]) != b.end()) {
      pos = i;
      break;
    }
  if (pos == order.size()) return none;
  if (s.direction == Direction::forward) return block_crossing(pos, b.size(), a.size(), 1, none.strands);
  return block_crossing(pos, a.size(), b.size(), -1, none.strands);
}

BraidWord braid_of_trace(const Preset& preset, const Trace& t) {
  BraidWord w{std::max<std::size_t>(t.source.input_width(), 1), {}};
  for (const auto& s : t.steps) w = concat(w, braid_of_step(preset, s));
  return w;
}

CoherenceReport decide_coherence(const Preset& preset, const Trace& a, const Trace& b) {
  const Polygraph& p = preset.polygraph;
  validate_trace(p, a);
  validate_trace(p, b);
  CoherenceReport rep;
  rep.mode = preset.mode;
  if (!parallel(p, a, b)) {
    rep.verdict = CoherenceVerdict::not_parallel;
    rep.reason = "traces do not share source and target";
    return rep;
  }
  if (preset.mode == DecisionMode::aspherical) {
    rep.verdict = CoherenceVerdict::equal;
    rep.reason = "parallel traces in an aspherical presentation";
    return rep;
  }
  rep.braid_first = braid_of_trace(preset, a);
  rep.braid_second = braid_of_trace(preset, b);
  rep.nf_first = garside_nf(*rep.braid_first);
  rep.nf_second = garside_nf(*rep.braid_second);
  const bool eq = *rep.nf_first == *rep.nf_second;
  rep.verdict = eq ? CoherenceVerdict::equal : CoherenceVerdict::not_equal;
  rep.reason = eq ? "braids have the same normal form" : "braids differ";
  return rep;
}

Trace whisker_top(const Polygraph& p, const Diagram& top, const Trace& t) {
  Trace out{vcomp(top, t.source), {}, p.signature.is_prop() ? Congruence::prop : t.congruence};
  for (auto s : t.steps) {
    s.context.top = vcomp(top, s.context.top);
    out.steps.push_back(std::move(s));
  }
  return out;
}

Trace initial_algebra_compose(const Polygraph& p, const Trace& a, const Trace& b) {
  validate_trace(p, a);
  validate_trace(p, b);
  const auto ga = decompose_algebraic(p, trace_target(p, a));
  const auto hb = decompose_algebraic(p, b.source);
  if (!congruent(p, Congruence::prop, ga.pure, hb.pure))
    throw InputError("traces are not composable: the target of the first and the source of the second differ");
  const auto& sig = p.signature;
  return compose_traces(p, whisker_top(p, permutation_diagram(sig, inverse(ga.sigma)), a),
                        whisker_top(p, permutation_diagram(sig, inverse(hb.sigma)), b));
}

}  // namespace polywb
