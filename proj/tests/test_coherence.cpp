#include <random>

#include "doctest.h"
#include "polywb/coherence.hpp"

using namespace polywb;

namespace {

using Bundles = std::vector<std::vector<std::size_t>>;

Diagram d(const Polygraph& p, std::string_view e) { return parse_diagram(e, p.signature); }

Step step(const Polygraph& p, std::string_view rule, Direction dir, std::string_view top, std::size_t left,
          std::size_t right, std::string_view bot) {
  return Step{*p.find_rule(rule), dir, Context{d(p, top), left, right, d(p, bot)}};
}

constexpr auto fwd = Direction::forward;
constexpr auto bwd = Direction::backward;

// Random diagram over mu, eta, tau with exactly one output.
Diagram random_algebraic(std::mt19937& rng, const Signature& sig, std::size_t max_gens) {
  for (;;) {
    const std::size_t w0 = rng() % 5;
    std::size_t w = w0;
    std::vector<Slice> sl;
    const std::size_t n = rng() % (max_gens + 1);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Slice> opts;
      for (GenId g = 0; g < sig.size(); ++g)
        for (std::size_t o = 0; o + sig.at(g).arity <= w; ++o) opts.push_back(make_slice(sig, g, o));
      const auto s = opts[rng() % opts.size()];
      sl.push_back(s);
      w = w - s.arity + s.coarity;
    }
    if (w == 1) return Diagram(w0, sl);
  }
}

// A random trace of up to `len` steps, each forward or backward along any rule.
Trace random_trace(std::mt19937& rng, const Polygraph& p, Diagram src, std::size_t len) {
  Trace t{src, {}, Congruence::prop};
  Diagram cur = src;
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Step> opts;
    for (std::size_t r = 0; r < p.rules.size(); ++r) {
      for (const auto& m : find_matches(cur, p.rules[r].lhs)) opts.push_back(Step{r, fwd, m.context});
      if (!p.rules[r].rhs.is_identity())
        for (const auto& m : find_matches(cur, p.rules[r].rhs)) opts.push_back(Step{r, bwd, m.context});
    }
    if (opts.empty()) break;
    const auto s = opts[rng() % opts.size()];
    cur = apply_step(p, cur, s);
    t.steps.push_back(s);
  }
  return t;
}

}  // namespace

TEST_CASE("leaf bundles") {
  const auto p = load_preset("sym").polygraph;
  const auto& sig = p.signature;
  CHECK(leaf_bundles(sig, d(p, "mu")) == Bundles{{0, 1}});
  CHECK(leaf_bundles(sig, d(p, "(eta * id 1) ; mu")) == Bundles{{0}});
  CHECK(leaf_bundles(sig, d(p, "tau ; mu")) == Bundles{{1, 0}});
  CHECK(leaf_bundles(sig, d(p, "eta")) == Bundles{{}});
}

TEST_CASE("leaf bundles are invariant under the structural rules") {
  const auto p = load_preset("sym").polygraph;
  const auto s = structural_part(p);
  std::mt19937 rng(21);
  for (int it = 0; it < 200; ++it) {
    const auto x = random_algebraic(rng, p.signature, 6);
    const auto t = random_trace(rng, s, x, 4);
    CHECK(leaf_bundles(p.signature, trace_target(s, t)) == leaf_bundles(p.signature, x));
  }
}

TEST_CASE("algebraic decomposition") {
  const auto p = load_preset("sym").polygraph;
  const auto pure = decompose_algebraic(p, d(p, "(mu * id 1) ; mu"));
  CHECK(pure.sigma == identity_permutation(3));
  CHECK(diagram_equal(pure.pure, d(p, "(mu * id 1) ; mu")));
  const auto swap = decompose_algebraic(p, d(p, "tau ; mu"));
  CHECK(swap.sigma == Permutation{{1, 0}});
  CHECK(diagram_equal(swap.pure, d(p, "mu")));
  CHECK_THROWS_AS(decompose_algebraic(p, d(p, "tau")), InputError);
  CHECK_THROWS_AS(decompose_algebraic(load_preset("mon").polygraph, d(p, "mu")), InputError);

  std::mt19937 rng(8);
  for (int it = 0; it < 200; ++it) {
    const auto x = random_algebraic(rng, p.signature, 6);
    const auto dec = decompose_algebraic(p, x);
    for (const auto& s : dec.pure.slices()) CHECK_FALSE(p.signature.is_tau(s.gen));
    CHECK(congruent(p, Congruence::prop, vcomp(permutation_diagram(p.signature, dec.sigma), dec.pure), x));
  }
}

TEST_CASE("permutation diagrams") {
  const auto sig = load_preset("perm").polygraph.signature;
  std::mt19937 rng(2);
  for (int it = 0; it < 50; ++it) {
    std::vector<std::size_t> img(1 + rng() % 5);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    const Permutation s{img};
    CHECK(permutation_of_symmetry(sig, permutation_diagram(sig, s)) == s);
  }
}

TEST_CASE("braid of a step") {
  const auto br = load_preset("br");
  const auto& p = br.polygraph;
  CHECK(print_braid(braid_of_step(br, step(p, "beta", fwd, "id 2", 0, 0, "id 1"))) == "s1");
  CHECK(braid_of_step(br, step(p, "lambda", fwd, "id 1", 0, 0, "id 1")).letters.empty());
  CHECK(braid_of_step(br, step(p, "yb", fwd, "id 3", 0, 0, "id 3")).letters.empty());
  CHECK(print_braid(braid_of_step(br, step(p, "beta", bwd, "tau", 0, 0, "id 1"))) == "s1^-1");
}

TEST_CASE("braided coherence on the displayed examples") {
  const auto br = load_preset("br");
  const auto& p = br.polygraph;
  SUBCASE("the two legs of daleth_1 are equal") {
    const auto src = d(p, "(id 1 * tau) ; (tau * id 1) ; (mu * id 1) ; mu");
    const Trace upper{src,
                      {step(p, "beta", fwd, "id 1 * tau", 0, 1, "mu"), step(p, "alpha", fwd, "id 1 * tau", 0, 0, "id 1"),
                       step(p, "beta", fwd, "id 3", 1, 0, "mu")},
                      Congruence::prop};
    const Trace lower{src,
                      {step(p, "alpha", fwd, "(id 1 * tau) ; (tau * id 1)", 0, 0, "id 1"),
                       step(p, "beta", fwd, "mu * id 1", 0, 0, "id 1"), step(p, "alpha", fwd, "id 3", 0, 0, "id 1")},
                      Congruence::prop};
    const auto rep = decide_coherence(br, upper, lower);
    CHECK(rep.verdict == CoherenceVerdict::equal);
    CHECK(print_braid(*rep.braid_first) == "s1 s2");
    CHECK(braid_equal(*rep.braid_first, *rep.braid_second));
    CHECK(decide_coherence(load_preset("sym_prime"), upper, lower).verdict == CoherenceVerdict::equal);
  }
  SUBCASE("beta and the inverse of beta below a symmetry differ") {
    const auto src = d(p, "tau ; mu");
    const Trace a{src, {step(p, "beta", fwd, "id 2", 0, 0, "id 1")}, Congruence::prop};
    const Trace b{src, {step(p, "beta", bwd, "tau", 0, 0, "id 1"), step(p, "sym", fwd, "id 2", 0, 0, "mu")},
                  Congruence::prop};
    const auto rep = decide_coherence(br, a, b);
    CHECK(rep.verdict == CoherenceVerdict::not_equal);
    CHECK(print_braid(*rep.braid_first) == "s1");
    CHECK(print_braid(*rep.braid_second) == "s1^-1");
    CHECK(decide_coherence(br, b, a).verdict == CoherenceVerdict::not_equal);
    CHECK(decide_coherence(br, a, a).verdict == CoherenceVerdict::equal);
    CHECK(decide_coherence(load_preset("sym"), a, b).verdict == CoherenceVerdict::equal);
    CHECK(decide_coherence(br, a, Trace{src, {}, Congruence::prop}).verdict == CoherenceVerdict::not_parallel);
  }
}

TEST_CASE("random braided traces") {
  const auto br = load_preset("br");
  const auto& p = br.polygraph;
  const auto mon_rules = std::vector<std::string>{"alpha", "lambda", "rho"};
  std::mt19937 rng(1234);
  int braided = 0;
  for (int it = 0; it < 100; ++it) {
    Diagram src = random_algebraic(rng, p.signature, 6);
    while (src.input_width() == 0) src = random_algebraic(rng, p.signature, 6);
    const auto t = random_trace(rng, p, src, 6);
    validate_trace(p, t);
    const auto w = braid_of_trace(br, t);
    braided += !w.letters.empty();
    const auto s = decompose_algebraic(p, t.source).sigma;
    const auto g = decompose_algebraic(p, trace_target(p, t)).sigma;
    CHECK(perm_of_braid(w) == then(inverse(s), g));

    // Detours through monoid steps leave the braid alone.
    Trace m = t;
    const std::size_t at = rng() % (t.steps.size() + 1);
    Trace head{t.source, {t.steps.begin(), t.steps.begin() + static_cast<std::ptrdiff_t>(at)}, Congruence::prop};
    const auto here = trace_target(p, head);
    for (const auto& name : mon_rules) {
      const auto r = *p.find_rule(name);
      const auto ms = find_matches(here, p.rules[r].lhs);
      if (ms.empty()) continue;
      const Step st{r, fwd, ms[rng() % ms.size()].context};
      m.steps.insert(m.steps.begin() + static_cast<std::ptrdiff_t>(at), {st, inverse(st)});
      break;
    }
    validate_trace(p, m);
    CHECK(braid_equal(braid_of_trace(br, m), w));
    CHECK(decide_coherence(br, t, t).verdict == CoherenceVerdict::equal);
  }
  CHECK(braided >= 20);
}

TEST_CASE("aspherical mode never answers NotEqual") {
  const auto sym = load_preset("sym_prime");
  const auto& p = sym.polygraph;
  std::mt19937 rng(77);
  for (int it = 0; it < 30; ++it) {
    const auto src = random_algebraic(rng, p.signature, 4);
    const auto a = random_trace(rng, p, src, 3);
    const auto b = random_trace(rng, p, src, 3);
    CHECK(decide_coherence(sym, a, b).verdict != CoherenceVerdict::not_equal);
  }
}

TEST_CASE("composition in the initial algebra") {
  const auto br = load_preset("br");
  const auto& p = br.polygraph;
  const Trace beta{d(p, "tau ; mu"), {step(p, "beta", fwd, "id 2", 0, 0, "id 1")}, Congruence::prop};
  const Trace back{d(p, "mu"), {step(p, "beta", bwd, "id 2", 0, 0, "id 1")}, Congruence::prop};
  const auto loop = initial_algebra_compose(p, beta, back);
  CHECK(diagram_equal(loop.source, trace_target(p, loop)));
  CHECK(garside_nf(braid_of_trace(br, loop)) == garside_nf(BraidWord{2, {}}));

  const Trace wide{d(p, "(tau * id 1) ; (mu * id 1) ; mu"), {step(p, "beta", fwd, "id 3", 0, 1, "mu")},
                   Congruence::prop};
  const Trace assoc{d(p, "(mu * id 1) ; mu"), {step(p, "alpha", fwd, "id 3", 0, 0, "id 1")}, Congruence::prop};
  const auto both = initial_algebra_compose(p, wide, assoc);
  validate_trace(p, both);
  CHECK(braid_equal(braid_of_trace(br, both), concat(braid_of_trace(br, wide), braid_of_trace(br, assoc))));
  CHECK_THROWS_AS(initial_algebra_compose(p, beta, assoc), InputError);
}
