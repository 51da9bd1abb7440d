#include <catch2/catch_amalgamated.hpp>

#include "domkit/domkit.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace domkit;

namespace {
Element A(const char* n) { return Element::atom(n); }
Element bot() { return Element::bottom(); }
}  // namespace

TEST_CASE("element terms are canonical and ordered") {
  CHECK(Element::rec({{"l", A("b")}, {"k", A("a")}}) ==
        Element::rec({{"k", A("a")}, {"l", A("b")}}));
  CHECK_THROWS_AS(Element::rec({{"l", A("a")}, {"l", A("b")}}), input_error);
  CHECK(Element::am({{A("a"), A("b")}, {A("a"), A("b")}}).graph_size() == 1);
  CHECK(bot() < A("a"));
  CHECK(Element::seq({}) < Element::seq({A("a")}));
  CHECK_THROWS_AS(Element::atom("white space"), input_error);
  CHECK(Element::pair(A("a"), A("b")).str() == "pair(atom:a,atom:b)");
}

TEST_CASE("two-element chain satisfies the axioms") {
  SubsetReport r = check_partial_order({bot(), A("a")}, {{bot(), A("a")}},
                                       Closure::Auto);
  CHECK(r.holds);
}

TEST_CASE("antisymmetry violation is witnessed") {
  SubsetReport r = check_partial_order(
      {A("a"), A("b")},
      {{A("a"), A("a")}, {A("b"), A("b")}, {A("a"), A("b")}, {A("b"), A("a")}},
      Closure::Given);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 2);
}

TEST_CASE("missing reflexive pair is caught when closure is off") {
  SubsetReport r = check_partial_order({A("a")}, {}, Closure::Given);
  CHECK_FALSE(r.holds);
  CHECK(r.detail.find("reflexivity") != std::string::npos);
}

TEST_CASE("axiom checks agree with the definitional oracle on random relations") {
  gen::Rng rng(20240817);
  for (int trial = 0; trial < 100; ++trial) {
    gen::RawRelation raw = gen::random_relation(rng);
    std::vector<Element> atoms = gen::index_atoms(raw.n);
    SubsetReport mine = check_partial_order(
        atoms, gen::term_pairs(raw, atoms),
        raw.closed_input ? Closure::Given : Closure::Auto);
    bool expect = oracle::partial_order(raw.n, raw.pairs, !raw.closed_input);
    INFO("trial " << trial << " n=" << raw.n
                  << " closed=" << raw.closed_input);
    CHECK(mine.holds == expect);
  }
}

TEST_CASE("lub basics") {
  FiniteBasis dia = gen::diamond();
  CHECK(lub(dia, {A("a")}) == A("a"));
  CHECK(lub(dia, {A("a"), A("b")}) == A("top"));
  CHECK(lub(dia, {}) == bot());
  FiniteBasis flat = lift_antichain({"t", "f"});
  CHECK_FALSE(lub(flat, {A("t"), A("f")}).has_value());
  CHECK_THROWS_AS(lub(flat, {A("zzz")}), input_error);
}

TEST_CASE("bounded, consistent, directed on the standard examples") {
  FiniteBasis flat = lift_antichain({"t", "f"});
  CHECK_FALSE(is_consistent(flat, {A("t"), A("f")}).holds);
  CHECK_FALSE(is_bounded(flat, {A("t"), A("f")}).holds);

  FiniteBasis dia = gen::diamond();
  CHECK(is_bounded(dia, {A("a"), A("b")}).holds);
  CHECK(is_consistent(dia, {A("a"), A("b")}).holds);
  CHECK_FALSE(is_directed(dia, {A("a"), A("b")}).holds);
  CHECK(is_directed(dia, {bot(), A("a"), A("top")}).holds);
  CHECK_FALSE(is_directed(dia, {}).holds);
}

TEST_CASE("chains are directed; directed and bounded imply consistent") {
  gen::Rng rng(7021);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteBasis b = gen::random_finitary_basis(rng, 6, "g");
    for (int s = 0; s < 8; ++s) {
      std::vector<Element> sub = gen::random_subset(rng, b);
      if (sub.empty()) continue;
      if (is_chain(b, sub).holds) CHECK(is_directed(b, sub).holds);
      if (is_directed(b, sub).holds) CHECK(is_consistent(b, sub).holds);
      if (is_bounded(b, sub).holds) CHECK(is_consistent(b, sub).holds);
    }
  }
}

TEST_CASE("downward closure and lower sets") {
  FiniteBasis flat = lift_antichain({"t", "f"});
  SubsetReport r = is_downward_closed(flat, {A("t")});
  CHECK_FALSE(r.holds);
  REQUIRE_FALSE(r.witness.empty());
  CHECK(r.witness.front() == bot());

  FiniteBasis dia = gen::diamond();
  CHECK(lower_set(dia, bot()) == std::vector<Element>{bot()});
  CHECK(lower_set(dia, A("top")).size() == 4);
}

TEST_CASE("chain and antichain predicates") {
  FiniteBasis dia = gen::diamond();
  CHECK(is_chain(dia, {bot(), A("a"), A("top")}).holds);
  CHECK_FALSE(is_chain(dia, {A("a"), A("b")}).holds);
  CHECK(is_antichain(dia, {A("a"), A("b")}).holds);
  CHECK_FALSE(is_antichain(dia, {bot(), A("a")}).holds);
}

TEST_CASE("ideals and weak ideals") {
  FiniteBasis dia = gen::diamond();
  for (const Element& x : dia.elements()) {
    CHECK(is_ideal(dia, lower_set(dia, x)).holds);
  }
  CHECK_FALSE(is_ideal(dia, {bot(), A("a"), A("b")}).holds);

  FiniteBasis flat = lift_antichain({"t", "f"});
  CHECK(is_weak_ideal(flat, flat.elements()).holds);
  CHECK_THROWS_AS(is_weak_ideal(flat, {}), input_error);

  // downward-closed but chain-lub escapes: diamond minus its top edge
  // cannot be represented here, use completion-style witness instead:
  // {bot, a, top} misses b, not downward-closed
  SubsetReport w = is_weak_ideal(dia, {bot(), A("a"), A("top")});
  CHECK_FALSE(w.holds);
}

TEST_CASE("weak ideal catches an escaping chain lub") {
  // chain bot < c0 < c1; subset {bot, c0, c1} minus c1 is fine, but a
  // downward-closed set lacking a chain lub must fail: build 3-chain plus
  // flat sibling so {bot, c0} stays downward-closed while lub({bot,c0})=c0
  // is inside; the failing case needs the lub outside s, so check the full
  // poset predicate on a poset where some chain lub is outside s.
  FiniteBasis dia = gen::diamond();
  // s = {bot, a, b}: downward-closed; chains within s: {a},{b},... all
  // lubs inside s, so weak-ideal holds even though is_ideal fails.
  CHECK(is_weak_ideal(dia, {bot(), A("a"), A("b")}).holds);
  CHECK_FALSE(is_ideal(dia, {bot(), A("a"), A("b")}).holds);
}

TEST_CASE("finitary basis check and the butterfly counterexample") {
  CHECK(is_finitary_basis(lift_antichain({"t", "f"})).holds);
  CHECK(is_finitary_basis(one_point_basis()).holds);
  SubsetReport r = is_finitary_basis(gen::butterfly());
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == A("a"));
  CHECK(r.witness[1] == A("b"));
}

TEST_CASE("finitary check agrees with the oracle on random posets") {
  gen::Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    gen::RawRelation raw = gen::random_relation(rng);
    std::vector<Element> atoms = gen::index_atoms(raw.n);
    if (!oracle::partial_order(raw.n, raw.pairs, true)) continue;
    Poset p = Poset::make("t", atoms, gen::term_pairs(raw, atoms),
                          Closure::Auto);
    CHECK(is_finitary_basis(p).holds ==
          oracle::finitary(oracle::matrix_of(p), p.size()));
  }
}

TEST_CASE("antichain lifting") {
  FiniteBasis f = lift_antichain({"t", "f", "m"});
  CHECK(f.size() == 4);
  CHECK(f.bottom() == bot());
  CHECK(is_finitary_basis(f).holds);
  CHECK(is_antichain(f, {A("t"), A("f"), A("m")}).holds);
  CHECK(lift_antichain({"u"}).size() == 2);
  CHECK_THROWS_AS(lift_antichain({}), input_error);
  CHECK_THROWS_AS(lift_antichain({"t", "t"}), input_error);
}

TEST_CASE("induced subposets") {
  FiniteBasis dia = gen::diamond();
  Poset full = induced_subposet(dia, dia.elements());
  CHECK(full.same_structure(dia));

  Poset three = induced_subposet(dia, {bot(), A("a"), A("top")});
  CHECK(three.size() == 3);
  CHECK(is_chain(three, three.elements()).holds);

  FiniteBasis flat = lift_antichain({"t", "f"});
  Poset discrete = induced_subposet(flat, {A("t"), A("f")});
  CHECK(discrete.size() == 2);
  CHECK_FALSE(discrete.least().has_value());
  CHECK_THROWS_AS(induced_subposet(flat, {}), input_error);
}

TEST_CASE("validation failures carry re-checkable witnesses") {
  CHECK_THROWS_AS(
      FiniteBasis::make("cyc", {A("a"), A("b")},
                        {{A("a"), A("b")}, {A("b"), A("a")}}, Closure::Auto),
      validation_error);
  try {
    FiniteBasis::make("flat-no-bot", {A("t"), A("f")}, {}, Closure::Auto);
    FAIL("expected pointedness failure");
  } catch (const validation_error& e) {
    CHECK(e.report().predicate == "pointed");
  }
}
