#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "domkit/domkit.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace domkit;

namespace {
Element A(const char* n) { return Element::atom(n); }
Element bot() { return Element::bottom(); }

// strips one level of inl/inr tags and rebuilds the component basis so the
// embedding can be compared against the original by subdomain check
FiniteBasis untag(const FiniteBasis& sum, TermKind side,
                  const FiniteBasis& like) {
  std::vector<Element> keep;
  std::vector<std::pair<Element, Element>> order;
  auto strip = [&](const Element& e) {
    return e.is_bottom() ? e : e.child(0);
  };
  for (const Element& e : sum.elements())
    if (e.is_bottom() || e.kind() == side) keep.push_back(strip(e));
  for (const Element& x : sum.elements())
    for (const Element& y : sum.elements()) {
      bool xk = x.is_bottom() || x.kind() == side;
      bool yk = y.is_bottom() || y.kind() == side;
      if (xk && yk && sum.leq(x, y)) order.emplace_back(strip(x), strip(y));
    }
  return FiniteBasis::make(like.name(), keep, order, Closure::Given);
}
}  // namespace

TEST_CASE("coalesced sum merges bottoms and keeps components incomparable") {
  FiniteBasis f2 = lift_antichain({"a"});
  FiniteBasis f3 = lift_antichain({"t", "f"});
  FiniteBasis s = coalesced_sum(f2, f3);
  CHECK(s.size() == f2.size() + f3.size() - 1);
  CHECK(s.bottom() == bot());
  CHECK(is_finitary_basis(s).holds);
  Element l = Element::inl(A("a"));
  Element r = Element::inr(A("t"));
  CHECK(s.contains(l));
  CHECK(s.contains(r));
  CHECK_FALSE(s.leq(l, r));
  CHECK_FALSE(s.leq(r, l));
  CHECK(s.leq(s.bottom(), l));
}

TEST_CASE("sum components embed as subdomains") {
  gen::Rng rng(601);
  for (int trial = 0; trial < 10; ++trial) {
    FiniteBasis a = gen::random_finitary_basis(rng, 4, "a");
    FiniteBasis b = gen::random_finitary_basis(rng, 4, "b");
    FiniteBasis s = coalesced_sum(a, b);
    CHECK(s.size() == a.size() + b.size() - 1);
    CHECK(is_finitary_basis(s).holds);
    CHECK(check_isomorphic(untag(s, TermKind::InL, a), a).has_value());
    CHECK(check_isomorphic(untag(s, TermKind::InR, b), b).has_value());
  }
}

TEST_CASE("strict product pairs proper elements and identifies bottoms") {
  FiniteBasis f3 = lift_antichain({"t", "f"});
  FiniteBasis p = strict_product(f3, f3);
  CHECK(p.size() == (f3.size() - 1) * (f3.size() - 1) + 1);
  CHECK(p.contains(Element::pair(A("t"), A("f"))));
  CHECK_FALSE(p.contains(Element::pair(bot(), A("f"))));
  CHECK(is_finitary_basis(p).holds);

  FiniteBasis dia = gen::diamond();
  FiniteBasis q = strict_product(dia, f3);
  CHECK(q.size() == (dia.size() - 1) * (f3.size() - 1) + 1);
  // componentwise order on proper pairs
  CHECK(q.leq(Element::pair(A("a"), A("t")), Element::pair(A("top"), A("t"))));
  CHECK_FALSE(
      q.leq(Element::pair(A("a"), A("t")), Element::pair(A("top"), A("f"))));
}

TEST_CASE("product cardinality law holds on random pairs") {
  gen::Rng rng(607);
  for (int trial = 0; trial < 15; ++trial) {
    FiniteBasis a = gen::random_finitary_basis(rng, 4, "a");
    FiniteBasis b = gen::random_finitary_basis(rng, 4, "b");
    FiniteBasis p = strict_product(a, b);
    CHECK(p.size() == (a.size() - 1) * (b.size() - 1) + 1);
    CHECK(is_finitary_basis(p).holds);
  }
}

TEST_CASE("strict function space carries exactly the strict mappings") {
  FiniteBasis f2 = lift_antichain({"a"});
  FiniteBasis f3 = lift_antichain({"t", "f"});
  FiniteBasis fn = strict_fun(f2, f3);
  // strict monotone maps flat-1 -> flat-2: a can go to bot, t, or f
  CHECK(fn.size() == 3);
  CHECK(fn.bottom() == Element::am({}));
  CHECK(fn.contains(Element::am({{A("a"), A("t")}})));
  CHECK(is_finitary_basis(fn).holds);

  // count matches the strict-map oracle on random pairs
  gen::Rng rng(613);
  for (int trial = 0; trial < 10; ++trial) {
    FiniteBasis a = gen::random_finitary_basis(rng, 3, "a");
    FiniteBasis b = gen::random_finitary_basis(rng, 3, "b");
    FiniteBasis s = strict_fun(a, b);
    CHECK(s.size() == oracle::count_strict_monotone_maps(a, b));
    CHECK(is_finitary_basis(s).holds);
  }
}

TEST_CASE("strict function elements are support graphs of mappings") {
  FiniteBasis f2 = lift_antichain({"a"});
  FiniteBasis f3 = lift_antichain({"t", "f"});
  FiniteBasis fn = strict_fun(f2, f3);
  std::set<Element> strict_terms;
  for (const ApproxMapping& m : enumerate_ams(f2, f3)) {
    // strict means bottom maps only to bottom
    bool strict = true;
    for (const auto& [x, y] : m.pairs)
      if (x.is_bottom() && !y.is_bottom()) strict = false;
    if (strict) strict_terms.insert(m.term());
  }
  std::set<Element> carrier(fn.elements().begin(), fn.elements().end());
  CHECK(carrier == strict_terms);
}

TEST_CASE("function space order is pointwise") {
  FiniteBasis dia = gen::diamond();
  FiniteBasis f2 = lift_antichain({"a"});
  FiniteBasis fn = strict_fun(f2, dia);
  Element lo = Element::am({{A("a"), A("a")}});
  Element hi = Element::am({{A("a"), A("top")}});
  Element other = Element::am({{A("a"), A("b")}});
  CHECK(fn.leq(lo, hi));
  CHECK_FALSE(fn.leq(lo, other));
  CHECK(fn.leq(Element::am({}), lo));
}

TEST_CASE("kleene star enumerates bounded sequences with prefix-free order") {
  FiniteBasis f3 = lift_antichain({"t", "f"});
  FiniteBasis st = kleene_star(f3, 2);
  CHECK(st.size() == oracle::count_star(f3.size(), 2));
  CHECK(st.contains(Element::seq({})));
  CHECK(st.contains(Element::seq({A("t"), A("f")})));
  CHECK_FALSE(st.contains(Element::seq({A("t"), bot()})));
  // same length, componentwise: only reflexive here since atoms are flat
  CHECK(st.leq(Element::seq({A("t")}), Element::seq({A("t")})));
  CHECK_FALSE(st.leq(Element::seq({A("t")}), Element::seq({A("t"), A("f")})));
  CHECK_FALSE(st.leq(Element::seq({}), Element::seq({A("t")})));
  CHECK(is_finitary_basis(st).holds);

  FiniteBasis dia = gen::diamond();
  FiniteBasis ds = kleene_star(dia, 2, {2, 100});
  CHECK(ds.size() == oracle::count_star(dia.size(), 2));
  CHECK(ds.leq(Element::seq({A("a"), A("b")}), Element::seq({A("top"), A("b")})));
  CHECK_FALSE(ds.leq(Element::seq({A("a")}), Element::seq({A("b")})));
}

TEST_CASE("star of width zero is just the empty sequence plus bottom") {
  FiniteBasis one = one_point_basis();
  FiniteBasis st = kleene_star(one, 3);
  CHECK(st.size() == 2);
  CHECK(st.contains(Element::seq({})));
}

TEST_CASE("records assign methods to labels with pointwise growth") {
  FiniteBasis f3 = lift_antichain({"t", "f"});
  FiniteBasis r = record_basis({"l", "k"}, f3);
  CHECK(r.size() == oracle::count_records(2, f3.size()));
  CHECK(r.bottom() == Element::rec({}));
  Element partial = Element::rec({{"l", A("t")}});
  Element fuller = Element::rec({{"l", A("t")}, {"k", A("f")}});
  CHECK(r.contains(partial));
  CHECK(r.leq(partial, fuller));
  CHECK_FALSE(r.leq(fuller, partial));
  CHECK_FALSE(r.leq(Element::rec({{"l", A("t")}}), Element::rec({{"l", A("f")}})));
  CHECK(is_finitary_basis(r).holds);
}

TEST_CASE("record growth respects the method order per label") {
  FiniteBasis dia = gen::diamond();
  FiniteBasis r = record_basis({"m"}, dia, {1, 100});
  CHECK(r.size() == oracle::count_records(1, dia.size()));
  CHECK(r.leq(Element::rec({{"m", A("a")}}), Element::rec({{"m", A("top")}})));
  CHECK_FALSE(r.leq(Element::rec({{"m", A("a")}}), Element::rec({{"m", A("b")}})));
  // bottom-valued fields are normalized away, never materialized
  CHECK_FALSE(r.contains(Element::rec({{"m", bot()}})));
  CHECK(r.leq(Element::rec({}), Element::rec({{"m", A("a")}})));
}

TEST_CASE("the reserved record ordering stub is rejected") {
  CHECK_THROWS_AS(record_basis({"l"}, lift_antichain({"a"}), {},
                               RecordOrder::EqualKeysOnly),
                  input_error);
  CHECK_THROWS_AS(record_basis({"l", "l"}, lift_antichain({"a"})), input_error);
}

TEST_CASE("cardinality caps fire with the offending step named") {
  FiniteBasis f3 = lift_antichain({"t", "f"});
  ConstructorParams tight;
  tight.cardinality_cap = 3;
  try {
    coalesced_sum(f3, f3, tight);
    FAIL("expected cap_error");
  } catch (const cap_error& e) {
    CHECK(e.step() == "sum");
  }
  try {
    kleene_star(f3, 8, {8, 100});
    FAIL("expected cap_error");
  } catch (const cap_error& e) {
    CHECK(e.step() == "star");
  }
  try {
    record_basis({"a", "b", "c", "d", "e", "f", "g"}, f3, {1, 1000});
    FAIL("expected cap_error");
  } catch (const cap_error& e) {
    CHECK(e.step() == "rec");
  }
  try {
    strict_fun(kleene_star(f3, 3, {3, 100}), f3, {1, 50});
    FAIL("expected cap_error");
  } catch (const cap_error& e) {
    CHECK(e.step() == "fun");
  }
}

TEST_CASE("constructed bases survive a serialization round trip") {
  FiniteBasis f3 = lift_antichain({"t", "f"});
  for (const FiniteBasis& b :
       {coalesced_sum(lift_antichain({"a"}), f3), strict_product(f3, f3),
        strict_fun(lift_antichain({"a"}), f3), kleene_star(f3, 2),
        record_basis({"l"}, f3)}) {
    FiniteBasis back = parse_basis(serialize_basis(b));
    CHECK(back.same_structure(b));
    CHECK(back.name() == b.name());
  }
}
