#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "domkit/element.hpp"

namespace domkit {

// Whether an input order relation is taken verbatim or as a generator set
// (e.g. Hasse covers) to be reflexively-transitively closed first.
enum class Closure { Auto, Given };

// Outcome of a predicate check. When `holds` is false the witness elements
// plus `detail` pin down a re-checkable counterexample.
struct SubsetReport {
  std::string predicate;
  bool holds = false;
  std::string detail;
  std::vector<Element> witness;

  static SubsetReport pass(std::string predicate, std::string detail = "") {
    SubsetReport r;
    r.predicate = std::move(predicate);
    r.holds = true;
    r.detail = std::move(detail);
    return r;
  }
  static SubsetReport fail(std::string predicate, std::string detail,
                           std::vector<Element> witness = {}) {
    SubsetReport r;
    r.predicate = std::move(predicate);
    r.holds = false;
    r.detail = std::move(detail);
    r.witness = std::move(witness);
    return r;
  }
};

// Axiom failures surfaced while building a poset from untrusted input.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(SubsetReport report)
      : std::runtime_error(report.predicate + ": " + report.detail),
        report_(std::move(report)) {}
  const SubsetReport& report() const noexcept { return report_; }

 private:
  SubsetReport report_;
};

namespace detail {

inline void close_reflexive_transitive(std::vector<std::uint8_t>& m,
                                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (m[k * n + j]) m[i * n + j] = 1;
      }
    }
  }
}

}  // namespace detail

// A finite poset over canonical element terms. Elements are stored sorted;
// the order relation is a dense reflexive-transitive-antisymmetric matrix.
// Possibly unpointed (induced subposets drop the bottom); FiniteBasis below
// adds the verified bottom. Immutable after construction.
class Poset {
 public:
  Poset() = default;

  // Validates and builds. Throws input_error on unknown/duplicate elements,
  // validation_error (with the failed axiom report) on a non-poset relation.
  static Poset make(std::string name, std::vector<Element> elements,
                    const std::vector<std::pair<Element, Element>>& order,
                    Closure closure) {
    Poset p = assemble(std::move(name), std::move(elements), order, closure);
    SubsetReport axioms = p.partial_order_report(closure == Closure::Given);
    if (!axioms.holds) throw validation_error(std::move(axioms));
    return p;
  }

  std::size_t size() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(std::size_t i) const { return elements_[i]; }

  bool contains(const Element& e) const { return find(e).has_value(); }

  std::size_t index_of(const Element& e) const {
    if (auto i = find(e)) return *i;
    throw input_error("element " + e.str() + " is not in poset '" + name_ +
                      "'");
  }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j]; }
  bool leq(const Element& a, const Element& b) const {
    return leq(index_of(a), index_of(b));
  }

  // Least element (bottom candidate), if one exists.
  std::optional<std::size_t> least_index() const {
    for (std::size_t i = 0; i < size(); ++i) {
      bool below_all = true;
      for (std::size_t j = 0; j < size() && below_all; ++j) {
        below_all = leq(i, j);
      }
      if (below_all) return i;
    }
    return std::nullopt;
  }
  std::optional<Element> least() const {
    if (auto i = least_index()) return elements_[*i];
    return std::nullopt;
  }

  // Indices of all upper bounds of the indexed subset.
  std::vector<std::size_t> upper_bound_indices(
      const std::vector<std::size_t>& s) const {
    std::vector<std::size_t> ubs;
    for (std::size_t u = 0; u < size(); ++u) {
      bool ok = true;
      for (std::size_t i : s) {
        if (!leq(i, u)) {
          ok = false;
          break;
        }
      }
      if (ok) ubs.push_back(u);
    }
    return ubs;
  }

  // Least upper bound of an indexed subset: the minimum of the upper-bound
  // set when it exists. lub({}) is the least element.
  std::optional<std::size_t> lub_index(const std::vector<std::size_t>& s) const {
    if (s.empty()) return least_index();
    std::vector<std::size_t> ubs = upper_bound_indices(s);
    for (std::size_t u : ubs) {
      bool min = true;
      for (std::size_t v : ubs) {
        if (!leq(u, v)) {
          min = false;
          break;
        }
      }
      if (min) return u;
    }
    return std::nullopt;
  }

  std::vector<std::size_t> indices_of(const std::vector<Element>& s) const {
    std::vector<std::size_t> idx;
    idx.reserve(s.size());
    for (const Element& e : s) idx.push_back(index_of(e));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
  }

  std::vector<Element> elements_at(const std::vector<std::size_t>& idx) const {
    std::vector<Element> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(elements_[i]);
    return out;
  }

  // Carrier + order equality; names are presentation only.
  bool same_structure(const Poset& o) const {
    return elements_ == o.elements_ && leq_ == o.leq_;
  }

  // Checks the three axioms on the already-assembled matrix. With
  // closed=false (closure was applied) reflexivity/transitivity hold by
  // construction and only antisymmetry can fail.
  SubsetReport partial_order_report(bool check_all) const {
    const std::size_t n = size();
    if (check_all) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!leq(i, i)) {
          return SubsetReport::fail("partial-order",
                                    "reflexivity fails at " +
                                        elements_[i].str(),
                                    {elements_[i]});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (leq(i, j) && leq(j, i)) {
          return SubsetReport::fail(
              "partial-order",
              "antisymmetry fails on (" + elements_[i].str() + ", " +
                  elements_[j].str() + ")",
              {elements_[i], elements_[j]});
        }
      }
    }
    if (check_all) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!leq(i, j)) continue;
          for (std::size_t k = 0; k < n; ++k) {
            if (leq(j, k) && !leq(i, k)) {
              return SubsetReport::fail(
                  "partial-order",
                  "transitivity fails on (" + elements_[i].str() + ", " +
                      elements_[j].str() + ", " + elements_[k].str() + ")",
                  {elements_[i], elements_[j], elements_[k]});
            }
          }
        }
      }
    }
    return SubsetReport::pass("partial-order");
  }

 protected:
  static Poset assemble(std::string name, std::vector<Element> elements,
                        const std::vector<std::pair<Element, Element>>& order,
                        Closure closure) {
    if (elements.empty()) throw input_error("poset needs at least one element");
    std::sort(elements.begin(), elements.end());
    for (std::size_t i = 0; i + 1 < elements.size(); ++i) {
      if (elements[i] == elements[i + 1]) {
        throw input_error("duplicate element " + elements[i].str());
      }
    }
    Poset p;
    p.name_ = std::move(name);
    p.elements_ = std::move(elements);
    const std::size_t n = p.elements_.size();
    p.leq_.assign(n * n, 0);
    for (const auto& [lo, hi] : order) {
      p.leq_[p.index_of(lo) * n + p.index_of(hi)] = 1;
    }
    if (closure == Closure::Auto) {
      detail::close_reflexive_transitive(p.leq_, n);
    }
    return p;
  }

  // Trusted path for constructor-built bases whose matrices are valid by
  // construction; tests re-verify the axioms independently.
  static Poset unchecked(std::string name, std::vector<Element> sorted_elements,
                         std::vector<std::uint8_t> leq) {
    Poset p;
    p.name_ = std::move(name);
    p.elements_ = std::move(sorted_elements);
    p.leq_ = std::move(leq);
    return p;
  }

  std::optional<std::size_t> find(const Element& e) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
    if (it != elements_.end() && *it == e) {
      return static_cast<std::size_t>(it - elements_.begin());
    }
    return std::nullopt;
  }

  std::string name_;
  std::vector<Element> elements_;
  std::vector<std::uint8_t> leq_;
};

// A pointed finite poset: the representation of a (candidate) finitary
// basis. Pointedness is verified at construction; the finitary lub-closure
// property is checked separately by is_finitary_basis().
class FiniteBasis : public Poset {
 public:
  FiniteBasis() = default;

  static FiniteBasis make(std::string name, std::vector<Element> elements,
                          const std::vector<std::pair<Element, Element>>& order,
                          Closure closure) {
    return adopt(Poset::make(std::move(name), std::move(elements), order,
                             closure));
  }

  // Declared-bottom variant: additionally checks the declared bottom is the
  // least element (used by the text-format parser).
  static FiniteBasis make_with_bottom(
      std::string name, std::vector<Element> elements, const Element& bottom,
      const std::vector<std::pair<Element, Element>>& order, Closure closure) {
    FiniteBasis b = make(std::move(name), std::move(elements), order, closure);
    if (b.bottom() != bottom) {
      throw validation_error(SubsetReport::fail(
          "pointed", "declared bottom " + bottom.str() +
                         " is not the least element (least is " +
                         b.bottom().str() + ")",
          {bottom, b.bottom()}));
    }
    return b;
  }

  static FiniteBasis adopt(const Poset& p) {
    auto least = p.least_index();
    if (!least) {
      throw validation_error(SubsetReport::fail(
          "pointed", "poset '" + p.name() + "' has no least element"));
    }
    FiniteBasis b;
    static_cast<Poset&>(b) = p;
    b.bottom_ = *least;
    return b;
  }

  const Element& bottom() const { return elements_[bottom_]; }
  std::size_t bottom_index() const { return bottom_; }

  static FiniteBasis unchecked_basis(std::string name,
                                     std::vector<Element> sorted_elements,
                                     std::vector<std::uint8_t> leq,
                                     std::size_t bottom_index) {
    FiniteBasis b;
    static_cast<Poset&>(b) = Poset::unchecked(std::move(name),
                                              std::move(sorted_elements),
                                              std::move(leq));
    b.bottom_ = bottom_index;
    return b;
  }

 private:
  std::size_t bottom_ = 0;
};

// --- subset predicates -----------------------------------------------------

// Partial-order axiom check over raw input, honoring the closure policy.
// Reports the first violated axiom with the offending pair/triple.
inline SubsetReport check_partial_order(
    std::vector<Element> elements,
    const std::vector<std::pair<Element, Element>>& order, Closure closure) {
  Poset p;
  try {
    struct Access : Poset {
      using Poset::assemble;
    };
    p = Access::assemble("check", std::move(elements), order, closure);
  } catch (const input_error&) {
    throw;
  }
  return p.partial_order_report(closure == Closure::Given);
}

inline std::optional<Element> lub(const Poset& p,
                                  const std::vector<Element>& s) {
  if (auto i = p.lub_index(p.indices_of(s))) return p.element(*i);
  return std::nullopt;
}

inline SubsetReport is_bounded(const Poset& p, const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  std::vector<std::size_t> ubs = p.upper_bound_indices(idx);
  if (ubs.empty()) {
    return SubsetReport::fail("bounded", "no upper bound in the poset",
                              p.elements_at(idx));
  }
  return SubsetReport::pass("bounded",
                            "upper bound " + p.element(ubs.front()).str());
}

// Every finite subset bounded in the ambient poset. For finite s this is
// equivalent to s itself being bounded; the witness search still looks for
// a small (pair-sized) unbounded subset first.
inline SubsetReport is_consistent(const Poset& p,
                                  const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  if (!p.upper_bound_indices(idx).empty()) {
    return SubsetReport::pass("consistent");
  }
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (p.upper_bound_indices({idx[a], idx[b]}).empty()) {
        return SubsetReport::fail(
            "consistent", "finite subset unbounded in the poset",
            {p.element(idx[a]), p.element(idx[b])});
      }
    }
  }
  return SubsetReport::fail("consistent",
                            "finite subset unbounded in the poset",
                            p.elements_at(idx));
}

// Every finite subset bounded inside s. Pairwise bounds suffice on finite
// carriers (induction on subset size); the empty subset needs s nonempty.
inline SubsetReport is_directed(const Poset& p,
                                const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  if (idx.empty()) {
    return SubsetReport::fail(
        "directed", "the empty subset of s has no upper bound inside s");
  }
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a; b < idx.size(); ++b) {
      bool bounded_in_s = false;
      for (std::size_t u : idx) {
        if (p.leq(idx[a], u) && p.leq(idx[b], u)) {
          bounded_in_s = true;
          break;
        }
      }
      if (!bounded_in_s) {
        return SubsetReport::fail(
            "directed", "pair has no upper bound inside s",
            {p.element(idx[a]), p.element(idx[b])});
      }
    }
  }
  return SubsetReport::pass("directed");
}

inline SubsetReport is_downward_closed(const Poset& p,
                                       const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  std::vector<std::uint8_t> in(p.size(), 0);
  for (std::size_t i : idx) in[i] = 1;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (in[x]) continue;
    for (std::size_t y : idx) {
      if (p.leq(x, y)) {
        return SubsetReport::fail(
            "downward-closed",
            p.element(x).str() + " approximates " + p.element(y).str() +
                " but is missing from s",
            {p.element(x), p.element(y)});
      }
    }
  }
  return SubsetReport::pass("downward-closed");
}

inline std::vector<Element> lower_set(const Poset& p, const Element& x) {
  std::size_t xi = p.index_of(x);
  std::vector<Element> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.leq(i, xi)) out.push_back(p.element(i));
  }
  return out;
}

inline SubsetReport is_chain(const Poset& p, const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (!p.leq(idx[a], idx[b]) && !p.leq(idx[b], idx[a])) {
        return SubsetReport::fail("chain", "incomparable pair",
                                  {p.element(idx[a]), p.element(idx[b])});
      }
    }
  }
  return SubsetReport::pass("chain");
}

inline SubsetReport is_antichain(const Poset& p,
                                 const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (p.leq(idx[a], idx[b]) || p.leq(idx[b], idx[a])) {
        return SubsetReport::fail("anti-chain", "comparable pair",
                                  {p.element(idx[a]), p.element(idx[b])});
      }
    }
  }
  return SubsetReport::pass("anti-chain");
}

inline SubsetReport is_ideal(const Poset& p, const std::vector<Element>& s) {
  SubsetReport down = is_downward_closed(p, s);
  if (!down.holds) {
    return SubsetReport::fail("ideal", "not downward-closed: " + down.detail,
                              down.witness);
  }
  SubsetReport dir = is_directed(p, s);
  if (!dir.holds) {
    return SubsetReport::fail("ideal", "not directed: " + dir.detail,
                              dir.witness);
  }
  return SubsetReport::pass("ideal");
}

// Downward-closed and closed under lubs of its chains. Chains are walked
// explicitly (DFS over comparable extensions) so the witness is the chain
// whose lub escapes s.
inline SubsetReport is_weak_ideal(const Poset& p,
                                  const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  if (idx.empty()) throw input_error("weak-ideal check requires non-empty s");
  SubsetReport down = is_downward_closed(p, s);
  if (!down.holds) {
    return SubsetReport::fail("weak-ideal",
                              "not downward-closed: " + down.detail,
                              down.witness);
  }
  std::vector<std::uint8_t> in(p.size(), 0);
  for (std::size_t i : idx) in[i] = 1;

  std::vector<std::size_t> chain;
  SubsetReport bad = SubsetReport::pass("weak-ideal");
  bool ok = true;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    if (!ok) return;
    if (!chain.empty()) {
      if (auto l = p.lub_index(chain)) {
        if (!in[*l]) {
          std::vector<Element> w = p.elements_at(chain);
          w.push_back(p.element(*l));
          bad = SubsetReport::fail(
              "weak-ideal",
              "chain lub " + p.element(*l).str() + " escapes s", w);
          ok = false;
          return;
        }
      }
    }
    for (std::size_t n = from; n < idx.size(); ++n) {
      bool comparable = true;
      for (std::size_t c : chain) {
        if (!p.leq(c, idx[n]) && !p.leq(idx[n], c)) {
          comparable = false;
          break;
        }
      }
      if (!comparable) continue;
      chain.push_back(idx[n]);
      self(self, n + 1);
      chain.pop_back();
      if (!ok) return;
    }
  };
  extend(extend, 0);
  return ok ? SubsetReport::pass("weak-ideal") : bad;
}

// Finitary basis test on a finite carrier: a least element must exist (the
// empty subset is bounded, so it needs a lub) and every bounded pair must
// have a lub; finite bounded subsets then have lubs by induction.
inline SubsetReport is_finitary_basis(const Poset& p) {
  if (!p.least_index()) {
    return SubsetReport::fail(
        "finitary-basis",
        "no least element (the empty subset is bounded but has no lub)");
  }
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      std::vector<std::size_t> pr{a, b};
      if (p.upper_bound_indices(pr).empty()) continue;
      if (!p.lub_index(pr)) {
        return SubsetReport::fail(
            "finitary-basis", "bounded subset without a lub",
            {p.element(a), p.element(b)});
      }
    }
  }
  return SubsetReport::pass("finitary-basis");
}

// Flat basis: a fresh bottom below pairwise-incomparable atoms.
inline FiniteBasis lift_antichain(const std::vector<std::string>& names) {
  if (names.empty()) {
    throw input_error(
        "lift_antichain rejects the empty antichain (use one_point_basis)");
  }
  std::vector<Element> elements{Element::bottom()};
  std::string label;
  for (const std::string& n : names) {
    elements.push_back(Element::atom(n));
    if (!label.empty()) label += ",";
    label += n;
  }
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 0; i + 1 < elements.size(); ++i) {
    if (elements[i] == elements[i + 1]) {
      throw input_error("duplicate antichain name '" +
                        elements[i].atom_name() + "'");
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    leq[i * n + i] = 1;
    leq[0 * n + i] = 1;  // bot sorts first
  }
  return FiniteBasis::unchecked_basis("flat(" + label + ")",
                                      std::move(elements), std::move(leq), 0);
}

// The least pointed basis {bot}.
inline FiniteBasis one_point_basis(std::string name = "one-point") {
  return FiniteBasis::unchecked_basis(std::move(name), {Element::bottom()},
                                      {1}, 0);
}

// Order restriction to s; the result usually loses pointedness.
inline Poset induced_subposet(const Poset& p, const std::vector<Element>& s) {
  std::vector<std::size_t> idx = p.indices_of(s);
  if (idx.empty()) throw input_error("induced subposet needs a non-empty set");
  std::vector<Element> elements = p.elements_at(idx);
  const std::size_t n = idx.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      leq[i * n + j] = p.leq(idx[i], idx[j]) ? 1 : 0;
    }
  }
  struct Access : Poset {
    static Poset build(std::string name, std::vector<Element> e,
                       std::vector<std::uint8_t> m) {
      return Poset::unchecked(std::move(name), std::move(e), std::move(m));
    }
  };
  return Access::build(p.name() + "|induced", std::move(elements),
                       std::move(leq));
}

}  // namespace domkit
