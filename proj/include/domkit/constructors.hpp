#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "domkit/basis.hpp"
#include "domkit/element.hpp"

namespace domkit {

// Caps shared by all constructors. max_seq_len bounds the star construction
// (the unbounded closure is out of reach); cardinality_cap bounds every
// result carrier, and for the function space also the source*target product
// that enumeration cost grows with.
struct ConstructorParams {
  std::size_t max_seq_len = 1;
  std::size_t cardinality_cap = 4096;
};

// Ordering flavor for record bases. PointwiseGrowth is the implemented
// semantics (absent label reads as bottom, keys may grow upward).
// EqualKeysOnly is reserved: accepted nowhere, no semantics claim.
enum class RecordOrder { PointwiseGrowth, EqualKeysOnly };

namespace detail {

inline std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::size_t>::max() / b) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

inline std::size_t sat_add(std::size_t a, std::size_t b) {
  if (a > std::numeric_limits<std::size_t>::max() - b) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a + b;
}

inline std::size_t sat_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

inline void guard_cardinality(const char* step, std::size_t predicted,
                              std::size_t cap) {
  if (predicted > cap) {
    throw cap_error(step, std::string(step) + ": predicted carrier size " +
                              (predicted ==
                                       std::numeric_limits<std::size_t>::max()
                                   ? std::string("overflows")
                                   : std::to_string(predicted)) +
                              " exceeds cardinality cap " +
                              std::to_string(cap));
  }
}

inline std::vector<Element> non_bottom_elements(const FiniteBasis& b) {
  std::vector<Element> out;
  out.reserve(b.size() - 1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != b.bottom_index()) out.push_back(b.element(i));
  }
  return out;
}

// Assembles a basis from terms plus a term-level order predicate; terms are
// sorted first so indices are canonical.
template <typename LeqFn>
FiniteBasis basis_from_terms(std::string name, std::vector<Element> terms,
                             const Element& bottom_term, LeqFn&& leq) {
  std::sort(terms.begin(), terms.end());
  const std::size_t n = terms.size();
  std::vector<std::uint8_t> mat(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mat[i * n + j] = leq(terms[i], terms[j]) ? 1 : 0;
    }
  }
  auto it = std::lower_bound(terms.begin(), terms.end(), bottom_term);
  std::size_t bi = static_cast<std::size_t>(it - terms.begin());
  return FiniteBasis::unchecked_basis(std::move(name), std::move(terms),
                                      std::move(mat), bi);
}

}  // namespace detail

// Coalesced sum: a fresh shared bottom under tagged copies of the proper
// elements. |a+b| = |a|+|b|-1.
inline FiniteBasis coalesced_sum(const FiniteBasis& a, const FiniteBasis& b,
                                 const ConstructorParams& params = {}) {
  detail::guard_cardinality("sum", a.size() + b.size() - 1,
                            params.cardinality_cap);
  std::vector<Element> terms{Element::bottom()};
  for (const Element& x : detail::non_bottom_elements(a)) {
    terms.push_back(Element::inl(x));
  }
  for (const Element& y : detail::non_bottom_elements(b)) {
    terms.push_back(Element::inr(y));
  }
  auto leq = [&](const Element& x, const Element& y) {
    if (x.is_bottom()) return true;
    if (y.is_bottom()) return false;
    if (x.kind() != y.kind()) return false;
    if (x.kind() == TermKind::InL) return a.leq(x.child(0), y.child(0));
    return b.leq(x.child(0), y.child(0));
  };
  return detail::basis_from_terms(a.name() + "+" + b.name(), std::move(terms),
                                  Element::bottom(), leq);
}

// Smash product: proper pairs only, componentwise order, shared bottom.
// |a*b| = (|a|-1)(|b|-1)+1.
inline FiniteBasis strict_product(const FiniteBasis& a, const FiniteBasis& b,
                                  const ConstructorParams& params = {}) {
  detail::guard_cardinality(
      "prod", detail::sat_add(detail::sat_mul(a.size() - 1, b.size() - 1), 1),
      params.cardinality_cap);
  std::vector<Element> terms{Element::bottom()};
  for (const Element& x : detail::non_bottom_elements(a)) {
    for (const Element& y : detail::non_bottom_elements(b)) {
      terms.push_back(Element::pair(x, y));
    }
  }
  auto leq = [&](const Element& x, const Element& y) {
    if (x.is_bottom()) return true;
    if (y.is_bottom()) return false;
    return a.leq(x.child(0), y.child(0)) && b.leq(x.child(1), y.child(1));
  };
  return detail::basis_from_terms(a.name() + "*" + b.name(), std::move(terms),
                                  Element::bottom(), leq);
}

namespace detail {

// Support graph of a strict monotone map: sources with non-bottom values
// only. vals[i] is the target index chosen for source index i.
inline Element support_term(const FiniteBasis& src, const FiniteBasis& tgt,
                            const std::vector<std::size_t>& vals) {
  std::vector<std::pair<Element, Element>> support;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (vals[i] != tgt.bottom_index()) {
      support.emplace_back(src.element(i), tgt.element(vals[i]));
    }
  }
  return Element::am(std::move(support));
}

}  // namespace detail

// Strict continuous function space: strict mappings src -> tgt named by
// their non-bottom support graphs, ordered by pair-set inclusion (computed
// pointwise, which coincides on principal slices). Bottom is am{}.
// Mappings correspond to monotone carrier maps, so enumeration walks those
// with a DFS; strictness pins the source bottom to the target bottom, which
// is exactly the removal of the one-step bottom-to-value functions.
inline FiniteBasis strict_fun(const FiniteBasis& src, const FiniteBasis& tgt,
                              const ConstructorParams& params = {}) {
  detail::guard_cardinality("fun", detail::sat_mul(src.size(), tgt.size()),
                            params.cardinality_cap);
  const std::size_t n = src.size();
  const std::size_t m = tgt.size();
  std::vector<std::size_t> vals(n, tgt.bottom_index());
  std::vector<Element> terms;
  std::size_t work = 0;
  constexpr std::size_t kWorkCap = std::size_t{1} << 26;

  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (++work > kWorkCap) {
      throw cap_error("fun", "fun: enumeration work exceeds internal bound");
    }
    if (i == n) {
      if (terms.size() == params.cardinality_cap) {
        throw cap_error("fun",
                        "fun: carrier size exceeds cardinality cap " +
                            std::to_string(params.cardinality_cap));
      }
      terms.push_back(detail::support_term(src, tgt, vals));
      return;
    }
    if (i == src.bottom_index()) {
      self(self, i + 1);  // strictness: bottom maps to bottom
      return;
    }
    for (std::size_t v = 0; v < m; ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (src.leq(j, i) && !tgt.leq(vals[j], v)) ok = false;
        if (src.leq(i, j) && !tgt.leq(v, vals[j])) ok = false;
      }
      if (!ok) continue;
      vals[i] = v;
      self(self, i + 1);
      vals[i] = tgt.bottom_index();
    }
  };
  dfs(dfs, 0);

  auto value_in = [](const Element& f, const Element& s) -> const Element* {
    for (std::size_t k = 0; k < f.graph_size(); ++k) {
      if (f.graph_source(k) == s) return &f.graph_target(k);
    }
    return nullptr;
  };
  auto leq = [&](const Element& f, const Element& g) {
    for (std::size_t k = 0; k < f.graph_size(); ++k) {
      const Element* gv = value_in(g, f.graph_source(k));
      if (!gv || !tgt.leq(f.graph_target(k), *gv)) return false;
    }
    return true;
  };
  return detail::basis_from_terms(src.name() + "->" + tgt.name(),
                                  std::move(terms), Element::am({}), leq);
}

// Strict sequences of proper elements up to max_len, plus a fresh bottom.
// Sequences compare pointwise at equal length only.
inline FiniteBasis kleene_star(const FiniteBasis& d, std::size_t max_len,
                               const ConstructorParams& params = {}) {
  std::size_t predicted = 1;
  for (std::size_t k = 0; k <= max_len; ++k) {
    predicted = detail::sat_add(predicted, detail::sat_pow(d.size() - 1, k));
  }
  detail::guard_cardinality("star", predicted, params.cardinality_cap);

  std::vector<Element> proper = detail::non_bottom_elements(d);
  std::vector<Element> terms{Element::bottom()};
  std::vector<std::size_t> pick;
  auto emit = [&](auto&& self, std::size_t len) -> void {
    if (pick.size() == len) {
      std::vector<Element> members;
      members.reserve(len);
      for (std::size_t i : pick) members.push_back(proper[i]);
      terms.push_back(Element::seq(std::move(members)));
      return;
    }
    for (std::size_t i = 0; i < proper.size(); ++i) {
      pick.push_back(i);
      self(self, len);
      pick.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len > 0 && proper.empty()) break;
    emit(emit, len);
  }

  auto leq = [&](const Element& u, const Element& v) {
    if (u.is_bottom()) return true;
    if (v.is_bottom()) return false;
    if (u.kids().size() != v.kids().size()) return false;
    for (std::size_t i = 0; i < u.kids().size(); ++i) {
      if (!d.leq(u.child(i), v.child(i))) return false;
    }
    return true;
  };
  return detail::basis_from_terms(d.name() + "*", std::move(terms),
                                  Element::bottom(), leq);
}

// Record space over a proper label set: maps from label subsets to proper
// method elements. Absent labels read as bottom, so r1 is below r2 when r2
// defines at least r1's labels and dominates it pointwise; the empty
// record is the bottom. |result| = |m|^|labels|.
inline FiniteBasis record_basis(const std::vector<Element::Label>& labels,
                                const FiniteBasis& m,
                                const ConstructorParams& params = {},
                                RecordOrder order = RecordOrder::PointwiseGrowth) {
  if (order != RecordOrder::PointwiseGrowth) {
    throw input_error(
        "equal-keys record ordering is a reserved stub with no semantics");
  }
  std::vector<Element::Label> sorted_labels = labels;
  std::sort(sorted_labels.begin(), sorted_labels.end());
  for (std::size_t i = 0; i + 1 < sorted_labels.size(); ++i) {
    if (sorted_labels[i] == sorted_labels[i + 1]) {
      throw input_error("duplicate record label '" + sorted_labels[i] + "'");
    }
  }
  detail::guard_cardinality(
      "rec", detail::sat_pow(m.size(), sorted_labels.size()),
      params.cardinality_cap);

  std::vector<Element> proper = detail::non_bottom_elements(m);
  std::vector<Element> terms;
  const std::size_t nl = proper.empty() ? 0 : sorted_labels.size();
  std::vector<std::size_t> chosen;  // method index per subset position
  std::vector<std::size_t> subset;  // label indices in the current subset
  auto assign = [&](auto&& self, std::size_t pos) -> void {
    if (pos == subset.size()) {
      std::vector<std::pair<Element::Label, Element>> fields;
      fields.reserve(subset.size());
      for (std::size_t k = 0; k < subset.size(); ++k) {
        fields.emplace_back(sorted_labels[subset[k]], proper[chosen[k]]);
      }
      terms.push_back(Element::rec(std::move(fields)));
      return;
    }
    for (std::size_t v = 0; v < proper.size(); ++v) {
      chosen[pos] = v;
      self(self, pos + 1);
    }
  };
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nl); ++mask) {
    subset.clear();
    for (std::size_t l = 0; l < nl; ++l) {
      if (mask & (std::uint64_t{1} << l)) subset.push_back(l);
    }
    if (!subset.empty() && proper.empty()) continue;
    chosen.assign(subset.size(), 0);
    assign(assign, 0);
  }

  auto value_in = [](const Element& r,
                     const Element::Label& l) -> const Element* {
    for (std::size_t k = 0; k < r.labels().size(); ++k) {
      if (r.labels()[k] == l) return &r.child(k);
    }
    return nullptr;
  };
  auto leq = [&](const Element& r1, const Element& r2) {
    for (std::size_t k = 0; k < r1.labels().size(); ++k) {
      const Element* v2 = value_in(r2, r1.labels()[k]);
      if (!v2 || !m.leq(r1.child(k), *v2)) return false;
    }
    return true;
  };
  return detail::basis_from_terms("rec(" + m.name() + ")", std::move(terms),
                                  Element::rec({}), leq);
}

}  // namespace domkit
