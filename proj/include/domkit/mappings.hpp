#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "domkit/basis.hpp"
#include "domkit/completion.hpp"
#include "domkit/element.hpp"

namespace domkit {

// A seed pair set admits no containing mapping: condition 3 demands a
// target lub that does not exist. The report carries the witness triple.
class closure_error : public std::runtime_error {
 public:
  explicit closure_error(SubsetReport report)
      : std::runtime_error(report.predicate + ": " + report.detail),
        report_(std::move(report)) {}
  const SubsetReport& report() const noexcept { return report_; }

 private:
  SubsetReport report_;
};

// Relation between two bases satisfying the four mapping conditions.
// Stored extensionally as the full sorted pair set; term() names it by the
// non-bottom support graph {(a, max slice(a)) | max != bottom}, which is
// the compact canonical form shared with the function-space constructor.
struct ApproxMapping {
  FiniteBasis source;
  FiniteBasis target;
  std::vector<std::pair<Element, Element>> pairs;

  // Slice at a: all b with (a,b) in pairs.
  std::vector<Element> slice(const Element& a) const {
    std::vector<Element> out;
    for (const auto& [s, t] : pairs) {
      if (s == a) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Greatest element of slice(a); valid mappings have principal slices.
  Element slice_max(const Element& a) const {
    std::vector<Element> sl = slice(a);
    if (sl.empty()) {
      throw input_error("mapping has an empty slice at " + a.str());
    }
    for (const Element& cand : sl) {
      bool top = true;
      for (const Element& other : sl) {
        if (!target.leq(other, cand)) {
          top = false;
          break;
        }
      }
      if (top) return cand;
    }
    throw input_error("mapping slice at " + a.str() + " has no greatest element");
  }

  Element term() const {
    std::vector<std::pair<Element, Element>> support;
    for (const Element& a : source.elements()) {
      Element m = slice_max(a);
      if (!m.is_bottom()) support.emplace_back(a, m);
    }
    return Element::am(std::move(support));
  }

  bool operator==(const ApproxMapping& o) const { return pairs == o.pairs; }
  bool operator<(const ApproxMapping& o) const { return pairs < o.pairs; }
};

namespace detail {

inline std::vector<std::pair<Element, Element>> canonical_pairs(
    std::vector<std::pair<Element, Element>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

// Dense membership matrix for a pair set over indexed carriers.
class PairMatrix {
 public:
  PairMatrix(const FiniteBasis& src, const FiniteBasis& tgt,
             const std::vector<std::pair<Element, Element>>& pairs)
      : n_(src.size()), m_(tgt.size()), bits_(n_ * m_, 0) {
    for (const auto& [a, b] : pairs) {
      bits_[src.index_of(a) * m_ + tgt.index_of(b)] = 1;
    }
  }
  bool at(std::size_t i, std::size_t j) const { return bits_[i * m_ + j]; }
  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }

 private:
  std::size_t n_, m_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace detail

// Per-condition verdicts for a candidate mapping relation.
struct AmConditions {
  SubsetReport pointed;
  SubsetReport downward_closed;
  SubsetReport lub_closed;
  SubsetReport monotone;

  bool holds() const {
    return pointed.holds && downward_closed.holds && lub_closed.holds &&
           monotone.holds;
  }
  SubsetReport summary() const {
    for (const SubsetReport* r :
         {&pointed, &downward_closed, &lub_closed, &monotone}) {
      if (!r->holds) return *r;
    }
    return SubsetReport::pass("approximable-mapping");
  }
};

// Checks conditions 1-4 directly on the raw pair set. Unknown elements in
// pairs throw input_error; each condition reports its own first witness.
inline AmConditions check_am(const FiniteBasis& source,
                             const FiniteBasis& target,
                             const std::vector<std::pair<Element, Element>>& pairs) {
  detail::PairMatrix rel(source, target, pairs);
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  AmConditions c;

  if (rel.at(source.bottom_index(), target.bottom_index())) {
    c.pointed = SubsetReport::pass("am-condition-1");
  } else {
    c.pointed = SubsetReport::fail(
        "am-condition-1", "(bottom, bottom) is missing",
        {source.bottom(), target.bottom()});
  }

  c.downward_closed = SubsetReport::pass("am-condition-2");
  for (std::size_t a = 0; a < n && c.downward_closed.holds; ++a) {
    for (std::size_t b = 0; b < m && c.downward_closed.holds; ++b) {
      if (!rel.at(a, b)) continue;
      for (std::size_t b2 = 0; b2 < m; ++b2) {
        if (target.leq(b2, b) && !rel.at(a, b2)) {
          c.downward_closed = SubsetReport::fail(
              "am-condition-2",
              "(" + source.element(a).str() + ", " + target.element(b).str() +
                  ") present but (" + source.element(a).str() + ", " +
                  target.element(b2).str() + ") absent",
              {source.element(a), target.element(b), target.element(b2)});
          break;
        }
      }
    }
  }

  c.lub_closed = SubsetReport::pass("am-condition-3");
  for (std::size_t a = 0; a < n && c.lub_closed.holds; ++a) {
    for (std::size_t b1 = 0; b1 < m && c.lub_closed.holds; ++b1) {
      if (!rel.at(a, b1)) continue;
      for (std::size_t b2 = b1 + 1; b2 < m; ++b2) {
        if (!rel.at(a, b2)) continue;
        auto l = target.lub_index({b1, b2});
        if (!l) {
          c.lub_closed = SubsetReport::fail(
              "am-condition-3",
              target.element(b1).str() + " and " + target.element(b2).str() +
                  " share the slice at " + source.element(a).str() +
                  " but have no lub in the target",
              {source.element(a), target.element(b1), target.element(b2)});
          break;
        }
        if (!rel.at(a, *l)) {
          c.lub_closed = SubsetReport::fail(
              "am-condition-3",
              "(" + source.element(a).str() + ", " +
                  target.element(*l).str() + ") missing (lub of slice pair)",
              {source.element(a), target.element(b1), target.element(b2)});
          break;
        }
      }
    }
  }

  c.monotone = SubsetReport::pass("am-condition-4");
  for (std::size_t a = 0; a < n && c.monotone.holds; ++a) {
    for (std::size_t b = 0; b < m && c.monotone.holds; ++b) {
      if (!rel.at(a, b)) continue;
      for (std::size_t a2 = 0; a2 < n; ++a2) {
        if (source.leq(a, a2) && !rel.at(a2, b)) {
          c.monotone = SubsetReport::fail(
              "am-condition-4",
              "(" + source.element(a).str() + ", " + target.element(b).str() +
                  ") with " + source.element(a).str() + " below " +
                  source.element(a2).str() + " requires (" +
                  source.element(a2).str() + ", " + target.element(b).str() +
                  ")",
              {source.element(a), source.element(a2), target.element(b)});
          break;
        }
      }
    }
  }
  return c;
}

namespace detail {

// A valid mapping is determined by a monotone carrier map a -> max slice(a);
// slices are ideals of the target, hence principal at finite scale.
inline ApproxMapping am_from_monotone_map(const FiniteBasis& source,
                                          const FiniteBasis& target,
                                          const std::vector<std::size_t>& m) {
  std::vector<std::pair<Element, Element>> pairs;
  for (std::size_t a = 0; a < source.size(); ++a) {
    for (std::size_t b = 0; b < target.size(); ++b) {
      if (target.leq(b, m[a])) {
        pairs.emplace_back(source.element(a), target.element(b));
      }
    }
  }
  return ApproxMapping{source, target, canonical_pairs(std::move(pairs))};
}

}  // namespace detail

// All mappings source -> target, canonically sorted. Enumerates monotone
// carrier maps (the bijective view above); the brute-force relation filter
// lives in the test oracles and must agree.
inline std::vector<ApproxMapping> enumerate_ams(const FiniteBasis& source,
                                                const FiniteBasis& target,
                                                std::size_t cap = 20) {
  if (source.size() * target.size() > cap) {
    throw cap_error("enumerate-ams",
                    "carrier product " +
                        std::to_string(source.size() * target.size()) +
                        " exceeds cap " + std::to_string(cap));
  }
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  std::vector<ApproxMapping> out;
  std::vector<std::size_t> assign(n, 0);
  while (true) {
    bool monotone = true;
    for (std::size_t i = 0; i < n && monotone; ++i) {
      for (std::size_t j = 0; j < n && monotone; ++j) {
        if (source.leq(i, j) && !target.leq(assign[i], assign[j])) {
          monotone = false;
        }
      }
    }
    if (monotone) {
      out.push_back(detail::am_from_monotone_map(source, target, assign));
    }
    std::size_t k = 0;
    while (k < n && assign[k] + 1 == m) assign[k++] = 0;
    if (k == n) break;
    ++assign[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// {b | exists a in s with (a,b) in rel}.
inline std::vector<Element> set_image(
    const std::vector<std::pair<Element, Element>>& rel,
    const std::vector<Element>& s) {
  std::vector<Element> out;
  for (const auto& [a, b] : rel) {
    if (std::find(s.begin(), s.end(), a) != s.end()) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Element> set_image(const ApproxMapping& am,
                                      const std::vector<Element>& s) {
  return set_image(am.pairs, s);
}

struct ImageCheck {
  SubsetReport report;
  std::vector<Element> image;
};

inline ImageCheck am_image_is_ideal(const ApproxMapping& am, const Ideal& i) {
  SubsetReport pre = is_ideal(am.source, i.members);
  if (!pre.holds) {
    throw input_error("argument is not an ideal of the source: " + pre.detail);
  }
  std::vector<Element> img = set_image(am, i.members);
  SubsetReport rep = is_ideal(am.target, img);
  if (!rep.holds) {
    return {SubsetReport::fail("am-image-ideal",
                               "image fails is_ideal: " + rep.detail,
                               rep.witness),
            std::move(img)};
  }
  return {SubsetReport::pass("am-image-ideal"), std::move(img)};
}

inline SubsetReport am_monotone(const ApproxMapping& am, const Ideal& i1,
                                const Ideal& i2) {
  if (!std::includes(i2.members.begin(), i2.members.end(), i1.members.begin(),
                     i1.members.end())) {
    throw input_error("am_monotone requires i1 to be contained in i2");
  }
  for (const Ideal* i : {&i1, &i2}) {
    SubsetReport pre = is_ideal(am.source, i->members);
    if (!pre.holds) {
      throw input_error("argument is not an ideal of the source: " +
                        pre.detail);
    }
  }
  std::vector<Element> img1 = set_image(am, i1.members);
  std::vector<Element> img2 = set_image(am, i2.members);
  for (const Element& b : img1) {
    if (!std::binary_search(img2.begin(), img2.end(), b)) {
      return SubsetReport::fail(
          "am-monotone", b.str() + " is in the smaller image only", {b});
    }
  }
  return SubsetReport::pass("am-monotone");
}

// Least mapping containing seed: close seed + (bottom,bottom) under
// conditions 2-4 to a fixed point. Throws closure_error when condition 3
// demands a nonexistent target lub, since no containing mapping exists.
inline ApproxMapping smallest_am_containing(
    const FiniteBasis& source, const FiniteBasis& target,
    const std::vector<std::pair<Element, Element>>& seed) {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  std::vector<std::uint8_t> rel(n * m, 0);
  for (const auto& [a, b] : seed) {
    rel[source.index_of(a) * m + target.index_of(b)] = 1;
  }
  rel[source.bottom_index() * m + target.bottom_index()] = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (!rel[a * m + b]) continue;
        for (std::size_t b2 = 0; b2 < m; ++b2) {
          if (target.leq(b2, b) && !rel[a * m + b2]) {
            rel[a * m + b2] = 1;
            changed = true;
          }
        }
        for (std::size_t a2 = 0; a2 < n; ++a2) {
          if (source.leq(a, a2) && !rel[a2 * m + b]) {
            rel[a2 * m + b] = 1;
            changed = true;
          }
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b1 = 0; b1 < m; ++b1) {
        if (!rel[a * m + b1]) continue;
        for (std::size_t b2 = b1 + 1; b2 < m; ++b2) {
          if (!rel[a * m + b2]) continue;
          auto l = target.lub_index({b1, b2});
          if (!l) {
            throw closure_error(SubsetReport::fail(
                "no-containing-am",
                "condition 3 requires the lub of " +
                    target.element(b1).str() + " and " +
                    target.element(b2).str() + " at source " +
                    source.element(a).str() + ", which does not exist",
                {source.element(a), target.element(b1),
                 target.element(b2)}));
          }
          if (!rel[a * m + *l]) {
            rel[a * m + *l] = 1;
            changed = true;
          }
        }
      }
    }
  }
  std::vector<std::pair<Element, Element>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (rel[a * m + b]) {
        pairs.emplace_back(source.element(a), target.element(b));
      }
    }
  }
  return ApproxMapping{source, target, detail::canonical_pairs(std::move(pairs))};
}

// Extensional function between two completions: graph[i] is the target
// ideal index for source ideal i (aligned with the completion order).
struct IdealFunction {
  CompletedDomain source;
  CompletedDomain target;
  std::vector<std::size_t> graph;

  const Ideal& value_at(std::size_t i) const { return target.ideal_at(graph[i]); }
};

inline IdealFunction am_to_ideal_function(const ApproxMapping& am) {
  CompletedDomain src = ideal_completion(am.source);
  CompletedDomain tgt = ideal_completion(am.target);
  std::vector<std::size_t> graph;
  graph.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<Element> img = set_image(am, src.ideal_at(i).members);
    graph.push_back(tgt.as_basis().index_of(Element::seq(img)));
  }
  return IdealFunction{std::move(src), std::move(tgt), std::move(graph)};
}

// Continuity: f preserves unions of directed ideal families. Monotonicity
// is checked first so its witness surfaces on plain order violations.
inline SubsetReport check_continuous(const IdealFunction& f,
                                     std::size_t cap = 18) {
  const FiniteBasis& sp = f.source.as_basis();
  const std::size_t n = sp.size();
  if (f.graph.size() != n) {
    return SubsetReport::fail("continuous",
                              "function is not total on the source completion");
  }
  if (n > cap) {
    throw cap_error("check-continuous",
                    "subset scan over " + std::to_string(n) +
                        " ideals exceeds cap " + std::to_string(cap));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sp.leq(i, j) && !f.target.as_basis().leq(f.graph[i], f.graph[j])) {
        return SubsetReport::fail(
            "continuous",
            "not monotone: " + sp.element(i).str() + " below " +
                sp.element(j).str() + " but images are not ordered",
            {sp.element(i), sp.element(j)});
      }
    }
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) s.push_back(i);
    }
    bool directed = true;
    for (std::size_t a = 0; a < s.size() && directed; ++a) {
      for (std::size_t b = a + 1; b < s.size() && directed; ++b) {
        bool bounded_in_s = false;
        for (std::size_t u : s) {
          if (sp.leq(s[a], u) && sp.leq(s[b], u)) {
            bounded_in_s = true;
            break;
          }
        }
        directed = bounded_in_s;
      }
    }
    if (!directed) continue;
    auto l = sp.lub_index(s);
    if (!l) continue;  // completions are cpos; other posets get no verdict here
    std::vector<Element> image_union;
    for (std::size_t i : s) {
      const std::vector<Element>& mem = f.value_at(i).members;
      image_union.insert(image_union.end(), mem.begin(), mem.end());
    }
    std::sort(image_union.begin(), image_union.end());
    image_union.erase(std::unique(image_union.begin(), image_union.end()),
                      image_union.end());
    if (f.value_at(*l).members != image_union) {
      return SubsetReport::fail(
          "continuous",
          "image of the directed family's lub differs from the union of "
          "images",
          sp.elements_at(s));
    }
  }
  return SubsetReport::pass("continuous");
}

inline ApproxMapping compose_ams(const ApproxMapping& f,
                                 const ApproxMapping& g) {
  if (!f.target.same_structure(g.source)) {
    throw input_error("compose_ams requires f.target = g.source");
  }
  std::vector<std::pair<Element, Element>> comp;
  for (const auto& [a, b] : f.pairs) {
    for (const auto& [b2, c] : g.pairs) {
      if (b == b2) comp.emplace_back(a, c);
    }
  }
  return smallest_am_containing(f.source, g.target,
                                detail::canonical_pairs(std::move(comp)));
}

}  // namespace domkit
