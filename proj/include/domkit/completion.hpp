#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "domkit/basis.hpp"
#include "domkit/element.hpp"

namespace domkit {

// An ideal of a host basis: downward-closed directed member set. Renders
// canonically as a seq term over the sorted members.
struct Ideal {
  std::vector<Element> members;

  Element term() const { return Element::seq(members); }

  bool operator==(const Ideal& o) const { return members == o.members; }
  bool operator<(const Ideal& o) const {
    return term().compare(o.term()) < 0;
  }
};

inline Ideal principal_ideal(const FiniteBasis& b, const Element& x) {
  return Ideal{lower_set(b, x)};
}

// Every ideal of a finite basis is principal (a finite directed set
// contains its own lub), so generation is one lower-set per element.
// The exhaustive variant below exists as the slow cross-check.
inline std::vector<Ideal> enumerate_ideals(const FiniteBasis& b) {
  std::vector<Ideal> out;
  out.reserve(b.size());
  for (const Element& x : b.elements()) out.push_back(principal_ideal(b, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Ideal> enumerate_ideals_exhaustive(const FiniteBasis& b,
                                                      std::size_t cap = 20) {
  if (b.size() > cap) {
    throw cap_error("enumerate-ideals",
                    "subset scan over " + std::to_string(b.size()) +
                        " elements exceeds cap " + std::to_string(cap));
  }
  std::vector<Ideal> out;
  const std::size_t n = b.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Element> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) s.push_back(b.element(i));
    }
    if (is_ideal(b, s).holds) out.push_back(Ideal{std::move(s)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The completion of a finite basis: all ideals ordered by inclusion,
// exposed both as the ideal list and as a basis over seq terms. Bottom is
// the ideal {bot}, which also sorts first (fewest members).
class CompletedDomain {
 public:
  CompletedDomain(FiniteBasis host, std::vector<Ideal> ideals)
      : host_(std::move(host)), ideals_(std::move(ideals)) {
    std::sort(ideals_.begin(), ideals_.end());
    const std::size_t n = ideals_.size();
    std::vector<Element> terms;
    terms.reserve(n);
    for (const Ideal& d : ideals_) terms.push_back(d.term());
    std::vector<std::uint8_t> leq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        leq[i * n + j] = std::includes(ideals_[j].members.begin(),
                                       ideals_[j].members.end(),
                                       ideals_[i].members.begin(),
                                       ideals_[i].members.end())
                             ? 1
                             : 0;
      }
    }
    std::size_t bottom = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool least = true;
      for (std::size_t j = 0; j < n && least; ++j) least = leq[i * n + j];
      if (least) {
        bottom = i;
        break;
      }
    }
    poset_ = FiniteBasis::unchecked_basis(host_.name() + "|completion",
                                          std::move(terms), std::move(leq),
                                          bottom);
  }

  const FiniteBasis& host() const { return host_; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  std::size_t size() const { return ideals_.size(); }

  // The completion viewed as a basis itself (terms sorted like ideals_).
  const FiniteBasis& as_basis() const { return poset_; }

  const Ideal& ideal_at(std::size_t i) const { return ideals_[i]; }

  // x maps to its principal ideal's term.
  Element embed(const Element& x) const {
    return principal_ideal(host_, x).term();
  }

 private:
  FiniteBasis host_;
  std::vector<Ideal> ideals_;  // sorted, aligned with poset_.elements()
  FiniteBasis poset_;
};

inline CompletedDomain ideal_completion(const FiniteBasis& b) {
  return CompletedDomain(b, enumerate_ideals(b));
}

// cpo check by exhaustive directed-subset scan. The empty subset counts as
// directed here and demands a least element, so pointedness is part of the
// verdict. cap bounds the 2^n enumeration.
inline SubsetReport check_cpo(const Poset& p, std::size_t cap = 18) {
  const std::size_t n = p.size();
  if (n > cap) {
    throw cap_error("check-cpo", "subset scan over " + std::to_string(n) +
                                     " elements exceeds cap " +
                                     std::to_string(cap));
  }
  if (!p.least_index()) {
    return SubsetReport::fail(
        "cpo", "the empty directed subset has no lub (no least element)");
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
          if (p.leq(s[a], u) && p.leq(s[b], u)) {
            bounded_in_s = true;
            break;
          }
        }
        directed = bounded_in_s;
      }
    }
    if (!directed) continue;
    if (!p.lub_index(s)) {
      return SubsetReport::fail("cpo", "directed subset without a lub",
                                p.elements_at(s));
    }
  }
  return SubsetReport::pass("cpo");
}

// Finite (compact) elements: x such that every non-empty directed subset
// with lub x already contains x. On a finite poset the scan confirms every
// element, since a finite directed set contains its own lub.
inline std::vector<Element> finite_element_terms(const Poset& p,
                                                 std::size_t cap = 18) {
  const std::size_t n = p.size();
  if (n > cap) {
    throw cap_error("finite-elements",
                    "subset scan over " + std::to_string(n) +
                        " elements exceeds cap " + std::to_string(cap));
  }
  std::vector<std::uint8_t> finite(n, 1);
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
          if (p.leq(s[a], u) && p.leq(s[b], u)) {
            bounded_in_s = true;
            break;
          }
        }
        directed = bounded_in_s;
      }
    }
    if (!directed) continue;
    auto l = p.lub_index(s);
    if (!l) continue;
    if (!std::binary_search(s.begin(), s.end(), *l)) finite[*l] = 0;
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (finite[i]) out.push_back(p.element(i));
  }
  return out;
}

inline std::vector<Ideal> finite_elements(const CompletedDomain& c,
                                          std::size_t cap = 18) {
  std::vector<Element> terms = finite_element_terms(c.as_basis(), cap);
  std::vector<Ideal> out;
  out.reserve(terms.size());
  for (const Element& t : terms) {
    out.push_back(c.ideal_at(c.as_basis().index_of(t)));
  }
  return out;
}

// Order-isomorphism witness: a bijection preserving leq both ways.
struct IsoWitness {
  std::vector<std::pair<Element, Element>> mapping;
};

namespace detail {

struct IsoSignature {
  std::size_t height = 0;
  std::size_t below = 0;  // |{y : y <= x}|
  std::size_t above = 0;  // |{y : x <= y}|

  auto tie() const { return std::tie(height, below, above); }
  bool operator==(const IsoSignature& o) const { return tie() == o.tie(); }
  bool operator<(const IsoSignature& o) const { return tie() < o.tie(); }
};

inline std::vector<IsoSignature> iso_signatures(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<IsoSignature> sig(n);
  std::vector<std::size_t> height(n, 0);
  // longest strict chain ending at x; elements iterated by below-count so
  // all strict predecessors are finished first
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p.leq(j, i)) ++below[i];
      if (p.leq(i, j)) ++sig[i].above;
    }
    sig[i].below = below[i];
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  for (std::size_t x : order) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y != x && p.leq(y, x)) {
        height[x] = std::max(height[x], height[y] + 1);
      }
    }
    sig[x].height = height[x];
  }
  return sig;
}

}  // namespace detail

// Exhaustive isomorphism search with signature pruning. Deterministic:
// candidates are tried in element order.
inline std::optional<IsoWitness> check_isomorphic(const Poset& a,
                                                  const Poset& b,
                                                  std::size_t cap = 12) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  if (n > cap) {
    throw cap_error("isomorphism", "search over " + std::to_string(n) +
                                       " elements exceeds cap " +
                                       std::to_string(cap));
  }
  std::vector<detail::IsoSignature> sa = detail::iso_signatures(a);
  std::vector<detail::IsoSignature> sb = detail::iso_signatures(b);
  {
    auto pa = sa;
    auto pb = sb;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (!(pa == pb)) return std::nullopt;
  }
  // map a-elements in rarest-signature-first order
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (!(sa[x] == sa[y])) return sa[x] < sa[y];
    return x < y;
  });
  std::vector<std::size_t> image(n, n);
  std::vector<std::uint8_t> used(n, 0);
  auto dfs = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || !(sa[x] == sb[y])) continue;
      bool ok = true;
      for (std::size_t m = 0; m < k && ok; ++m) {
        std::size_t px = order[m];
        std::size_t py = image[px];
        ok = (a.leq(x, px) == b.leq(y, py)) && (a.leq(px, x) == b.leq(py, y));
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      used[y] = 0;
      image[x] = n;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  IsoWitness w;
  w.mapping.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.mapping.emplace_back(a.element(i), b.element(image[i]));
  }
  return w;
}

// A finite pointed cpo is a domain when its finite elements form a
// finitary basis whose completion it is (up to isomorphism).
inline SubsetReport check_domain(const Poset& p, std::size_t iso_cap = 12,
                                 std::size_t scan_cap = 18) {
  SubsetReport cpo = check_cpo(p, scan_cap);
  if (!cpo.holds) {
    return SubsetReport::fail("domain", "not a cpo: " + cpo.detail,
                              cpo.witness);
  }
  std::vector<Element> fin = finite_element_terms(p, scan_cap);
  Poset sub = induced_subposet(p, fin);
  SubsetReport finitary = is_finitary_basis(sub);
  if (!finitary.holds) {
    return SubsetReport::fail(
        "domain", "finite elements are not a finitary basis: " +
                      finitary.detail,
        finitary.witness);
  }
  CompletedDomain comp = ideal_completion(FiniteBasis::adopt(sub));
  if (!check_isomorphic(p, comp.as_basis(), iso_cap)) {
    return SubsetReport::fail(
        "domain",
        "poset is not isomorphic to the completion of its finite elements");
  }
  return SubsetReport::pass("domain");
}

// Subdomain check, four clauses in order. Clause 4 compares the lub
// tables with the result quantified over d's carrier: for d1,d2,d3 in d,
// d1 v d2 = d3 in d exactly when it does in e.
inline SubsetReport check_subdomain(const FiniteBasis& d,
                                    const FiniteBasis& e) {
  for (const Element& x : d.elements()) {
    if (!e.contains(x)) {
      return SubsetReport::fail(
          "subdomain", "clause 1: element " + x.str() + " is not in " +
                           e.name(),
          {x});
    }
  }
  if (d.bottom() != e.bottom()) {
    return SubsetReport::fail(
        "subdomain", "clause 2: bottoms differ (" + d.bottom().str() +
                         " vs " + e.bottom().str() + ")",
        {d.bottom(), e.bottom()});
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      bool in_d = d.leq(i, j);
      bool in_e = e.leq(d.element(i), d.element(j));
      if (in_d != in_e) {
        return SubsetReport::fail(
            "subdomain", "clause 3: order disagrees on (" +
                             d.element(i).str() + ", " + d.element(j).str() +
                             ")",
            {d.element(i), d.element(j)});
      }
    }
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i; j < d.size(); ++j) {
      auto ld = d.lub_index({i, j});
      auto le = e.lub_index(
          {e.index_of(d.element(i)), e.index_of(d.element(j))});
      for (std::size_t k = 0; k < d.size(); ++k) {
        bool lhs = ld && *ld == k;
        bool rhs = le && e.element(*le) == d.element(k);
        if (lhs != rhs) {
          return SubsetReport::fail(
              "subdomain",
              "clause 4: lub of (" + d.element(i).str() + ", " +
                  d.element(j).str() + ") at " + d.element(k).str() +
                  " disagrees between the bases",
              {d.element(i), d.element(j), d.element(k)});
        }
      }
    }
  }
  return SubsetReport::pass("subdomain");
}

}  // namespace domkit
