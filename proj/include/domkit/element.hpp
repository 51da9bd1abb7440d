#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace domkit {

// Malformed caller input: unknown elements, bad terms, bad schemas.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed a configured cardinality guard. `step` names
// the operation that tripped the guard (star/fun/rec/sum/scan/...).
class cap_error : public std::runtime_error {
 public:
  cap_error(std::string step, const std::string& what)
      : std::runtime_error(what), step_(std::move(step)) {}
  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

enum class TermKind { Bottom, Atom, InL, InR, Pair, Seq, Rec, Am };

// Canonical structural term naming one basis element.
//
// Terms render as: bot | atom:NAME | inl(T) | inr(T) | pair(T,T) |
// seq[T,...] | rec{L:T,...} | am{(T,T),...}. Record labels are kept sorted
// and distinct, am graphs sorted and deduplicated, so structural equality of
// terms is equality of the named elements. Values are immutable after
// construction.
class Element {
 public:
  using Label = std::string;

  Element() : kind_(TermKind::Bottom) {}

  static Element bottom() { return Element(); }

  static Element atom(std::string name) {
    require_name(name, "atom");
    Element e;
    e.kind_ = TermKind::Atom;
    e.name_ = std::move(name);
    return e;
  }

  static Element inl(Element inner) {
    Element e;
    e.kind_ = TermKind::InL;
    e.kids_.push_back(std::move(inner));
    return e;
  }

  static Element inr(Element inner) {
    Element e;
    e.kind_ = TermKind::InR;
    e.kids_.push_back(std::move(inner));
    return e;
  }

  static Element pair(Element first, Element second) {
    Element e;
    e.kind_ = TermKind::Pair;
    e.kids_.push_back(std::move(first));
    e.kids_.push_back(std::move(second));
    return e;
  }

  static Element seq(std::vector<Element> members) {
    Element e;
    e.kind_ = TermKind::Seq;
    e.kids_ = std::move(members);
    return e;
  }

  // Fields are sorted by label; duplicate labels are rejected.
  static Element rec(std::vector<std::pair<Label, Element>> fields) {
    std::sort(fields.begin(), fields.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      if (fields[i].first == fields[i + 1].first) {
        throw input_error("rec term repeats label '" + fields[i].first + "'");
      }
    }
    Element e;
    e.kind_ = TermKind::Rec;
    for (auto& f : fields) {
      require_name(f.first, "rec label");
      e.labels_.push_back(std::move(f.first));
      e.kids_.push_back(std::move(f.second));
    }
    return e;
  }

  // Graph pairs are sorted and deduplicated.
  static Element am(std::vector<std::pair<Element, Element>> graph) {
    std::sort(graph.begin(), graph.end(), [](const auto& a, const auto& b) {
      int c = a.first.compare(b.first);
      return c != 0 ? c < 0 : a.second.compare(b.second) < 0;
    });
    graph.erase(std::unique(graph.begin(), graph.end(),
                            [](const auto& a, const auto& b) {
                              return a.first == b.first && a.second == b.second;
                            }),
                graph.end());
    Element e;
    e.kind_ = TermKind::Am;
    for (auto& p : graph) {
      e.kids_.push_back(std::move(p.first));
      e.kids_.push_back(std::move(p.second));
    }
    return e;
  }

  TermKind kind() const { return kind_; }
  bool is_bottom() const { return kind_ == TermKind::Bottom; }

  const std::string& atom_name() const { return name_; }

  // InL/InR payload, Pair coordinates, Seq members, Rec values (parallel to
  // labels()), Am flattened (source, target) pairs.
  const std::vector<Element>& kids() const { return kids_; }
  const Element& child(std::size_t i = 0) const { return kids_.at(i); }
  const std::vector<Label>& labels() const { return labels_; }

  std::size_t graph_size() const { return kids_.size() / 2; }
  const Element& graph_source(std::size_t i) const { return kids_[2 * i]; }
  const Element& graph_target(std::size_t i) const { return kids_[2 * i + 1]; }
  std::vector<std::pair<Element, Element>> graph() const {
    std::vector<std::pair<Element, Element>> g;
    g.reserve(graph_size());
    for (std::size_t i = 0; i < graph_size(); ++i) {
      g.emplace_back(graph_source(i), graph_target(i));
    }
    return g;
  }

  // Total order: kind rank first, then payload (size before content, so the
  // order is cheap and deterministic). Used for every canonical sort.
  int compare(const Element& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    if (kind_ == TermKind::Atom) return name_.compare(o.name_);
    if (labels_ != o.labels_) return labels_ < o.labels_ ? -1 : 1;
    if (kids_.size() != o.kids_.size()) {
      return kids_.size() < o.kids_.size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < kids_.size(); ++i) {
      int c = kids_[i].compare(o.kids_[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  bool operator==(const Element& o) const { return compare(o) == 0; }
  bool operator!=(const Element& o) const { return compare(o) != 0; }
  bool operator<(const Element& o) const { return compare(o) < 0; }

  // Canonical term string; parse_element() in io.hpp inverts it.
  std::string str() const {
    switch (kind_) {
      case TermKind::Bottom:
        return "bot";
      case TermKind::Atom:
        return "atom:" + name_;
      case TermKind::InL:
        return "inl(" + kids_[0].str() + ")";
      case TermKind::InR:
        return "inr(" + kids_[0].str() + ")";
      case TermKind::Pair:
        return "pair(" + kids_[0].str() + "," + kids_[1].str() + ")";
      case TermKind::Seq: {
        std::string s = "seq[";
        for (std::size_t i = 0; i < kids_.size(); ++i) {
          if (i) s += ",";
          s += kids_[i].str();
        }
        return s + "]";
      }
      case TermKind::Rec: {
        std::string s = "rec{";
        for (std::size_t i = 0; i < kids_.size(); ++i) {
          if (i) s += ",";
          s += labels_[i] + ":" + kids_[i].str();
        }
        return s + "}";
      }
      case TermKind::Am: {
        std::string s = "am{";
        for (std::size_t i = 0; i < graph_size(); ++i) {
          if (i) s += ",";
          s += "(" + graph_source(i).str() + "," + graph_target(i).str() + ")";
        }
        return s + "}";
      }
    }
    return "bot";
  }

 private:
  static void require_name(const std::string& s, const char* what) {
    if (s.empty()) throw input_error(std::string(what) + " name is empty");
    for (char c : s) {
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '_' || c == '-';
      if (!ok) {
        throw input_error(std::string(what) + " name '" + s +
                          "' contains '" + std::string(1, c) +
                          "' (allowed: [A-Za-z0-9_-])");
      }
    }
  }

  TermKind kind_;
  std::string name_;
  std::vector<Element> kids_;
  std::vector<Label> labels_;
};

}  // namespace domkit
