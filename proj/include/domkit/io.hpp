#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "domkit/basis.hpp"
#include "domkit/element.hpp"

namespace domkit {

using json = nlohmann::ordered_json;

namespace detail {

// Recursive-descent parser for canonical term strings. Whitespace between
// tokens is tolerated on input; rendering never emits it.
class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Element parse_whole() {
    Element e = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after term");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("syntax error at offset " + std::to_string(pos_) +
                      ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "' " + what);
    }
    ++pos_;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string name(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  Element term() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::string tag(text_.substr(start, pos_ - start));
    if (tag == "bot") return Element::bottom();
    if (tag == "atom") {
      expect(':', "after 'atom'");
      return Element::atom(name("atom name"));
    }
    if (tag == "inl" || tag == "inr") {
      expect('(', ("after '" + tag + "'").c_str());
      Element inner = term();
      expect(')', ("closing '" + tag + "(...)'").c_str());
      return tag == "inl" ? Element::inl(std::move(inner))
                          : Element::inr(std::move(inner));
    }
    if (tag == "pair") {
      expect('(', "after 'pair'");
      Element first = term();
      if (peek_is(')')) fail("pair takes exactly 2 components");
      expect(',', "between pair components");
      Element second = term();
      if (peek_is(',')) fail("pair takes exactly 2 components");
      expect(')', "closing 'pair(...)'");
      return Element::pair(std::move(first), std::move(second));
    }
    if (tag == "seq") {
      expect('[', "after 'seq'");
      std::vector<Element> members;
      if (!peek_is(']')) {
        members.push_back(term());
        while (peek_is(',')) {
          ++pos_;
          members.push_back(term());
        }
      }
      expect(']', "closing 'seq[...]'");
      return Element::seq(std::move(members));
    }
    if (tag == "rec") {
      expect('{', "after 'rec'");
      std::vector<std::pair<Element::Label, Element>> fields;
      if (!peek_is('}')) {
        do {
          if (!fields.empty()) ++pos_;  // consume ','
          Element::Label l = name("record label");
          expect(':', "after record label");
          fields.emplace_back(std::move(l), term());
        } while (peek_is(','));
      }
      expect('}', "closing 'rec{...}'");
      return Element::rec(std::move(fields));
    }
    if (tag == "am") {
      expect('{', "after 'am'");
      std::vector<std::pair<Element, Element>> graph;
      if (!peek_is('}')) {
        do {
          if (!graph.empty()) ++pos_;  // consume ','
          expect('(', "opening a mapping pair");
          Element s = term();
          if (peek_is(')')) fail("mapping pair takes exactly 2 components");
          expect(',', "between mapping pair components");
          Element t = term();
          if (peek_is(',')) fail("mapping pair takes exactly 2 components");
          expect(')', "closing a mapping pair");
          graph.emplace_back(std::move(s), std::move(t));
        } while (peek_is(','));
      }
      expect('}', "closing 'am{...}'");
      return Element::am(std::move(graph));
    }
    if (tag.empty()) fail("expected a term");
    fail("unknown term tag '" + tag + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

inline Element parse_element(std::string_view text) {
  return detail::TermParser(text).parse_whole();
}

// Basis text format:
// {"name": str, "elements": [...], "bottom": str,
//  "order": [[lo, hi], ...], "closure": "auto"|"given"}
inline FiniteBasis parse_basis_json(const json& j) {
  if (!j.is_object()) throw input_error("basis document must be an object");
  for (const char* field : {"name", "elements", "bottom", "order", "closure"}) {
    if (!j.contains(field)) {
      throw input_error(std::string("basis document is missing required "
                                    "field '") +
                        field + "'");
    }
  }
  if (!j["name"].is_string()) throw input_error("'name' must be a string");
  if (!j["elements"].is_array()) {
    throw input_error("'elements' must be an array of term strings");
  }
  if (!j["bottom"].is_string()) {
    throw input_error("'bottom' must be a term string");
  }
  if (!j["order"].is_array()) {
    throw input_error("'order' must be an array of [lo, hi] pairs");
  }
  if (!j["closure"].is_string()) {
    throw input_error("'closure' must be \"auto\" or \"given\"");
  }

  std::vector<Element> elements;
  for (const auto& item : j["elements"]) {
    if (!item.is_string()) {
      throw input_error("'elements' entries must be term strings");
    }
    elements.push_back(parse_element(item.get<std::string>()));
  }
  Element bottom = parse_element(j["bottom"].get<std::string>());
  std::vector<std::pair<Element, Element>> order;
  for (const auto& item : j["order"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_string()) {
      throw input_error("'order' entries must be [lo, hi] term-string pairs");
    }
    order.emplace_back(parse_element(item[0].get<std::string>()),
                       parse_element(item[1].get<std::string>()));
  }
  std::string closure_text = j["closure"].get<std::string>();
  Closure closure;
  if (closure_text == "auto") {
    closure = Closure::Auto;
  } else if (closure_text == "given") {
    closure = Closure::Given;
  } else {
    throw input_error("'closure' must be \"auto\" or \"given\", got \"" +
                      closure_text + "\"");
  }
  return FiniteBasis::make_with_bottom(j["name"].get<std::string>(),
                                       std::move(elements), bottom, order,
                                       closure);
}

inline FiniteBasis parse_basis(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("JSON syntax error: ") + e.what());
  }
  return parse_basis_json(j);
}

// Canonical serialization: sorted elements, the full closed order relation,
// closure "given". parse(serialize(b)) reproduces b exactly.
inline json basis_to_json(const FiniteBasis& b) {
  json j;
  j["name"] = b.name();
  json elements = json::array();
  for (const Element& e : b.elements()) elements.push_back(e.str());
  j["elements"] = std::move(elements);
  j["bottom"] = b.bottom().str();
  json order = json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b.leq(i, k)) {
        order.push_back(json::array({b.element(i).str(), b.element(k).str()}));
      }
    }
  }
  j["order"] = std::move(order);
  j["closure"] = "given";
  return j;
}

inline std::string serialize_basis(const FiniteBasis& b) {
  return basis_to_json(b).dump(2) + "\n";
}

// DOT rendering of the covering relation (transitive reduction), bottom at
// the bottom rank. Node order and edge order follow the sorted carrier, so
// output is byte-stable. full_order switches to every strict pair.
inline std::string export_dot(const Poset& p, bool full_order = false) {
  std::string out;
  out += "digraph \"" + detail::dot_escape(p.name()) + "\" {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=box];\n";
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" +
           detail::dot_escape(p.element(i).str()) + "\"];\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k || !p.leq(i, k)) continue;
      if (!full_order) {
        bool covered = false;
        for (std::size_t mid = 0; mid < n && !covered; ++mid) {
          covered = mid != i && mid != k && p.leq(i, mid) && p.leq(mid, k);
        }
        if (covered) continue;
      }
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(k) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

inline json report_to_json(const SubsetReport& r) {
  json j;
  j["predicate"] = r.predicate;
  j["holds"] = r.holds;
  j["detail"] = r.detail;
  json witness = json::array();
  for (const Element& e : r.witness) witness.push_back(e.str());
  j["witness"] = std::move(witness);
  return j;
}

}  // namespace domkit
