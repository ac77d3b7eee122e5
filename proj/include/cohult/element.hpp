#pragma once

// Structure elements.  Finite profile: a member id.  Symbolic profile: a
// sparse exact-rational coordinate vector over a finite ordered basis,
// compared lexicographically (index 0 is the Archimedean-largest basis
// vector, so ascending index order is significance order).

#include <cctype>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cohult/errors.hpp"
#include "cohult/rational.hpp"

namespace cohult {

using Coords = std::map<uint32_t, Rat>;  // basis index -> nonzero coordinate

struct Element {
  std::variant<uint32_t, Coords> v;

  bool finite() const { return v.index() == 0; }
  uint32_t id() const { return std::get<0>(v); }
  const Coords& coords() const { return std::get<1>(v); }
};

inline Element el_fin(uint32_t id) { return Element{id}; }

inline Element el_vec(Coords c) {
  for (auto it = c.begin(); it != c.end();)
    it = it->second == 0 ? c.erase(it) : std::next(it);
  return Element{std::move(c)};
}

inline Element el_zero() { return el_vec({}); }

inline Element el_basis(uint32_t i, const Rat& q = Rat(1)) {
  return el_vec({{i, q}});
}

inline Element el_add(const Element& a, const Element& b) {
  require(!a.finite() && !b.finite(), "el_add: symbolic elements required");
  Coords out = a.coords();
  for (const auto& [i, q] : b.coords()) out[i] += q;
  return el_vec(std::move(out));
}

inline Element el_neg(const Element& a) {
  require(!a.finite(), "el_neg: symbolic element required");
  Coords out;
  for (const auto& [i, q] : a.coords()) out.emplace(i, -q);
  return Element{std::move(out)};
}

inline Element el_scale(const Rat& q, const Element& a) {
  require(!a.finite(), "el_scale: symbolic element required");
  Coords out;
  if (q != 0)
    for (const auto& [i, c] : a.coords()) out.emplace(i, q * c);
  return Element{std::move(out)};
}

inline Element el_sub(const Element& a, const Element& b) {
  return el_add(a, el_neg(b));
}

// -1 / 0 / +1 in the lexicographic order on descending basis.
inline int el_cmp(const Element& a, const Element& b) {
  require(!a.finite() && !b.finite(), "el_cmp: symbolic elements required");
  auto ia = a.coords().begin(), ea = a.coords().end();
  auto ib = b.coords().begin(), eb = b.coords().end();
  while (ia != ea || ib != eb) {
    uint32_t ka = ia == ea ? UINT32_MAX : ia->first;
    uint32_t kb = ib == eb ? UINT32_MAX : ib->first;
    if (ka < kb) return ia->second < 0 ? -1 : 1;
    if (kb < ka) return ib->second > 0 ? -1 : 1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    ++ia, ++ib;
  }
  return 0;
}

inline bool operator==(const Element& a, const Element& b) {
  if (a.finite() != b.finite()) return false;
  return a.finite() ? a.id() == b.id() : a.coords() == b.coords();
}
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }

inline bool operator<(const Element& a, const Element& b) {
  if (a.finite() != b.finite()) return a.finite();
  return a.finite() ? a.id() < b.id() : el_cmp(a, b) < 0;
}

// Text form: finite "3"; symbolic "0" or "1*one + -2/3*eps" (ascending
// basis index).  Used verbatim in structure and scenario files.
inline std::string element_str(const Element& e,
                               const std::vector<std::string>& basis) {
  if (e.finite()) return std::to_string(e.id());
  if (e.coords().empty()) return "0";
  std::string out;
  for (const auto& [i, q] : e.coords()) {
    if (!out.empty()) out += " + ";
    require(i < basis.size(), "element_str: coordinate outside basis");
    out += rat_str(q) + "*" + basis[i];
  }
  return out;
}

// Parses the element_str form.  '+' occurs only as the summand separator
// (coefficient signs are leading '-'), so splitting on '+' is unambiguous.
inline Element element_parse(std::string_view src,
                             const std::vector<std::string>& basis,
                             size_t offset = 0) {
  auto trim = [](std::string_view s, size_t& off) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1), ++off;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  size_t off = offset;
  std::string_view body = trim(src, off);
  if (body == "0") return el_zero();
  Coords out;
  size_t start = 0;
  while (start <= body.size()) {
    size_t plus = body.find('+', start);
    size_t end = plus == std::string_view::npos ? body.size() : plus;
    size_t p_off = off + start;
    std::string_view part = trim(body.substr(start, end - start), p_off);
    size_t star = part.find('*');
    if (part.empty() || star == std::string_view::npos)
      throw ParseError("expected q*basis in element", p_off);
    Rat q = rat_parse(part.substr(0, star), p_off);
    std::string name(part.substr(star + 1));
    uint32_t idx = UINT32_MAX;
    for (uint32_t i = 0; i < basis.size(); ++i)
      if (basis[i] == name) idx = i;
    if (idx == UINT32_MAX)
      throw ParseError("unknown basis vector '" + name + "'", p_off + star + 1);
    if (out.count(idx))
      throw ParseError("duplicate basis vector '" + name + "'", p_off + star + 1);
    out.emplace(idx, q);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return el_vec(std::move(out));
}

}  // namespace cohult
