#pragma once

// Vocabularies and the two structure profiles.
//
// Finite profile: explicit universe {0, ..., size-1}, total function tables
// (little-endian mixed-radix indexing, as everywhere else), relation tables
// as sets of encoded tuples.  `<` and `=` are builtin: the natural order and
// identity on member ids.
//
// Symbolic profile: the ordered Q-vector space spanned by a named basis
// listed in descending Archimedean order, compared lexicographically.  Term
// formers +, -, scl_q are builtin; each basis name doubles as a constant,
// as does 0.  The axioms of ordered divisible abelian groups hold by
// construction (and are spot-checked in the suite).

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cohult/cube.hpp"
#include "cohult/element.hpp"
#include "cohult/errors.hpp"

namespace cohult {

struct Vocabulary {
  std::map<std::string, uint32_t> functions;  // name -> arity
  std::map<std::string, uint32_t> relations;  // extra relations; < = builtin
  std::vector<std::string> constants;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

struct FiniteStructureData {
  uint32_t size = 0;
  std::map<std::string, uint32_t> constants;
  std::map<std::string, std::vector<uint32_t>> functions;  // value tables
  std::map<std::string, std::set<uint64_t>> relations;     // encoded tuples

  friend bool operator==(const FiniteStructureData&,
                         const FiniteStructureData&) = default;
};

struct VectorSpaceData {
  std::vector<std::string> basis;  // descending Archimedean order

  friend bool operator==(const VectorSpaceData&,
                         const VectorSpaceData&) = default;
};

namespace detail {
inline uint64_t table_size(uint32_t base, uint32_t arity) {
  uint64_t n = 1;
  for (uint32_t i = 0; i < arity; ++i) {
    n *= base;
    require(n <= (uint64_t{1} << 32), "table_size: table too large");
  }
  return n;
}
}  // namespace detail

class Structure {
 public:
  static Structure finite(Vocabulary vocab, FiniteStructureData data) {
    require(data.size >= 1, "finite structure: empty universe");
    for (const auto& name : vocab.constants) {
      auto it = data.constants.find(name);
      require(it != data.constants.end() && it->second < data.size,
              "finite structure: constant '" + name + "' missing or bad");
    }
    require(data.constants.size() == vocab.constants.size(),
            "finite structure: undeclared constant value");
    require(data.functions.size() == vocab.functions.size(),
            "finite structure: function table count mismatch");
    for (const auto& [name, arity] : vocab.functions) {
      auto it = data.functions.find(name);
      require(it != data.functions.end(), "finite structure: missing table");
      require(it->second.size() == detail::table_size(data.size, arity),
              "finite structure: table for '" + name + "' not total");
      for (uint32_t v : it->second)
        require(v < data.size, "finite structure: table value out of range");
    }
    require(data.relations.size() == vocab.relations.size(),
            "finite structure: relation table count mismatch");
    for (const auto& [name, arity] : vocab.relations) {
      auto it = data.relations.find(name);
      require(it != data.relations.end(), "finite structure: missing relation");
      for (uint64_t t : it->second)
        require(t < detail::table_size(data.size, arity),
                "finite structure: relation tuple out of range");
    }
    Structure s;
    s.vocab_ = std::move(vocab);
    s.data_ = std::move(data);
    return s;
  }

  static Structure vector_space(std::vector<std::string> basis) {
    require(!basis.empty(), "vector space: empty basis");
    std::set<std::string> seen;
    for (const auto& b : basis) {
      require(!b.empty() && b != "0", "vector space: bad basis name");
      require(seen.insert(b).second, "vector space: duplicate basis name");
    }
    Structure s;
    s.data_ = VectorSpaceData{std::move(basis)};
    return s;
  }

  bool is_finite() const { return data_.index() == 0; }
  const Vocabulary& vocab() const { return vocab_; }

  const FiniteStructureData& fin() const {
    require(is_finite(), "finite profile required");
    return std::get<0>(data_);
  }
  const VectorSpaceData& vs() const {
    require(!is_finite(), "symbolic profile required");
    return std::get<1>(data_);
  }

  uint32_t size() const { return fin().size; }
  const std::vector<std::string>& basis() const { return vs().basis; }

  Element constant(const std::string& name) const {
    if (is_finite()) {
      auto it = fin().constants.find(name);
      if (it == fin().constants.end())
        throw VocabularyError("unknown constant '" + name + "'");
      return el_fin(it->second);
    }
    if (name == "0") return el_zero();
    const auto& basis = vs().basis;
    for (uint32_t i = 0; i < basis.size(); ++i)
      if (basis[i] == name) return el_basis(i);
    throw VocabularyError("unknown constant '" + name + "'");
  }

  uint32_t fn_apply(const std::string& name,
                    const std::vector<uint32_t>& args) const {
    auto it = fin().functions.find(name);
    if (it == fin().functions.end())
      throw VocabularyError("unknown function '" + name + "'");
    require(args.size() == vocab_.functions.at(name),
            "fn_apply: arity mismatch for '" + name + "'");
    return it->second[encode_point(args, fin().size)];
  }

  bool rel_holds(const std::string& name,
                 const std::vector<uint32_t>& args) const {
    auto it = fin().relations.find(name);
    if (it == fin().relations.end())
      throw VocabularyError("unknown relation '" + name + "'");
    require(args.size() == vocab_.relations.at(name),
            "rel_holds: arity mismatch for '" + name + "'");
    return it->second.count(encode_point(args, fin().size)) != 0;
  }

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  Structure() = default;
  Vocabulary vocab_;
  std::variant<FiniteStructureData, VectorSpaceData> data_;
};

// ---- text format (canonical writer, strict reader, bit-exact round-trip) --

inline std::string structure_to_text(const Structure& s) {
  std::ostringstream out;
  out << "structure v1\n";
  if (!s.is_finite()) {
    out << "profile ordered-vector-space\nbasis";
    for (const auto& b : s.basis()) out << ' ' << b;
    out << '\n';
    return out.str();
  }
  const auto& d = s.fin();
  out << "profile finite\nsize " << d.size << '\n';
  for (const auto& [name, v] : d.constants)
    out << "constant " << name << " = " << v << '\n';
  for (const auto& [name, table] : d.functions) {
    out << "function " << name << '/' << s.vocab().functions.at(name) << " =";
    for (uint32_t v : table) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [name, tuples] : d.relations) {
    uint32_t arity = s.vocab().relations.at(name);
    out << "relation " << name << '/' << arity << " =";
    for (uint64_t t : tuples) {
      out << ' ';
      auto digits = decode_point(t, d.size, arity);
      for (uint32_t i = 0; i < arity; ++i)
        out << (i ? "," : "") << digits[i];
    }
    out << '\n';
  }
  return out.str();
}

namespace detail {

struct LineReader {
  std::istringstream in;
  size_t lineno = 0;
  explicit LineReader(std::string_view src) : in(std::string(src)) {}

  // Next non-blank, non-comment line; empty optional at end.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos || line[i] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(lineno) + ": " + what, lineno);
  }
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline uint64_t parse_u64(const std::string& tok, LineReader& r) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    r.fail("expected a number, got '" + tok + "'");
  return std::stoull(tok);
}

}  // namespace detail

inline Structure structure_from_text(std::string_view src) {
  detail::LineReader r(src);
  std::string line;
  if (!r.next(line) || detail::split_ws(line) !=
                           std::vector<std::string>{"structure", "v1"})
    r.fail("expected 'structure v1' header");
  if (!r.next(line)) r.fail("expected profile");
  auto toks = detail::split_ws(line);
  if (toks.size() != 2 || toks[0] != "profile") r.fail("expected profile");

  if (toks[1] == "ordered-vector-space") {
    if (!r.next(line)) r.fail("expected basis");
    toks = detail::split_ws(line);
    if (toks.size() < 2 || toks[0] != "basis") r.fail("expected basis");
    if (r.next(line)) r.fail("trailing input");
    return Structure::vector_space({toks.begin() + 1, toks.end()});
  }
  if (toks[1] != "finite") r.fail("unknown profile '" + toks[1] + "'");

  if (!r.next(line)) r.fail("expected size");
  toks = detail::split_ws(line);
  if (toks.size() != 2 || toks[0] != "size") r.fail("expected size");
  FiniteStructureData d;
  d.size = static_cast<uint32_t>(detail::parse_u64(toks[1], r));
  if (d.size == 0) r.fail("size must be positive");
  Vocabulary vocab;

  while (r.next(line)) {
    toks = detail::split_ws(line);
    if (toks[0] == "constant") {
      if (toks.size() != 4 || toks[2] != "=") r.fail("bad constant line");
      vocab.constants.push_back(toks[1]);
      d.constants[toks[1]] = static_cast<uint32_t>(detail::parse_u64(toks[3], r));
      continue;
    }
    if (toks.size() < 3 || toks[2] != "=") r.fail("bad table line");
    size_t slash = toks[1].find('/');
    if (slash == std::string::npos) r.fail("expected name/arity");
    std::string name = toks[1].substr(0, slash);
    uint32_t arity = static_cast<uint32_t>(
        detail::parse_u64(toks[1].substr(slash + 1), r));
    if (toks[0] == "function") {
      vocab.functions[name] = arity;
      auto& table = d.functions[name];
      for (size_t i = 3; i < toks.size(); ++i)
        table.push_back(static_cast<uint32_t>(detail::parse_u64(toks[i], r)));
    } else if (toks[0] == "relation") {
      vocab.relations[name] = arity;
      auto& tuples = d.relations[name];
      for (size_t i = 3; i < toks.size(); ++i) {
        std::vector<uint32_t> digits;
        std::string tok = toks[i];
        size_t start = 0;
        for (uint32_t k = 0; k < arity; ++k) {
          size_t comma = tok.find(',', start);
          std::string digit = tok.substr(
              start, comma == std::string::npos ? std::string::npos
                                                : comma - start);
          digits.push_back(
              static_cast<uint32_t>(detail::parse_u64(digit, r)));
          if (comma == std::string::npos) {
            if (k + 1 != arity) r.fail("tuple arity mismatch");
            break;
          }
          start = comma + 1;
        }
        if (digits.size() != arity) r.fail("tuple arity mismatch");
        for (uint32_t v : digits)
          if (v >= d.size) r.fail("tuple member out of range");
        tuples.insert(encode_point(digits, d.size));
      }
    } else {
      r.fail("unknown directive '" + toks[0] + "'");
    }
  }
  return Structure::finite(std::move(vocab), std::move(d));
}

}  // namespace cohult
