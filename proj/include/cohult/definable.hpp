#pragma once

// Definable functions with parameters, and descriptors of definable sets
// phi o (f_1, ..., f_m) restricted to a domain formula chi.
//
// Bodies come in three shapes: a term over variables s0..s{n-1} (works in
// both profiles; at finite scale every table is term/graph-definable with
// parameters, so explicit tables are also admitted as bodies), an explicit
// value table (finite profile), or a graph formula phi(s0..s{n-1}, y)
// (finite profile, must be functional).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohult/ast.hpp"
#include "cohult/cube.hpp"
#include "cohult/errors.hpp"
#include "cohult/eval.hpp"
#include "cohult/index_tuple.hpp"
#include "cohult/structure.hpp"

namespace cohult {

inline std::string slot_var(uint32_t i) { return "s" + std::to_string(i); }
inline std::string arg_var(uint32_t i) { return "x" + std::to_string(i); }

class DefinableFunction {
 public:
  static DefinableFunction from_term(uint32_t arity, TermPtr body,
                                     ElemMap params = {}) {
    for (const auto& v : term_vars(body)) {
      bool ok = false;
      for (uint32_t i = 0; i < arity; ++i) ok = ok || v == slot_var(i);
      require(ok, "from_term: stray variable '" + v + "'");
    }
    DefinableFunction f;
    f.arity_ = arity;
    f.term_ = std::move(body);
    f.params_ = std::move(params);
    return f;
  }

  static DefinableFunction from_table(uint32_t arity, uint32_t base,
                                      std::vector<uint32_t> table) {
    require(base >= 1, "from_table: empty base");
    require(table.size() == detail::table_size(base, arity),
            "from_table: table not total");
    for (uint32_t v : table) require(v < base, "from_table: value out of range");
    DefinableFunction f;
    f.arity_ = arity;
    f.base_ = base;
    f.table_ = std::move(table);
    return f;
  }

  static DefinableFunction from_graph(uint32_t arity, FormulaPtr graph,
                                      ElemMap params = {}) {
    for (const auto& v : free_vars(graph)) {
      bool ok = v == "y";
      for (uint32_t i = 0; i < arity; ++i) ok = ok || v == slot_var(i);
      require(ok, "from_graph: stray variable '" + v + "'");
    }
    DefinableFunction f;
    f.arity_ = arity;
    f.graph_ = std::move(graph);
    f.params_ = std::move(params);
    return f;
  }

  static DefinableFunction constant(uint32_t arity, Element value) {
    return from_term(arity, t_param("c"), {{"c", std::move(value)}});
  }

  static DefinableFunction projection(uint32_t arity, uint32_t k) {
    require(k < arity, "projection: index out of range");
    return from_term(arity, t_var(slot_var(k)));
  }

  uint32_t arity() const { return arity_; }
  bool has_term() const { return term_ != nullptr; }
  const TermPtr& term() const {
    require(term_ != nullptr, "term body required");
    return term_;
  }
  const ElemMap& params() const { return params_; }

  Element apply(const Structure& S, const std::vector<Element>& args) const {
    require(args.size() == arity_, "apply: arity mismatch");
    if (base_ != 0) {
      require(S.is_finite() && S.size() == base_, "apply: profile mismatch");
      std::vector<uint32_t> digits;
      digits.reserve(args.size());
      for (const auto& a : args) {
        require(a.finite() && a.id() < base_, "apply: bad argument");
        digits.push_back(a.id());
      }
      return el_fin(table_[encode_point(digits, base_)]);
    }
    ElemMap vars;
    for (uint32_t i = 0; i < arity_; ++i) vars[slot_var(i)] = args[i];
    if (term_ != nullptr) return eval_term(S, term_, vars, params_);
    require(S.is_finite(), "graph body requires finite profile");
    std::optional<Element> found;
    for (uint32_t y = 0; y < S.size(); ++y) {
      vars["y"] = el_fin(y);
      if (eval_formula(S, graph_, vars, params_)) {
        require(!found.has_value(), "graph body not functional");
        found = el_fin(y);
      }
    }
    require(found.has_value(), "graph body not total");
    return *found;
  }

  // Precompose with the tuple restriction map described by pm (pm =
  // projection_map(a, b) yields F o pi^b_a of arity |b|).
  DefinableFunction compose_projection(const ProjectionMap& pm) const {
    require(pm.source_arity == arity_, "compose_projection: arity mismatch");
    if (term_ != nullptr || graph_ != nullptr) {
      TermSubst sub;
      for (uint32_t i = 0; i < arity_; ++i)
        sub[slot_var(i)] = t_var(slot_var(pm.positions[i]));
      if (term_ != nullptr)
        return from_term(pm.target_arity, substitute_term(term_, sub), params_);
      return from_graph(pm.target_arity, substitute(graph_, sub), params_);
    }
    std::vector<uint32_t> table(detail::table_size(base_, pm.target_arity));
    for (uint64_t p = 0; p < table.size(); ++p)
      table[p] = table_[project_point(p, base_, pm)];
    return from_table(pm.target_arity, base_, std::move(table));
  }

  // Inverse of compose_projection on the support: keep only the given
  // positions (which must cover used_positions) as the new slots 0..k-1.
  DefinableFunction restrict_support(const std::vector<uint32_t>& keep) const {
    uint32_t k = static_cast<uint32_t>(keep.size());
    for (uint32_t i = 0; i + 1 < k; ++i)
      require(keep[i] < keep[i + 1], "restrict_support: positions unsorted");
    for (uint32_t p : used_positions()) {
      bool kept = false;
      for (uint32_t q : keep) kept = kept || q == p;
      require(kept, "restrict_support: dropping a used position");
    }
    if (term_ != nullptr || graph_ != nullptr) {
      TermSubst sub;
      for (uint32_t i = 0; i < k; ++i) sub[slot_var(keep[i])] = t_var(slot_var(i));
      if (term_ != nullptr)
        return from_term(k, substitute_term(term_, sub), params_);
      return from_graph(k, substitute(graph_, sub), params_);
    }
    std::vector<uint32_t> table(detail::table_size(base_, k));
    for (uint64_t q = 0; q < table.size(); ++q) {
      std::vector<uint32_t> digits(arity_, 0);
      for (uint32_t i = 0; i < k; ++i)
        digits[keep[i]] = point_digit(q, base_, i);
      table[q] = table_[encode_point(digits, base_)];
    }
    return from_table(k, base_, std::move(table));
  }

  // Positions the value actually depends on: exact for tables, syntactic
  // for term/graph bodies.
  std::set<uint32_t> used_positions() const {
    std::set<uint32_t> used;
    if (term_ != nullptr || graph_ != nullptr) {
      std::set<std::string> vars =
          term_ != nullptr ? term_vars(term_) : free_vars(graph_);
      for (uint32_t i = 0; i < arity_; ++i)
        if (vars.count(slot_var(i))) used.insert(i);
      return used;
    }
    for (uint32_t i = 0; i < arity_; ++i) {
      uint64_t stride = 1;
      for (uint32_t k = 0; k < i; ++k) stride *= base_;
      bool depends = false;
      for (uint64_t p = 0; p < table_.size() && !depends; ++p)
        if (point_digit(p, base_, i) + 1 < base_)
          depends = table_[p] != table_[p + stride];
      if (depends) used.insert(i);
    }
    return used;
  }

  friend bool operator==(const DefinableFunction& a,
                         const DefinableFunction& b) {
    if (a.arity_ != b.arity_ || a.base_ != b.base_ || a.table_ != b.table_)
      return false;
    auto key = [](const DefinableFunction& f) {
      std::string s = f.term_ ? term_str(f.term_) : std::string();
      if (f.graph_) s = formula_str(f.graph_);
      return s;
    };
    if (key(a) != key(b)) return false;
    return a.params_ == b.params_;
  }

 private:
  uint32_t arity_ = 0;
  TermPtr term_;
  FormulaPtr graph_;
  uint32_t base_ = 0;
  std::vector<uint32_t> table_;
  ElemMap params_;
};

// ---- definable sets ----

inline FormulaPtr default_chi() { return f_eq(t_var("z"), t_var("z")); }

struct DefinableSetDescriptor {
  FormulaPtr phi;                      // free vars among x0..x{m-1}
  std::vector<DefinableFunction> fns;  // m functions of common arity n
  FormulaPtr chi;                      // unary domain formula in z
  uint32_t arity = 0;                  // n
};

inline DefinableSetDescriptor definable_set(const FormulaPtr& phi,
                                            std::vector<DefinableFunction> fns,
                                            FormulaPtr chi = nullptr) {
  require(!fns.empty(), "definable_set: no functions");
  uint32_t n = fns[0].arity();
  for (const auto& f : fns)
    require(f.arity() == n, "definable_set: mixed arities");
  for (const auto& v : free_vars(phi)) {
    bool ok = false;
    for (uint32_t i = 0; i < fns.size(); ++i) ok = ok || v == arg_var(i);
    require(ok, "definable_set: formula variable '" + v +
                    "' has no matching function");
  }
  if (chi == nullptr) chi = default_chi();
  require(free_vars(chi) == std::set<std::string>{"z"} ||
              free_vars(chi).empty(),
          "definable_set: chi must be unary in z");
  return DefinableSetDescriptor{phi, std::move(fns), std::move(chi), n};
}

// Enumeration of chi(M), ascending member ids.  Finite profile only.
inline std::vector<uint32_t> chi_members(const Structure& S,
                                         const FormulaPtr& chi) {
  std::vector<uint32_t> out;
  for (uint32_t id = 0; id < S.size(); ++id)
    if (eval_formula(S, chi, {{"z", el_fin(id)}})) out.push_back(id);
  return out;
}

// The set D over the cube on chi(M) in the standard encoding; digit d of a
// point is an index into chi_members.
inline CubeSubset materialize_definable_set(const Structure& S,
                                            const DefinableSetDescriptor& D) {
  std::vector<uint32_t> members = chi_members(S, D.chi);
  uint32_t base = static_cast<uint32_t>(members.size());
  require(base >= 1, "materialize_definable_set: empty domain");
  CubeSubset out = cube_empty(base, D.arity);
  uint64_t n = cube_size(base, D.arity);
  for (uint64_t p = 0; p < n; ++p) {
    std::vector<Element> args;
    args.reserve(D.arity);
    for (uint32_t i = 0; i < D.arity; ++i)
      args.push_back(el_fin(members[point_digit(p, base, i)]));
    ElemMap vars;
    for (uint32_t i = 0; i < D.fns.size(); ++i)
      vars[arg_var(i)] = D.fns[i].apply(S, args);
    if (eval_formula(S, D.phi, vars)) out.bits |= uint64_t{1} << p;
  }
  return out;
}

}  // namespace cohult
