#pragma once

// The definable coherent ultrapower over a derived filter: E-classes
// [a, F], the colimit transition maps, Los satisfaction, the canonical
// embedding j, and the comparison map h_inf([a, F]) = F^N(f"a).

#include <vector>

#include "cohult/definable.hpp"
#include "cohult/derived_filter.hpp"
#include "cohult/errors.hpp"
#include "cohult/index_tuple.hpp"

namespace cohult {

struct UltrapowerClass {
  IndexTuple a;
  DefinableFunction F;
};

class DerivedUltrapower {
 public:
  explicit DerivedUltrapower(DerivedCoherentFilter E) : E_(std::move(E)) {}

  const DerivedCoherentFilter& filter() const { return E_; }

  // Canonical form: drop indices the function does not depend on.
  UltrapowerClass make_class(const IndexTuple& a,
                             const DefinableFunction& F) const {
    require(F.arity() == a.size(), "make_class: arity mismatch");
    std::set<uint32_t> used = F.used_positions();
    if (used.size() == a.size()) return {a, F};
    std::vector<uint32_t> keep(used.begin(), used.end());
    std::vector<uint32_t> ids;
    for (uint32_t p : keep) ids.push_back(a[p]);
    return {IndexTuple(ids), F.restrict_support(keep)};
  }

  // Stage map f_{a,b}: [a, F] -> [b, F o pi^b_a].
  UltrapowerClass push_class(const UltrapowerClass& x,
                             const IndexTuple& b) const {
    require(x.a.subset_of(b), "push_class: target does not extend support");
    return {b, x.F.compose_projection(projection_map(x.a, b))};
  }

  bool classes_equal(const UltrapowerClass& x, const UltrapowerClass& y) const {
    IndexTuple c = tuple_union(x.a, y.a);
    UltrapowerClass px = push_class(x, c), py = push_class(y, c);
    DefinableSetDescriptor agree = definable_set(
        f_eq(t_var(arg_var(0)), t_var(arg_var(1))), {px.F, py.F});
    return E_.member(c, agree);
  }

  // Los: phi([x_1], ..., [x_k]) holds iff the defining set of
  // phi o (F_1 o pi, ..., F_k o pi) lies in E at the union tuple.
  bool los_satisfies(const FormulaPtr& phi,
                     const std::vector<UltrapowerClass>& xs) const {
    require(E_.fragment().contains(phi), "formula outside fragment");
    for (const auto& v : free_vars(phi)) {
      bool ok = false;
      for (uint32_t i = 0; i < xs.size(); ++i) ok = ok || v == arg_var(i);
      require(ok, "los_satisfies: variable '" + v + "' has no class");
    }
    IndexTuple c;
    for (const auto& x : xs) c = tuple_union(c, x.a);
    std::vector<DefinableFunction> fns;
    for (const auto& x : xs) fns.push_back(push_class(x, c).F);
    if (xs.empty())
      return E_.member(c, definable_set(phi, {DefinableFunction::constant(
                                                 0, el_zero())}));
    return E_.member(c, definable_set(phi, std::move(fns)));
  }

  // j(m) = [empty, constant m].
  UltrapowerClass j(const Element& m) const {
    return {IndexTuple{}, DefinableFunction::constant(0, m)};
  }

  Element h_infinity(const UltrapowerClass& x) const {
    return E_.eval_in_n(x.a, {x.F})[0];
  }

  // The identity class at a single index; h_infinity sends it to f(alpha).
  UltrapowerClass identity_class(uint32_t alpha) const {
    require(alpha < E_.lambda(), "identity_class: index beyond lambda");
    return {IndexTuple{alpha}, DefinableFunction::projection(1, 0)};
  }

 private:
  DerivedCoherentFilter E_;
};

}  // namespace cohult
