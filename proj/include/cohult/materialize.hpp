#pragma once

// Finite materialized ultrapowers.  With a materialized coherent
// ultrafilter E on powers of the universe of a finite M, classes of
// arity-|a| value tables are decided by E-membership of agreement and
// defining sets — no symbolic machinery.  The quotient at the top tuple
// {0..lambda-1} is cofinal in the colimit, so it carries the whole
// ultrapower; a proper ultra component has a one-point core, so classes
// are keyed by table values on that core.

#include <map>
#include <vector>

#include "cohult/coherent_system.hpp"
#include "cohult/definable.hpp"
#include "cohult/errors.hpp"
#include "cohult/eval.hpp"
#include "cohult/index_tuple.hpp"
#include "cohult/structure.hpp"

namespace cohult {

using StagedClass = std::pair<IndexTuple, DefinableFunction>;

class FiniteUltrapower {
 public:
  FiniteUltrapower(Structure M, CoherentUltrafilterFinite E)
      : M_(std::move(M)), E_(std::move(E)) {
    require(M_.is_finite(), "FiniteUltrapower: finite profile required");
    require(E_.base() == M_.size(),
            "FiniteUltrapower: E must live on powers of M's universe");
    require(E_.system().max_arity() == E_.lambda(),
            "FiniteUltrapower: top tuple not materialized");
    require(E_.proper(), "FiniteUltrapower: improper ultrafilter");
    std::vector<uint32_t> ids(E_.lambda());
    for (uint32_t i = 0; i < E_.lambda(); ++i) ids[i] = i;
    top_ = IndexTuple(ids);
    core_ = E_.component(top_).core();
    require(cube_count(core_) == 1, "FiniteUltrapower: core not a point");
    core_point_ = static_cast<uint64_t>(std::countr_zero(core_.bits));
    build_quotient();
  }

  const Structure& m() const { return M_; }
  const CoherentUltrafilterFinite& e() const { return E_; }
  const IndexTuple& top() const { return top_; }
  uint64_t core_point() const { return core_point_; }
  const Structure& quotient() const { return quotient_; }
  uint32_t num_classes() const { return M_.size(); }

  // Lexicographically least table in class k: zero everywhere except the
  // core point.
  DefinableFunction rep(uint32_t k) const {
    require(k < num_classes(), "rep: no such class");
    std::vector<uint32_t> table(
        detail::table_size(M_.size(), static_cast<uint32_t>(top_.size())), 0);
    table[core_point_] = k;
    return DefinableFunction::from_table(
        static_cast<uint32_t>(top_.size()), M_.size(), std::move(table));
  }

  StagedClass push_to(const StagedClass& x, const IndexTuple& b) const {
    require(x.first.subset_of(b), "push_to: target does not extend support");
    return {b, x.second.compose_projection(projection_map(x.first, b))};
  }

  // Defining set of phi o (F_1 o pi, ..., F_k o pi) at the union tuple.
  CubeSubset defining_set(const FormulaPtr& phi,
                          const std::vector<StagedClass>& xs) const {
    IndexTuple c;
    for (const auto& x : xs) c = tuple_union(c, x.first);
    std::vector<DefinableFunction> fns;
    for (const auto& x : xs) fns.push_back(push_to(x, c).second);
    uint32_t arity = static_cast<uint32_t>(c.size());
    CubeSubset out = cube_empty(M_.size(), arity);
    uint64_t n = cube_size(M_.size(), arity);
    for (uint64_t p = 0; p < n; ++p) {
      std::vector<Element> args;
      for (uint32_t i = 0; i < arity; ++i)
        args.push_back(el_fin(point_digit(p, M_.size(), i)));
      ElemMap vars;
      for (uint32_t i = 0; i < fns.size(); ++i)
        vars[arg_var(i)] = fns[i].apply(M_, args);
      if (eval_formula(M_, phi, vars)) out.bits |= uint64_t{1} << p;
    }
    return out;
  }

  IndexTuple union_tuple(const std::vector<StagedClass>& xs) const {
    IndexTuple c;
    for (const auto& x : xs) c = tuple_union(c, x.first);
    return c;
  }

  bool los_satisfies(const FormulaPtr& phi,
                     const std::vector<StagedClass>& xs) const {
    return E_.component(union_tuple(xs)).member(defining_set(phi, xs));
  }

  bool classes_equal(const StagedClass& x, const StagedClass& y) const {
    static const FormulaPtr agree = f_eq(t_var(arg_var(0)), t_var(arg_var(1)));
    return los_satisfies(agree, {x, y});
  }

  // Quotient member of a staged class: push to top, read off the core.
  uint32_t class_of(const StagedClass& x) const {
    StagedClass t = push_to(x, top_);
    std::vector<Element> args;
    for (uint32_t i = 0; i < top_.size(); ++i)
      args.push_back(el_fin(point_digit(core_point_, M_.size(), i)));
    return t.second.apply(M_, args).id();
  }

  StagedClass j(uint32_t m) const {
    require(m < M_.size(), "j: no such member");
    return {IndexTuple{}, DefinableFunction::constant(0, el_fin(m))};
  }

 private:
  // The quotient structure, built through the Los route: interpret every
  // symbol on representatives pointwise and classify the results.
  void build_quotient() {
    uint32_t n = num_classes();
    FiniteStructureData d;
    d.size = n;
    for (const auto& [name, v] : M_.fin().constants) {
      StagedClass c{IndexTuple{},
                    DefinableFunction::constant(0, el_fin(v))};
      d.constants[name] = class_of(c);
    }
    for (const auto& [name, arity] : M_.vocab().functions) {
      std::vector<uint32_t> table(detail::table_size(n, arity));
      for (uint64_t p = 0; p < table.size(); ++p) {
        // compose M's interpretation with the representative tables
        std::vector<uint32_t> ks = decode_point(p, n, arity);
        std::vector<uint32_t> value(
            detail::table_size(M_.size(),
                               static_cast<uint32_t>(top_.size())));
        for (uint64_t s = 0; s < value.size(); ++s) {
          std::vector<uint32_t> args;
          for (uint32_t i = 0; i < arity; ++i) {
            std::vector<Element> pt;
            for (uint32_t k = 0; k < top_.size(); ++k)
              pt.push_back(el_fin(point_digit(s, M_.size(), k)));
            args.push_back(rep(ks[i]).apply(M_, pt).id());
          }
          value[s] = M_.fn_apply(name, args);
        }
        table[p] = class_of(
            {top_, DefinableFunction::from_table(
                       static_cast<uint32_t>(top_.size()), M_.size(),
                       std::move(value))});
      }
      d.functions[name] = std::move(table);
    }
    for (const auto& [name, arity] : M_.vocab().relations) {
      auto& tuples = d.relations[name];
      uint64_t count = detail::table_size(n, arity);
      for (uint64_t p = 0; p < count; ++p) {
        std::vector<uint32_t> ks = decode_point(p, n, arity);
        std::vector<StagedClass> xs;
        std::vector<TermPtr> ts;
        for (uint32_t i = 0; i < arity; ++i) {
          xs.push_back({top_, rep(ks[i])});
          ts.push_back(t_var(arg_var(i)));
        }
        if (los_satisfies(f_atom(name, ts), xs)) tuples.insert(p);
      }
    }
    quotient_ = Structure::finite(M_.vocab(), std::move(d));
  }

  Structure M_;
  CoherentUltrafilterFinite E_;
  IndexTuple top_;
  CubeSubset core_;
  uint64_t core_point_ = 0;
  Structure quotient_ = Structure::vector_space({"u"});  // replaced in ctor
};

// All stages with arity <= lambda embed into the top stage, so the top
// quotient carries the colimit.
inline FiniteUltrapower materialize_ultrapower(Structure M,
                                               CoherentUltrafilterFinite E) {
  return FiniteUltrapower(std::move(M), std::move(E));
}

// Coherent ultraproduct of a family {M_s | s in ^|a|A} at a: the colimit
// over b >= a of the ultraproducts prod_{s in ^|b|A} M_{pi(s)} / E_b.  The
// top stage is cofinal, so the quotient is computed there, over honest
// heterogeneous sections; classes are decided by E-membership of agreement
// sets.  With principal E the result collapses to the structure at the
// core's a-part (core_values records the collapse map).
struct CoherentUltraproduct {
  Structure quotient;
  std::vector<std::vector<uint32_t>> reps;  // class -> section over ^top A
  std::vector<uint32_t> core_values;        // class -> rep value at the core
  uint64_t core_a_part = 0;                 // encoded point of ^|a|A
};

inline CoherentUltraproduct coherent_ultraproduct_at(
    const IndexTuple& a, const std::vector<Structure>& family,
    const CoherentUltrafilterFinite& E) {
  uint32_t base = E.base();
  uint64_t stage_a = cube_size(base, static_cast<uint32_t>(a.size()));
  require(family.size() == stage_a,
          "coherent_ultraproduct_at: family size mismatch");
  for (const auto& s : family) {
    require(s.is_finite(), "coherent_ultraproduct_at: finite profile required");
    require(s.vocab() == family[0].vocab(),
            "coherent_ultraproduct_at: vocabulary mismatch");
  }
  require(E.proper(), "coherent_ultraproduct_at: improper ultrafilter");
  std::vector<uint32_t> ids(E.lambda());
  for (uint32_t i = 0; i < E.lambda(); ++i) ids[i] = i;
  IndexTuple top(ids);
  require(a.subset_of(top), "coherent_ultraproduct_at: tuple beyond lambda");
  require(E.system().max_arity() == E.lambda(),
          "coherent_ultraproduct_at: top tuple not materialized");
  uint64_t cube = cube_size(base, E.lambda());
  ProjectionMap pm = projection_map(a, top);

  // The structure living over each index point of the top stage.
  std::vector<const Structure*> at;
  uint64_t sections = 1;
  for (uint64_t s = 0; s < cube; ++s) {
    at.push_back(&family[project_point(s, base, pm)]);
    sections *= at.back()->size();
    if (sections > (uint64_t{1} << 21))
      throw BudgetError("coherent_ultraproduct_at: too many sections");
  }

  const FiniteFilter& e_top = E.component(top);
  auto agreement = [&](const std::vector<uint32_t>& x,
                       const std::vector<uint32_t>& y) {
    CubeSubset agree = cube_empty(base, E.lambda());
    for (uint64_t s = 0; s < cube; ++s)
      if (x[s] == y[s]) agree.bits |= uint64_t{1} << s;
    return agree;
  };

  std::vector<std::vector<uint32_t>> reps;
  std::vector<uint32_t> section(cube, 0);
  auto classify = [&](const std::vector<uint32_t>& sec,
                      bool insert) -> uint32_t {
    for (uint32_t k = 0; k < reps.size(); ++k)
      if (e_top.member(agreement(reps[k], sec))) return k;
    require(insert, "coherent_ultraproduct_at: unclassified section");
    reps.push_back(sec);
    return static_cast<uint32_t>(reps.size() - 1);
  };
  while (true) {
    classify(section, true);
    uint64_t i = 0;
    for (; i < cube; ++i) {
      if (++section[i] < at[i]->size()) break;
      section[i] = 0;
    }
    if (i == cube) break;
  }

  const Vocabulary& vocab = family[0].vocab();
  uint32_t n = static_cast<uint32_t>(reps.size());
  FiniteStructureData d;
  d.size = n;
  for (const auto& [name, arity] : vocab.functions) {
    std::vector<uint32_t> table(detail::table_size(n, arity));
    for (uint64_t p = 0; p < table.size(); ++p) {
      std::vector<uint32_t> ks = decode_point(p, n, arity);
      std::vector<uint32_t> value(cube);
      for (uint64_t s = 0; s < cube; ++s) {
        std::vector<uint32_t> args;
        for (uint32_t i = 0; i < arity; ++i) args.push_back(reps[ks[i]][s]);
        value[s] = at[s]->fn_apply(name, args);
      }
      table[p] = classify(value, false);
    }
    d.functions[name] = std::move(table);
  }
  for (const auto& [name, arity] : vocab.relations) {
    auto& tuples = d.relations[name];
    uint64_t count = detail::table_size(n, arity);
    for (uint64_t p = 0; p < count; ++p) {
      std::vector<uint32_t> ks = decode_point(p, n, arity);
      CubeSubset dset = cube_empty(base, E.lambda());
      for (uint64_t s = 0; s < cube; ++s) {
        std::vector<uint32_t> args;
        for (uint32_t i = 0; i < arity; ++i) args.push_back(reps[ks[i]][s]);
        if (at[s]->rel_holds(name, args)) dset.bits |= uint64_t{1} << s;
      }
      if (e_top.member(dset)) tuples.insert(p);
    }
  }
  for (const auto& name : vocab.constants) {
    std::vector<uint32_t> value(cube);
    for (uint64_t s = 0; s < cube; ++s)
      value[s] = at[s]->fin().constants.at(name);
    d.constants[name] = classify(value, false);
  }

  const CubeSubset& core = e_top.core();
  require(cube_count(core) == 1, "coherent_ultraproduct_at: core not a point");
  uint64_t p0 = static_cast<uint64_t>(std::countr_zero(core.bits));
  CoherentUltraproduct out{Structure::finite(vocab, std::move(d)),
                           std::move(reps),
                           {},
                           project_point(p0, base, pm)};
  for (const auto& rep : out.reps) out.core_values.push_back(rep[p0]);
  return out;
}

}  // namespace cohult
