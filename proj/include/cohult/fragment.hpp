#pragma once

// Fragments: either the full quantifier-free language (the default — it
// makes Skolem functions vacuous and elementarity decidable) or the
// subformula closure of a finite generating set, always containing all
// atomic formulas.

#include <set>
#include <string>
#include <vector>

#include "cohult/ast.hpp"
#include "cohult/definable.hpp"
#include "cohult/formula_pool.hpp"
#include "cohult/structure.hpp"

namespace cohult {

class Fragment {
 public:
  static Fragment quantifier_free() {
    Fragment f;
    f.all_qf_ = true;
    return f;
  }

  static Fragment generated(std::vector<FormulaPtr> gens) {
    Fragment f;
    f.generators_ = std::move(gens);
    for (const auto& g : f.generators_)
      for (const auto& s : subformulas(g)) f.closure_.insert(formula_str(s));
    return f;
  }

  const std::vector<FormulaPtr>& generators() const { return generators_; }

  bool is_quantifier_free() const {
    if (all_qf_) return true;
    for (const auto& g : generators_)
      if (!::cohult::quantifier_free(g)) return false;
    return true;
  }

  // Atomic formulas are members by fiat; otherwise membership is the
  // subformula closure (or quantifier-freeness for the default fragment).
  bool contains(const FormulaPtr& f) const {
    if (f->kind == FormulaKind::Atom) return true;
    if (all_qf_) return ::cohult::quantifier_free(f);
    return closure_.count(formula_str(f)) != 0;
  }

  bool closed_under_negation() const {
    if (all_qf_) return true;
    for (const auto& key : closure_)
      if (!closure_.count("(not " + key + ")") &&
          (key.size() < 5 || key.compare(0, 5, "(not ") != 0))
        return false;
    return true;
  }

  std::vector<FormulaPtr> existential_members() const {
    std::vector<FormulaPtr> out;
    std::set<std::string> seen;
    for (const auto& g : generators_)
      for (const auto& s : subformulas(g))
        if (s->kind == FormulaKind::Exists && seen.insert(formula_str(s)).second)
          out.push_back(s);
    return out;
  }

 private:
  bool all_qf_ = false;
  std::vector<FormulaPtr> generators_;
  std::set<std::string> closure_;
};

// Vacuous criterion: a fragment with no existential member trivially has
// definable Skolem functions.
inline bool has_definable_skolem(const Fragment& frag) {
  return frag.existential_members().empty();
}

struct SkolemVerdict {
  bool has = false;
  uint32_t searched_connectives = 0;  // exhausted bound when !has
};

// Finite-profile search: for each existential member (exists x psi) look
// for a choice function whose graph is defined by some formula with at
// most max_connectives connectives.  Candidate graphs chi(y-bar, y) must be
// functional, total, and pick witnesses wherever one exists.
inline SkolemVerdict has_definable_skolem(const Fragment& frag,
                                          const Structure& S,
                                          uint32_t max_connectives) {
  if (has_definable_skolem(frag)) return {true, 0};
  require(S.is_finite(), "skolem search: finite profile required");

  for (const auto& ex : frag.existential_members()) {
    std::set<std::string> fv = free_vars(ex);
    std::vector<std::string> free(fv.begin(), fv.end());
    const std::string& bound = ex->var;
    FormulaPtr psi = ex->children[0];

    PoolSpec spec;
    spec.vars = free;
    spec.vars.push_back(bound);
    for (const auto& c : S.vocab().constants) spec.constants.push_back(c);
    spec.functions = S.vocab().functions;
    spec.relations = S.vocab().relations;
    spec.max_connectives = max_connectives;
    spec.with_exists = false;
    FormulaPool pool = build_pool(spec);
    std::vector<uint64_t> mask = pool_truth_masks(pool, S);

    uint32_t m = S.size();
    uint32_t nfree = static_cast<uint32_t>(free.size());
    uint64_t frames = cube_size(m, nfree);
    uint64_t stride = 1;
    for (uint32_t i = 0; i < nfree; ++i) stride *= m;

    // Truth of psi per (free-vars frame, bound value), and of (exists x psi)
    // per frame.
    std::vector<std::vector<bool>> psi_val(frames, std::vector<bool>(m));
    std::vector<bool> ex_val(frames);
    for (uint64_t fr = 0; fr < frames; ++fr) {
      ElemMap vars;
      for (uint32_t i = 0; i < nfree; ++i)
        vars[free[i]] = el_fin(point_digit(fr, m, i));
      for (uint32_t y = 0; y < m; ++y) {
        vars[bound] = el_fin(y);
        psi_val[fr][y] = eval_formula(S, psi, vars);
        ex_val[fr] = ex_val[fr] || psi_val[fr][y];
      }
    }

    bool found = false;
    for (size_t n = 0; n < pool.nodes.size() && !found; ++n) {
      bool ok = true;
      for (uint64_t fr = 0; fr < frames && ok; ++fr) {
        uint32_t chosen = m;
        for (uint32_t y = 0; y < m; ++y)
          if (mask[n] & (uint64_t{1} << (fr + y * stride))) {
            ok = ok && chosen == m;  // functional
            chosen = y;
          }
        ok = ok && chosen < m;  // total
        if (ok && ex_val[fr]) ok = psi_val[fr][chosen];
      }
      found = ok;
    }
    if (!found) return {false, max_connectives};
  }
  return {true, max_connectives};
}

}  // namespace cohult
