#pragma once

// Exact linear arithmetic over an ordered Q-vector space: affine forms,
// constraint systems, Fourier-Motzkin elimination with witness extraction,
// and the translation from quantifier-free formulas to systems.
//
// Every satisfiable verdict returns an explicit witness which is re-checked
// against the original system before being handed out; elimination order is
// the declared variable order, equalities substitute before inequalities
// combine, and back-substitution picks the interval midpoint (two-sided),
// bound +/- the leading basis vector (one-sided), or 0 (unconstrained), so
// witnesses are deterministic.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohult/ast.hpp"
#include "cohult/element.hpp"
#include "cohult/errors.hpp"
#include "cohult/eval.hpp"
#include "cohult/structure.hpp"

namespace cohult {

struct Affine {
  std::map<std::string, Rat> coeffs;
  Element cst = el_zero();
};

inline Affine af_const(Element e) { return Affine{{}, std::move(e)}; }

inline Affine af_var(const std::string& name) {
  return Affine{{{name, Rat(1)}}, el_zero()};
}

inline Affine af_add(const Affine& a, const Affine& b) {
  Affine out = a;
  for (const auto& [v, q] : b.coeffs) {
    out.coeffs[v] += q;
    if (out.coeffs[v] == 0) out.coeffs.erase(v);
  }
  out.cst = el_add(out.cst, b.cst);
  return out;
}

inline Affine af_scale(const Rat& q, const Affine& a) {
  Affine out;
  if (q == 0) return af_const(el_zero());
  for (const auto& [v, c] : a.coeffs) out.coeffs.emplace(v, q * c);
  out.cst = el_scale(q, a.cst);
  return out;
}

inline Affine af_neg(const Affine& a) { return af_scale(Rat(-1), a); }
inline Affine af_sub(const Affine& a, const Affine& b) {
  return af_add(a, af_neg(b));
}

inline Element af_eval(const Affine& a, const ElemMap& w) {
  Element out = a.cst;
  for (const auto& [v, q] : a.coeffs) {
    auto it = w.find(v);
    require(it != w.end(), "af_eval: unbound variable '" + v + "'");
    out = el_add(out, el_scale(q, it->second));
  }
  return out;
}

enum class Rel { Lt, Le, Eq };

struct LinearConstraint {
  Affine lhs;  // lhs REL 0
  Rel rel = Rel::Le;
};

struct LinearSystem {
  std::vector<std::string> vars;  // elimination order
  std::vector<LinearConstraint> constraints;
};

inline bool constraint_holds(const LinearConstraint& c, const ElemMap& w) {
  int s = el_cmp(af_eval(c.lhs, w), el_zero());
  switch (c.rel) {
    case Rel::Lt: return s < 0;
    case Rel::Le: return s <= 0;
    case Rel::Eq: return s == 0;
  }
  throw InternalError("constraint_holds: bad rel");
}

// Symbolic-profile term -> affine form in the term's variables.
inline Affine term_to_affine(const Structure& S, const TermPtr& t,
                             const ElemMap& params = kNoParams) {
  require(!S.is_finite(), "term_to_affine: symbolic profile required");
  switch (t->kind) {
    case TermKind::Var:
      return af_var(t->name);
    case TermKind::Const:
      return af_const(S.constant(t->name));
    case TermKind::Param: {
      auto it = params.find(t->name);
      if (it == params.end())
        throw PreconditionError("unbound parameter '" + t->name + "'");
      return af_const(it->second);
    }
    case TermKind::App:
      if (t->name == "+")
        return af_add(term_to_affine(S, t->args[0], params),
                      term_to_affine(S, t->args[1], params));
      if (t->name == "-") return af_neg(term_to_affine(S, t->args[0], params));
      if (t->name == "scl")
        return af_scale(t->scalar, term_to_affine(S, t->args[0], params));
      throw VocabularyError("unknown function '" + t->name + "'");
  }
  throw InternalError("term_to_affine: bad kind");
}

namespace detail {

using ConstraintLists = std::vector<std::vector<LinearConstraint>>;

inline ConstraintLists cl_product(const ConstraintLists& a,
                                  const ConstraintLists& b) {
  ConstraintLists out;
  for (const auto& x : a)
    for (const auto& y : b) {
      std::vector<LinearConstraint> merged = x;
      merged.insert(merged.end(), y.begin(), y.end());
      out.push_back(std::move(merged));
    }
  return out;
}

inline ConstraintLists formula_to_disjuncts(const Structure& S,
                                            const FormulaPtr& f, bool positive,
                                            const ElemMap& params) {
  switch (f->kind) {
    case FormulaKind::Atom: {
      require(f->terms.size() == 2, "linear atom expects two terms");
      if (f->rel != "<" && f->rel != "=")
        throw VocabularyError("unknown relation '" + f->rel + "'");
      Affine a = term_to_affine(S, f->terms[0], params);
      Affine b = term_to_affine(S, f->terms[1], params);
      if (f->rel == "<") {
        if (positive) return {{{af_sub(a, b), Rel::Lt}}};
        return {{{af_sub(b, a), Rel::Le}}};
      }
      if (positive) return {{{af_sub(a, b), Rel::Eq}}};
      return {{{af_sub(a, b), Rel::Lt}}, {{af_sub(b, a), Rel::Lt}}};
    }
    case FormulaKind::Not:
      return formula_to_disjuncts(S, f->children[0], !positive, params);
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool conjunctive = (f->kind == FormulaKind::And) == positive;
      ConstraintLists out;
      if (conjunctive) out.push_back({});
      for (const auto& c : f->children) {
        ConstraintLists child = formula_to_disjuncts(S, c, positive, params);
        if (conjunctive) {
          out = cl_product(out, child);
        } else {
          out.insert(out.end(), child.begin(), child.end());
        }
      }
      return out;
    }
    case FormulaKind::Exists:
      throw PreconditionError("quantifier in symbolic profile");
  }
  throw InternalError("formula_to_disjuncts: bad kind");
}

}  // namespace detail

// Disjunctive normal form of a quantifier-free formula as constraint
// systems; variables in sorted name order.
inline std::vector<LinearSystem> formula_to_systems(
    const Structure& S, const FormulaPtr& f, const ElemMap& params = kNoParams) {
  std::set<std::string> fv = free_vars(f);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::vector<LinearSystem> out;
  for (auto& d : detail::formula_to_disjuncts(S, f, true, params))
    out.push_back(LinearSystem{vars, std::move(d)});
  return out;
}

inline std::optional<ElemMap> fm_solve(const LinearSystem& sys,
                                       const Structure& M) {
  require(!M.is_finite(), "fm_solve: symbolic profile required");
  for (const auto& c : sys.constraints)
    for (const auto& [v, q] : c.lhs.coeffs) {
      bool known = false;
      for (const auto& sv : sys.vars) known = known || sv == v;
      require(known, "fm_solve: undeclared variable '" + v + "'");
      require(q != 0, "fm_solve: zero coefficient stored");
    }

  struct Bound {
    Affine expr;
    bool strict;
  };
  struct Step {
    std::string var;
    bool by_equality = false;
    Affine subst;               // by_equality
    std::vector<Bound> lowers;  // otherwise
    std::vector<Bound> uppers;
  };

  std::vector<LinearConstraint> live = sys.constraints;
  std::vector<Step> steps;

  for (const auto& x : sys.vars) {
    Step step;
    step.var = x;
    std::vector<LinearConstraint> keep;
    const LinearConstraint* eq = nullptr;
    for (const auto& c : live)
      if (c.rel == Rel::Eq && c.lhs.coeffs.count(x)) {
        eq = &c;
        break;
      }
    if (eq != nullptr) {
      // a*x + r = 0  =>  x = -r/a; substitute everywhere else.
      Rat a = eq->lhs.coeffs.at(x);
      Affine rest = eq->lhs;
      rest.coeffs.erase(x);
      step.by_equality = true;
      step.subst = af_scale(Rat(-1) / a, rest);
      for (const auto& c : live) {
        if (&c == eq) continue;
        auto it = c.lhs.coeffs.find(x);
        if (it == c.lhs.coeffs.end()) {
          keep.push_back(c);
          continue;
        }
        Rat cx = it->second;
        Affine lhs = c.lhs;
        lhs.coeffs.erase(x);
        keep.push_back({af_add(lhs, af_scale(cx, step.subst)), c.rel});
      }
    } else {
      for (const auto& c : live) {
        auto it = c.lhs.coeffs.find(x);
        if (it == c.lhs.coeffs.end()) {
          keep.push_back(c);
          continue;
        }
        // a*x + r REL 0  =>  x REL -r/a (upper if a > 0, lower if a < 0)
        Rat a = it->second;
        Affine rest = c.lhs;
        rest.coeffs.erase(x);
        Bound b{af_scale(Rat(-1) / a, rest), c.rel == Rel::Lt};
        (a > 0 ? step.uppers : step.lowers).push_back(std::move(b));
      }
      for (const auto& lo : step.lowers)
        for (const auto& up : step.uppers)
          keep.push_back({af_sub(lo.expr, up.expr),
                          lo.strict || up.strict ? Rel::Lt : Rel::Le});
    }
    steps.push_back(std::move(step));
    live = std::move(keep);
  }

  for (const auto& c : live) {
    require(c.lhs.coeffs.empty(), "fm_solve: stray variable");
    if (!constraint_holds(c, {})) return std::nullopt;
  }

  Element unit = el_basis(0);
  ElemMap w;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->by_equality) {
      w[it->var] = af_eval(it->subst, w);
      continue;
    }
    std::optional<Element> lo, up;
    bool lo_strict = false, up_strict = false;
    for (const auto& b : it->lowers) {
      Element v = af_eval(b.expr, w);
      if (!lo || el_cmp(*lo, v) < 0) lo = v, lo_strict = b.strict;
      else if (el_cmp(*lo, v) == 0) lo_strict = lo_strict || b.strict;
    }
    for (const auto& b : it->uppers) {
      Element v = af_eval(b.expr, w);
      if (!up || el_cmp(v, *up) < 0) up = v, up_strict = b.strict;
      else if (el_cmp(v, *up) == 0) up_strict = up_strict || b.strict;
    }
    if (!lo && !up) w[it->var] = el_zero();
    else if (lo && !up) w[it->var] = el_add(*lo, unit);
    else if (!lo && up) w[it->var] = el_sub(*up, unit);
    else if (el_cmp(*lo, *up) == 0) w[it->var] = *lo;
    else w[it->var] = el_scale(rat(1, 2), el_add(*lo, *up));
  }

  for (const auto& c : sys.constraints)
    if (!constraint_holds(c, w))
      throw InternalError("fm_solve: witness failed recheck");
  return w;
}

// Exact rational coordinates of target in the span of vecs (Gauss-Jordan;
// free coefficients are 0), or nullopt when target is outside the span.
inline std::optional<std::vector<Rat>> decompose_in_span(
    const std::vector<Element>& vecs, const Element& target) {
  std::set<uint32_t> dims;
  for (const auto& v : vecs)
    for (const auto& [i, q] : v.coords()) dims.insert(i);
  for (const auto& [i, q] : target.coords()) dims.insert(i);
  std::vector<uint32_t> dim(dims.begin(), dims.end());

  size_t rows = dim.size(), cols = vecs.size();
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols + 1, Rat(0)));
  auto coord = [](const Element& e, uint32_t i) {
    auto it = e.coords().find(i);
    return it == e.coords().end() ? Rat(0) : it->second;
  };
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) m[r][c] = coord(vecs[c], dim[r]);
    m[r][cols] = coord(target, dim[r]);
  }

  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t k = c; k <= cols; ++k) m[r][k] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat factor = m[i][c];
      for (size_t k = c; k <= cols; ++k) m[i][k] -= factor * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;

  std::vector<Rat> coeffs(cols, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i)
    coeffs[pivot_col[i]] = m[i][cols];
  return coeffs;
}

// First satisfiable DNF disjunct wins; witness covers all free variables.
inline std::optional<ElemMap> solve_qf_formula(const Structure& M,
                                               const FormulaPtr& f,
                                               const ElemMap& params = kNoParams) {
  for (const auto& sys : formula_to_systems(M, f, params))
    if (auto w = fm_solve(sys, M)) return w;
  return std::nullopt;
}

}  // namespace cohult
