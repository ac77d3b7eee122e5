#pragma once

// Tarskian evaluation.  Quantifiers are evaluated by enumeration and are
// therefore finite-profile only; the symbolic profile evaluates the
// quantifier-free language of ordered Q-vector spaces exactly.

#include <map>
#include <string>

#include "cohult/ast.hpp"
#include "cohult/element.hpp"
#include "cohult/errors.hpp"
#include "cohult/structure.hpp"

namespace cohult {

using ElemMap = std::map<std::string, Element>;
inline const ElemMap kNoParams{};

inline Element eval_term(const Structure& S, const TermPtr& t,
                         const ElemMap& vars,
                         const ElemMap& params = kNoParams) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = vars.find(t->name);
      if (it == vars.end())
        throw PreconditionError("unbound variable '" + t->name + "'");
      return it->second;
    }
    case TermKind::Const:
      return S.constant(t->name);
    case TermKind::Param: {
      auto it = params.find(t->name);
      if (it == params.end())
        throw PreconditionError("unbound parameter '" + t->name + "'");
      return it->second;
    }
    case TermKind::App:
      break;
  }
  if (S.is_finite()) {
    std::vector<uint32_t> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) {
      Element v = eval_term(S, a, vars, params);
      require(v.finite(), "finite profile: symbolic argument");
      args.push_back(v.id());
    }
    return el_fin(S.fn_apply(t->name, args));
  }
  if (t->name == "+")
    return el_add(eval_term(S, t->args[0], vars, params),
                  eval_term(S, t->args[1], vars, params));
  if (t->name == "-") return el_neg(eval_term(S, t->args[0], vars, params));
  if (t->name == "scl")
    return el_scale(t->scalar, eval_term(S, t->args[0], vars, params));
  throw VocabularyError("unknown function '" + t->name + "'");
}

inline bool eval_formula(const Structure& S, const FormulaPtr& f,
                         const ElemMap& vars,
                         const ElemMap& params = kNoParams) {
  switch (f->kind) {
    case FormulaKind::Atom: {
      if (f->rel == "=" || f->rel == "<") {
        require(f->terms.size() == 2, "binary relation expects two terms");
        Element a = eval_term(S, f->terms[0], vars, params);
        Element b = eval_term(S, f->terms[1], vars, params);
        if (f->rel == "=") return a == b;
        return S.is_finite() ? a.id() < b.id() : el_cmp(a, b) < 0;
      }
      if (!S.is_finite())
        throw VocabularyError("unknown relation '" + f->rel + "'");
      std::vector<uint32_t> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) {
        Element v = eval_term(S, t, vars, params);
        require(v.finite(), "finite profile: symbolic argument");
        args.push_back(v.id());
      }
      return S.rel_holds(f->rel, args);
    }
    case FormulaKind::Not:
      return !eval_formula(S, f->children[0], vars, params);
    case FormulaKind::And:
      for (const auto& c : f->children)
        if (!eval_formula(S, c, vars, params)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& c : f->children)
        if (eval_formula(S, c, vars, params)) return true;
      return false;
    case FormulaKind::Exists: {
      if (!S.is_finite())
        throw PreconditionError("quantifier in symbolic profile");
      ElemMap inner = vars;
      for (uint32_t id = 0; id < S.size(); ++id) {
        inner[f->var] = el_fin(id);
        if (eval_formula(S, f->children[0], inner, params)) return true;
      }
      return false;
    }
  }
  throw InternalError("eval_formula: bad kind");
}

}  // namespace cohult
