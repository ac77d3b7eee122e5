#pragma once

// Terms and quantifier-bounded formulas over a first-order vocabulary with
// builtin order and equality.  ASTs are immutable and shared; all helpers
// return fresh nodes.  Canonical printing doubles as structural identity.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cohult/errors.hpp"
#include "cohult/rational.hpp"

namespace cohult {

enum class TermKind { Var, Const, Param, App };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;           // variable / constant / parameter / function symbol
  Rat scalar = Rat(0);        // only for name == "scl"
  std::vector<TermPtr> args;  // only for App
};

inline TermPtr t_var(std::string name) {
  return std::make_shared<Term>(Term{TermKind::Var, std::move(name), Rat(0), {}});
}
inline TermPtr t_const(std::string name) {
  return std::make_shared<Term>(Term{TermKind::Const, std::move(name), Rat(0), {}});
}
inline TermPtr t_param(std::string name) {
  return std::make_shared<Term>(Term{TermKind::Param, std::move(name), Rat(0), {}});
}
inline TermPtr t_app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(
      Term{TermKind::App, std::move(fn), Rat(0), std::move(args)});
}
inline TermPtr t_add(TermPtr a, TermPtr b) {
  return t_app("+", {std::move(a), std::move(b)});
}
inline TermPtr t_neg(TermPtr a) { return t_app("-", {std::move(a)}); }
inline TermPtr t_scl(const Rat& q, TermPtr a) {
  auto t = std::make_shared<Term>(Term{TermKind::App, "scl", q, {std::move(a)}});
  return t;
}

enum class FormulaKind { Atom, Not, And, Or, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string rel;                    // Atom: relation symbol
  std::vector<TermPtr> terms;         // Atom arguments
  std::vector<FormulaPtr> children;   // Not: 1, And/Or: >= 1, Exists: 1
  std::string var;                    // Exists: bound variable
};

inline FormulaPtr f_atom(std::string rel, std::vector<TermPtr> terms) {
  return std::make_shared<Formula>(
      Formula{FormulaKind::Atom, std::move(rel), std::move(terms), {}, {}});
}
inline FormulaPtr f_lt(TermPtr a, TermPtr b) {
  return f_atom("<", {std::move(a), std::move(b)});
}
inline FormulaPtr f_eq(TermPtr a, TermPtr b) {
  return f_atom("=", {std::move(a), std::move(b)});
}
inline FormulaPtr f_not(FormulaPtr f) {
  return std::make_shared<Formula>(
      Formula{FormulaKind::Not, "", {}, {std::move(f)}, {}});
}
inline FormulaPtr f_and(std::vector<FormulaPtr> fs) {
  require(!fs.empty(), "f_and: needs at least one conjunct");
  return std::make_shared<Formula>(
      Formula{FormulaKind::And, "", {}, {std::move(fs)}, {}});
}
inline FormulaPtr f_or(std::vector<FormulaPtr> fs) {
  require(!fs.empty(), "f_or: needs at least one disjunct");
  return std::make_shared<Formula>(
      Formula{FormulaKind::Or, "", {}, {std::move(fs)}, {}});
}
inline FormulaPtr f_exists(std::string var, FormulaPtr f) {
  return std::make_shared<Formula>(
      Formula{FormulaKind::Exists, "", {}, {std::move(f)}, std::move(var)});
}

// ---- printing (canonical; also the structural-equality key) ----

inline void print_term(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      out += t->name;
      return;
    case TermKind::Param:
      out += '#';
      out += t->name;
      return;
    case TermKind::App:
      out += '(';
      out += t->name;
      if (t->name == "scl") {
        out += ' ';
        out += rat_str(t->scalar);
      }
      for (const auto& a : t->args) {
        out += ' ';
        print_term(a, out);
      }
      out += ')';
      return;
  }
}

inline std::string term_str(const TermPtr& t) {
  std::string out;
  print_term(t, out);
  return out;
}

inline void print_formula(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case FormulaKind::Atom:
      out += '(';
      out += f->rel;
      for (const auto& t : f->terms) {
        out += ' ';
        print_term(t, out);
      }
      out += ')';
      return;
    case FormulaKind::Not:
      out += "(not ";
      print_formula(f->children[0], out);
      out += ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      out += f->kind == FormulaKind::And ? "(and" : "(or";
      for (const auto& c : f->children) {
        out += ' ';
        print_formula(c, out);
      }
      out += ')';
      return;
    case FormulaKind::Exists:
      out += "(exists ";
      out += f->var;
      out += ' ';
      print_formula(f->children[0], out);
      out += ')';
      return;
  }
}

inline std::string formula_str(const FormulaPtr& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  return term_str(a) == term_str(b);
}
inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return formula_str(a) == formula_str(b);
}

// ---- variable bookkeeping ----

inline void collect_term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == TermKind::Var) out.insert(t->name);
  for (const auto& a : t->args) collect_term_vars(a, out);
}

inline void collect_free_vars(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FormulaKind::Atom:
      for (const auto& t : f->terms) collect_term_vars(t, out);
      return;
    case FormulaKind::Exists: {
      std::set<std::string> inner;
      collect_free_vars(f->children[0], inner);
      inner.erase(f->var);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& c : f->children) collect_free_vars(c, out);
      return;
  }
}

inline std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free_vars(f, out);
  return out;
}

inline std::set<std::string> term_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

inline bool quantifier_free(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Exists) return false;
  return std::all_of(f->children.begin(), f->children.end(),
                     [](const FormulaPtr& c) { return quantifier_free(c); });
}

// Substitution maps variables to terms.  The replacement terms we use are
// closed (no variables), so no capture analysis is needed; bound variables
// simply shadow.
using TermSubst = std::map<std::string, TermPtr>;

inline TermPtr substitute_term(const TermPtr& t, const TermSubst& sub) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = sub.find(t->name);
      return it == sub.end() ? t : it->second;
    }
    case TermKind::Const:
    case TermKind::Param:
      return t;
    case TermKind::App: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(substitute_term(a, sub));
      auto n = std::make_shared<Term>(
          Term{TermKind::App, t->name, t->scalar, std::move(args)});
      return n;
    }
  }
  throw InternalError("substitute_term: bad kind");
}

inline FormulaPtr substitute(const FormulaPtr& f, const TermSubst& sub) {
  switch (f->kind) {
    case FormulaKind::Atom: {
      std::vector<TermPtr> ts;
      ts.reserve(f->terms.size());
      for (const auto& t : f->terms) ts.push_back(substitute_term(t, sub));
      return f_atom(f->rel, std::move(ts));
    }
    case FormulaKind::Not:
      return f_not(substitute(f->children[0], sub));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children) cs.push_back(substitute(c, sub));
      return f->kind == FormulaKind::And ? f_and(std::move(cs))
                                         : f_or(std::move(cs));
    }
    case FormulaKind::Exists: {
      TermSubst inner = sub;
      inner.erase(f->var);
      if (inner.empty()) return f;
      return f_exists(f->var, substitute(f->children[0], inner));
    }
  }
  throw InternalError("substitute: bad kind");
}

// Subformula closure, outermost first; the formula itself is included.
inline void collect_subformulas(const FormulaPtr& f,
                                std::vector<FormulaPtr>& out) {
  out.push_back(f);
  for (const auto& c : f->children) collect_subformulas(c, out);
}

inline std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  collect_subformulas(f, out);
  return out;
}

}  // namespace cohult
