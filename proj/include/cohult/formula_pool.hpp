#pragma once

// Bounded enumeration of formulas over a small vocabulary, stored as a DAG
// with children before parents, plus a vectorized evaluator that computes
// the truth mask of every pool formula over all variable assignments of a
// finite structure in one pass.  This is what makes exhaustive differential
// sweeps over hundreds of thousands of formulas affordable.
//
// Size measure: number of connectives (not/and/or/exists each count 1,
// atoms 0).  The pool of size <= k is closed under subformula.

#include <cstdint>
#include <string>
#include <vector>

#include "cohult/ast.hpp"
#include "cohult/errors.hpp"
#include "cohult/eval.hpp"
#include "cohult/structure.hpp"

namespace cohult {

struct PoolSpec {
  std::vector<std::string> vars;       // assignment order; digit i of an
                                       // assignment code is vars[i]'s value
  std::vector<std::string> constants;  // constant symbols usable in terms
  std::map<std::string, uint32_t> functions;
  std::map<std::string, uint32_t> relations;  // extra relations; < = builtin
  uint32_t fn_nesting = 1;
  uint32_t max_connectives = 2;
  bool with_exists = true;
  // And/Or only over atom pairs (the differential-sweep corpus); unary
  // connectives still stack to max_connectives.
  bool binary_atoms_only = false;
};

struct PoolNode {
  FormulaKind kind;
  uint32_t a = 0;  // Atom: atom index; otherwise first child
  uint32_t b = 0;  // And/Or: second child; Exists: variable index
};

struct FormulaPool {
  PoolSpec spec;
  std::vector<TermPtr> terms;       // the bounded term universe
  std::vector<FormulaPtr> atoms;    // atomic formulas over `terms`
  std::vector<PoolNode> nodes;      // children precede parents
  std::vector<uint32_t> layer_end;  // nodes with <= k connectives end here

  FormulaPtr formula(uint32_t idx) const {
    const PoolNode& n = nodes[idx];
    switch (n.kind) {
      case FormulaKind::Atom:
        return atoms[n.a];
      case FormulaKind::Not:
        return f_not(formula(n.a));
      case FormulaKind::And:
        return f_and({formula(n.a), formula(n.b)});
      case FormulaKind::Or:
        return f_or({formula(n.a), formula(n.b)});
      case FormulaKind::Exists:
        return f_exists(spec.vars[n.b], formula(n.a));
    }
    throw InternalError("FormulaPool::formula: bad kind");
  }
};

inline FormulaPool build_pool(const PoolSpec& spec) {
  FormulaPool pool;
  pool.spec = spec;

  // Term universe: variables and constants, then function applications with
  // nesting depth up to fn_nesting.
  std::vector<TermPtr> layer;
  for (const auto& v : spec.vars) layer.push_back(t_var(v));
  for (const auto& c : spec.constants) layer.push_back(t_const(c));
  pool.terms = layer;
  for (uint32_t depth = 0; depth < spec.fn_nesting; ++depth) {
    std::vector<TermPtr> next;
    std::vector<TermPtr> all = pool.terms;
    for (const auto& [fn, arity] : spec.functions) {
      std::vector<uint32_t> pick(arity, 0);
      while (true) {
        std::vector<TermPtr> args;
        bool fresh = arity == 0 && depth == 0;
        for (uint32_t i = 0; i < arity; ++i) {
          args.push_back(all[pick[i]]);
          fresh = fresh || pick[i] >= all.size() - layer.size();
        }
        // keep only applications using a max-depth argument, so each term
        // is generated exactly once
        if (depth == 0 || fresh) next.push_back(t_app(fn, args));
        uint32_t i = 0;
        for (; i < arity; ++i) {
          if (++pick[i] < all.size()) break;
          pick[i] = 0;
        }
        if (i == arity) break;
        if (arity == 0) break;
      }
    }
    if (next.empty()) break;
    layer = next;
    pool.terms.insert(pool.terms.end(), next.begin(), next.end());
  }

  // Atoms: builtin < and = over all ordered term pairs, declared relations
  // over all term tuples.
  auto add_atom = [&](FormulaPtr f) {
    pool.nodes.push_back(
        {FormulaKind::Atom, static_cast<uint32_t>(pool.atoms.size()), 0});
    pool.atoms.push_back(std::move(f));
  };
  for (const auto& t : pool.terms)
    for (const auto& u : pool.terms) {
      add_atom(f_lt(t, u));
      add_atom(f_eq(t, u));
    }
  for (const auto& [rel, arity] : spec.relations) {
    std::vector<uint32_t> pick(arity, 0);
    while (true) {
      std::vector<TermPtr> args;
      for (uint32_t i = 0; i < arity; ++i) args.push_back(pool.terms[pick[i]]);
      add_atom(f_atom(rel, args));
      uint32_t i = 0;
      for (; i < arity; ++i) {
        if (++pick[i] < pool.terms.size()) break;
        pick[i] = 0;
      }
      if (i == arity || arity == 0) break;
    }
  }
  pool.layer_end.push_back(static_cast<uint32_t>(pool.nodes.size()));

  // Connective layers: a node with k+1 connectives combines children whose
  // connective counts sum to k.
  for (uint32_t k = 1; k <= spec.max_connectives; ++k) {
    uint32_t prev_end = pool.layer_end.back();
    uint32_t prev_start = k >= 2 ? pool.layer_end[k - 2] : 0;
    for (uint32_t i = prev_start; i < prev_end; ++i) {
      pool.nodes.push_back({FormulaKind::Not, i, 0});
      if (spec.with_exists)
        for (uint32_t v = 0; v < spec.vars.size(); ++v)
          pool.nodes.push_back({FormulaKind::Exists, i, v});
    }
    for (uint32_t i = 0; i < prev_end; ++i) {
      // children connective counts must sum to k-1
      uint32_t si = 0;
      while (pool.layer_end[si] <= i) ++si;
      if (si > k - 1) continue;
      uint32_t sj = k - 1 - si;
      if (spec.binary_atoms_only && (si != 0 || sj != 0)) continue;
      if (sj >= pool.layer_end.size()) continue;
      uint32_t j_lo = sj == 0 ? 0 : pool.layer_end[sj - 1];
      uint32_t j_hi = pool.layer_end[sj];
      for (uint32_t j = j_lo; j < j_hi; ++j) {
        pool.nodes.push_back({FormulaKind::And, i, j});
        pool.nodes.push_back({FormulaKind::Or, i, j});
      }
    }
    pool.layer_end.push_back(static_cast<uint32_t>(pool.nodes.size()));
  }
  return pool;
}

// Truth masks: bit p of mask[n] is the value of pool formula n under the
// assignment with code p (digit i of p, base |S|, is the value of vars[i]).
inline std::vector<uint64_t> pool_truth_masks(const FormulaPool& pool,
                                              const Structure& S) {
  require(S.is_finite(), "pool_truth_masks: finite profile required");
  uint32_t m = S.size();
  uint32_t k = static_cast<uint32_t>(pool.spec.vars.size());
  uint64_t count = cube_size(m, k);
  uint64_t full = count == 64 ? ~uint64_t{0} : (uint64_t{1} << count) - 1;

  // Atom masks by direct evaluation.
  std::vector<uint64_t> atom_mask(pool.atoms.size(), 0);
  ElemMap vars;
  for (uint64_t p = 0; p < count; ++p) {
    for (uint32_t i = 0; i < k; ++i)
      vars[pool.spec.vars[i]] = el_fin(point_digit(p, m, i));
    for (size_t a = 0; a < pool.atoms.size(); ++a)
      if (eval_formula(S, pool.atoms[a], vars))
        atom_mask[a] |= uint64_t{1} << p;
  }

  std::vector<uint64_t> mask(pool.nodes.size(), 0);
  for (size_t n = 0; n < pool.nodes.size(); ++n) {
    const PoolNode& node = pool.nodes[n];
    switch (node.kind) {
      case FormulaKind::Atom:
        mask[n] = atom_mask[node.a];
        break;
      case FormulaKind::Not:
        mask[n] = ~mask[node.a] & full;
        break;
      case FormulaKind::And:
        mask[n] = mask[node.a] & mask[node.b];
        break;
      case FormulaKind::Or:
        mask[n] = mask[node.a] | mask[node.b];
        break;
      case FormulaKind::Exists: {
        uint64_t in = mask[node.a];
        uint64_t out = 0;
        uint64_t stride = 1;
        for (uint32_t i = 0; i < node.b; ++i) stride *= m;
        for (uint64_t p = 0; p < count; ++p) {
          uint64_t base_p = p - point_digit(p, m, node.b) * stride;
          for (uint32_t v = 0; v < m; ++v)
            if (in & (uint64_t{1} << (base_p + v * stride))) {
              out |= uint64_t{1} << p;
              break;
            }
        }
        mask[n] = out;
        break;
      }
    }
  }
  return mask;
}

}  // namespace cohult
