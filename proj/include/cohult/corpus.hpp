#pragma once

// Deterministic sample generation: random closed terms of bounded depth,
// element samples as their values, and random quantifier-free formula
// corpora.  Everything is driven by an explicit Prng so identical seeds
// give identical corpora.

#include <string>
#include <vector>

#include "cohult/ast.hpp"
#include "cohult/eval.hpp"
#include "cohult/prng.hpp"
#include "cohult/structure.hpp"

namespace cohult {

// Random symbolic term over the given constants and variables; scl scalars
// have numerators in [-3,3] and denominators in [1,3].
inline TermPtr random_ovs_term(const std::vector<std::string>& constants,
                               const std::vector<std::string>& vars,
                               uint32_t depth, Prng& rng) {
  uint64_t leaf_kinds = constants.size() + vars.size();
  if (depth == 0 || rng.coin()) {
    uint64_t k = rng.below(leaf_kinds);
    if (k < constants.size()) return t_const(constants[k]);
    return t_var(vars[k - constants.size()]);
  }
  switch (rng.below(3)) {
    case 0:
      return t_add(random_ovs_term(constants, vars, depth - 1, rng),
                   random_ovs_term(constants, vars, depth - 1, rng));
    case 1:
      return t_neg(random_ovs_term(constants, vars, depth - 1, rng));
    default: {
      Rat q = rat(rng.range(-3, 3), rng.range(1, 3));
      return t_scl(q, random_ovs_term(constants, vars, depth - 1, rng));
    }
  }
}

inline std::vector<std::string> ovs_constant_pool(const Structure& S) {
  std::vector<std::string> constants = S.basis();
  constants.push_back("0");
  return constants;
}

// Elements of the symbolic structure drawn from the value closure of
// depth-bounded terms.
inline std::vector<Element> sample_elements(const Structure& S, size_t count,
                                            uint32_t depth, Prng& rng) {
  std::vector<std::string> constants = ovs_constant_pool(S);
  std::vector<Element> out;
  out.reserve(count);
  while (out.size() < count) {
    TermPtr t = random_ovs_term(constants, {}, depth, rng);
    out.push_back(eval_term(S, t, {}));
  }
  return out;
}

inline FormulaPtr random_qf_formula(const std::vector<std::string>& constants,
                                    const std::vector<std::string>& vars,
                                    uint32_t connectives, uint32_t term_depth,
                                    Prng& rng) {
  if (connectives == 0 || rng.below(3) == 0) {
    TermPtr a = random_ovs_term(constants, vars, term_depth, rng);
    TermPtr b = random_ovs_term(constants, vars, term_depth, rng);
    return rng.coin() ? f_lt(a, b) : f_eq(a, b);
  }
  switch (rng.below(3)) {
    case 0:
      return f_not(
          random_qf_formula(constants, vars, connectives - 1, term_depth, rng));
    case 1:
      return f_and(
          {random_qf_formula(constants, vars, connectives / 2, term_depth, rng),
           random_qf_formula(constants, vars, connectives - 1 - connectives / 2,
                             term_depth, rng)});
    default:
      return f_or(
          {random_qf_formula(constants, vars, connectives / 2, term_depth, rng),
           random_qf_formula(constants, vars, connectives - 1 - connectives / 2,
                             term_depth, rng)});
  }
}

inline std::vector<FormulaPtr> make_qf_corpus(const Structure& S, size_t count,
                                              uint32_t num_vars,
                                              uint32_t connectives,
                                              uint32_t term_depth, Prng& rng) {
  std::vector<std::string> constants = ovs_constant_pool(S);
  std::vector<std::string> vars;
  for (uint32_t i = 0; i < num_vars; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<FormulaPtr> out;
  out.reserve(count);
  while (out.size() < count)
    out.push_back(random_qf_formula(constants, vars, connectives, term_depth, rng));
  return out;
}

}  // namespace cohult
