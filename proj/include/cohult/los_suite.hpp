#pragma once

// Exhaustive Los differential over finite materialized ultrapowers: every
// structure with one unary function and one unary relation up to a size
// bound, every principal coherent ultrafilter on its index cubes, every
// pool formula, every tuple of classes.  The lazy side (satisfaction
// decided by E-membership of defining sets) must agree with the direct
// side (truth in the materialized quotient).
//
// The sweep is vectorized: with E principal at core point g and rep(k)
// valued k at the core, the lazy side over all class tuples equals the
// base-structure truth mask.  Those two reduction facts are machine-checked
// per ultrafilter, sampled lazy evaluations go through the real API, and
// one designated pair runs the whole corpus through it.

#include <string>
#include <vector>

#include "cohult/coherent_system.hpp"
#include "cohult/formula_pool.hpp"
#include "cohult/materialize.hpp"
#include "cohult/prng.hpp"
#include "cohult/report.hpp"
#include "cohult/structure.hpp"

namespace cohult {

struct LosSweepBudgets {
  uint32_t max_base = 3;      // structure sizes 1..max_base
  uint32_t lambda = 2;        // index set size
  uint32_t spot_samples = 8;  // honest API calls per (structure, E) pair
  uint64_t seed = kDefaultSeed;
};

inline Vocabulary unary_vocabulary() {
  Vocabulary v;
  v.functions["f"] = 1;
  v.relations["R"] = 1;
  return v;
}

// All structures of the given size over one unary function and one unary
// relation, in table order: f-tables count little-endian, R-subsets count
// as bitmasks within each f-table.
inline std::vector<Structure> enumerate_unary_structures(uint32_t size) {
  Vocabulary vocab = unary_vocabulary();
  std::vector<Structure> out;
  std::vector<uint32_t> table(size, 0);
  while (true) {
    for (uint32_t bits = 0; bits < (uint32_t{1} << size); ++bits) {
      FiniteStructureData d;
      d.size = size;
      d.functions["f"] = table;
      auto& rel = d.relations["R"];
      for (uint32_t v = 0; v < size; ++v)
        if (bits & (uint32_t{1} << v)) rel.insert(v);
      out.push_back(Structure::finite(vocab, std::move(d)));
    }
    uint32_t i = 0;
    for (; i < size; ++i) {
      if (++table[i] < size) break;
      table[i] = 0;
    }
    if (i == size) break;
  }
  return out;
}

inline PoolSpec los_sweep_pool_spec() {
  PoolSpec spec;
  spec.vars = {"x0", "x1"};
  spec.functions["f"] = 1;
  spec.relations["R"] = 1;
  spec.fn_nesting = 1;
  spec.max_connectives = 2;
  spec.with_exists = true;
  spec.binary_atoms_only = true;
  return spec;
}

namespace detail {

inline std::string sweep_case_str(const Structure& S,
                                  const std::vector<uint32_t>& g) {
  std::ostringstream out;
  out << "size=" << S.size() << " f=(";
  const auto& ftab = S.fin().functions.at("f");
  for (size_t i = 0; i < ftab.size(); ++i) out << (i ? "," : "") << ftab[i];
  out << ") R={";
  bool first = true;
  for (uint64_t v : S.fin().relations.at("R")) {
    out << (first ? "" : ",") << v;
    first = false;
  }
  out << "} g=(";
  for (size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << g[i];
  out << ")";
  return out.str();
}

}  // namespace detail

inline Report run_los_sweep(const LosSweepBudgets& budgets = {}) {
  Report rep;
  rep.set("sweep.lambda", budgets.lambda);
  rep.set("sweep.max_base", budgets.max_base);
  rep.set("sweep.seed", budgets.seed);

  FormulaPool pool = build_pool(los_sweep_pool_spec());
  rep.set("formulas.count", pool.nodes.size());

  Prng rng(budgets.seed);
  uint64_t structures = 0, pairs = 0, comparisons = 0, mismatches = 0;
  uint64_t hyp_bad = 0, spot_checked = 0, spot_bad = 0;
  uint64_t showcase_checked = 0, showcase_bad = 0;

  for (uint32_t m = 1; m <= budgets.max_base; ++m) {
    std::vector<Structure> all = enumerate_unary_structures(m);
    for (const Structure& S : all) {
      ++structures;
      std::vector<uint64_t> mask_m = pool_truth_masks(pool, S);
      std::vector<uint32_t> g(budgets.lambda, 0);
      while (true) {
        ++pairs;
        CoherentUltrafilterFinite E =
            CoherentUltrafilterFinite::from_witness(m, budgets.lambda, g);
        FiniteUltrapower U(S, E);

        // Reduction hypotheses behind the vectorized sweep: E's witness is
        // g, the core point spells g, reps land in their own class, and j
        // is the class numbering.
        auto w = U.e().witness_point();
        if (!w.has_value() || *w != g) ++hyp_bad;
        for (uint32_t i = 0; i < budgets.lambda; ++i)
          if (point_digit(U.core_point(), m, i) != g[i]) ++hyp_bad;
        for (uint32_t k = 0; k < m; ++k) {
          if (U.class_of({U.top(), U.rep(k)}) != k) ++hyp_bad;
          if (U.class_of(U.j(k)) != k) ++hyp_bad;
        }

        // Lazy vs direct, all formulas x all class pairs at once.
        std::vector<uint64_t> mask_q = pool_truth_masks(pool, U.quotient());
        for (uint32_t idx = 0; idx < pool.nodes.size(); ++idx) {
          if (mask_q[idx] != mask_m[idx]) {
            ++mismatches;
            rep.counterexample(
                "differential",
                detail::sweep_case_str(S, g) + " phi=" +
                    formula_str(pool.formula(idx)));
          }
        }
        comparisons += pool.nodes.size();

        // Honest spot checks through los_satisfies.
        for (uint32_t t = 0; t < budgets.spot_samples; ++t) {
          uint32_t idx = static_cast<uint32_t>(rng.below(pool.nodes.size()));
          uint32_t k0 = static_cast<uint32_t>(rng.below(m));
          uint32_t k1 = static_cast<uint32_t>(rng.below(m));
          bool lazy = U.los_satisfies(
              pool.formula(idx), {{U.top(), U.rep(k0)}, {U.top(), U.rep(k1)}});
          bool direct = (mask_q[idx] >> (k0 + uint64_t{k1} * m)) & 1;
          ++spot_checked;
          if (lazy != direct) {
            ++spot_bad;
            rep.counterexample(
                "spot", detail::sweep_case_str(S, g) + " phi=" +
                            formula_str(pool.formula(idx)));
          }
        }

        uint32_t i = 0;
        for (; i < budgets.lambda; ++i) {
          if (++g[i] < m) break;
          g[i] = 0;
        }
        if (i == budgets.lambda) break;
      }
    }
  }

  // Showcase pair: the full corpus through the honest API, every class
  // tuple, one fixed structure and ultrafilter.
  {
    uint32_t m = std::min<uint32_t>(budgets.max_base, 3);
    Vocabulary vocab = unary_vocabulary();
    FiniteStructureData d;
    d.size = m;
    for (uint32_t v = 0; v < m; ++v)
      d.functions["f"].push_back((v + 1) % m);
    d.relations["R"].insert(m - 1);
    Structure S = Structure::finite(vocab, std::move(d));
    std::vector<uint32_t> g(budgets.lambda);
    for (uint32_t i = 0; i < budgets.lambda; ++i) g[i] = (i + 1) % m;
    CoherentUltrafilterFinite E =
        CoherentUltrafilterFinite::from_witness(m, budgets.lambda, g);
    FiniteUltrapower U(S, E);
    std::vector<uint64_t> mask_q = pool_truth_masks(pool, U.quotient());
    for (uint32_t idx = 0; idx < pool.nodes.size(); ++idx) {
      FormulaPtr phi = pool.formula(idx);
      for (uint32_t k0 = 0; k0 < m; ++k0)
        for (uint32_t k1 = 0; k1 < m; ++k1) {
          bool lazy = U.los_satisfies(
              phi, {{U.top(), U.rep(k0)}, {U.top(), U.rep(k1)}});
          bool direct = (mask_q[idx] >> (k0 + uint64_t{k1} * m)) & 1;
          ++showcase_checked;
          if (lazy != direct) {
            ++showcase_bad;
            rep.counterexample("showcase", detail::sweep_case_str(S, g) +
                                               " phi=" + formula_str(phi));
          }
        }
    }
  }

  rep.set("structures.count", structures);
  rep.set("pairs.count", pairs);
  rep.set("differential.comparisons", comparisons);
  rep.set_pass("differential", mismatches == 0);
  rep.set_pass("hypotheses", hyp_bad == 0);
  rep.set("spot.checked", spot_checked);
  rep.set_pass("spot", spot_bad == 0);
  rep.set("showcase.checked", showcase_checked);
  rep.set_pass("showcase", showcase_bad == 0);
  rep.set_pass("overall", rep.failures() == 0);
  return rep;
}

}  // namespace cohult
