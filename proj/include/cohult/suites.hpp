#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cohult/coherent_system.hpp"
#include "cohult/cube.hpp"
#include "cohult/errors.hpp"
#include "cohult/filter.hpp"
#include "cohult/index_tuple.hpp"
#include "cohult/prng.hpp"
#include "cohult/report.hpp"

namespace cohult {

// Grid for the exhaustive filter-core suites.
struct SuiteBudgets {
    std::uint32_t max_base = 2;
    std::uint32_t max_lambda = 2;
    std::uint32_t max_arity = 2;
    std::uint32_t count_max_base = 3;  // ultrafilter-count sweep at lambda=2
    std::uint32_t product_max_base = 3;
    std::uint32_t product_max_lambda = 3;
    std::uint64_t seed = kDefaultSeed;
};

// Replaceable internals for negative-control runs.  `bad-fullify` swaps the
// fullification used by the lemma checks for one that skips the closure, so
// the suite must surface a counterexample.
struct SuiteHooks {
    std::function<CubeSubset(const CubeSubset&, const IndexTuple&,
                             const IndexTuple&)>
        fullify = [](const CubeSubset& x, const IndexTuple& b,
                     const IndexTuple& c) { return cohult::fullify(x, b, c); };

    static SuiteHooks real() { return SuiteHooks{}; }
    static SuiteHooks bad_fullify() {
        SuiteHooks h;
        h.fullify = [](const CubeSubset& x, const IndexTuple&,
                       const IndexTuple&) { return x; };
        return h;
    }
};

namespace detail {

inline std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) {
        if (b != 0 && r > UINT64_MAX / b) return UINT64_MAX;
        r *= b;
    }
    return r;
}

// Subset counts get astronomically large fast; saturating arithmetic keeps
// the estimates meaningful for refusal messages.
inline std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y) {
    if (x != 0 && y > UINT64_MAX / x) return UINT64_MAX;
    return x * y;
}

inline std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
    return x > UINT64_MAX - y ? UINT64_MAX : x + y;
}

inline std::uint64_t subsets_of_cube(std::uint32_t base, std::uint32_t arity) {
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < arity; ++i) {
        n = sat_mul(n, base);
        if (n > 63) return UINT64_MAX;
    }
    return std::uint64_t{1} << n;
}

}  // namespace detail

// Rough upper bound on the innermost iteration count of the lemma suite.
inline std::uint64_t estimate_lemma_cases(const SuiteBudgets& budgets) {
    using namespace detail;
    std::uint64_t total = 0;
    for (std::uint32_t base = 1; base <= budgets.max_base; ++base) {
        auto tuples = all_tuples(budgets.max_lambda, budgets.max_arity);
        std::uint64_t per_tuple_subsets = 0;
        for (const IndexTuple& a : tuples) {
            per_tuple_subsets = sat_add(
                per_tuple_subsets,
                subsets_of_cube(base, static_cast<std::uint32_t>(a.size())));
        }
        // nicefull: (b,c) pairs x full sets x Y; dominated by the square of
        // the per-tuple subset total times tuple count.
        std::uint64_t nf = sat_mul(
            sat_mul(per_tuple_subsets, per_tuple_subsets),
            sat_mul(tuples.size(), tuples.size()));
        // extfip/onestep: systems x extensions x b x subsets; bounded by the
        // top-cube subset count squared times shape factors.
        std::uint64_t top = subsets_of_cube(
            base, std::min(budgets.max_arity, budgets.max_lambda));
        std::uint64_t ef = sat_mul(sat_mul(top, top),
                                   sat_mul(tuples.size() * tuples.size(),
                                           per_tuple_subsets));
        total = sat_add(total, sat_add(nf, ef));
    }
    return total;
}

inline void check_suite_budget(std::uint64_t estimate, std::uint64_t cap,
                               const char* what) {
    if (estimate > cap) {
        std::ostringstream msg;
        msg << what << ": estimated " << estimate
            << " innermost cases exceeds the budget of " << cap
            << "; lower --max-a/--max-lambda/--max-arity";
        throw BudgetError(msg.str());
    }
}

// ---------------------------------------------------------------------------
// Lemma suite: fullification, nicefull, du=ud, extfip, onestep.
// ---------------------------------------------------------------------------

inline void run_lemma_suite(Report& report, const SuiteBudgets& budgets,
                            const SuiteHooks& hooks = SuiteHooks::real()) {
    check_suite_budget(estimate_lemma_cases(budgets), 2'000'000'000,
                       "lemma suite");
    report.set("grid.max_base", budgets.max_base);
    report.set("grid.max_lambda", budgets.max_lambda);
    report.set("grid.max_arity", budgets.max_arity);

    std::uint64_t full_cases = 0, nice_cases = 0, duud_cases = 0;
    std::uint64_t extfip_cases = 0, onestep_cases = 0;
    bool full_ok = true, nice_ok = true, duud_ok = true;
    bool extfip_ok = true, onestep_ok = true;

    for (std::uint32_t base = 1; base <= budgets.max_base; ++base) {
        std::uint32_t lambda = budgets.max_lambda;
        auto tuples = all_tuples(lambda, budgets.max_arity);

        // --- Fullification: minimal full superset, projection preserved.
        for (const IndexTuple& b : tuples) {
            for (const IndexTuple& a : tuples) {
                if (!a.subset_of(b)) continue;
                std::uint64_t nb = cube_size(
                    base, static_cast<std::uint32_t>(b.size()));
                for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << nb);
                     ++bits) {
                    CubeSubset x = cube_of_bits(
                        base, static_cast<std::uint32_t>(b.size()), bits);
                    CubeSubset plus = hooks.fullify(x, a, b);
                    // Independent minimal full superset: meet of all full
                    // supersets of X.
                    CubeSubset min_full = cube_full(x.base, x.arity);
                    for (std::uint64_t zb = 0;
                         zb < (std::uint64_t{1} << nb); ++zb) {
                        CubeSubset z = cube_of_bits(x.base, x.arity, zb);
                        if (cube_subset_of(x, z) && is_full_over(z, a, b)) {
                            min_full = cube_and(min_full, z);
                        }
                    }
                    ++full_cases;
                    bool ok = cube_subset_of(x, plus) &&
                              is_full_over(plus, a, b) && plus == min_full &&
                              pushforward(plus, b, a) == pushforward(x, b, a);
                    if (!ok && full_ok) {
                        full_ok = false;
                        report.counterexample(
                            "lemma.fullification",
                            "a=" + a.to_string() + " b=" + b.to_string() +
                                " X=" + cube_to_string(x) +
                                " X+=" + cube_to_string(plus));
                    }
                }
            }
        }

        // --- nicefull: both clauses, over all (a, b < c), full X, and Y
        // satisfying the hypothesis.
        for (const IndexTuple& c : tuples) {
            for (const IndexTuple& b : tuples) {
                if (b == c || !b.subset_of(c)) continue;
                std::uint64_t nb = cube_size(
                    base, static_cast<std::uint32_t>(b.size()));
                for (const IndexTuple& a : tuples) {
                    IndexTuple ac = tuple_intersection(a, c);
                    IndexTuple ab = tuple_intersection(a, b);
                    std::uint64_t na = cube_size(
                        base, static_cast<std::uint32_t>(a.size()));
                    for (std::uint64_t xb = 0;
                         xb < (std::uint64_t{1} << nb); ++xb) {
                        // Full-over-b subsets of ^|c|A are exactly pullbacks
                        // of b-sets.
                        CubeSubset x = pullback(
                            cube_of_bits(
                                base, static_cast<std::uint32_t>(b.size()),
                                xb),
                            b, c);
                        for (std::uint64_t yb = 0;
                             yb < (std::uint64_t{1} << na); ++yb) {
                            CubeSubset y = cube_of_bits(
                                base, static_cast<std::uint32_t>(a.size()),
                                yb);
                            CubeSubset hyp = pullback(
                                pushforward(y, a, ac), ac, c);
                            if (!cube_subset_of(hyp, x)) continue;
                            ++nice_cases;
                            CubeSubset yplus = hooks.fullify(y, ab, a);
                            CubeSubset proj = pushforward(yplus, a, ac);
                            bool clause1 = cube_subset_of(
                                pullback(proj, ac, c), x);
                            bool clause2 = is_full_over(proj, ab, ac);
                            if ((!clause1 || !clause2) && nice_ok) {
                                nice_ok = false;
                                report.counterexample(
                                    "lemma.nicefull",
                                    std::string(!clause1 ? "clause1"
                                                         : "clause2") +
                                        " a=" + a.to_string() +
                                        " b=" + b.to_string() +
                                        " c=" + c.to_string() +
                                        " X=" + cube_to_string(x) +
                                        " Y=" + cube_to_string(y));
                            }
                        }
                    }
                }
            }
        }

        // --- du=ud: both routes agree on every full-over-a^b set.
        for (const IndexTuple& c : tuples) {
            for (const IndexTuple& a : tuples) {
                if (!a.subset_of(c)) continue;
                for (const IndexTuple& b : tuples) {
                    if (!b.subset_of(c)) continue;
                    IndexTuple d = tuple_intersection(a, b);
                    std::uint64_t nd = cube_size(
                        base, static_cast<std::uint32_t>(d.size()));
                    for (std::uint64_t yb = 0;
                         yb < (std::uint64_t{1} << nd); ++yb) {
                        CubeSubset x = pullback(
                            cube_of_bits(
                                base, static_cast<std::uint32_t>(d.size()),
                                yb),
                            d, a);
                        ++duud_cases;
                        if (!du_equals_ud_check(a, b, c, x) && duud_ok) {
                            duud_ok = false;
                            report.counterexample(
                                "lemma.duud",
                                "a=" + a.to_string() + " b=" + b.to_string() +
                                    " c=" + c.to_string() +
                                    " X=" + cube_to_string(x));
                        }
                    }
                }
            }
        }

        // --- extfip + onestep: quantified over every proper coherent
        // family, every component, and every proper extension of it.
        for (std::uint32_t arity = 1; arity <= budgets.max_arity; ++arity) {
            auto systems =
                enumerate_proper_coherent_systems(base, lambda, arity);
            auto shape = all_tuples(lambda, arity);
            for (const CoherentFilterSystem& f : systems) {
                for (const IndexTuple& a : shape) {
                    const CubeSubset& core = f.component(a).core();
                    std::uint64_t n = cube_size(
                        base, static_cast<std::uint32_t>(a.size()));
                    for (std::uint64_t cb = 1;
                         cb < (std::uint64_t{1} << n); ++cb) {
                        if ((cb & ~core.bits) != 0) continue;  // not below core
                        CubeSubset star_core = cube_of_bits(
                            base, static_cast<std::uint32_t>(a.size()), cb);
                        FiniteFilter fa_star =
                            f.component(a).extended_with(star_core);
                        // extfip: the displayed family has the FIP.
                        for (const IndexTuple& b : shape) {
                            IndexTuple d = tuple_intersection(a, b);
                            std::uint64_t ndd = cube_size(
                                base, static_cast<std::uint32_t>(d.size()));
                            CubeSubset meet = f.component(b).core();
                            for (std::uint64_t yb = 0;
                                 yb < (std::uint64_t{1} << ndd); ++yb) {
                                CubeSubset yd = cube_of_bits(
                                    base,
                                    static_cast<std::uint32_t>(d.size()), yb);
                                if (fa_star.member(pullback(yd, d, a))) {
                                    meet = cube_and(meet,
                                                    pullback(yd, d, b));
                                }
                            }
                            ++extfip_cases;
                            if (meet.bits == 0 && extfip_ok) {
                                extfip_ok = false;
                                report.counterexample(
                                    "lemma.extfip",
                                    "a=" + a.to_string() +
                                        " b=" + b.to_string() + " F*core=" +
                                        cube_to_string(star_core));
                            }
                        }
                        // onestep: the extension is proper and coherent.
                        CoherentFilterSystem ext =
                            one_step_extend(f, a, fa_star);
                        ++onestep_cases;
                        bool ok = ext.proper() && ext.extends(f) &&
                                  ext.component(a).same_filter(fa_star) &&
                                  check_coherence(ext);
                        if (!ok && onestep_ok) {
                            onestep_ok = false;
                            report.counterexample(
                                "lemma.onestep",
                                "a=" + a.to_string() + " F*core=" +
                                    cube_to_string(star_core));
                        }
                    }
                }
            }
        }
    }

    report.set("lemma.fullification.cases", full_cases);
    report.set_pass("lemma.fullification", full_ok);
    report.set("lemma.nicefull.cases", nice_cases);
    report.set_pass("lemma.nicefull", nice_ok);
    report.set("lemma.duud.cases", duud_cases);
    report.set_pass("lemma.duud", duud_ok);
    report.set("lemma.extfip.cases", extfip_cases);
    report.set_pass("lemma.extfip", extfip_ok);
    report.set("lemma.onestep.cases", onestep_cases);
    report.set_pass("lemma.onestep", onestep_ok);
}

// ---------------------------------------------------------------------------
// Completion suite: every proper coherent system completes to a coherent
// ultrafilter extending it, and the proper ones are counted by |A|^lambda.
// ---------------------------------------------------------------------------

inline std::uint64_t estimate_ultra_enum(std::uint32_t base,
                                         std::uint32_t lambda,
                                         std::uint32_t arity) {
    using namespace detail;
    std::uint64_t combos = 1;
    for (const IndexTuple& a : all_tuples(lambda, arity)) {
        combos = sat_mul(combos,
                         pow_u64(base, static_cast<std::uint32_t>(a.size())));
    }
    std::uint64_t per_check = 0;
    for (const IndexTuple& a : all_tuples(lambda, arity)) {
        per_check = sat_add(
            per_check,
            subsets_of_cube(base, static_cast<std::uint32_t>(a.size())));
    }
    return sat_mul(combos, per_check);
}

inline void run_completion_suite(Report& report,
                                 const SuiteBudgets& budgets) {
    std::uint64_t completions = 0;
    bool completion_ok = true;
    for (std::uint32_t base = 1; base <= budgets.max_base; ++base) {
        for (std::uint32_t lambda = 0; lambda <= budgets.max_lambda;
             ++lambda) {
            for (std::uint32_t arity = 1; arity <= budgets.max_arity;
                 ++arity) {
                auto systems =
                    enumerate_proper_coherent_systems(base, lambda, arity);
                for (const CoherentFilterSystem& f : systems) {
                    CoherentUltrafilterFinite u = complete_to_ultra(f);
                    ++completions;
                    bool ok = u.proper() && u.system().extends(f) &&
                              check_coherence(u.system());
                    if (!ok && completion_ok) {
                        completion_ok = false;
                        report.counterexample(
                            "completion", "base=" + std::to_string(base) +
                                              " lambda=" +
                                              std::to_string(lambda));
                    }
                }
            }
        }
    }
    report.set("completion.runs", completions);
    report.set_pass("completion", completion_ok);

    // Proper coherent ultrafilters over a finite base are exactly the
    // functions lambda -> A; the brute-force enumeration must agree.
    bool count_ok = true;
    for (std::uint32_t base = 1; base <= budgets.count_max_base; ++base) {
        check_suite_budget(estimate_ultra_enum(base, 2, 2), 100'000'000,
                           "ultrafilter enumeration");
        auto ultras = enumerate_proper_coherent_ultrafilters(base, 2, 2);
        std::uint64_t expected = detail::pow_u64(base, 2);
        report.set("completion.count.base" + std::to_string(base),
                   static_cast<std::uint64_t>(ultras.size()));
        if (ultras.size() != expected) count_ok = false;
        for (const auto& u : ultras) {
            if (!u.witness_point().has_value()) count_ok = false;
        }
    }
    report.set_pass("completion.count", count_ok);
}

// ---------------------------------------------------------------------------
// Product suite: filter products against the sections-test oracle.
// ---------------------------------------------------------------------------

namespace detail {

// Right-handed sections test: X is in U_{a_0} (x) E_{rest} when the set of
// rows whose section lands in the tail product is in U_{a_0}.  Evaluated
// without reference to filter_product.
inline bool sections_member(const CubeSubset& x,
                            const std::vector<const FiniteFilter*>& seeds,
                            std::size_t from) {
    std::size_t k = seeds.size() - from;
    if (k == 0) return cube_contains(x, 0);
    std::uint32_t base = x.base;
    if (k == 1) return seeds[from]->member(x);
    CubeSubset rows = cube_empty(base, 1);
    for (std::uint32_t i = 0; i < base; ++i) {
        CubeSubset section = cube_empty(base, x.arity - 1);
        for (std::uint64_t p = 0; p < cube_size(base, x.arity - 1); ++p) {
            if (cube_contains(x, i + p * base)) {
                section.bits |= std::uint64_t{1} << p;
            }
        }
        if (sections_member(section, seeds, from + 1)) {
            rows.bits |= std::uint64_t{1} << i;
        }
    }
    return seeds[from]->member(rows);
}

}  // namespace detail

inline void run_product_suite(Report& report, const SuiteBudgets& budgets) {
    Prng rng(budgets.seed);
    std::uint64_t comparisons = 0, sampled = 0;
    bool ok = true;
    for (std::uint32_t base = 1; base <= budgets.product_max_base; ++base) {
        for (std::uint32_t lambda = 1; lambda <= budgets.product_max_lambda;
             ++lambda) {
            if (detail::pow_u64(base, lambda) > 64) {
                continue;  // top cube would not fit one word
            }
            // All principal seed vectors g: lambda -> A.
            std::vector<std::uint32_t> g(lambda, 0);
            for (;;) {
                std::vector<FiniteFilter> seeds;
                for (std::uint32_t i = 0; i < lambda; ++i) {
                    seeds.push_back(FiniteFilter::principal(
                        cube_point(base, 1, g[i])));
                }
                CoherentUltrafilterFinite e =
                    product_ultrafilter(seeds, lambda);
                if (!check_coherence(e.system())) {
                    ok = false;
                    report.counterexample("product", "incoherent at base=" +
                                                         std::to_string(base));
                }
                for (const IndexTuple& a : e.system().tuples()) {
                    std::vector<const FiniteFilter*> at;
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        at.push_back(&seeds[a[i]]);
                    }
                    std::uint32_t k = static_cast<std::uint32_t>(a.size());
                    std::uint64_t n = cube_size(base, k);
                    auto compare_one = [&](CubeSubset x) {
                        ++comparisons;
                        bool got = e.component(a).member(x);
                        bool want = detail::sections_member(x, at, 0);
                        if (got != want && ok) {
                            ok = false;
                            report.counterexample(
                                "product",
                                "a=" + a.to_string() +
                                    " X=" + cube_to_string(x) + " member=" +
                                    (got ? "true" : "false"));
                        }
                    };
                    if (n <= 16) {
                        for (std::uint64_t bits = 0;
                             bits < (std::uint64_t{1} << n); ++bits) {
                            compare_one(cube_of_bits(base, k, bits));
                        }
                    } else {
                        // Structured probes: singletons, co-singletons,
                        // pullbacks from every proper subtuple, then seeded
                        // random masks.
                        for (std::uint64_t p = 0; p < n; ++p) {
                            compare_one(cube_point(base, k, p));
                            compare_one(
                                cube_complement(cube_point(base, k, p)));
                        }
                        for (const IndexTuple& b : e.system().tuples()) {
                            if (b == a || !b.subset_of(a)) continue;
                            std::uint64_t nb = cube_size(
                                base, static_cast<std::uint32_t>(b.size()));
                            if (nb > 10) continue;
                            for (std::uint64_t bits = 0;
                                 bits < (std::uint64_t{1} << nb); ++bits) {
                                compare_one(pullback(
                                    cube_of_bits(
                                        base,
                                        static_cast<std::uint32_t>(b.size()),
                                        bits),
                                    b, a));
                            }
                        }
                        std::uint64_t mask = cube_mask(base, k);
                        for (int r = 0; r < 2000; ++r) {
                            ++sampled;
                            compare_one(
                                cube_of_bits(base, k, rng.next_u64() & mask));
                        }
                    }
                }
                // Next seed vector.
                std::uint32_t i = 0;
                for (; i < lambda; ++i) {
                    if (++g[i] < base) break;
                    g[i] = 0;
                }
                if (i == lambda) break;
            }
        }
    }
    report.set("product.comparisons", comparisons);
    report.set("product.sampled_sets", sampled);
    report.set_pass("product", ok);
}

}  // namespace cohult
