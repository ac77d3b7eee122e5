#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cohult/cube.hpp"
#include "cohult/errors.hpp"
#include "cohult/filter.hpp"
#include "cohult/index_tuple.hpp"

namespace cohult {

// An indexed family of filters F_a on ^|a|A, one for every index tuple over
// {0, ..., lambda-1} of length at most max_arity.  Coherence -- membership of
// X in F_a being equivalent to membership of its pullback in F_b whenever
// a <= b -- is a property checked on demand, not an invariant of the type:
// one-step extension and completion both need to pass through intermediate
// families.
class CoherentFilterSystem {
public:
    CoherentFilterSystem(std::uint32_t base, std::uint32_t lambda,
                         std::uint32_t max_arity)
        : base_(base), lambda_(lambda), max_arity_(max_arity),
          tuples_(all_tuples(lambda, max_arity)) {
        for (const IndexTuple& a : tuples_) {
            components_.emplace(
                a, FiniteFilter::trivial(
                       base_, static_cast<std::uint32_t>(a.size())));
        }
    }

    std::uint32_t base() const { return base_; }
    std::uint32_t lambda() const { return lambda_; }
    std::uint32_t max_arity() const { return max_arity_; }

    // All stored index tuples, in scan order (length, then lexicographic).
    const std::vector<IndexTuple>& tuples() const { return tuples_; }

    const FiniteFilter& component(const IndexTuple& a) const {
        auto it = components_.find(a);
        require(it != components_.end(),
                "component: no filter stored for " + a.to_string());
        return it->second;
    }

    void set_component(const IndexTuple& a, FiniteFilter f) {
        auto it = components_.find(a);
        require(it != components_.end(),
                "set_component: no slot for " + a.to_string());
        require(f.base() == base_ && f.arity() == a.size(),
                "set_component: filter on the wrong cube");
        it->second = std::move(f);
    }

    bool proper() const {
        for (const auto& [a, f] : components_) {
            if (!f.proper()) return false;
        }
        return true;
    }

    bool all_ultra() const {
        for (const auto& [a, f] : components_) {
            if (!f.ultra()) return false;
        }
        return true;
    }

    // Semantic comparison against another family over the same shape.
    bool extends(const CoherentFilterSystem& other) const {
        require(base_ == other.base_ && lambda_ == other.lambda_ &&
                    max_arity_ == other.max_arity_,
                "extends: families of different shape");
        for (const IndexTuple& a : tuples_) {
            if (!component(a).extends(other.component(a))) return false;
        }
        return true;
    }

private:
    std::uint32_t base_, lambda_, max_arity_;
    std::vector<IndexTuple> tuples_;
    std::map<IndexTuple, FiniteFilter> components_;
};

// Evidence that coherence fails between a pair of stored tuples a <= b.
// `witness` is a set of arity |a| on which the two membership tests disagree:
// either it belongs to F_a but its pullback escapes F_b, or the pullback is
// in F_b (a full-over-a member) while the set itself is missing from F_a.
struct CoherenceViolation {
    IndexTuple a, b;
    CubeSubset witness;
    enum class Kind { PullbackMissing, ProjectionMissing } kind;

    std::string to_string() const {
        std::ostringstream out;
        out << "between F_" << a.to_string() << " and F_" << b.to_string()
            << ": X = " << cube_to_string(witness) << " ";
        if (kind == Kind::PullbackMissing) {
            out << "is a member but its pullback is not";
        } else {
            out << "has its pullback as a member but is not one itself";
        }
        return out.str();
    }
};

// Exhaustive coherence check.  Only sets of arity |a| need scanning for each
// pair a <= b: the full-over-a members of F_b are exactly the pullbacks of
// arity-|a| sets, so the pair of directions in the definition reduces to the
// single equivalence tested here.
inline std::optional<CoherenceViolation> find_coherence_violation(
    const CoherentFilterSystem& f) {
    for (const IndexTuple& b : f.tuples()) {
        for (const IndexTuple& a : f.tuples()) {
            if (a == b || !a.subset_of(b)) continue;
            std::uint64_t n = cube_size(f.base(),
                                        static_cast<std::uint32_t>(a.size()));
            std::uint64_t subsets = std::uint64_t{1} << n;
            for (std::uint64_t bits = 0; bits < subsets; ++bits) {
                CubeSubset x = cube_of_bits(
                    f.base(), static_cast<std::uint32_t>(a.size()), bits);
                bool in_a = f.component(a).member(x);
                bool in_b = f.component(b).member(pullback(x, a, b));
                if (in_a == in_b) continue;
                CoherenceViolation v;
                v.a = a;
                v.b = b;
                v.witness = x;
                v.kind = in_a ? CoherenceViolation::Kind::PullbackMissing
                              : CoherenceViolation::Kind::ProjectionMissing;
                return v;
            }
        }
    }
    return std::nullopt;
}

inline bool check_coherence(const CoherentFilterSystem& f) {
    return !find_coherence_violation(f).has_value();
}

// One-step extension: given a coherent family F and a proper filter F*_a
// extending F_a, seed each component F_b with the generators
// (pi^b_{a^b})^{-1} pi^a_{a^b} X for every member X of F*_a full over a^b
// (enumerated as pullbacks of arity-|a^b| sets), then close the family
// under both coherence directions until a fixpoint.
//
// The closure pass matters: the seeded family alone can fail coherence when
// the new sets reach a longer tuple whose projections to an incomparable
// short tuple pick up information the seeding step never delivers there.
// (Smallest instance: |A| = lambda = 2, F_{0,1} concentrated on the
// anti-diagonal, extended at {0} -- the seeded F_{1} misses {(1)}.)  At the
// fixpoint every comparable pair satisfies core_a = pi(core_b), which is
// coherence verbatim, and when the family stores a single maximal tuple the
// result is also proper.  With a strict arity cap there are proper coherent
// families whose every coherent extension past F*_a is improper; the
// closure then returns that improper family rather than throwing.
inline CoherentFilterSystem one_step_extend(const CoherentFilterSystem& f,
                                            const IndexTuple& a,
                                            const FiniteFilter& fa_star) {
    require(fa_star.base() == f.base() && fa_star.arity() == a.size(),
            "one_step_extend: extension filter on the wrong cube");
    if (!fa_star.proper()) {
        throw ImproperInputError(
            "one_step_extend: extension filter is improper");
    }
    if (!fa_star.extends(f.component(a))) {
        throw ImproperInputError(
            "one_step_extend: filter does not extend the stored component");
    }
    CoherentFilterSystem out = f;
    for (const IndexTuple& b : f.tuples()) {
        IndexTuple d = tuple_intersection(a, b);
        std::uint32_t dk = static_cast<std::uint32_t>(d.size());
        std::vector<CubeSubset> gens = f.component(b).generators();
        std::uint64_t subsets = std::uint64_t{1}
                                << cube_size(f.base(), dk);
        for (std::uint64_t bits = 0; bits < subsets; ++bits) {
            CubeSubset y = cube_of_bits(f.base(), dk, bits);
            if (fa_star.member(pullback(y, d, a))) {
                gens.push_back(pullback(y, d, b));
            }
        }
        out.set_component(
            b, FiniteFilter(f.base(), static_cast<std::uint32_t>(b.size()),
                            std::move(gens)));
    }
    // Coherence closure.  Every generator added here is forced: pullbacks
    // of members must be members, and projections of full members must be
    // members.  Cores shrink monotonically, so this terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const IndexTuple& c : f.tuples()) {
            for (const IndexTuple& b : f.tuples()) {
                if (b == c || !b.subset_of(c)) continue;
                CubeSubset up = pullback(out.component(b).core(), b, c);
                if (!out.component(c).member(up)) {
                    out.set_component(c, out.component(c).extended_with(up));
                    changed = true;
                }
                CubeSubset down = pushforward(out.component(c).core(), c, b);
                if (!out.component(b).member(down)) {
                    out.set_component(b,
                                      out.component(b).extended_with(down));
                    changed = true;
                }
            }
        }
    }
    return out;
}

// A coherent family all of whose components are ultrafilters.
class CoherentUltrafilterFinite {
public:
    explicit CoherentUltrafilterFinite(CoherentFilterSystem system)
        : system_(std::move(system)) {
        require(system_.all_ultra(),
                "CoherentUltrafilterFinite: a component is not ultra");
    }

    const CoherentFilterSystem& system() const { return system_; }
    std::uint32_t base() const { return system_.base(); }
    std::uint32_t lambda() const { return system_.lambda(); }
    bool proper() const { return system_.proper(); }

    const FiniteFilter& component(const IndexTuple& a) const {
        return system_.component(a);
    }

    // A proper coherent ultrafilter over a finite base is principal along a
    // single function g: lambda -> A; g(i) is the unique core point of the
    // singleton component {i}.  Returns nullopt when improper or when
    // max_arity is 0 (no singleton components stored).
    std::optional<std::vector<std::uint32_t>> witness_point() const {
        if (!proper() || system_.max_arity() == 0) return std::nullopt;
        std::vector<std::uint32_t> g(system_.lambda());
        for (std::uint32_t i = 0; i < system_.lambda(); ++i) {
            const CubeSubset& core = component(IndexTuple{i}).core();
            if (cube_count(core) != 1) return std::nullopt;
            g[i] = static_cast<std::uint32_t>(
                std::countr_zero(core.bits));
        }
        // The candidate must actually generate every component.
        for (const IndexTuple& a : system_.tuples()) {
            std::vector<std::uint32_t> digits(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) digits[i] = g[a[i]];
            CubeSubset pt = cube_point(system_.base(),
                                       static_cast<std::uint32_t>(a.size()),
                                       encode_point(digits, system_.base()));
            if (component(a).core() != pt) return std::nullopt;
        }
        return g;
    }

    // The principal coherent ultrafilter concentrated on g: each component
    // E_a is generated by the single point g o a.
    static CoherentUltrafilterFinite from_witness(
        std::uint32_t base, std::uint32_t max_arity,
        const std::vector<std::uint32_t>& g) {
        std::uint32_t lambda = static_cast<std::uint32_t>(g.size());
        CoherentFilterSystem sys(base, lambda, max_arity);
        for (const IndexTuple& a : sys.tuples()) {
            std::vector<std::uint32_t> digits(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                require(g[a[i]] < base, "from_witness: value out of range");
                digits[i] = g[a[i]];
            }
            sys.set_component(
                a, FiniteFilter::principal(cube_point(
                       base, static_cast<std::uint32_t>(a.size()),
                       encode_point(digits, base))));
        }
        return CoherentUltrafilterFinite(std::move(sys));
    }

private:
    CoherentFilterSystem system_;
};

// Deterministic completion: repeatedly find the first undecided set (tuples
// in scan order, subsets by ascending bit pattern) and extend by it via
// one_step_extend, preferring the set itself over its complement whenever
// both keep the component proper.  Terminates because each step strictly
// shrinks some core.
inline CoherentUltrafilterFinite complete_to_ultra(
    const CoherentFilterSystem& f) {
    if (!f.proper()) {
        throw ImproperInputError("complete_to_ultra: family is improper");
    }
    CoherentFilterSystem cur = f;
    for (;;) {
        bool done = true;
        for (const IndexTuple& a : cur.tuples()) {
            const FiniteFilter& fa = cur.component(a);
            if (fa.ultra()) continue;
            std::uint32_t k = static_cast<std::uint32_t>(a.size());
            std::uint64_t subsets = std::uint64_t{1}
                                    << cube_size(cur.base(), k);
            std::uint64_t pick = subsets;  // sentinel: nothing found
            for (std::uint64_t bits = 0; bits < subsets; ++bits) {
                CubeSubset x = cube_of_bits(cur.base(), k, bits);
                if (fa.decided(x)) continue;
                // Prefer the set; fall back to the complement only if
                // adding the set would kill properness.  (For an undecided
                // set both choices in fact stay proper.)
                if (cube_and(fa.core(), x).bits != 0) {
                    pick = bits;
                } else {
                    pick = cube_complement(x).bits;
                }
                break;
            }
            require(pick != subsets,
                    "complete_to_ultra: non-ultra component decides all");
            CubeSubset chosen = cube_of_bits(cur.base(), k, pick);
            cur = one_step_extend(cur, a, fa.extended_with(chosen));
            done = false;
            break;
        }
        if (done) break;
    }
    return CoherentUltrafilterFinite(std::move(cur));
}

// The coherent ultrafilter with seeds U_0, ..., U_{lambda-1} (each a proper
// ultrafilter on ^1 A): E_a is the iterated product of the seeds selected by
// a, folded left.
inline CoherentUltrafilterFinite product_ultrafilter(
    const std::vector<FiniteFilter>& seeds, std::uint32_t max_arity) {
    require(!seeds.empty(), "product_ultrafilter: no seeds");
    std::uint32_t base = seeds[0].base();
    for (const FiniteFilter& u : seeds) {
        require(u.base() == base && u.arity() == 1,
                "product_ultrafilter: seed not a filter on ^1 A");
        if (!u.ultra() || !u.proper()) {
            throw ImproperInputError(
                "product_ultrafilter: seed is not a proper ultrafilter");
        }
    }
    std::uint32_t lambda = static_cast<std::uint32_t>(seeds.size());
    CoherentFilterSystem sys(base, lambda, max_arity);
    for (const IndexTuple& a : sys.tuples()) {
        FiniteFilter acc = FiniteFilter::trivial(base, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            acc = filter_product(acc, seeds[a[i]]);
        }
        sys.set_component(a, std::move(acc));
    }
    return CoherentUltrafilterFinite(std::move(sys));
}

// Every proper coherent family over the stored shape, enumerated through
// core assignments on the maximal tuples: a family is determined by a
// choice of nonempty core C_t for each maximal tuple t, subject to the
// projected cores agreeing on intersections; the non-maximal components are
// the projections.  Order of output follows the assignment scan and is
// deterministic.
inline std::vector<CoherentFilterSystem> enumerate_proper_coherent_systems(
    std::uint32_t base, std::uint32_t lambda, std::uint32_t max_arity) {
    std::vector<IndexTuple> tuples = all_tuples(lambda, max_arity);
    std::vector<IndexTuple> maximal;
    for (const IndexTuple& a : tuples) {
        bool is_max = true;
        for (const IndexTuple& b : tuples) {
            if (a != b && a.subset_of(b)) { is_max = false; break; }
        }
        if (is_max) maximal.push_back(a);
    }
    std::vector<CoherentFilterSystem> out;
    std::vector<CubeSubset> choice(maximal.size());
    auto emit = [&]() {
        CoherentFilterSystem sys(base, lambda, max_arity);
        for (std::size_t i = 0; i < maximal.size(); ++i) {
            sys.set_component(maximal[i], FiniteFilter::principal(choice[i]));
        }
        for (const IndexTuple& a : tuples) {
            for (std::size_t i = 0; i < maximal.size(); ++i) {
                if (a != maximal[i] && a.subset_of(maximal[i])) {
                    sys.set_component(a, FiniteFilter::principal(pushforward(
                                             choice[i], maximal[i], a)));
                    break;
                }
            }
        }
        out.push_back(std::move(sys));
    };
    auto consistent_so_far = [&](std::size_t upto) {
        for (std::size_t j = 0; j < upto; ++j) {
            IndexTuple d = tuple_intersection(maximal[j], maximal[upto]);
            if (pushforward(choice[j], maximal[j], d) !=
                pushforward(choice[upto], maximal[upto], d)) {
                return false;
            }
        }
        return true;
    };
    // Depth-first over nonempty core choices.
    std::vector<std::uint64_t> stack(maximal.size(), 0);
    std::size_t depth = 0;
    auto subsets_at = [&](std::size_t i) {
        return std::uint64_t{1} << cube_size(
                   base, static_cast<std::uint32_t>(maximal[i].size()));
    };
    if (maximal.empty()) return out;
    stack[0] = 1;  // skip the empty core
    for (;;) {
        if (stack[depth] >= subsets_at(depth)) {
            if (depth == 0) break;
            --depth;
            ++stack[depth];
            continue;
        }
        choice[depth] = cube_of_bits(
            base, static_cast<std::uint32_t>(maximal[depth].size()),
            stack[depth]);
        if (!consistent_so_far(depth)) {
            ++stack[depth];
            continue;
        }
        if (depth + 1 == maximal.size()) {
            emit();
            ++stack[depth];
        } else {
            ++depth;
            stack[depth] = 1;
        }
    }
    return out;
}

// Brute-force enumeration of the proper coherent ultrafilters: assign a
// single point independently to every stored tuple and keep exactly the
// assignments that pass the full coherence check.  Deliberately ignorant of
// the witness-function characterization, so it can serve as its oracle.
inline std::vector<CoherentUltrafilterFinite>
enumerate_proper_coherent_ultrafilters(std::uint32_t base,
                                       std::uint32_t lambda,
                                       std::uint32_t max_arity) {
    std::vector<IndexTuple> tuples = all_tuples(lambda, max_arity);
    std::vector<CoherentUltrafilterFinite> out;
    std::vector<std::uint64_t> pt(tuples.size(), 0);
    for (;;) {
        CoherentFilterSystem sys(base, lambda, max_arity);
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            sys.set_component(
                tuples[i],
                FiniteFilter::principal(cube_point(
                    base, static_cast<std::uint32_t>(tuples[i].size()),
                    pt[i])));
        }
        if (check_coherence(sys)) {
            out.emplace_back(std::move(sys));
        }
        // Mixed-radix increment over point choices.
        std::size_t i = 0;
        for (; i < tuples.size(); ++i) {
            std::uint64_t n = cube_size(
                base, static_cast<std::uint32_t>(tuples[i].size()));
            if (++pt[i] < n) break;
            pt[i] = 0;
        }
        if (i == tuples.size()) break;
    }
    return out;
}

}  // namespace cohult
