#pragma once

#include <cstdint>
#include <vector>

#include "cohult/cube.hpp"
#include "cohult/errors.hpp"

namespace cohult {

// A filter on ^arity A, |A| = base, presented by generators.  On a finite
// cube every generated filter is principal: its members are exactly the
// supersets of the intersection of the generators (the core).  The generator
// list is retained as given; equality, extension and membership are all
// semantic, i.e. phrased through the core.
//
// The empty generator list yields the trivial filter {^arity A}.  An empty
// core is allowed and denotes the improper filter (every set is a member).
class FiniteFilter {
public:
    FiniteFilter(std::uint32_t base, std::uint32_t arity,
                 std::vector<CubeSubset> generators = {})
        : base_(base), arity_(arity), generators_(std::move(generators)),
          core_(cube_full(base, arity)) {
        for (const CubeSubset& g : generators_) {
            require(g.base == base_ && g.arity == arity_,
                    "FiniteFilter: generator on the wrong cube");
            core_ = cube_and(core_, g);
        }
    }

    static FiniteFilter trivial(std::uint32_t base, std::uint32_t arity) {
        return FiniteFilter(base, arity);
    }

    static FiniteFilter principal(const CubeSubset& generator) {
        return FiniteFilter(generator.base, generator.arity, {generator});
    }

    std::uint32_t base() const { return base_; }
    std::uint32_t arity() const { return arity_; }
    const std::vector<CubeSubset>& generators() const { return generators_; }
    const CubeSubset& core() const { return core_; }

    bool member(const CubeSubset& x) const {
        require(x.base == base_ && x.arity == arity_,
                "FiniteFilter::member: set on the wrong cube");
        return cube_subset_of(core_, x);
    }

    bool decided(const CubeSubset& x) const {
        return member(x) || member(cube_complement(x));
    }

    bool proper() const { return core_.bits != 0; }

    // Decides every subset; a proper ultrafilter has a one-point core, the
    // improper filter is the degenerate case.
    bool ultra() const { return cube_count(core_) <= 1; }

    // Semantic extension: every member of `other` is a member of this.
    bool extends(const FiniteFilter& other) const {
        require(other.base_ == base_ && other.arity_ == arity_,
                "FiniteFilter::extends: filters on different cubes");
        return cube_subset_of(core_, other.core_);
    }

    bool same_filter(const FiniteFilter& other) const {
        return extends(other) && other.extends(*this);
    }

    FiniteFilter extended_with(const CubeSubset& x) const {
        std::vector<CubeSubset> gens = generators_;
        gens.push_back(x);
        return FiniteFilter(base_, arity_, std::move(gens));
    }

private:
    std::uint32_t base_, arity_;
    std::vector<CubeSubset> generators_;
    CubeSubset core_;
};

// The product F0 (x) F1: sections test says X is a member iff
// { i : { j : i^j in X } in F1 } in F0.  For generated filters on finite
// cubes this is the filter generated by core(F0) x core(F1), with the
// product cube ordered F0-coordinates first (little-endian).
inline FiniteFilter filter_product(const FiniteFilter& f0,
                                   const FiniteFilter& f1) {
    require(f0.base() == f1.base(),
            "filter_product: factors over different base sets");
    std::uint32_t base = f0.base();
    std::uint32_t arity = f0.arity() + f1.arity();
    std::uint64_t n0 = cube_size(base, f0.arity());
    CubeSubset prod = cube_empty(base, arity);
    for (std::uint64_t i = 0; i < n0; ++i) {
        if (!cube_contains(f0.core(), i)) continue;
        for (std::uint64_t j = 0; j < cube_size(base, f1.arity()); ++j) {
            if (!cube_contains(f1.core(), j)) continue;
            prod.bits |= std::uint64_t{1} << (i + j * n0);
        }
    }
    return FiniteFilter(base, arity, {prod});
}

// Direct evaluation of the sections test, independent of filter_product's
// principal-core shortcut.  Intended as an oracle.
inline bool product_member_by_sections(const FiniteFilter& f0,
                                       const FiniteFilter& f1,
                                       const CubeSubset& x) {
    require(f0.base() == f1.base(),
            "product_member_by_sections: factors over different base sets");
    require(x.base == f0.base() && x.arity == f0.arity() + f1.arity(),
            "product_member_by_sections: set on the wrong cube");
    std::uint32_t base = f0.base();
    std::uint64_t n0 = cube_size(base, f0.arity());
    CubeSubset good_rows = cube_empty(base, f0.arity());
    for (std::uint64_t i = 0; i < n0; ++i) {
        CubeSubset section = cube_empty(base, f1.arity());
        for (std::uint64_t j = 0; j < cube_size(base, f1.arity()); ++j) {
            if (cube_contains(x, i + j * n0)) {
                section.bits |= std::uint64_t{1} << j;
            }
        }
        if (f1.member(section)) good_rows.bits |= std::uint64_t{1} << i;
    }
    return f0.member(good_rows);
}

}  // namespace cohult
