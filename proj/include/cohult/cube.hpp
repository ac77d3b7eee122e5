#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cohult/errors.hpp"
#include "cohult/index_tuple.hpp"

namespace cohult {

// Number of points of the cube ^arity A with |A| = base.  Kept within 64 so
// a subset fits in one machine word; every supported configuration satisfies
// base^arity <= 64.
inline std::uint64_t cube_size(std::uint32_t base, std::uint32_t arity) {
    require(base >= 1, "cube_size: base must be at least 1");
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < arity; ++i) {
        n *= base;
        require(n <= 64, "cube_size: base^arity exceeds 64 points");
    }
    return n;
}

// Points of ^arity A are encoded in mixed radix, little-endian: the tuple
// s = (s_0, ..., s_{n-1}) has code sum_i s_i * base^i.  Subsets are bitmasks
// over point codes.
inline std::uint32_t point_digit(std::uint64_t point, std::uint32_t base,
                                 std::uint32_t i) {
    for (std::uint32_t k = 0; k < i; ++k) point /= base;
    return static_cast<std::uint32_t>(point % base);
}

inline std::uint64_t encode_point(const std::vector<std::uint32_t>& digits,
                                  std::uint32_t base) {
    std::uint64_t code = 0;
    std::uint64_t weight = 1;
    for (std::uint32_t d : digits) {
        require(d < base, "encode_point: digit out of range");
        code += d * weight;
        weight *= base;
    }
    return code;
}

inline std::vector<std::uint32_t> decode_point(std::uint64_t point,
                                               std::uint32_t base,
                                               std::uint32_t arity) {
    std::vector<std::uint32_t> digits(arity);
    for (std::uint32_t i = 0; i < arity; ++i) {
        digits[i] = static_cast<std::uint32_t>(point % base);
        point /= base;
    }
    return digits;
}

// A subset of ^arity A with |A| = base.
struct CubeSubset {
    std::uint32_t base = 1;
    std::uint32_t arity = 0;
    std::uint64_t bits = 0;

    friend bool operator==(const CubeSubset&, const CubeSubset&) = default;
};

inline std::uint64_t cube_mask(std::uint32_t base, std::uint32_t arity) {
    std::uint64_t n = cube_size(base, arity);
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

inline CubeSubset cube_empty(std::uint32_t base, std::uint32_t arity) {
    cube_size(base, arity);
    return {base, arity, 0};
}

inline CubeSubset cube_full(std::uint32_t base, std::uint32_t arity) {
    return {base, arity, cube_mask(base, arity)};
}

inline CubeSubset cube_of_bits(std::uint32_t base, std::uint32_t arity,
                               std::uint64_t bits) {
    require((bits & ~cube_mask(base, arity)) == 0,
            "cube_of_bits: bits outside the cube");
    return {base, arity, bits};
}

inline CubeSubset cube_point(std::uint32_t base, std::uint32_t arity,
                             std::uint64_t point) {
    require(point < cube_size(base, arity), "cube_point: point out of range");
    return {base, arity, std::uint64_t{1} << point};
}

inline bool cube_contains(const CubeSubset& x, std::uint64_t point) {
    return (x.bits >> point) & 1;
}

inline std::uint32_t cube_count(const CubeSubset& x) {
    return static_cast<std::uint32_t>(std::popcount(x.bits));
}

inline void check_same_cube(const CubeSubset& x, const CubeSubset& y,
                            const char* who) {
    require(x.base == y.base && x.arity == y.arity,
            std::string(who) + ": operands live on different cubes");
}

inline CubeSubset cube_and(const CubeSubset& x, const CubeSubset& y) {
    check_same_cube(x, y, "cube_and");
    return {x.base, x.arity, x.bits & y.bits};
}

inline CubeSubset cube_or(const CubeSubset& x, const CubeSubset& y) {
    check_same_cube(x, y, "cube_or");
    return {x.base, x.arity, x.bits | y.bits};
}

inline CubeSubset cube_complement(const CubeSubset& x) {
    return {x.base, x.arity, ~x.bits & cube_mask(x.base, x.arity)};
}

inline bool cube_subset_of(const CubeSubset& x, const CubeSubset& y) {
    check_same_cube(x, y, "cube_subset_of");
    return (x.bits & ~y.bits) == 0;
}

inline std::string cube_to_string(const CubeSubset& x) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (std::uint64_t p = 0; p < cube_size(x.base, x.arity); ++p) {
        if (!cube_contains(x, p)) continue;
        if (!first) out << ",";
        first = false;
        out << "(";
        auto digits = decode_point(p, x.base, x.arity);
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (i) out << ",";
            out << digits[i];
        }
        out << ")";
    }
    out << "}";
    return out.str();
}

// Projection of a single b-point to an a-point along a <= b.
inline std::uint64_t project_point(std::uint64_t point, std::uint32_t base,
                                   const ProjectionMap& p) {
    std::uint64_t code = 0;
    std::uint64_t weight = 1;
    for (std::uint32_t pos : p.positions) {
        code += point_digit(point, base, pos) * weight;
        weight *= base;
    }
    return code;
}

// Inverse image (pi^b_a)^{-1} X of X <= ^|a|A inside ^|b|A, for a <= b.
inline CubeSubset pullback(const CubeSubset& x, const IndexTuple& a,
                           const IndexTuple& b) {
    require(x.arity == a.size(), "pullback: set arity does not match tuple");
    ProjectionMap p = projection_map(a, b);
    CubeSubset out = cube_empty(x.base, p.target_arity);
    for (std::uint64_t s = 0; s < cube_size(x.base, p.target_arity); ++s) {
        if (cube_contains(x, project_point(s, x.base, p))) {
            out.bits |= std::uint64_t{1} << s;
        }
    }
    return out;
}

// Direct image pi^b_a X of X <= ^|b|A down to ^|a|A, for a <= b.
inline CubeSubset pushforward(const CubeSubset& x, const IndexTuple& b,
                              const IndexTuple& a) {
    require(x.arity == b.size(),
            "pushforward: set arity does not match tuple");
    ProjectionMap p = projection_map(a, b);
    CubeSubset out = cube_empty(x.base, p.source_arity);
    for (std::uint64_t s = 0; s < cube_size(x.base, p.target_arity); ++s) {
        if (cube_contains(x, s)) {
            out.bits |= std::uint64_t{1} << project_point(s, x.base, p);
        }
    }
    return out;
}

// X <= ^|c|A is full over b (for b <= c) when membership only depends on the
// b-coordinates, i.e. X is the pullback of its own projection.
inline bool is_full_over(const CubeSubset& x, const IndexTuple& b,
                         const IndexTuple& c) {
    require(x.arity == c.size(),
            "is_full_over: set arity does not match tuple");
    return x == pullback(pushforward(x, c, b), b, c);
}

// Fullification X+ over b: the smallest full-over-b superset of X, realized
// as pullback-of-pushforward.
inline CubeSubset fullify(const CubeSubset& x, const IndexTuple& b,
                          const IndexTuple& c) {
    require(x.arity == c.size(), "fullify: set arity does not match tuple");
    return pullback(pushforward(x, c, b), b, c);
}

// For a, b <= c and X <= ^|a|A full over a^b:
//   (pi^b_{a^b})^{-1} pi^a_{a^b} X  ==  pi^c_b (pi^c_a)^{-1} X.
// Both routes from a-sets to b-sets are computed; the checked identity is
// returned (true under the stated preconditions).
inline bool du_equals_ud_check(const IndexTuple& a, const IndexTuple& b,
                               const IndexTuple& c, const CubeSubset& x) {
    require(a.subset_of(c) && b.subset_of(c),
            "du_equals_ud_check: a and b must be subsets of c");
    require(x.arity == a.size(),
            "du_equals_ud_check: set arity does not match tuple a");
    IndexTuple d = tuple_intersection(a, b);
    require(is_full_over(x, d, a),
            "du_equals_ud_check: X must be full over a^b");
    CubeSubset down_up = pullback(pushforward(x, a, d), d, b);
    CubeSubset up_down = pushforward(pullback(x, a, c), c, b);
    return down_up == up_down;
}

}  // namespace cohult
