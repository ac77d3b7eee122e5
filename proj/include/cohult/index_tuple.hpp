#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cohult/errors.hpp"

namespace cohult {

// A finite subset of the index set {0, ..., lambda-1}, kept as a strictly
// increasing sequence.  Written `a`, `b`, `c` throughout; the empty tuple is
// a legitimate value (its cube has exactly one point, the empty sequence).
class IndexTuple {
public:
    IndexTuple() = default;
    IndexTuple(std::initializer_list<std::uint32_t> ids)
        : IndexTuple(std::vector<std::uint32_t>(ids)) {}
    explicit IndexTuple(std::vector<std::uint32_t> ids) : ids_(std::move(ids)) {
        for (std::size_t i = 1; i < ids_.size(); ++i) {
            require(ids_[i - 1] < ids_[i],
                    "IndexTuple entries must be strictly increasing");
        }
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    std::uint32_t operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<std::uint32_t>& ids() const { return ids_; }

    bool contains(std::uint32_t id) const {
        return std::binary_search(ids_.begin(), ids_.end(), id);
    }

    bool subset_of(const IndexTuple& other) const {
        return std::includes(other.ids_.begin(), other.ids_.end(),
                             ids_.begin(), ids_.end());
    }

    // Position of `id` within this tuple; the id must be present.
    std::size_t position_of(std::uint32_t id) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
        require(it != ids_.end() && *it == id,
                "IndexTuple::position_of: id not in tuple");
        return static_cast<std::size_t>(it - ids_.begin());
    }

    friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
    friend std::strong_ordering operator<=>(const IndexTuple& x,
                                            const IndexTuple& y) {
        return x.ids_ <=> y.ids_;
    }

    std::string to_string() const {
        std::ostringstream out;
        out << "{";
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i) out << ",";
            out << ids_[i];
        }
        out << "}";
        return out.str();
    }

private:
    std::vector<std::uint32_t> ids_;
};

inline IndexTuple tuple_union(const IndexTuple& x, const IndexTuple& y) {
    std::vector<std::uint32_t> out;
    std::set_union(x.ids().begin(), x.ids().end(), y.ids().begin(),
                   y.ids().end(), std::back_inserter(out));
    return IndexTuple(std::move(out));
}

inline IndexTuple tuple_intersection(const IndexTuple& x, const IndexTuple& y) {
    std::vector<std::uint32_t> out;
    std::set_intersection(x.ids().begin(), x.ids().end(), y.ids().begin(),
                          y.ids().end(), std::back_inserter(out));
    return IndexTuple(std::move(out));
}

// Scan order used by deterministic iteration: shorter tuples first, then
// lexicographic.
inline bool scan_order_less(const IndexTuple& x, const IndexTuple& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

// All subsets of {0, ..., lambda-1} with at most max_arity entries, in scan
// order.
inline std::vector<IndexTuple> all_tuples(std::uint32_t lambda,
                                          std::uint32_t max_arity) {
    std::vector<IndexTuple> out;
    std::uint32_t cap = std::min(max_arity, lambda);
    for (std::uint32_t k = 0; k <= cap; ++k) {
        // Enumerate k-subsets in lexicographic order.
        std::vector<std::uint32_t> pick(k);
        for (std::uint32_t i = 0; i < k; ++i) pick[i] = i;
        for (;;) {
            out.emplace_back(pick);
            if (k == 0) break;
            // Advance to the next k-subset.
            std::int64_t i = k - 1;
            while (i >= 0 && pick[i] == lambda - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

// For a <= b (componentwise subset), the positions of a's entries inside b:
// projecting a b-indexed tuple s to an a-indexed one reads off s at these
// positions.
struct ProjectionMap {
    std::vector<std::uint32_t> positions;  // length |a|, strictly increasing
    std::uint32_t source_arity = 0;        // |a|
    std::uint32_t target_arity = 0;        // |b|
};

inline ProjectionMap projection_map(const IndexTuple& a, const IndexTuple& b) {
    require(a.subset_of(b), "projection_map: " + a.to_string() +
                                " is not a subset of " + b.to_string());
    ProjectionMap p;
    p.source_arity = static_cast<std::uint32_t>(a.size());
    p.target_arity = static_cast<std::uint32_t>(b.size());
    p.positions.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        p.positions.push_back(static_cast<std::uint32_t>(b.position_of(a[i])));
    }
    return p;
}

}  // namespace cohult
