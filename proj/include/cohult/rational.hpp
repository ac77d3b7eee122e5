#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "cohult/errors.hpp"

namespace cohult {

// Exact rational arithmetic is delegated to GMP's mpq_class, which keeps
// values canonical (reduced, positive denominator).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string rat_str(const Rat& q) {
    return q.get_str();
}

// Parses "p" or "p/q" with an optional leading '-'.  `offset` is added to
// reported error positions so callers can point into a larger input.
inline Rat rat_parse(std::string_view text, std::size_t offset = 0) {
    auto fail = [&](const char* msg, std::size_t at) -> Rat {
        throw ParseError(std::string(msg), offset + at);
    };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
    }
    std::size_t num_begin = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == num_begin) fail("expected digits in rational", i);
    std::string num(text.substr(num_begin, i - num_begin));
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::size_t den_begin = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == den_begin) fail("expected digits after '/'", i);
        den = std::string(text.substr(den_begin, i - den_begin));
    }
    if (i != text.size()) fail("trailing characters in rational", i);
    mpz_class n(num), d(den);
    if (d == 0) fail("rational with zero denominator", 0);
    Rat q(n, d);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

}  // namespace cohult
