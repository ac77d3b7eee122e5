#pragma once

// Test-side feasibility oracle for linear systems over the span of the
// leading basis vector, independent of the elimination code under test.
//
// Strict rows are lifted with a slack variable t (a x + k < 0 becomes
// a x + k + t <= 0, 0 <= t <= 1); the original system is satisfiable iff
// the lifted polytope, intersected with a large bounding box, contains a
// point with t > 0.  The box keeps the polytope bounded, so the maximum of
// t is attained at a vertex, i.e. at a basic solution of some full tight
// subset of rows; all of those are enumerated and solved exactly.
//
// Box soundness: cleared row entries are small integers (coefficients are
// quotients of magnitude <= 9 with denominators <= 3), so by Cramer bounds
// any minimal-face point of the unboxed system has coordinates far below
// kBox, and a satisfiable system always meets the box interior.

#include <optional>
#include <vector>

#include "cohult/linear.hpp"

namespace lp_oracle {

using cohult::Rat;

inline const Rat kBox = Rat(1000000000);

struct Row {
  std::vector<Rat> a;  // over system vars then t
  Rat rhs;
  bool eq = false;  // a x == rhs instead of a x <= rhs
};

// Exact solve of a square system by Gauss-Jordan; nullopt when singular.
inline std::optional<std::vector<Rat>> solve_square(
    std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == n) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    Rat lead = m[col][col];
    for (size_t c = 0; c < n; ++c) m[col][c] /= lead;
    rhs[col] /= lead;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (size_t c = 0; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

// Constant part of an affine form as a scalar; only multiples of basis
// vector 0 are supported.
inline Rat leading_scalar(const cohult::Element& e) {
  Rat k = 0;
  for (const auto& [i, q] : e.coords()) {
    if (i != 0) throw cohult::PreconditionError(
        "lp oracle: constant outside the leading-basis span");
    k = q;
  }
  return k;
}

inline bool feasible(const cohult::LinearSystem& sys) {
  size_t n = sys.vars.size();
  size_t nt = n + 1;  // slack t is the last column

  std::vector<Row> rows;
  for (const auto& c : sys.constraints) {
    Row row;
    row.a.assign(nt, Rat(0));
    for (const auto& [v, q] : c.lhs.coeffs) {
      size_t idx = n;
      for (size_t i = 0; i < n; ++i)
        if (sys.vars[i] == v) idx = i;
      if (idx == n)
        throw cohult::PreconditionError("lp oracle: undeclared variable");
      row.a[idx] = q;
    }
    row.rhs = -leading_scalar(c.lhs.cst);
    row.eq = c.rel == cohult::Rel::Eq;
    if (c.rel == cohult::Rel::Lt) row.a[n] = 1;
    rows.push_back(std::move(row));
  }
  {
    Row lo;  // -t <= 0
    lo.a.assign(nt, Rat(0));
    lo.a[n] = -1;
    lo.rhs = 0;
    rows.push_back(std::move(lo));
    Row hi;  // t <= 1
    hi.a.assign(nt, Rat(0));
    hi.a[n] = 1;
    hi.rhs = 1;
    rows.push_back(std::move(hi));
  }
  for (size_t i = 0; i < n; ++i) {
    Row hi, lo;
    hi.a.assign(nt, Rat(0));
    hi.a[i] = 1;
    hi.rhs = kBox;
    lo.a.assign(nt, Rat(0));
    lo.a[i] = -1;
    lo.rhs = kBox;
    rows.push_back(std::move(hi));
    rows.push_back(std::move(lo));
  }

  auto feasible_point = [&](const std::vector<Rat>& x) {
    for (const auto& r : rows) {
      Rat lhs = 0;
      for (size_t i = 0; i < nt; ++i) lhs += r.a[i] * x[i];
      if (r.eq ? lhs != r.rhs : lhs > r.rhs) return false;
    }
    return true;
  };

  // Every vertex of the boxed polytope is the unique solution of some
  // nt-subset of tight rows.
  std::vector<size_t> pick(nt, 0);
  for (size_t i = 0; i < nt; ++i) pick[i] = i;
  if (rows.size() < nt) return false;  // cannot happen: box rows alone
  while (true) {
    std::vector<std::vector<Rat>> m;
    std::vector<Rat> rhs;
    for (size_t i : pick) {
      m.push_back(rows[i].a);
      rhs.push_back(rows[i].rhs);
    }
    if (auto x = solve_square(std::move(m), std::move(rhs)))
      if ((*x)[n] > 0 && feasible_point(*x)) return true;

    // next nt-combination of row indices
    size_t i = nt;
    while (i > 0 && pick[i - 1] == rows.size() - nt + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (size_t j = i; j < nt; ++j) pick[j] = pick[j - 1] + 1;
  }
  return false;
}

}  // namespace lp_oracle
