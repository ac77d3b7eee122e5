#pragma once

// The coherent filter derived from an embedding M -> N and an enumeration
// f: lambda -> N.  A definable set descriptor D = phi o (F-bar) restricted
// to chi(M) is a member of component a exactly when N satisfies
// phi(F-bar(f"a)).  For negation-closed fragments this decides every
// definable set, so the filter is already ultra on the sets the engine can
// ever see and no Zorn extension is materialized.
//
// Properness is certified per accepted query: a witness s in chi(M)^|a|
// with M |= phi(F-bar(s)) is produced by exact linear solving (symbolic
// profile) or enumeration (finite profile); failure to find one raises
// WitnessNotFoundError, which flags a broken scenario rather than a limit
// of the search.

#include <string>
#include <vector>

#include "cohult/definable.hpp"
#include "cohult/embedding.hpp"
#include "cohult/errors.hpp"
#include "cohult/eval.hpp"
#include "cohult/fragment.hpp"
#include "cohult/index_tuple.hpp"
#include "cohult/linear.hpp"
#include "cohult/structure.hpp"

namespace cohult {

class DerivedCoherentFilter {
 public:
  DerivedCoherentFilter(Structure M, Structure N, Embedding embed,
                        std::vector<Element> f, Fragment fragment)
      : M_(std::move(M)),
        N_(std::move(N)),
        embed_(std::move(embed)),
        f_(std::move(f)),
        fragment_(std::move(fragment)) {
    require(M_.is_finite() == N_.is_finite(),
            "derived filter: mixed profiles");
    require(!f_.empty(), "derived filter: empty enumeration");
    for (size_t i = 0; i < f_.size(); ++i)
      for (size_t k = i + 1; k < f_.size(); ++k)
        require(!(f_[i] == f_[k]), "derived filter: enumeration not injective");
  }

  const Structure& M() const { return M_; }
  const Structure& N() const { return N_; }
  const Embedding& embed() const { return embed_; }
  uint32_t lambda() const { return static_cast<uint32_t>(f_.size()); }
  const std::vector<Element>& f() const { return f_; }
  const Fragment& fragment() const { return fragment_; }

  // Parameters of an M-definable function, moved into N along the embedding.
  ElemMap embed_params(const ElemMap& params) const {
    ElemMap out;
    for (const auto& [k, v] : params) out.emplace(k, embed_.apply(v));
    return out;
  }

  // F-bar(f"a) evaluated in N; fns must have term bodies (their definitions
  // are what transfers from M to N).
  std::vector<Element> eval_in_n(const IndexTuple& a,
                                 const std::vector<DefinableFunction>& fns) const {
    ElemMap slots;
    for (uint32_t i = 0; i < a.size(); ++i) {
      require(a[i] < lambda(), "derived filter: index beyond lambda");
      slots[slot_var(i)] = f_[a[i]];
    }
    std::vector<Element> out;
    out.reserve(fns.size());
    for (const auto& F : fns) {
      require(F.arity() == a.size(), "derived filter: arity mismatch");
      out.push_back(
          eval_term(N_, F.term(), slots, embed_params(F.params())));
    }
    return out;
  }

  bool member(const IndexTuple& a, const DefinableSetDescriptor& D) const {
    require(fragment_.contains(D.phi), "formula outside fragment");
    require(D.arity == a.size(), "derived filter: descriptor arity mismatch");
    std::vector<Element> vals = eval_in_n(a, D.fns);
    ElemMap vars;
    for (uint32_t i = 0; i < vals.size(); ++i) vars[arg_var(i)] = vals[i];
    bool in = eval_formula(N_, D.phi, vars);
    if (in) properness_witness(a, D);  // certify or throw
    return in;
  }

  // A point of the accepted set: s in chi(M)^|a| with M |= phi(F-bar(s)).
  ElemMap properness_witness(const IndexTuple& a,
                             const DefinableSetDescriptor& D) const {
    // phi with x_i replaced by F_i's defining term over fresh slot names;
    // parameters are namespaced per function to avoid capture.
    TermSubst sub;
    ElemMap params;
    for (uint32_t i = 0; i < D.fns.size(); ++i) {
      const DefinableFunction& F = D.fns[i];
      TermSubst rename;
      ElemMap local = F.params();
      for (const auto& [k, v] : local) params.emplace("q" + std::to_string(i) + "." + k, v);
      TermPtr body = rename_params(F.term(), "q" + std::to_string(i) + ".");
      sub[arg_var(i)] = body;
    }
    FormulaPtr composed = substitute(D.phi, sub);

    if (!M_.is_finite()) {
      auto w = solve_qf_formula(M_, composed, params);
      if (!w.has_value())
        throw WitnessNotFoundError("no realizing point in M for " +
                                   formula_str(D.phi));
      ElemMap out;
      for (uint32_t i = 0; i < a.size(); ++i) {
        auto it = w->find(slot_var(i));
        out[slot_var(i)] = it == w->end() ? el_zero() : it->second;
      }
      return out;
    }

    std::vector<uint32_t> members = chi_members(M_, D.chi);
    uint64_t n = detail::table_size(static_cast<uint32_t>(members.size()),
                                    static_cast<uint32_t>(a.size()));
    for (uint64_t p = 0; p < n; ++p) {
      ElemMap vars;
      for (uint32_t i = 0; i < a.size(); ++i)
        vars[slot_var(i)] = el_fin(
            members[point_digit(p, static_cast<uint32_t>(members.size()), i)]);
      if (eval_formula(M_, composed, vars, params)) return vars;
    }
    throw WitnessNotFoundError("no realizing point in M for " +
                               formula_str(D.phi));
  }

 private:
  static TermPtr rename_params(const TermPtr& t, const std::string& prefix) {
    switch (t->kind) {
      case TermKind::Var:
      case TermKind::Const:
        return t;
      case TermKind::Param:
        return t_param(prefix + t->name);
      case TermKind::App: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(rename_params(a, prefix));
        auto n = std::make_shared<Term>(
            Term{TermKind::App, t->name, t->scalar, std::move(args)});
        return n;
      }
    }
    throw InternalError("rename_params: bad kind");
  }

  Structure M_, N_;
  Embedding embed_;
  std::vector<Element> f_;
  Fragment fragment_;
};

inline DerivedCoherentFilter derive_filter(Structure M, Structure N,
                                           Embedding embed,
                                           std::vector<Element> f,
                                           Fragment fragment) {
  return DerivedCoherentFilter(std::move(M), std::move(N), std::move(embed),
                               std::move(f), std::move(fragment));
}

}  // namespace cohult
