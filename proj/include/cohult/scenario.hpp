#pragma once

// Scenario files describe a derived-ultrapower experiment: two symbolic
// structures, the embedding, the index enumeration f, and check budgets.
// verify_isomorphism runs the whole battery — embedding corpus check,
// h o j = id, the Los differential, surjectivity and injectivity of the
// comparison map, and the principality criterion per index — and reports
// counts and pass flags in a stable key order.

#include <optional>
#include <string>
#include <vector>

#include "cohult/corpus.hpp"
#include "cohult/derived_filter.hpp"
#include "cohult/embedding.hpp"
#include "cohult/errors.hpp"
#include "cohult/linear.hpp"
#include "cohult/prng.hpp"
#include "cohult/report.hpp"
#include "cohult/structure.hpp"
#include "cohult/ultrapower.hpp"

namespace cohult {

struct IsoBudgets {
  uint64_t m_samples = 50;
  uint64_t los_formulas = 200;
  uint64_t n_samples = 50;
  uint64_t pair_samples = 100;
  uint32_t depth = 3;
  uint64_t seed = kDefaultSeed;
};

struct Scenario {
  Structure m;
  Structure n;
  Embedding embed;
  std::vector<Element> f;
  IsoBudgets budgets;
};

inline std::string scenario_to_text(const Scenario& sc) {
  std::ostringstream out;
  out << "scenario v1\n";
  out << "m.profile ordered-vector-space\nm.basis";
  for (const auto& b : sc.m.basis()) out << ' ' << b;
  out << "\nn.profile ordered-vector-space\nn.basis";
  for (const auto& b : sc.n.basis()) out << ' ' << b;
  out << '\n';
  for (uint32_t i = 0; i < sc.m.basis().size(); ++i)
    out << "embed " << sc.m.basis()[i] << " = "
        << element_str(sc.embed.apply(el_basis(i)), sc.n.basis()) << '\n';
  for (size_t i = 0; i < sc.f.size(); ++i)
    out << "enum." << i << " = " << element_str(sc.f[i], sc.n.basis()) << '\n';
  out << "budget.depth = " << sc.budgets.depth << '\n';
  out << "budget.los_formulas = " << sc.budgets.los_formulas << '\n';
  out << "budget.m_samples = " << sc.budgets.m_samples << '\n';
  out << "budget.n_samples = " << sc.budgets.n_samples << '\n';
  out << "budget.pair_samples = " << sc.budgets.pair_samples << '\n';
  out << "budget.seed = " << sc.budgets.seed << '\n';
  return out.str();
}

inline Scenario scenario_from_text(std::string_view src) {
  detail::LineReader r(src);
  std::string line;
  auto expect = [&](const std::string& what) {
    if (!r.next(line)) r.fail("expected " + what);
    return detail::split_ws(line);
  };
  if (expect("'scenario v1' header") !=
      std::vector<std::string>{"scenario", "v1"})
    r.fail("expected 'scenario v1' header");

  auto read_basis = [&](const std::string& who) {
    auto toks = expect(who + ".profile");
    if (toks != std::vector<std::string>{who + ".profile",
                                         "ordered-vector-space"})
      r.fail("expected '" + who + ".profile ordered-vector-space'");
    toks = expect(who + ".basis");
    if (toks.size() < 2 || toks[0] != who + ".basis")
      r.fail("expected " + who + ".basis");
    return std::vector<std::string>(toks.begin() + 1, toks.end());
  };
  std::vector<std::string> m_basis = read_basis("m");
  std::vector<std::string> n_basis = read_basis("n");
  Structure m = Structure::vector_space(m_basis);
  Structure n = Structure::vector_space(n_basis);

  std::vector<std::optional<Element>> images(m_basis.size());
  std::vector<std::optional<Element>> f;
  IsoBudgets budgets;
  while (r.next(line)) {
    size_t eq = line.find('=');
    if (eq == std::string::npos) r.fail("expected 'key = value'");
    auto keys = detail::split_ws(line.substr(0, eq));
    std::string value = line.substr(eq + 1);
    if (keys.size() == 2 && keys[0] == "embed") {
      uint32_t idx = UINT32_MAX;
      for (uint32_t i = 0; i < m_basis.size(); ++i)
        if (m_basis[i] == keys[1]) idx = i;
      if (idx == UINT32_MAX) r.fail("embed of unknown basis '" + keys[1] + "'");
      if (images[idx].has_value()) r.fail("duplicate embed line");
      images[idx] = element_parse(value, n_basis);
      continue;
    }
    if (keys.size() != 1) r.fail("expected 'key = value'");
    const std::string& key = keys[0];
    if (key.rfind("enum.", 0) == 0) {
      uint64_t idx = detail::parse_u64(key.substr(5), r);
      if (idx >= 1024) r.fail("enum index too large");
      if (f.size() <= idx) f.resize(idx + 1);
      if (f[idx].has_value()) r.fail("duplicate enum line");
      f[idx] = element_parse(value, n_basis);
      continue;
    }
    auto num = [&] {
      auto toks = detail::split_ws(value);
      if (toks.size() != 1) r.fail("expected a number");
      return detail::parse_u64(toks[0], r);
    };
    if (key == "budget.m_samples") budgets.m_samples = num();
    else if (key == "budget.los_formulas") budgets.los_formulas = num();
    else if (key == "budget.n_samples") budgets.n_samples = num();
    else if (key == "budget.pair_samples") budgets.pair_samples = num();
    else if (key == "budget.depth") budgets.depth = static_cast<uint32_t>(num());
    else if (key == "budget.seed") budgets.seed = num();
    else r.fail("unknown key '" + key + "'");
  }

  std::vector<Element> imgs;
  for (size_t i = 0; i < images.size(); ++i) {
    if (!images[i].has_value())
      throw ParseError("missing embed line for '" + m_basis[i] + "'", 0);
    imgs.push_back(*images[i]);
  }
  std::vector<Element> fv;
  for (size_t i = 0; i < f.size(); ++i) {
    if (!f[i].has_value())
      throw ParseError("missing enum." + std::to_string(i), 0);
    fv.push_back(*f[i]);
  }
  if (fv.empty()) throw ParseError("scenario has no enum lines", 0);
  return Scenario{std::move(m), std::move(n), Embedding::linear(std::move(imgs)),
                  std::move(fv), budgets};
}

namespace detail {

inline TermPtr affine_slot_term(const std::vector<Rat>& coeffs,
                                const std::vector<uint32_t>& keep) {
  TermPtr acc;
  for (uint32_t k = 0; k < keep.size(); ++k) {
    TermPtr part = t_scl(coeffs[keep[k]], t_var(slot_var(k)));
    acc = acc == nullptr ? part : t_add(acc, part);
  }
  return acc == nullptr ? t_const("0") : acc;
}

}  // namespace detail

inline Report verify_isomorphism(const Scenario& sc) {
  Report rep;
  const IsoBudgets& b = sc.budgets;
  rep.set("scenario.lambda", sc.f.size());
  rep.set("scenario.seed", b.seed);

  bool injective = true;
  for (size_t i = 0; i < sc.f.size() && injective; ++i)
    for (size_t k = i + 1; k < sc.f.size() && injective; ++k)
      injective = !(sc.f[i] == sc.f[k]);
  rep.set_pass("f.injective", injective);
  if (!injective) {
    rep.set_pass("overall", false);
    return rep;
  }

  Prng rng(b.seed);
  Fragment frag = Fragment::quantifier_free();

  std::vector<FormulaPtr> embed_corpus =
      make_qf_corpus(sc.m, 40, 2, 3, b.depth, rng);
  bool embed_ok =
      is_qf_embedding(sc.m, sc.n, sc.embed, embed_corpus, 32, b.seed);
  rep.set_pass("embed", embed_ok);
  if (!embed_ok) {
    rep.set_pass("overall", false);
    return rep;
  }

  DerivedUltrapower up(
      derive_filter(sc.m, sc.n, sc.embed, sc.f, frag));
  uint32_t lambda = static_cast<uint32_t>(sc.f.size());
  try {

    // h o j = id_M (through the embedding), exact.
    uint64_t hj_bad = 0;
    std::vector<Element> m_samples =
        sample_elements(sc.m, b.m_samples, b.depth, rng);
    for (const auto& m : m_samples)
      if (!(up.h_infinity(up.j(m)) == sc.embed.apply(m))) ++hj_bad;
    rep.set("hj.samples", m_samples.size());
    rep.set_pass("hj", hj_bad == 0);

    // Random classes for the Los and injectivity checks: small support plus
    // an affine term over the slots.
    auto random_class = [&]() {
      uint32_t size = 1 + static_cast<uint32_t>(rng.below(2));
      std::vector<uint32_t> ids;
      while (ids.size() < size) {
        uint32_t alpha = static_cast<uint32_t>(rng.below(lambda));
        bool dup = false;
        for (uint32_t i : ids) dup = dup || i == alpha;
        if (!dup) ids.push_back(alpha);
      }
      std::sort(ids.begin(), ids.end());
      std::vector<std::string> slots;
      for (uint32_t i = 0; i < size; ++i) slots.push_back(slot_var(i));
      TermPtr body = random_ovs_term(ovs_constant_pool(sc.m), slots, 2, rng);
      return up.make_class(IndexTuple(ids),
                           DefinableFunction::from_term(size, body));
    };

    // Los differential: satisfaction via E versus direct evaluation in N at
    // the h-images.
    uint64_t los_bad = 0;
    std::vector<FormulaPtr> los_corpus =
        make_qf_corpus(sc.m, b.los_formulas, 3, 3, 2, rng);
    for (const auto& phi : los_corpus) {
      std::vector<UltrapowerClass> xs;
      ElemMap at_h;
      for (uint32_t i = 0; i < 3; ++i) {
        xs.push_back(random_class());
        at_h[arg_var(i)] = up.h_infinity(xs.back());
      }
      bool lazy = up.los_satisfies(phi, xs);
      bool direct = eval_formula(sc.n, phi, at_h);
      if (lazy != direct) {
        ++los_bad;
        rep.counterexample("los", formula_str(phi));
      }
    }
    rep.set("los.formulas", los_corpus.size());
    rep.set_pass("los", los_bad == 0);

    // Surjectivity: identity classes hit the enumeration, and every sampled
    // N-element decomposes over it into an affine class with the right
    // h-image.
    uint64_t surj_bad = 0, ident_bad = 0;
    for (uint32_t alpha = 0; alpha < lambda; ++alpha)
      if (!(up.h_infinity(up.identity_class(alpha)) == sc.f[alpha]))
        ++ident_bad;
    std::vector<Element> n_samples =
        sample_elements(sc.n, b.n_samples, b.depth, rng);
    std::vector<uint32_t> all_ids;
    for (uint32_t i = 0; i < lambda; ++i) all_ids.push_back(i);
    for (const auto& target : n_samples) {
      auto coeffs = decompose_in_span(sc.f, target);
      if (!coeffs.has_value()) {
        ++surj_bad;
        continue;
      }
      std::vector<uint32_t> keep;
      for (uint32_t i = 0; i < lambda; ++i)
        if ((*coeffs)[i] != 0) keep.push_back(i);
      TermPtr body = detail::affine_slot_term(*coeffs, keep);
      DefinableFunction F = DefinableFunction::from_term(
          static_cast<uint32_t>(keep.size()), body);
      UltrapowerClass cls = up.make_class(IndexTuple(keep), F);
      if (!(up.h_infinity(cls) == target)) ++surj_bad;
    }
    rep.set("surj.identity_classes", lambda);
    rep.set("surj.samples", n_samples.size());
    rep.set_pass("surj", surj_bad == 0 && ident_bad == 0);

    // Injectivity on sampled pairs: classes_equal iff equal h-images.
    uint64_t inj_bad = 0;
    uint64_t pairs = 0;
    for (uint64_t k = 0; k < b.pair_samples; ++k) {
      UltrapowerClass x = random_class();
      UltrapowerClass y = k % 3 == 0 ? [&] {
        // a provably equal presentation: push to a larger tuple
        std::vector<uint32_t> ids = x.a.ids();
        uint32_t extra = static_cast<uint32_t>(rng.below(lambda));
        bool dup = false;
        for (uint32_t i : ids) dup = dup || i == extra;
        if (!dup) ids.push_back(extra);
        std::sort(ids.begin(), ids.end());
        return up.push_class(x, IndexTuple(ids));
      }() : random_class();
      bool eq = up.classes_equal(x, y);
      bool h_eq = up.h_infinity(x) == up.h_infinity(y);
      if (eq != h_eq) ++inj_bad;
      ++pairs;
    }
    rep.set("inj.pairs", pairs);
    rep.set_pass("inj", inj_bad == 0);

    // Principality per index (the properness criterion): [alpha, id] is in
    // the range of j exactly when f(alpha) lands in the embedded copy of M.
    std::vector<Element> embed_basis;
    for (uint32_t i = 0; i < sc.m.basis().size(); ++i)
      embed_basis.push_back(sc.embed.apply(el_basis(i)));
    uint64_t principal = 0, range_bad = 0;
    for (uint32_t alpha = 0; alpha < lambda; ++alpha) {
      UltrapowerClass ident = up.identity_class(alpha);
      auto coeffs = decompose_in_span(embed_basis, sc.f[alpha]);
      if (coeffs.has_value()) {
        ++principal;
        Coords c;
        for (uint32_t i = 0; i < coeffs->size(); ++i) c[i] = (*coeffs)[i];
        if (!up.classes_equal(ident, up.j(el_vec(std::move(c))))) ++range_bad;
      } else {
        for (const auto& m : m_samples)
          if (up.classes_equal(ident, up.j(m))) ++range_bad;
      }
    }
    rep.set("principal.count", principal);
    rep.set_pass("principal.range", range_bad == 0);
  } catch (const Error& err) {
    // a failed properness witness or blown budget is a verification failure,
    // not a crash
    rep.set("error", err.what());
    rep.set_pass("verify", false);
  }

  rep.set_pass("overall", rep.failures() == 0);
  return rep;
}

}  // namespace cohult
