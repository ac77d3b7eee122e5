#pragma once

// Maps between structures and the corpus-based quantifier-free embedding
// check.  Finite maps are explicit id tables; symbolic maps are linear
// extensions of basis images.

#include <vector>

#include "cohult/ast.hpp"
#include "cohult/corpus.hpp"
#include "cohult/element.hpp"
#include "cohult/errors.hpp"
#include "cohult/eval.hpp"
#include "cohult/prng.hpp"
#include "cohult/structure.hpp"

namespace cohult {

class Embedding {
 public:
  static Embedding finite(std::vector<uint32_t> images) {
    Embedding e;
    e.images_ = std::move(images);
    return e;
  }

  // basis_images[i] is the image (in the codomain) of domain basis vector i.
  static Embedding linear(std::vector<Element> basis_images) {
    Embedding e;
    e.basis_images_ = std::move(basis_images);
    return e;
  }

  static Embedding identity_linear(const Structure& S) {
    std::vector<Element> imgs;
    for (uint32_t i = 0; i < S.basis().size(); ++i) imgs.push_back(el_basis(i));
    return linear(std::move(imgs));
  }

  bool is_linear() const { return !basis_images_.empty() || images_.empty(); }

  Element apply(const Element& x) const {
    if (x.finite()) {
      require(x.id() < images_.size(), "Embedding: id out of range");
      return el_fin(images_[x.id()]);
    }
    Element out = el_zero();
    for (const auto& [i, q] : x.coords()) {
      require(i < basis_images_.size(), "Embedding: coordinate outside basis");
      out = el_add(out, el_scale(q, basis_images_[i]));
    }
    return out;
  }

 private:
  std::vector<uint32_t> images_;
  std::vector<Element> basis_images_;
};

// Preservation of every corpus formula under the map: truth in M at an
// assignment equals truth in N at the mapped assignment.  Finite domains
// are checked exhaustively, symbolic ones at seeded element samples.
inline bool is_qf_embedding(const Structure& M, const Structure& N,
                            const Embedding& e,
                            const std::vector<FormulaPtr>& corpus,
                            size_t samples_per_formula = 64,
                            uint64_t seed = kDefaultSeed) {
  Prng rng(seed);
  std::vector<Element> pool;
  if (M.is_finite()) {
    for (uint32_t id = 0; id < M.size(); ++id) pool.push_back(el_fin(id));
  } else {
    pool = sample_elements(M, 24, 3, rng);
  }

  for (const auto& phi : corpus) {
    require(quantifier_free(phi), "is_qf_embedding: quantified corpus formula");
    std::set<std::string> fv = free_vars(phi);
    std::vector<std::string> vars(fv.begin(), fv.end());
    uint64_t combos = 1;
    bool overflow = false;
    for (size_t i = 0; i < vars.size(); ++i) {
      combos *= pool.size();
      overflow = overflow || combos > samples_per_formula;
    }
    size_t trials = M.is_finite() && !overflow
                        ? static_cast<size_t>(combos)
                        : samples_per_formula;
    for (size_t k = 0; k < trials; ++k) {
      ElemMap in, out;
      uint64_t code = k;
      for (const auto& v : vars) {
        const Element& x = M.is_finite() && !overflow
                               ? pool[code % pool.size()]
                               : pool[rng.below(pool.size())];
        code /= pool.size();
        in[v] = x;
        out[v] = e.apply(x);
      }
      if (eval_formula(M, phi, in) != eval_formula(N, phi, out)) return false;
    }
  }
  return true;
}

}  // namespace cohult
