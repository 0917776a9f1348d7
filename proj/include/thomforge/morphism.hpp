#pragma once

// Algebra maps between presentations, determined by the images of generators.

#include <map>
#include <string>
#include <vector>

#include "thomforge/cohomology.hpp"

namespace thomforge {

class CdgaMorphism {
 public:
  /// Generators missing from `images` map to zero. Validated: degrees, weights
  /// (when both sides are weighted) and f∘d = d∘f on every generator.
  CdgaMorphism(CdgaPresentation source, CdgaPresentation target, const std::map<std::string, Element>& images)
      : source_(std::move(source)), target_(std::move(target)) {
    for (const auto& [name, img] : images) {
      if (!source_.has_generator(name)) {
        throw Error(ErrorKind::unknown_generator, "morphism image for unknown generator '" + name + "'");
      }
    }
    for (std::size_t g = 0; g < source_.size(); ++g) {
      const auto& gen = source_.generators()[g];
      auto it = images.find(gen.name);
      Element img = it == images.end() ? target_.zero() : target_.rehome(it->second);
      if (!img.is_homogeneous() || (img.degree() && *img.degree() != gen.degree)) {
        throw Error(ErrorKind::invalid_morphism, "image of " + gen.name + " (" + img.to_string() +
                                                     ") does not have degree " + std::to_string(gen.degree));
      }
      if (source_.weighted() && target_.weighted()) {
        for (const auto& [m, c] : img.terms()) {
          if (target_.weight(m) != *gen.weight) {
            throw Error(ErrorKind::invalid_morphism, "image of " + gen.name + " contains " + target_.format(m) +
                                                         " of weight " + std::to_string(target_.weight(m)) +
                                                         ", expected " + std::to_string(*gen.weight));
          }
        }
      }
      images_.push_back(std::move(img));
    }
    for (std::size_t g = 0; g < source_.size(); ++g) {
      const Element lhs = apply(source_.differential_of(g));
      const Element rhs = differentiate_truncated(images_[g]);
      if (!(lhs == rhs)) {
        throw Error(ErrorKind::invalid_morphism, "f(d " + source_.generators()[g].name + ") = " + lhs.to_string() +
                                                     " but d f(" + source_.generators()[g].name +
                                                     ") = " + rhs.to_string());
      }
    }
  }

  static CdgaMorphism identity(const CdgaPresentation& A) {
    std::map<std::string, Element> images;
    for (std::size_t g = 0; g < A.size(); ++g) images.emplace(A.generators()[g].name, A.generator(g));
    return CdgaMorphism(A, A, images);
  }

  const CdgaPresentation& source() const { return source_; }
  const CdgaPresentation& target() const { return target_; }
  const Element& image(std::size_t g) const { return images_.at(g); }
  const Element& image(const std::string& name) const { return images_.at(source_.index_of(name)); }

  Element apply(const Element& x) const {
    const Element local = source_.rehome(x);
    Element out = target_.zero();
    for (const auto& [m, c] : local.terms()) {
      Element term = target_.constant(c);
      for (std::size_t g = 0; g < source_.size() && !term.is_zero(); ++g) {
        for (int e = 0; e < m[g]; ++e) term = term * images_[g];
      }
      out += term;
    }
    return out;
  }

  /// The induced linear maps on monomial bases in degrees 0..top.
  ChainMap chain_map(const PresentationModel& s, const PresentationModel& t, int top) const {
    ChainMap f{s.algebra(), t.algebra(), {}};
    for (int k = 0; k <= top; ++k) {
      SparseMatrix m;
      m.rows = t.algebra().dim(k);
      if (k <= source_.truncation()) {
        for (const auto& mono : s.basis(k)) m.columns.push_back(t.to_vector(apply(source_.monomial(mono)), k));
      }
      f.matrices.push_back(std::move(m));
    }
    return f;
  }

 private:
  CdgaPresentation source_;
  CdgaPresentation target_;
  std::vector<Element> images_;
};

/// g∘f
inline CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f) {
  std::map<std::string, Element> images;
  for (std::size_t k = 0; k < f.source().size(); ++k) {
    images.emplace(f.source().generators()[k].name, g.apply(g.source().rehome(f.image(k))));
  }
  return CdgaMorphism(f.source(), g.target(), images);
}

/// True iff H^k(f) is an isomorphism for every k ≤ up_to; the report lists ranks.
inline QuasiIsoReport is_quasi_iso(const CdgaMorphism& f, int up_to) {
  const int limit = std::min(f.source().faithful_top(), f.target().faithful_top());
  if (up_to > limit) {
    throw Error(ErrorKind::cutoff_exceeded, "quasi-isomorphism check through degree " + std::to_string(up_to) +
                                                " exceeds the faithful range " + std::to_string(limit));
  }
  const PresentationModel s(f.source());
  const PresentationModel t(f.target());
  const int top = std::min(f.source().truncation(), f.target().truncation());
  return quasi_iso_report(f.chain_map(s, t, top), up_to);
}

}  // namespace thomforge
