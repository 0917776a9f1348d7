#pragma once

// Cohomology of finite dg algebras: representative cocycles per degree (and per
// weight), coordinates of classes, induced maps and quasi-isomorphism reports,
// the cohomology algebra itself and sub-dg-algebras given by spanning sets.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thomforge/dg_algebra.hpp"

namespace thomforge {

struct GradedVectorSpaceReport {
  struct Degree {
    int degree = 0;
    std::size_t dimension = 0;
    std::vector<std::string> representatives;
    std::map<int, std::size_t> weight_dimensions;  // filled when weighted
  };
  bool weighted = false;
  std::vector<Degree> degrees;

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees) out.push_back(d.dimension);
    return out;
  }
};

class Cohomology {
 public:
  struct Degree {
    int degree = 0;
    std::vector<SparseVector> representatives;  // closed, independent modulo boundaries
    std::vector<int> weights;                   // parallel to representatives when weighted
    QuotientBasis quotient;                     // boundaries as base, representatives as picks
  };

  Cohomology(DgAlgebra A, int up_to) : A_(std::move(A)), up_to_(up_to) {
    if (up_to > A_.faithful_top()) {
      throw Error(ErrorKind::cutoff_exceeded, "cohomology requested through degree " + std::to_string(up_to) +
                                                  " but the model is faithful only through degree " +
                                                  std::to_string(A_.faithful_top()));
    }
    if (up_to > A_.top()) up_to_ = A_.top();
    for (int k = 0; k <= up_to_; ++k) degrees_.push_back(compute(k));
  }

  const DgAlgebra& algebra() const { return A_; }
  int up_to() const { return up_to_; }
  bool covers(int k) const { return k >= 0 && k <= up_to_; }
  const Degree& degree(int k) const {
    if (!covers(k)) throw Error(ErrorKind::cutoff_exceeded, "degree " + std::to_string(k) + " not computed");
    return degrees_[static_cast<std::size_t>(k)];
  }
  std::size_t dim(int k) const { return covers(k) ? degree(k).representatives.size() : 0; }

  std::map<int, std::size_t> weight_dims(int k) const {
    std::map<int, std::size_t> out;
    if (!A_.weighted()) return out;
    for (int w : degree(k).weights) ++out[w];
    return out;
  }

  Cochain representative(int k, Index i) const { return {k, degree(k).representatives.at(i)}; }

  bool is_cocycle(const Cochain& x) const { return A_.d(x).is_zero(); }

  /// Coordinates of the class of a cocycle in the chosen representatives.
  SparseVector coordinates(const Cochain& x) const {
    if (x.is_zero() || !covers(x.degree)) return {};
    if (!is_cocycle(x)) {
      throw Error(ErrorKind::invalid_argument, A_.format(x) + " is not closed");
    }
    auto c = degree(x.degree).quotient.coordinates(x.vector);
    if (!c) throw Error(ErrorKind::invalid_argument, "cocycle outside the computed span");
    return *c;
  }
  bool is_coboundary(const Cochain& x) const { return coordinates(x).empty(); }

  GradedVectorSpaceReport report() const {
    GradedVectorSpaceReport r;
    r.weighted = A_.weighted();
    for (int k = 0; k <= up_to_; ++k) {
      GradedVectorSpaceReport::Degree d;
      d.degree = k;
      d.dimension = dim(k);
      for (Index i = 0; i < dim(k); ++i) d.representatives.push_back(A_.format(representative(k, i)));
      d.weight_dimensions = weight_dims(k);
      r.degrees.push_back(std::move(d));
    }
    return r;
  }

 private:
  Degree compute(int k) const {
    Degree out;
    out.degree = k;
    const auto& block = A_.block(k);
    for (Index i = 0; i < A_.dim(k - 1); ++i) out.quotient.add_base(A_.block(k - 1).differential[i]);
    // kernel computed separately on each weight block so representatives are weight-homogeneous
    std::map<int, std::vector<Index>> by_weight;
    for (Index i = 0; i < block.size(); ++i) by_weight[A_.weight(k, i)].push_back(i);
    for (const auto& [w, idx] : by_weight) {
      std::vector<SparseVector> cols;
      for (Index i : idx) cols.push_back(block.differential[i]);
      for (const auto& kv : kernel_basis(cols)) {
        SparseVector z = kv.select([](Index) { return true; }, [&](Index t) { return idx[t]; });
        if (out.quotient.add_candidate(z)) {
          out.representatives.push_back(z);
          if (A_.weighted()) out.weights.push_back(w);
        }
      }
    }
    return out;
  }

  DgAlgebra A_;
  int up_to_;
  std::vector<Degree> degrees_;
};

inline GradedVectorSpaceReport cohomology(const DgAlgebra& A, int up_to) { return Cohomology(A, up_to).report(); }

/// Cohomology of a presentation through degree up_to (at most N-1 unless quotient).
inline GradedVectorSpaceReport cohomology(const CdgaPresentation& A, int up_to) {
  return cohomology(PresentationModel(A).algebra(), up_to);
}

/// Representative cocycles of H^k as elements of the presentation.
inline std::vector<Element> representative_elements(const PresentationModel& M, const Cohomology& H, int k) {
  std::vector<Element> out;
  for (Index i = 0; i < H.dim(k); ++i) out.push_back(M.element(H.representative(k, i)));
  return out;
}

/// Matrix of H^k(f) in the chosen representatives (columns = source classes).
inline SparseMatrix induced_map(const ChainMap& f, const Cohomology& Hs, const Cohomology& Ht, int k) {
  SparseMatrix m;
  m.rows = Ht.dim(k);
  for (Index i = 0; i < Hs.dim(k); ++i) m.columns.push_back(Ht.coordinates(f.apply(Hs.representative(k, i))));
  return m;
}

struct QuasiIsoReport {
  struct Degree {
    int degree = 0;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
    std::size_t rank = 0;
    bool iso() const { return source_dim == target_dim && rank == source_dim; }
  };
  std::vector<Degree> degrees;
  bool commutes_with_d = true;
  int failing_degree = -1;  // first degree where f∘d ≠ d∘f

  bool quasi_iso() const {
    if (!commutes_with_d) return false;
    for (const auto& d : degrees) {
      if (!d.iso()) return false;
    }
    return true;
  }
};

inline QuasiIsoReport quasi_iso_report(const ChainMap& f, const Cohomology& Hs, const Cohomology& Ht, int up_to) {
  QuasiIsoReport r;
  r.failing_degree = f.first_noncommuting_degree(up_to + 1);
  r.commutes_with_d = r.failing_degree < 0;
  if (!r.commutes_with_d) return r;
  for (int k = 0; k <= up_to; ++k) {
    QuasiIsoReport::Degree d;
    d.degree = k;
    d.source_dim = Hs.dim(k);
    d.target_dim = Ht.dim(k);
    d.rank = rank_of(induced_map(f, Hs, Ht, k).columns);
    r.degrees.push_back(d);
  }
  return r;
}

inline QuasiIsoReport quasi_iso_report(const ChainMap& f, int up_to) {
  const Cohomology Hs(f.source, up_to);
  const Cohomology Ht(f.target, up_to);
  return quasi_iso_report(f, Hs, Ht, up_to);
}

/// H(A) through degree up_to as a dg algebra with zero differential.
inline DgAlgebra cohomology_algebra(const Cohomology& H, const std::string& name = "cohomology") {
  auto shared = std::make_shared<const Cohomology>(H);
  DgAlgebra::Spec spec;
  spec.name = name;
  spec.weighted = H.algebra().weighted();
  spec.has_unit = H.algebra().has_unit() && H.dim(0) > 0;
  spec.faithful_top = H.up_to();
  for (int k = 0; k <= H.up_to(); ++k) {
    DgAlgebra::Block b;
    for (Index i = 0; i < H.dim(k); ++i) {
      b.labels.push_back("[" + H.algebra().format(H.representative(k, i)) + "]");
      if (spec.weighted) b.weights.push_back(H.degree(k).weights[i]);
      b.differential.emplace_back();
    }
    spec.blocks.push_back(std::move(b));
  }
  spec.product = [shared](int k, Index i, int l, Index j) {
    const auto& A = shared->algebra();
    return shared->coordinates(A.multiply(shared->representative(k, i), shared->representative(l, j)));
  };
  return DgAlgebra(std::move(spec));
}

struct SubAlgebra {
  DgAlgebra algebra;
  ChainMap inclusion;
};

/// The sub-dg-algebra of A with the given spanning set per degree. The span
/// must be closed under d (checked now) and under products (checked on use).
/// Spanning vectors of weighted algebras must be weight-homogeneous.
inline SubAlgebra make_subalgebra(const DgAlgebra& A, const std::vector<std::vector<SparseVector>>& spanning,
                                  const std::string& name, int faithful_top) {
  struct Tables {
    std::vector<QuotientBasis> bases;
  };
  auto tables = std::make_shared<Tables>();
  const int top = static_cast<int>(spanning.size()) - 1;
  for (int k = 0; k <= top; ++k) {
    QuotientBasis q;
    for (const auto& v : spanning[k]) q.add_candidate(v);
    tables->bases.push_back(std::move(q));
  }
  auto coords = [tables, A](int k, const SparseVector& v) {
    if (v.empty()) return SparseVector{};
    if (k < 0 || k >= static_cast<int>(tables->bases.size())) {
      throw Error(ErrorKind::invalid_argument, "sub-algebra is not closed: element beyond its top degree");
    }
    auto c = tables->bases[k].coordinates(v);
    if (!c) {
      throw Error(ErrorKind::invalid_argument, "sub-algebra is not closed: " +
                                                   format_vector(A.block(k).labels, v) + " escapes it");
    }
    return *c;
  };
  DgAlgebra::Spec spec;
  spec.name = name;
  spec.weighted = A.weighted();
  spec.has_unit = false;
  spec.faithful_top = faithful_top;
  ChainMap inc{A, A, {}};
  for (int k = 0; k <= top; ++k) {
    DgAlgebra::Block b;
    SparseMatrix m;
    m.rows = A.dim(k);
    for (const auto& v : tables->bases[k].picks()) {
      b.labels.push_back(format_vector(A.block(k).labels, v));
      if (spec.weighted) b.weights.push_back(A.weight(k, v.leading()));
      b.differential.push_back(k < top ? coords(k + 1, A.d(k, v)) : SparseVector{});
      m.columns.push_back(v);
    }
    if (k == 0 && A.has_unit() && b.size() > 0 && tables->bases[0].picks().front() == SparseVector::unit(0)) {
      spec.has_unit = true;
    }
    spec.blocks.push_back(std::move(b));
    inc.matrices.push_back(std::move(m));
  }
  spec.product = [tables, A, coords](int k, Index i, int l, Index j) {
    const Cochain x{k, tables->bases[k].picks()[i]};
    const Cochain y{l, tables->bases[l].picks()[j]};
    return coords(k + l, A.multiply(x, y).vector);
  };
  DgAlgebra sub(std::move(spec));
  inc.source = sub;
  return {sub, std::move(inc)};
}

}  // namespace thomforge
