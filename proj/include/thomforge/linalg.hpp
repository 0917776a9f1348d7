#pragma once

// Sparse exact linear algebra over Q: vectors, incremental row echelon forms with
// optional tracking of combinations, kernels, solves and quotient bases.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "thomforge/rational.hpp"

namespace thomforge {

using Index = std::size_t;

/// Sparse vector: strictly increasing indices, no stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<Index, Rational>;

  SparseVector() = default;

  static SparseVector unit(Index i, const Rational& c = 1) {
    SparseVector v;
    if (c != 0) v.entries_.emplace_back(i, c);
    return v;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Appends an entry; `i` must exceed every stored index.
  void push_back(Index i, Rational c) {
    if (c != 0) entries_.emplace_back(i, std::move(c));
  }

  Rational coeff(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index key) { return e.first < key; });
    if (it != entries_.end() && it->first == i) return it->second;
    return 0;
  }

  Index leading() const { return entries_.front().first; }

  /// this += c * other
  void add_scaled(const SparseVector& other, const Rational& c) {
    if (c == 0 || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(std::move(*a));
        ++a;
      } else if (a == entries_.end() || b->first < a->first) {
        out.emplace_back(b->first, c * b->second);
        ++b;
      } else {
        Rational s = a->second + c * b->second;
        if (s != 0) out.emplace_back(a->first, std::move(s));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  SparseVector& operator+=(const SparseVector& o) { add_scaled(o, 1); return *this; }
  SparseVector& operator-=(const SparseVector& o) { add_scaled(o, -1); return *this; }
  SparseVector& operator*=(const Rational& c) {
    if (c == 0) {
      entries_.clear();
    } else {
      for (auto& e : entries_) e.second *= c;
    }
    return *this;
  }

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(SparseVector a, const Rational& c) { return a *= c; }
  friend SparseVector operator*(const Rational& c, SparseVector a) { return a *= c; }
  friend SparseVector operator-(SparseVector a) { return a *= Rational(-1); }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

  /// Keeps entries whose index satisfies `pred`, remapped through `map`.
  template <class Pred, class Map>
  SparseVector select(Pred pred, Map map) const {
    std::vector<Entry> out;
    for (const auto& e : entries_) {
      if (pred(e.first)) out.emplace_back(map(e.first), e.second);
    }
    std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    SparseVector v;
    v.entries_ = std::move(out);
    return v;
  }

 private:
  std::vector<Entry> entries_;
};

/// Linear map stored by columns: column j is the image of basis vector j.
struct SparseMatrix {
  Index rows = 0;
  std::vector<SparseVector> columns;

  Index cols() const { return columns.size(); }

  SparseVector apply(const SparseVector& v) const {
    SparseVector out;
    for (const auto& [j, c] : v) out.add_scaled(columns.at(j), c);
    return out;
  }
};

/// Incrementally built row echelon form. When tracking is enabled every stored
/// row remembers which combination of inserted vectors (by caller-chosen tag)
/// produced it, so reductions also yield explicit coefficients.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}

  struct Reduction {
    SparseVector residual;     // v minus the span component found
    SparseVector combination;  // v = residual + sum_t combination[t] * inserted[t]
  };

  Reduction reduce(SparseVector v) const {
    Reduction out;
    std::size_t pos = 0;
    while (pos < v.size()) {
      const Index idx = v.entries()[pos].first;
      auto row = rows_.find(idx);
      if (row == rows_.end()) {
        ++pos;
        continue;
      }
      const Rational c = v.entries()[pos].second;
      v.add_scaled(row->second.vector, -c);
      if (track_) out.combination.add_scaled(row->second.combination, c);
      // entries before `pos` are untouched; the pivot entry itself vanished
    }
    out.residual = std::move(v);
    return out;
  }

  bool in_span(const SparseVector& v) const { return reduce(v).residual.empty(); }

  /// Inserts `v` under `tag`. Returns std::nullopt when v was independent;
  /// otherwise the linear relation e_tag - combination (a kernel vector over tags).
  std::optional<SparseVector> insert(const SparseVector& v, Index tag = 0) {
    Reduction red = reduce(v);
    if (red.residual.empty()) {
      if (!track_) return SparseVector{};
      SparseVector rel = SparseVector::unit(tag);
      rel.add_scaled(red.combination, -1);
      return rel;
    }
    const Rational lead = red.residual.entries().front().second;
    const Rational inv = 1 / lead;
    Row row;
    row.vector = red.residual * inv;
    if (track_) {
      row.combination = SparseVector::unit(tag);
      row.combination.add_scaled(red.combination, -1);
      row.combination *= inv;
    }
    rows_.emplace(row.vector.leading(), std::move(row));
    return std::nullopt;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    SparseVector vector;       // leading coefficient 1
    SparseVector combination;  // in terms of inserted tags
  };
  bool track_;
  std::map<Index, Row> rows_;
};

inline std::size_t rank_of(const std::vector<SparseVector>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

/// Basis of {x : sum_j x_j columns[j] = 0}, one vector per dependent column, in column order.
inline std::vector<SparseVector> kernel_basis(const std::vector<SparseVector>& columns) {
  Echelon e(true);
  std::vector<SparseVector> out;
  for (Index j = 0; j < columns.size(); ++j) {
    if (auto rel = e.insert(columns[j], j)) out.push_back(std::move(*rel));
  }
  return out;
}

/// Some x with sum_j x_j columns[j] = target, or nullopt when inconsistent.
/// `reverse` processes columns last-to-first, which yields a different
/// particular solution whenever the system is underdetermined.
inline std::optional<SparseVector> solve(const std::vector<SparseVector>& columns,
                                         const SparseVector& target, bool reverse = false) {
  Echelon e(true);
  const Index n = columns.size();
  for (Index k = 0; k < n; ++k) {
    const Index j = reverse ? n - 1 - k : k;
    e.insert(columns[j], j);
  }
  auto red = e.reduce(target);
  if (!red.residual.empty()) return std::nullopt;
  return red.combination;
}

/// A chosen basis of span(candidates + base) / span(base): the first candidates
/// (in order) that are independent modulo `base` and the earlier picks.
/// `coordinates` expresses any vector of span(base ∪ picks) in the picks.
class QuotientBasis {
 public:
  QuotientBasis() : echelon_(true) {}

  QuotientBasis(const std::vector<SparseVector>& base, const std::vector<SparseVector>& candidates)
      : echelon_(true) {
    for (const auto& b : base) add_base(b);
    for (const auto& c : candidates) add_candidate(c);
  }

  void add_base(const SparseVector& v) { echelon_.insert(v, kBaseTag + base_count_++); }

  /// Returns true if `c` was picked.
  bool add_candidate(const SparseVector& c) {
    if (echelon_.in_span(c)) return false;
    echelon_.insert(c, picks_.size());
    picks_.push_back(c);
    return true;
  }

  const std::vector<SparseVector>& picks() const { return picks_; }
  std::size_t size() const { return picks_.size(); }

  /// Coordinates in the picks of v modulo base; nullopt if v is outside the span.
  std::optional<SparseVector> coordinates(const SparseVector& v) const {
    auto red = echelon_.reduce(v);
    if (!red.residual.empty()) return std::nullopt;
    return red.combination.select([](Index t) { return t < kBaseTag; }, [](Index t) { return t; });
  }

  bool in_base(const SparseVector& v) const {
    auto c = coordinates(v);
    return c && c->empty();
  }

 private:
  static constexpr Index kBaseTag = Index(1) << 40;
  Echelon echelon_;
  std::vector<SparseVector> picks_;
  Index base_count_ = 0;
};

}  // namespace thomforge
