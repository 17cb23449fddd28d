#include "pw/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pw {

Vec6 vec_add(const GaloisField& f, const Vec6& a, const Vec6& b) {
  Vec6 r;
  for (std::size_t i = 0; i < kAmbientDim; ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec6 vec_scale(const GaloisField& f, FieldElement s, const Vec6& a) {
  Vec6 r;
  for (std::size_t i = 0; i < kAmbientDim; ++i) r[i] = f.mul(s, a[i]);
  return r;
}

Vec6 vec_axpy(const GaloisField& f, const Vec6& a, FieldElement s, const Vec6& b) {
  Vec6 r;
  for (std::size_t i = 0; i < kAmbientDim; ++i) r[i] = f.add(a[i], f.mul(s, b[i]));
  return r;
}

FieldElement vec_dot(const GaloisField& f, const Vec6& a, const Vec6& b) {
  FieldElement s = f.zero();
  for (std::size_t i = 0; i < kAmbientDim; ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

bool vec_is_zero(const Vec6& a) {
  return std::all_of(a.begin(), a.end(), [](FieldElement x) { return x.value == 0; });
}

Vec6 normalize(const GaloisField& f, Vec6 v) {
  for (std::size_t i = 0; i < kAmbientDim; ++i) {
    if (v[i].value != 0) {
      if (v[i].value == 1) return v;
      return vec_scale(f, f.inv(v[i]), v);
    }
  }
  throw std::invalid_argument("zero vector is not a projective point");
}

std::vector<Vec6> rref(const GaloisField& f, std::vector<Vec6> rows) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < kAmbientDim && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col].value == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    rows[r] = vec_scale(f, f.inv(rows[r][col]), rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][col].value != 0)
        rows[i] = vec_axpy(f, rows[i], f.neg(rows[i][col]), rows[r]);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::size_t rank(const GaloisField& f, std::vector<Vec6> rows) { return rref(f, std::move(rows)).size(); }

std::vector<Vec6> dot_annihilator(const GaloisField& f, const std::vector<Vec6>& rows) {
  const auto red = rref(f, rows);
  std::array<int, kAmbientDim> pivot_row;
  pivot_row.fill(-1);
  for (std::size_t i = 0; i < red.size(); ++i) {
    for (std::size_t c = 0; c < kAmbientDim; ++c) {
      if (red[i][c].value != 0) {
        pivot_row[c] = static_cast<int>(i);
        break;
      }
    }
  }
  std::vector<Vec6> out;
  for (std::size_t free = 0; free < kAmbientDim; ++free) {
    if (pivot_row[free] >= 0) continue;
    Vec6 v{};
    v[free] = f.one();
    for (std::size_t c = 0; c < kAmbientDim; ++c)
      if (pivot_row[c] >= 0) v[c] = f.neg(red[pivot_row[c]][free]);
    out.push_back(v);
  }
  return out;
}

Subspace Subspace::span(const GaloisField& f, std::vector<Vec6> vectors) {
  Subspace s;
  s.basis_ = rref(f, std::move(vectors));
  return s;
}

bool Subspace::contains(const GaloisField& f, const Vec6& v) const {
  auto rows = basis_;
  rows.push_back(v);
  return rank(f, std::move(rows)) == basis_.size();
}

bool Subspace::contains(const GaloisField& f, const Subspace& other) const {
  auto rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return rank(f, std::move(rows)) == basis_.size();
}

std::vector<Vec6> Subspace::points(const GaloisField& f) const {
  const std::size_t k = basis_.size();
  const std::uint32_t q = f.order();
  std::vector<Vec6> pts;
  if (k == 0) return pts;
  // Coefficient vectors whose first nonzero entry is 1.
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::uint64_t count = 1;
    for (std::size_t i = lead + 1; i < k; ++i) count *= q;
    for (std::uint64_t n = 0; n < count; ++n) {
      Vec6 v = basis_[lead];
      std::uint64_t m = n;
      for (std::size_t i = lead + 1; i < k; ++i) {
        v = vec_axpy(f, v, FieldElement{static_cast<std::uint32_t>(m % q)}, basis_[i]);
        m /= q;
      }
      pts.push_back(normalize(f, v));
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

Subspace join(const GaloisField& f, const Subspace& a, const Subspace& b) {
  auto rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(f, std::move(rows));
}

Subspace meet(const GaloisField& f, const Subspace& a, const Subspace& b) {
  auto ann = dot_annihilator(f, a.basis());
  const auto ann_b = dot_annihilator(f, b.basis());
  ann.insert(ann.end(), ann_b.begin(), ann_b.end());
  return Subspace::span(f, dot_annihilator(f, ann));
}

void for_each_subspace(const GaloisField& f, const Subspace& ambient, std::size_t k,
                       const std::function<void(const Subspace&)>& fn) {
  const std::size_t n = ambient.vector_dim();
  if (k > n) return;
  const std::uint32_t q = f.order();
  std::vector<std::size_t> pivots(k);
  for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    // Free positions: (row i, column c) with c > pivots[i] and c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = pivots[i] + 1; c < n; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(i, c);
    std::uint64_t count = 1;
    for (std::size_t t = 0; t < free.size(); ++t) count *= q;
    for (std::uint64_t m = 0; m < count; ++m) {
      std::vector<std::vector<FieldElement>> local(k, std::vector<FieldElement>(n, f.zero()));
      for (std::size_t i = 0; i < k; ++i) local[i][pivots[i]] = f.one();
      std::uint64_t r = m;
      for (const auto& [i, c] : free) {
        local[i][c] = FieldElement{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      std::vector<Vec6> rows(k, Vec6{});
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < n; ++c)
          if (local[i][c].value != 0) rows[i] = vec_axpy(f, rows[i], local[i][c], ambient.basis()[c]);
      fn(Subspace::span(f, std::move(rows)));
    }
    // Next pivot combination.
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  auto qpow = [q](std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= q;
    return r;
  };
  for (std::size_t i = 0; i < k; ++i) {
    num *= qpow(n - i) - 1;
    den *= qpow(i + 1) - 1;
  }
  return num / den;
}

}  // namespace pw
