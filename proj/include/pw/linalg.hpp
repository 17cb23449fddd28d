#pragma once

// Linear algebra over GF(q) in the 6-dimensional coordinate space of PG(5,q).

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "pw/field.hpp"

namespace pw {

inline constexpr std::size_t kAmbientDim = 6;

using Vec6 = std::array<FieldElement, kAmbientDim>;

Vec6 vec_add(const GaloisField& f, const Vec6& a, const Vec6& b);
Vec6 vec_scale(const GaloisField& f, FieldElement s, const Vec6& a);
/// a + s*b
Vec6 vec_axpy(const GaloisField& f, const Vec6& a, FieldElement s, const Vec6& b);
FieldElement vec_dot(const GaloisField& f, const Vec6& a, const Vec6& b);
bool vec_is_zero(const Vec6& a);

/// Scales so the first nonzero coordinate is 1.  Throws on the zero vector.
Vec6 normalize(const GaloisField& f, Vec6 v);

/// Reduced row echelon form; zero rows dropped.
std::vector<Vec6> rref(const GaloisField& f, std::vector<Vec6> rows);

std::size_t rank(const GaloisField& f, std::vector<Vec6> rows);

/// Basis of {y : <r, y> = 0 for every row r} under the standard dot product.
std::vector<Vec6> dot_annihilator(const GaloisField& f, const std::vector<Vec6>& rows);

/// A projective subspace, stored by its canonical (RREF) basis.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(const GaloisField& f, std::vector<Vec6> vectors);

  const std::vector<Vec6>& basis() const { return basis_; }
  std::size_t vector_dim() const { return basis_.size(); }
  /// Projective dimension: 0 point, 1 line, 2 plane, 3 solid, 4 hyperplane.
  int dim() const { return static_cast<int>(basis_.size()) - 1; }
  bool empty() const { return basis_.empty(); }

  bool contains(const GaloisField& f, const Vec6& v) const;
  bool contains(const GaloisField& f, const Subspace& other) const;

  /// All points, normalized, in increasing order.
  std::vector<Vec6> points(const GaloisField& f) const;

  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  std::vector<Vec6> basis_;
};

Subspace join(const GaloisField& f, const Subspace& a, const Subspace& b);
Subspace meet(const GaloisField& f, const Subspace& a, const Subspace& b);

/// Calls fn for every subspace of vector dimension k inside `ambient`.
void for_each_subspace(const GaloisField& f, const Subspace& ambient, std::size_t k,
                       const std::function<void(const Subspace&)>& fn);

/// Gaussian binomial [n choose k]_q; number of k-subspaces of GF(q)^n.
std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t k);

}  // namespace pw
