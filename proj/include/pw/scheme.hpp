#pragma once

// The 4-class scheme on X = Q \ H:
//   R0 equality, R1 non-collinear but collinear to the conjugate,
//   R2 non-collinear to both, R3 collinear (never conjugate), R4 conjugate,
// its closed-form eigenmatrices, integer-scaled idempotents |X| E_j, and the
// collinearity scheme on the whole quadric used by the embedding identity.

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pw/exact.hpp"
#include "pw/geometry.hpp"

namespace pw {

inline constexpr std::size_t kClasses = 5;
/// Dense matrices (bitset relations and scaled idempotents) are built up to this |X| (q <= 5).
inline constexpr std::size_t kDenseLimit = 600;

using Matrix5 = std::array<std::array<std::int64_t, kClasses>, kClasses>;

struct EigenMatrices {
  Matrix5 P{};  ///< P[i][j]: eigenvalue of A_j on V_i.
  Matrix5 Q{};  ///< dual eigenvalues; |X| E_j = sum_i Q[i][j] A_i.
};

/// Closed-form P and Q; checks P Q = |X| I before returning.
EigenMatrices paper_matrices(std::uint64_t q);
std::uint64_t x_size_formula(std::uint64_t q);
/// Row 0 of Q: dimensions of V_0..V_4.
std::array<std::int64_t, kClasses> eigenspace_dimensions(std::uint64_t q);

class AxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class EigenMismatch : public std::runtime_error {
 public:
  EigenMismatch(std::size_t i, std::size_t j, const std::string& what)
      : std::runtime_error(what), eigenspace(i), relation(j) {}
  std::size_t eigenspace, relation;
};
class IdentityFails : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SpanMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RelationSet = std::array<BitMatrix, kClasses>;

class SchemeInstance {
 public:
  static SchemeInstance build(std::shared_ptr<const QuadraticSpace> space);

  const QuadraticSpace& space() const { return *space_; }
  std::shared_ptr<const QuadraticSpace> space_ptr() const { return space_; }
  std::uint32_t q() const { return space_->q(); }
  std::size_t size() const { return space_->x_size(); }
  const std::vector<std::uint32_t>& sigma() const { return space_->sigma_table(); }
  const EigenMatrices& eigenmatrices() const { return eigen_; }

  /// Relation index of (u, v) from the geometry.
  int relation(std::uint32_t u, std::uint32_t v) const;
  bool collinear(std::uint32_t u, std::uint32_t v) const;

  bool dense() const { return relations_[0].size() != 0; }
  const RelationSet& relations() const;
  /// |X| E_j as integer matrices.
  const std::array<IntMatrix, kClasses>& scaled_idempotents() const;

  /// deg[i][x] = |R_i(x) cap Y|.
  std::array<std::vector<std::int64_t>, kClasses> degrees(const Bitset& y) const;

 private:
  std::shared_ptr<const QuadraticSpace> space_;
  EigenMatrices eigen_;
  std::vector<Vec6> functionals_;
  RelationSet relations_;
  std::array<IntMatrix, kClasses> idempotents_;
};

RelationSet build_relations(const SchemeInstance& s);

/// p[i][j][k]: the intersection numbers.
using IntersectionNumbers = std::array<Matrix5, kClasses>;

/// Partition, identity, symmetry, and A_i A_j = sum_k p^k_ij A_k.  Throws AxiomViolation.
IntersectionNumbers verify_axioms(const RelationSet& rel);

struct EigenReport {
  std::array<std::int64_t, kClasses> valencies{};
  std::array<std::int64_t, kClasses> traces{};
};

/// A_j |X|E_i = P_ij |X|E_i, scaled idempotency and orthogonality, traces.
EigenReport verify_eigenstructure(const SchemeInstance& s);

/// Row sums of A_i computed from the geometry rather than from dense matrices.
std::array<std::int64_t, kClasses> valencies_from_geometry(const SchemeInstance& s);

/// Collinearity scheme on all quadric points together with the inclusion of X.
struct QuadricScheme {
  std::size_t points = 0;
  BitMatrix collinearity;  ///< B_1; B_0 = I and B_2 = J - I - B_1.
  /// q(q+1)^2 E^- = q^2 B_0 - q B_1 + B_2.
  IntMatrix scaled_minus_idempotent;
  /// S as an index map: row x of S has its single 1 in column x_in_quadric[x].
  std::vector<std::uint32_t> inclusion;

  static QuadricScheme build(const QuadraticSpace& space);
  IntMatrix inclusion_matrix() const;
  /// S M S^T.
  IntMatrix restrict_to_x(const IntMatrix& m) const;
  BitMatrix restrict_to_x(const BitMatrix& m) const;
};

struct EmbeddingReport {
  std::size_t rank = 0;
  std::int64_t expected_rank = 0;
};

/// S E^- S^T = E_1 + (q-1)/(q+1) E_4 with denominators cleared.  Throws IdentityFails.
EmbeddingReport embedding_check(const SchemeInstance& s, const QuadricScheme& qs, bool with_rank = true);

struct SigmaSpanReport {
  std::size_t rank_differences = 0;
  std::size_t rank_sums = 0;
};

/// <chi_p - chi_p^sigma> = V1+V3 and <chi_p + chi_p^sigma> = V0+V2+V4.  Throws SpanMismatch.
SigmaSpanReport sigma_span_check(const SchemeInstance& s, bool with_rank = true);

/// MatrixMarket coordinate integer symmetric (lower triangle, 1-based).
void write_matrix_market(const std::string& path, const IntMatrix& m);

}  // namespace pw
