#pragma once

// PG(5,q) with the elliptic quadric
//     Q(x) = x0 x1 + x2 x3 + x4^2 + a x4 x5 + b x5^2,   t^2 + a t + b irreducible,
// the non-tangent hyperplane H : x0 = x1, its pole H^perp = (1,-1,0,0,0,0), and
// the central collineation sigma with axis H and centre H^perp.
//
// X is the set of quadric points off H, kept sorted so that point indices
// 0..|X|-1 are reproducible.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pw/field.hpp"
#include "pw/linalg.hpp"

namespace pw {

class QTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInX : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotOnQuadric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A normalized homogeneous 6-tuple (first nonzero coordinate is 1).
struct ProjPoint {
  Vec6 coords{};

  static ProjPoint from(const GaloisField& f, const Vec6& v) { return ProjPoint{normalize(f, v)}; }
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

enum class LineKind { Elliptic, Tangent, Secant, Generator };
enum class SolidKind { Elliptic, Hyperbolic, Cone, Other };

const char* to_string(LineKind k);
const char* to_string(SolidKind k);

class QuadraticSpace {
 public:
  static QuadraticSpace build(GaloisField field);

  const GaloisField& field() const { return field_; }
  std::uint32_t q() const { return field_.order(); }
  std::pair<FieldElement, FieldElement> elliptic_pair() const { return {a_, b_}; }

  FieldElement quad(const Vec6& x) const;
  FieldElement bilinear(const Vec6& x, const Vec6& y) const;
  /// Coefficients of the linear form y -> b(x, y).
  Vec6 polar_functional(const Vec6& x) const;
  /// The hyperplane functional f(x) = x0 - x1.
  FieldElement hyperplane_value(const Vec6& x) const { return field_.sub(x[0], x[1]); }

  bool on_quadric(const ProjPoint& p) const { return quad(p.coords).value == 0; }
  bool in_hyperplane(const ProjPoint& p) const { return hyperplane_value(p.coords).value == 0; }
  bool in_x(const ProjPoint& p) const { return on_quadric(p) && !in_hyperplane(p); }

  const ProjPoint& pole() const { return pole_; }

  /// sigma as a collineation of PG(5,q): x -> x - (b(x,c)/Q(c)) c.
  ProjPoint sigma_any(const ProjPoint& p) const;
  /// sigma restricted to X; throws NotInX otherwise.
  ProjPoint sigma(const ProjPoint& p) const;

  /// Distinct quadric points spanning a generator.  Throws NotOnQuadric.
  bool collinear(const ProjPoint& u, const ProjPoint& v) const;

  Subspace perp(const Subspace& s) const;
  Subspace hyperplane() const { return hyperplane_; }

  std::size_t count_quadric_points(const Subspace& s) const;
  std::vector<ProjPoint> quadric_points_in(const Subspace& s) const;
  LineKind classify_line(const Subspace& line) const;
  SolidKind classify_solid(const Subspace& solid) const;

  /// Full quadric point set, sorted.
  const std::vector<ProjPoint>& quadric_points() const { return quadric_; }
  /// X = quadric points off H, sorted.
  const std::vector<ProjPoint>& x_points() const { return x_; }
  /// H cap Q, sorted.
  const std::vector<ProjPoint>& boundary_points() const { return boundary_; }
  /// Index of each X point inside quadric_points().
  const std::vector<std::uint32_t>& x_in_quadric() const { return x_in_quadric_; }

  std::optional<std::uint32_t> x_index(const ProjPoint& p) const;
  std::optional<std::uint32_t> quadric_index(const ProjPoint& p) const;
  std::optional<std::uint32_t> boundary_index(const ProjPoint& p) const;

  /// sigma as a permutation of X indices.
  const std::vector<std::uint32_t>& sigma_table() const { return sigma_; }

  std::size_t x_size() const { return x_.size(); }

 private:
  explicit QuadraticSpace(GaloisField f) : field_(std::move(f)) {}

  GaloisField field_;
  FieldElement a_{}, b_{};
  FieldElement two_{}, two_b_{};
  ProjPoint pole_{};
  FieldElement pole_quad_inv_{};
  Subspace hyperplane_;
  std::vector<ProjPoint> quadric_, x_, boundary_;
  std::vector<std::uint32_t> x_in_quadric_;
  std::vector<std::uint32_t> sigma_;
};

/// All points of PG(5,q), normalized and sorted.
std::vector<ProjPoint> all_points(const GaloisField& f);

/// Point subspace helper.
inline Subspace point_space(const GaloisField& f, const ProjPoint& p) {
  return Subspace::span(f, {p.coords});
}

/// Generators (lines of Q) not contained in H, each as its q X-indices, sorted.
std::vector<std::vector<std::uint32_t>> generators_off_hyperplane(const QuadraticSpace& space);
/// Generators through the boundary point w not contained in H.
std::vector<std::vector<std::uint32_t>> generators_off_hyperplane_through(const QuadraticSpace& space,
                                                                          const ProjPoint& w);

}  // namespace pw
