#pragma once

// Subsets of X: classification against the eigenspaces, the constructions of
// types 2, 3 and 4, and the counting checks around them (m-covers, tight sets
// of the whole quadric, the s_p profile at boundary points).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pw/scheme.hpp"

namespace pw {

class NonIntegral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotOnBoundary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class BadConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class ParityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotATransversal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class TheoremViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class SameType : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// Projections and degree constants disagree: a bug in the geometry or the scheme.
class ClassifierMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A subset of X by index, with its size cached.
class PointSubset {
 public:
  PointSubset() = default;
  explicit PointSubset(std::size_t universe) : bits_(universe) {}
  explicit PointSubset(Bitset bits) : bits_(std::move(bits)), size_(bits_.count()) {}
  static PointSubset from_indices(std::size_t universe, const std::vector<std::uint32_t>& idx);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return size_; }
  bool contains(std::uint32_t i) const { return bits_.test(i); }
  void insert(std::uint32_t i) {
    if (!bits_.test(i)) {
      bits_.set(i);
      ++size_;
    }
  }
  const Bitset& bits() const { return bits_; }
  std::vector<std::uint32_t> indices() const { return bits_.indices(); }

  PointSubset complement() const { return PointSubset(bits_.complement()); }
  /// Image under a permutation of indices (sigma).
  PointSubset image(const std::vector<std::uint32_t>& perm) const;

  friend bool operator==(const PointSubset& a, const PointSubset& b) { return a.bits_ == b.bits_; }
  friend auto operator<=>(const PointSubset& a, const PointSubset& b) { return a.bits_ <=> b.bits_; }

 private:
  Bitset bits_;
  std::size_t size_ = 0;
};

PointSubset intersect(const PointSubset& a, const PointSubset& b);
PointSubset unite(const PointSubset& a, const PointSubset& b);

enum class SigmaBehavior { Invariant, DisjointImage, Mixed };
const char* to_string(SigmaBehavior b);
SigmaBehavior sigma_behavior(const std::vector<std::uint32_t>& sigma, const PointSubset& y);

/// Degrees of one relation into Y: the value on Y and the value off Y when constant.
/// A side that is empty has no value; `constant` is false if either side varies.
struct DegreePair {
  bool constant = true;
  std::optional<std::int64_t> inside, outside;
  friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

DegreePair split_degrees(const std::vector<std::int64_t>& deg, const PointSubset& y);

struct IntrigueReport {
  std::uint32_t q = 0;
  std::size_t universe = 0;
  std::size_t size = 0;
  /// 1..4 for an intriguing set; 0 otherwise (see principal_or_empty).
  int type = 0;
  bool principal_or_empty = false;
  /// nonzero[j]: |X| E_j chi_Y != 0, j = 1..4 (entry 0 unused).
  std::array<bool, kClasses> nonzero{};
  std::array<DegreePair, kClasses> degrees{};
  SigmaBehavior sigma = SigmaBehavior::Mixed;
  /// |Y|/(q+1) for types 2 and 3.
  std::optional<std::int64_t> alpha;

  bool intriguing() const { return type >= 1; }
  std::string type_string() const;
};

/// h2 = (k - theta)|Y|/|X|, h1 = theta + h2.  Throws NonIntegral.
std::pair<std::int64_t, std::int64_t> expected_degrees(std::int64_t y, std::int64_t x, std::int64_t k,
                                                        std::int64_t theta);

/// The integer vector |X| E_j chi_Y.
std::vector<std::int64_t> projection(const SchemeInstance& s, const PointSubset& y, std::size_t j);

/// Projection type with the degree constants as an independent check.  Throws ClassifierMismatch.
IntrigueReport classify(const SchemeInstance& s, const PointSubset& y);

std::string render_report(const IntrigueReport& r);

// ---- constructions ----

/// Points of X collinear to w in H cap Q.  Throws NotOnBoundary.
PointSubset construct_type4(const QuadraticSpace& space, const ProjPoint& w);

/// Solids S of H with S cap Q hyperbolic, sorted.
std::vector<Subspace> hyperbolic_solids_in_hyperplane(const QuadraticSpace& space);
/// Elliptic lines of a solid, sorted.
std::vector<Subspace> elliptic_lines_in(const QuadraticSpace& space, const Subspace& solid);
/// Points of S^perp other than H^perp and off H, sorted.
std::vector<ProjPoint> type2_point_choices(const QuadraticSpace& space, const Subspace& solid);

struct Type2Config {
  Subspace solid;
  Subspace line;
  ProjPoint p1;
};

struct Type2Construction {
  PointSubset set;
  ProjPoint p2;  ///< the point of S^perp perpendicular to p1
  Subspace line2;
  std::array<Subspace, 4> planes;  ///< <p1,l1>, <p2,l2>, <p1^s,l1>, <p2^s,l2>
};

/// Four conics off H exchanged in pairs by sigma.  Throws BadConfiguration.
Type2Construction construct_type2(const QuadraticSpace& space, const Type2Config& cfg);
/// Lexicographically least valid configuration.
Type2Config default_type2_config(const QuadraticSpace& space);

/// One point per sigma-orbit on S^perp minus H^perp (the smaller of each pair).
std::vector<ProjPoint> canonical_even_transversal(const QuadraticSpace& space, const Subspace& solid);
/// T_M: union over p in M of the quadric points of p^perp off S.
/// Throws ParityError (q odd), NotATransversal, BadConfiguration.
PointSubset construct_type3_even(const QuadraticSpace& space, const Subspace& solid, const std::vector<ProjPoint>& m);

/// Generators contained in H, sorted.
std::vector<Subspace> generators_in_hyperplane(const QuadraticSpace& space);

struct Type3OddConfig {
  Subspace m;    ///< generator in H
  ProjPoint u;   ///< point of m
  std::vector<ProjPoint> s1;  ///< (q-1)/2 points of u H^perp
  std::vector<Subspace> s2;   ///< (q-1)/2 lines of <H^perp, m> through u
};

/// Candidates on u H^perp minus {u, H^perp} and lines of <H^perp, m> through u minus {m, u H^perp}.
std::pair<std::vector<ProjPoint>, std::vector<Subspace>> type3_odd_candidates(const QuadraticSpace& space,
                                                                              const Subspace& m,
                                                                              const ProjPoint& u);
/// Canonical transversals for given m and u; the smaller member of each sigma-orbit.
Type3OddConfig default_type3_odd_config(const QuadraticSpace& space, const Subspace& m, const ProjPoint& u);
Type3OddConfig default_type3_odd_config(const QuadraticSpace& space);
/// Throws ParityError (q even), NotATransversal, BadConfiguration.
PointSubset construct_type3_odd(const QuadraticSpace& space, const Type3OddConfig& cfg);

/// |p^perp cap Y| for p in X (p itself counted when p in Y) split by membership.
DegreePair perp_counts(const SchemeInstance& s, const PointSubset& y);

// ---- theorems and counting checks ----

/// Types 1/3: a conjugate-pair transversal of size |X|/2.  Types 2/4: sigma-invariant.
/// Throws TheoremViolated; invalid_argument if the report is not intriguing.
bool verify_theorem_hemi(const IntrigueReport& report, const PointSubset& y, const std::vector<std::uint32_t>& sigma);

struct MCoverReport {
  std::map<std::size_t, std::size_t> histogram;  ///< |g cap Y| -> number of generators g off H
  std::optional<std::size_t> m;                  ///< set when the histogram has a single key
  std::vector<std::uint32_t> witness;            ///< a generator whose count differs from the first
};
MCoverReport verify_m_cover(const QuadraticSpace& space, const PointSubset& y);

enum class QuadricSetKind { Tight, HemisystemType, Neither };
const char* to_string(QuadricSetKind k);

struct QuadricTightReport {
  QuadricSetKind kind = QuadricSetKind::Neither;
  std::optional<std::int64_t> alpha;  ///< |Y|/(q+1) when tight
  DegreePair degrees;                 ///< collinearity degrees into Y on the full quadric
};

/// Y over the indices of quadric_points().
QuadricTightReport is_quadric_tight_set(const QuadraticSpace& space, const Bitset& y);
/// Image of a subset of X in the full quadric index space.
Bitset lift_to_quadric(const QuadraticSpace& space, const PointSubset& y);

struct IdentityCheck {
  std::string name;
  bool holds = true;
  std::size_t instances = 0;  ///< objects the law was evaluated on
  std::string detail;         ///< first failure, if any
};

struct SProfile {
  /// s_p per boundary point (index into boundary_points()); empty when not constant.
  std::vector<std::optional<std::int64_t>> s;
  std::vector<std::uint32_t> non_constant;
  std::int64_t sum = 0;
  std::int64_t sum_pairs = 0;  ///< sum of s_p (s_p - 1)
  /// Laws evaluated on subspaces of H; filled only when every s_p is constant.
  std::vector<IdentityCheck> identities;
  bool subspace_laws_skipped = false;

  bool valid() const { return non_constant.empty(); }
};

/// Scans generators through every boundary point.  Subspace laws are evaluated for q <= 5 unless disabled.
SProfile s_profile(const QuadraticSpace& space, const PointSubset& y, bool subspace_laws = true);

/// |Y1 cap Y2| |X| = |Y1| |Y2| for intriguing sets of different types.  Throws SameType.
bool verify_bart2(const SchemeInstance& s, const PointSubset& y1, const PointSubset& y2);

}  // namespace pw
