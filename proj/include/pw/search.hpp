#pragma once

// Enumeration of small intriguing sets: the structured type-2 family and a
// backtracking search for type-4 sets of size q^2(q-1).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pw/intriguing.hpp"

namespace pw {

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 600.0;
  bool deterministic_order = true;
};

struct SearchResult {
  std::vector<PointSubset> found;     ///< sorted, each re-classified independently
  std::vector<PointSubset> rejected;  ///< candidates the classifier refused; empty unless a bug
  bool exhaustive = false;
  std::uint64_t nodes = 0;
  /// Whether the hits are exactly the sets construct_type4(w); filled by the type-4 search when exhaustive.
  std::optional<bool> equals_type4_family;

  bool budget_exceeded() const { return !exhaustive; }
};

/// Every (S, l1, p1) of the type-2 construction.  One node per configuration.
SearchResult enumerate_type2_structured(const SchemeInstance& s, const SearchBudget& budget = {});

/// The sigma-orbits {x, x^sigma} of X with x < x^sigma, in order of x.
std::vector<std::pair<std::uint32_t, std::uint32_t>> sigma_units(const SchemeInstance& s);

struct Type4SearchOptions {
  bool prune = true;
  /// Restrict the search to these units (indices into sigma_units); the rest are excluded.
  std::optional<std::vector<std::uint32_t>> universe;
};

/// Sigma-invariant sets of q^2(q-1) points with R3-degrees q-1 inside and q^2-q outside.
SearchResult backtrack_type4_minimal(const SchemeInstance& s, const SearchBudget& budget = {},
                                     const Type4SearchOptions& options = {});

/// Index into boundary_points() of the w with construct_type4(w) == y, if any.
std::optional<std::uint32_t> type4_center(const QuadraticSpace& space, const PointSubset& y);

struct StreamReport {
  std::vector<IntrigueReport> reports;
  std::map<std::string, std::size_t> counts;  ///< type string -> sets
};

/// Classifies every set of a subset file.  Throws ParseError.
StreamReport verify_candidate_stream(const SchemeInstance& s, std::istream& in);

}  // namespace pw
