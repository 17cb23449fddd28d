#include "pw/search.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "pw/subset_io.hpp"

namespace pw {

namespace {

class Clock {
 public:
  explicit Clock(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  /// Counts a node; false once either bound is hit.
  bool tick(std::uint64_t& nodes) {
    if (nodes >= budget_.max_nodes) return false;
    ++nodes;
    if ((nodes & 0xfff) == 0) {
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > budget_.max_seconds) timed_out_ = true;
    }
    return !timed_out_;
  }

 private:
  const SearchBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  bool timed_out_ = false;
};

}  // namespace

SearchResult enumerate_type2_structured(const SchemeInstance& s, const SearchBudget& budget) {
  const QuadraticSpace& space = s.space();
  SearchResult res;
  Clock clock(budget);
  std::set<PointSubset> sets;
  bool stopped = false;
  for (const auto& solid : hyperbolic_solids_in_hyperplane(space)) {
    const auto points = type2_point_choices(space, solid);
    for (const auto& line : elliptic_lines_in(space, solid)) {
      for (const auto& p : points) {
        if (!clock.tick(res.nodes)) {
          stopped = true;
          break;
        }
        try {
          sets.insert(construct_type2(space, Type2Config{solid, line, p}).set);
        } catch (const BadConfiguration&) {
        }
      }
      if (stopped) break;
    }
    if (stopped) break;
  }
  res.exhaustive = !stopped;
  const std::size_t size = 4 * (space.q() + 1u);
  for (const auto& y : sets) {
    const auto r = classify(s, y);
    if (r.type == 2 && r.size == size) res.found.push_back(y);
    else res.rejected.push_back(y);
  }
  return res;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> sigma_units(const SchemeInstance& s) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> units;
  const auto& sig = s.sigma();
  for (std::uint32_t x = 0; x < sig.size(); ++x)
    if (x < sig[x]) units.emplace_back(x, sig[x]);
  return units;
}

namespace {

// A point's R3-degree into a sigma-invariant set equals the number of chosen
// units adjacent to its unit: x is collinear to at most one of y, y^sigma,
// and x ~ y iff x^sigma ~ y^sigma.  So the search runs on units.
class Type4Search {
 public:
  Type4Search(const SchemeInstance& s, const SearchBudget& budget, const Type4SearchOptions& opt)
      : s_(s), clock_(budget), prune_(opt.prune), units_(sigma_units(s)) {
    const std::int64_t q = s.q();
    target_ = static_cast<std::int64_t>(q * q * (q - 1) / 2);
    inside_ = q - 1;
    outside_ = q * q - q;
    const std::size_t n = units_.size();
    adj_.assign(n, {});
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = 0; v < n; ++v) {
        if (u == v) continue;
        const int r = s.relation(units_[u].first, units_[v].first);
        if (r == 1 || r == 3) adj_[u].push_back(v);
      }
    state_.assign(n, kUndecided);
    deg_.assign(n, 0);
    avail_.assign(n, 0);
    for (std::uint32_t u = 0; u < n; ++u) avail_[u] = static_cast<std::int64_t>(adj_[u].size());
    undecided_ = static_cast<std::int64_t>(n);
    if (opt.universe) {
      std::vector<char> keep(n, 0);
      for (auto u : *opt.universe) {
        if (u >= n) throw std::out_of_range("unit index outside the sigma-orbits of X");
        keep[u] = 1;
      }
      for (std::uint32_t u = 0; u < n; ++u)
        if (!keep[u]) decide(u, kOut);
    }
  }

  SearchResult run() {
    SearchResult res;
    stopped_ = false;
    recurse(0, res);
    res.exhaustive = !stopped_;
    std::sort(res.found.begin(), res.found.end());
    std::sort(res.rejected.begin(), res.rejected.end());
    return res;
  }

 private:
  static constexpr char kUndecided = 0, kIn = 1, kOut = 2;

  void decide(std::uint32_t u, char st) {
    state_[u] = st;
    --undecided_;
    if (st == kIn) ++chosen_;
    for (auto v : adj_[u]) {
      --avail_[v];
      if (st == kIn) ++deg_[v];
    }
  }
  void undo(std::uint32_t u) {
    const char st = state_[u];
    state_[u] = kUndecided;
    ++undecided_;
    if (st == kIn) --chosen_;
    for (auto v : adj_[u]) {
      ++avail_[v];
      if (st == kIn) --deg_[v];
    }
  }

  bool feasible() const {
    const std::int64_t slots = target_ - chosen_;
    if (slots < 0 || undecided_ < slots) return false;
    if (!prune_) return true;
    for (std::size_t u = 0; u < state_.size(); ++u) {
      if (state_[u] == kUndecided) continue;
      const std::int64_t need = state_[u] == kIn ? inside_ : outside_;
      if (deg_[u] > need) return false;
      if (deg_[u] + std::min(slots, avail_[u]) < need) return false;
    }
    return true;
  }

  bool leaf_ok() const {
    for (std::size_t u = 0; u < state_.size(); ++u)
      if (deg_[u] != (state_[u] == kIn ? inside_ : outside_)) return false;
    return true;
  }

  void recurse(std::uint32_t next, SearchResult& res) {
    if (stopped_) return;
    if (!clock_.tick(res.nodes)) {
      stopped_ = true;
      return;
    }
    if (!feasible()) return;
    while (next < state_.size() && state_[next] != kUndecided) ++next;
    if (chosen_ == target_ || next == state_.size()) {
      if (chosen_ != target_) return;
      // Remaining units are excluded; restore them afterwards.
      std::vector<std::uint32_t> rest;
      for (std::uint32_t u = next; u < state_.size(); ++u)
        if (state_[u] == kUndecided) {
          decide(u, kOut);
          rest.push_back(u);
        }
      if (leaf_ok()) report(res);
      for (auto it = rest.rbegin(); it != rest.rend(); ++it) undo(*it);
      return;
    }
    decide(next, kIn);
    recurse(next + 1, res);
    undo(next);
    decide(next, kOut);
    recurse(next + 1, res);
    undo(next);
  }

  void report(SearchResult& res) {
    PointSubset y(s_.size());
    for (std::size_t u = 0; u < state_.size(); ++u)
      if (state_[u] == kIn) {
        y.insert(units_[u].first);
        y.insert(units_[u].second);
      }
    // The verdict comes from the classifier, never from the search's own bookkeeping.
    const auto r = classify(s_, y);
    if (r.type == 4 && r.size == static_cast<std::size_t>(2 * target_)) res.found.push_back(y);
    else res.rejected.push_back(y);
  }

  const SchemeInstance& s_;
  Clock clock_;
  bool prune_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> units_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<char> state_;
  std::vector<std::int64_t> deg_, avail_;
  std::int64_t target_ = 0, inside_ = 0, outside_ = 0, chosen_ = 0, undecided_ = 0;
  bool stopped_ = false;
};

}  // namespace

SearchResult backtrack_type4_minimal(const SchemeInstance& s, const SearchBudget& budget,
                                     const Type4SearchOptions& options) {
  Type4Search search(s, budget, options);
  SearchResult res = search.run();
  if (res.exhaustive && !options.universe) {
    std::set<PointSubset> family;
    for (const auto& w : s.space().boundary_points()) family.insert(construct_type4(s.space(), w));
    res.equals_type4_family = std::set<PointSubset>(res.found.begin(), res.found.end()) == family;
  }
  return res;
}

std::optional<std::uint32_t> type4_center(const QuadraticSpace& space, const PointSubset& y) {
  const auto& bd = space.boundary_points();
  for (std::uint32_t i = 0; i < bd.size(); ++i)
    if (construct_type4(space, bd[i]) == y) return i;
  return std::nullopt;
}

StreamReport verify_candidate_stream(const SchemeInstance& s, std::istream& in) {
  StreamReport out;
  for (const auto& ps : parse_subsets(in, s.space())) {
    out.reports.push_back(classify(s, ps.set));
    ++out.counts[out.reports.back().type_string()];
  }
  return out;
}

}  // namespace pw
