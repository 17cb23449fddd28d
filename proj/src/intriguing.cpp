#include "pw/intriguing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pw {

PointSubset PointSubset::from_indices(std::size_t universe, const std::vector<std::uint32_t>& idx) {
  PointSubset s(universe);
  for (auto i : idx) {
    if (i >= universe) throw std::out_of_range("index " + std::to_string(i) + " outside X");
    s.insert(i);
  }
  return s;
}

PointSubset PointSubset::image(const std::vector<std::uint32_t>& perm) const {
  PointSubset r(universe());
  for (auto i : indices()) r.insert(perm[i]);
  return r;
}

PointSubset intersect(const PointSubset& a, const PointSubset& b) { return PointSubset(a.bits() & b.bits()); }
PointSubset unite(const PointSubset& a, const PointSubset& b) { return PointSubset(a.bits() | b.bits()); }

const char* to_string(SigmaBehavior b) {
  switch (b) {
    case SigmaBehavior::Invariant: return "invariant";
    case SigmaBehavior::DisjointImage: return "disjoint_image";
    case SigmaBehavior::Mixed: return "mixed";
  }
  return "?";
}

SigmaBehavior sigma_behavior(const std::vector<std::uint32_t>& sigma, const PointSubset& y) {
  const PointSubset img = y.image(sigma);
  if (img == y) return SigmaBehavior::Invariant;
  if (!img.bits().intersects(y.bits())) return SigmaBehavior::DisjointImage;
  return SigmaBehavior::Mixed;
}

DegreePair split_degrees(const std::vector<std::int64_t>& deg, const PointSubset& y) {
  DegreePair d;
  for (std::uint32_t x = 0; x < deg.size(); ++x) {
    auto& slot = y.contains(x) ? d.inside : d.outside;
    if (!slot) {
      slot = deg[x];
    } else if (*slot != deg[x]) {
      d.constant = false;
    }
  }
  if (!d.constant) d.inside = d.outside = std::nullopt;
  return d;
}

std::string IntrigueReport::type_string() const {
  if (principal_or_empty) return "principal-or-empty";
  if (type == 0) return "none";
  return std::to_string(type);
}

namespace {

std::optional<std::pair<std::int64_t, std::int64_t>> bart_pair(std::int64_t y, std::int64_t x, std::int64_t k,
                                                               std::int64_t theta) {
  const std::int64_t num = (k - theta) * y;
  if (num % x != 0) return std::nullopt;
  const std::int64_t h2 = num / x;
  return std::make_pair(theta + h2, h2);
}

bool matches(const DegreePair& d, const std::pair<std::int64_t, std::int64_t>& h, std::size_t size,
             std::size_t universe) {
  if (!d.constant) return false;
  if (size > 0 && d.inside != h.first) return false;
  if (size < universe && d.outside != h.second) return false;
  return true;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> expected_degrees(std::int64_t y, std::int64_t x, std::int64_t k,
                                                        std::int64_t theta) {
  if (theta == k) throw std::invalid_argument("theta = k is the principal eigenvalue");
  if (x <= 0) throw std::invalid_argument("|X| must be positive");
  const auto h = bart_pair(y, x, k, theta);
  if (!h)
    throw NonIntegral("(k - theta)|Y|/|X| = " + std::to_string((k - theta) * y) + "/" + std::to_string(x) +
                      " is not an integer");
  return *h;
}

std::vector<std::int64_t> projection(const SchemeInstance& s, const PointSubset& y, std::size_t j) {
  const std::size_t n = s.size();
  std::vector<std::int64_t> v(n, 0);
  if (s.dense()) {
    const IntMatrix& e = s.scaled_idempotents()[j];
    const auto members = y.indices();
    for (std::size_t x = 0; x < n; ++x) {
      const std::int64_t* row = e.row_ptr(x);
      std::int64_t acc = 0;
      for (auto t : members) acc += row[t];
      v[x] = acc;
    }
    return v;
  }
  const auto deg = s.degrees(y.bits());
  const auto& Q = s.eigenmatrices().Q;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < kClasses; ++i) v[x] += Q[i][j] * deg[i][x];
  return v;
}

IntrigueReport classify(const SchemeInstance& s, const PointSubset& y) {
  const std::size_t n = s.size();
  if (y.universe() != n) throw std::invalid_argument("subset is not indexed over X");
  IntrigueReport r;
  r.q = s.q();
  r.universe = n;
  r.size = y.size();
  r.sigma = sigma_behavior(s.sigma(), y);

  const auto deg = s.degrees(y.bits());
  for (std::size_t j = 0; j < kClasses; ++j) r.degrees[j] = split_degrees(deg[j], y);

  const auto& Q = s.eigenmatrices().Q;
  for (std::size_t j = 1; j < kClasses; ++j) {
    if (s.dense()) {
      const auto v = projection(s, y, j);
      r.nonzero[j] = std::any_of(v.begin(), v.end(), [](std::int64_t t) { return t != 0; });
    } else {
      bool nz = false;
      for (std::size_t x = 0; x < n && !nz; ++x) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < kClasses; ++i) acc += Q[i][j] * deg[i][x];
        nz = acc != 0;
      }
      r.nonzero[j] = nz;
    }
  }

  if (r.size == 0 || r.size == n) {
    r.principal_or_empty = true;
    return r;
  }

  int nonzero = 0, proj_type = 0;
  for (std::size_t j = 1; j < kClasses; ++j)
    if (r.nonzero[j]) {
      ++nonzero;
      proj_type = static_cast<int>(j);
    }
  if (nonzero == 1) r.type = proj_type;

  // Independent route: the two-valued degree pattern for every relation.
  const auto& P = s.eigenmatrices().P;
  int degree_type = 0;
  for (std::size_t t = 1; t < kClasses && degree_type == 0; ++t) {
    bool ok = true;
    for (std::size_t j = 1; j < kClasses && ok; ++j) {
      const auto h = bart_pair(static_cast<std::int64_t>(r.size), static_cast<std::int64_t>(n), P[0][j], P[t][j]);
      ok = h && matches(r.degrees[j], *h, r.size, n);
    }
    if (ok) degree_type = static_cast<int>(t);
  }
  if (degree_type != r.type)
    throw ClassifierMismatch("projections give type " + r.type_string() + " but degree constants give " +
                             (degree_type ? std::to_string(degree_type) : std::string("none")));

  if ((r.type == 2 || r.type == 3) && r.size % (s.q() + 1) == 0)
    r.alpha = static_cast<std::int64_t>(r.size / (s.q() + 1));
  return r;
}

std::string render_report(const IntrigueReport& r) {
  std::ostringstream out;
  out << "q: " << r.q << '\n';
  out << "size: " << r.size << '\n';
  out << "type: " << r.type_string() << '\n';
  out << "nonzero_projections:";
  bool any = false;
  for (std::size_t j = 1; j < kClasses; ++j)
    if (r.nonzero[j]) {
      out << ' ' << j;
      any = true;
    }
  if (!any) out << " -";
  out << '\n';
  out << "sigma: " << to_string(r.sigma) << '\n';
  if (r.alpha) out << "alpha: " << *r.alpha << '\n';
  for (std::size_t j = 0; j < kClasses; ++j) {
    const auto& d = r.degrees[j];
    out << "degrees_R" << j << ": ";
    if (!d.constant) {
      out << "non-constant\n";
      continue;
    }
    out << (d.inside ? std::to_string(*d.inside) : "-") << ' ' << (d.outside ? std::to_string(*d.outside) : "-")
        << '\n';
  }
  return out.str();
}

// ---- constructions ----

PointSubset construct_type4(const QuadraticSpace& space, const ProjPoint& w) {
  if (!space.boundary_index(w)) throw NotOnBoundary("w must be a point of H cap Q");
  const Vec6 fw = space.polar_functional(w.coords);
  const auto& xs = space.x_points();
  PointSubset y(xs.size());
  for (std::uint32_t i = 0; i < xs.size(); ++i)
    if (vec_dot(space.field(), fw, xs[i].coords).value == 0) y.insert(i);
  return y;
}

std::vector<Subspace> hyperbolic_solids_in_hyperplane(const QuadraticSpace& space) {
  // A solid S of H is the perp of a line through H^perp; that line meets x0 = 0 once.
  const GaloisField& f = space.field();
  std::vector<Subspace> out;
  for (const auto& y : all_points(f)) {
    if (y.coords[0].value != 0) continue;
    const Subspace line = Subspace::span(f, {space.pole().coords, y.coords});
    if (space.count_quadric_points(line) != 0) continue;
    Subspace solid = space.perp(line);
    if (space.classify_solid(solid) != SolidKind::Hyperbolic)
      throw std::logic_error("the perp of an elliptic line through H^perp is not hyperbolic");
    out.push_back(std::move(solid));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> elliptic_lines_in(const QuadraticSpace& space, const Subspace& solid) {
  std::vector<Subspace> out;
  for_each_subspace(space.field(), solid, 2, [&](const Subspace& l) {
    if (space.count_quadric_points(l) == 0) out.push_back(l);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> type2_point_choices(const QuadraticSpace& space, const Subspace& solid) {
  std::vector<ProjPoint> out;
  for (const auto& v : space.perp(solid).points(space.field())) {
    const ProjPoint p{v};
    if (p == space.pole() || space.in_hyperplane(p)) continue;
    out.push_back(p);
  }
  return out;
}

namespace {

void require_hyperbolic_solid_in_h(const QuadraticSpace& space, const Subspace& solid) {
  const GaloisField& f = space.field();
  if (solid.dim() != 3) throw BadConfiguration("S is not a solid");
  if (!space.hyperplane().contains(f, solid)) throw BadConfiguration("S is not contained in H");
  if (space.classify_solid(solid) != SolidKind::Hyperbolic) throw BadConfiguration("S cap Q is not hyperbolic");
}

Subspace sigma_image(const QuadraticSpace& space, const Subspace& s) {
  std::vector<Vec6> vs;
  for (const auto& v : s.basis()) vs.push_back(space.sigma_any(ProjPoint::from(space.field(), v)).coords);
  return Subspace::span(space.field(), vs);
}

std::vector<std::uint32_t> conic_points_off_h(const QuadraticSpace& space, const Subspace& plane,
                                              const char* label) {
  const auto pts = space.quadric_points_in(plane);
  if (pts.size() != space.q() + 1u)
    throw BadConfiguration(std::string(label) + " meets Q in " + std::to_string(pts.size()) + " points, not a conic");
  std::vector<std::uint32_t> idx;
  for (const auto& p : pts) {
    const auto i = space.x_index(p);
    if (!i) throw BadConfiguration(std::string(label) + " has a conic point in H");
    idx.push_back(*i);
  }
  return idx;
}

}  // namespace

Type2Construction construct_type2(const QuadraticSpace& space, const Type2Config& cfg) {
  const GaloisField& f = space.field();
  require_hyperbolic_solid_in_h(space, cfg.solid);
  if (cfg.line.dim() != 1 || !cfg.solid.contains(f, cfg.line)) throw BadConfiguration("l1 is not a line of S");
  if (space.classify_line(cfg.line) != LineKind::Elliptic) throw BadConfiguration("l1 is not elliptic");

  const Subspace sperp = space.perp(cfg.solid);
  if (!sperp.contains(f, cfg.p1.coords)) throw BadConfiguration("p1 is not on S^perp");
  if (cfg.p1 == space.pole()) throw BadConfiguration("p1 = H^perp");
  if (space.in_hyperplane(cfg.p1)) throw BadConfiguration("p1 = S^perp cap H");

  Type2Construction out;
  out.line2 = meet(f, space.perp(cfg.line), cfg.solid);
  if (out.line2.dim() != 1 || space.classify_line(out.line2) != LineKind::Elliptic)
    throw BadConfiguration("l1^perp cap S is not an elliptic line");

  // In even characteristic b is alternating, so this is p1 itself.
  const Subspace p2s = meet(f, space.perp(point_space(f, cfg.p1)), sperp);
  if (p2s.dim() != 0) throw BadConfiguration("p1^perp cap S^perp is not a point");
  out.p2 = ProjPoint::from(f, p2s.basis()[0]);
  if (out.p2 == space.pole()) throw BadConfiguration("p2 = H^perp");
  if (space.on_quadric(out.p2)) throw BadConfiguration("p2 lies on Q");

  const ProjPoint p1s = space.sigma_any(cfg.p1), p2sig = space.sigma_any(out.p2);
  out.planes = {join(f, point_space(f, cfg.p1), cfg.line), join(f, point_space(f, out.p2), out.line2),
                join(f, point_space(f, p1s), cfg.line), join(f, point_space(f, p2sig), out.line2)};
  const char* labels[] = {"<p1,l1>", "<p2,l2>", "<p1^sigma,l1>", "<p2^sigma,l2>"};
  out.set = PointSubset(space.x_size());
  for (std::size_t i = 0; i < 4; ++i) {
    if (out.planes[i].dim() != 2) throw BadConfiguration(std::string(labels[i]) + " is not a plane");
    for (auto x : conic_points_off_h(space, out.planes[i], labels[i])) out.set.insert(x);
  }
  if (out.set.size() != 4 * (space.q() + 1u))
    throw BadConfiguration("the four conics overlap (" + std::to_string(out.set.size()) + " points)");
  return out;
}

Type2Config default_type2_config(const QuadraticSpace& space) {
  for (const auto& s : hyperbolic_solids_in_hyperplane(space))
    for (const auto& l : elliptic_lines_in(space, s))
      for (const auto& p : type2_point_choices(space, s)) {
        Type2Config cfg{s, l, p};
        try {
          construct_type2(space, cfg);
          return cfg;
        } catch (const BadConfiguration&) {
        }
      }
  throw BadConfiguration("no valid type-2 configuration");
}

std::vector<ProjPoint> canonical_even_transversal(const QuadraticSpace& space, const Subspace& solid) {
  if (space.q() % 2 != 0) throw ParityError("the T_M construction needs q even");
  std::set<ProjPoint> reps;
  for (const auto& v : space.perp(solid).points(space.field())) {
    const ProjPoint p{v};
    if (p == space.pole()) continue;
    reps.insert(std::min(p, space.sigma_any(p)));
  }
  return {reps.begin(), reps.end()};
}

PointSubset construct_type3_even(const QuadraticSpace& space, const Subspace& solid,
                                 const std::vector<ProjPoint>& m) {
  if (space.q() % 2 != 0) throw ParityError("the T_M construction needs q even");
  require_hyperbolic_solid_in_h(space, solid);
  const GaloisField& f = space.field();
  const Subspace sperp = space.perp(solid);
  std::set<ProjPoint> seen;
  for (const auto& p : m) {
    if (!sperp.contains(f, p.coords) || p == space.pole())
      throw BadConfiguration("M must lie in S^perp minus H^perp");
    if (seen.count(p) || seen.count(space.sigma_any(p)))
      throw NotATransversal("M meets a sigma-orbit of S^perp twice");
    seen.insert(p);
  }
  if (m.size() != space.q() / 2) throw NotATransversal("|M| must be q/2");

  const auto& xs = space.x_points();
  PointSubset t(xs.size());
  for (const auto& p : m) {
    const Vec6 fp = space.polar_functional(p.coords);
    for (std::uint32_t i = 0; i < xs.size(); ++i)
      if (vec_dot(f, fp, xs[i].coords).value == 0) t.insert(i);
  }
  return t;
}

std::vector<Subspace> generators_in_hyperplane(const QuadraticSpace& space) {
  const auto& bd = space.boundary_points();
  const GaloisField& f = space.field();
  std::set<Subspace> lines;
  for (std::size_t i = 0; i < bd.size(); ++i) {
    const Vec6 fi = space.polar_functional(bd[i].coords);
    for (std::size_t j = i + 1; j < bd.size(); ++j)
      if (vec_dot(f, fi, bd[j].coords).value == 0) lines.insert(Subspace::span(f, {bd[i].coords, bd[j].coords}));
  }
  return {lines.begin(), lines.end()};
}

std::pair<std::vector<ProjPoint>, std::vector<Subspace>> type3_odd_candidates(const QuadraticSpace& space,
                                                                              const Subspace& m,
                                                                              const ProjPoint& u) {
  const GaloisField& f = space.field();
  const ProjPoint& z = space.pole();
  std::vector<ProjPoint> pts;
  for (const auto& v : Subspace::span(f, {u.coords, z.coords}).points(f)) {
    const ProjPoint y{v};
    if (!(y == u) && !(y == z)) pts.push_back(y);
  }
  ProjPoint v;
  for (const auto& c : m.points(f))
    if (!(ProjPoint{c} == u)) {
      v = ProjPoint{c};
      break;
    }
  std::vector<Subspace> lines;
  for (const auto& c : Subspace::span(f, {v.coords, z.coords}).points(f)) {
    const ProjPoint y{c};
    if (y == v || y == z) continue;
    lines.push_back(Subspace::span(f, {u.coords, y.coords}));
  }
  std::sort(lines.begin(), lines.end());
  return {pts, lines};
}

Type3OddConfig default_type3_odd_config(const QuadraticSpace& space, const Subspace& m, const ProjPoint& u) {
  if (space.q() % 2 == 0) throw ParityError("the odd type-3 construction needs q odd");
  const auto [pts, lines] = type3_odd_candidates(space, m, u);
  Type3OddConfig cfg{m, u, {}, {}};
  std::set<ProjPoint> s1;
  for (const auto& p : pts) s1.insert(std::min(p, space.sigma_any(p)));
  std::set<Subspace> s2;
  for (const auto& l : lines) s2.insert(std::min(l, sigma_image(space, l)));
  cfg.s1.assign(s1.begin(), s1.end());
  cfg.s2.assign(s2.begin(), s2.end());
  return cfg;
}

Type3OddConfig default_type3_odd_config(const QuadraticSpace& space) {
  if (space.q() % 2 == 0) throw ParityError("the odd type-3 construction needs q odd");
  const Subspace m = generators_in_hyperplane(space).front();
  return default_type3_odd_config(space, m, ProjPoint{m.points(space.field()).front()});
}

PointSubset construct_type3_odd(const QuadraticSpace& space, const Type3OddConfig& cfg) {
  if (space.q() % 2 == 0) throw ParityError("the odd type-3 construction needs q odd");
  const GaloisField& f = space.field();
  if (cfg.m.dim() != 1 || !space.hyperplane().contains(f, cfg.m) ||
      space.count_quadric_points(cfg.m) != space.q() + 1u)
    throw BadConfiguration("m is not a generator in H");
  if (!cfg.m.contains(f, cfg.u.coords)) throw BadConfiguration("u is not on m");

  const auto [pts, lines] = type3_odd_candidates(space, cfg.m, cfg.u);
  const std::size_t half = (space.q() - 1) / 2;
  if (cfg.s1.size() != half) throw NotATransversal("|S1| must be (q-1)/2");
  if (cfg.s2.size() != half) throw NotATransversal("|S2| must be (q-1)/2");
  std::set<ProjPoint> s1;
  for (const auto& p : cfg.s1) {
    if (!std::binary_search(pts.begin(), pts.end(), p))
      throw BadConfiguration("S1 must lie on u H^perp minus {u, H^perp}");
    if (s1.count(p) || s1.count(space.sigma_any(p))) throw NotATransversal("S1 meets a sigma-orbit twice");
    s1.insert(p);
  }
  std::set<Subspace> s2;
  for (const auto& l : cfg.s2) {
    if (std::find(lines.begin(), lines.end(), l) == lines.end())
      throw BadConfiguration("S2 must consist of lines of <H^perp, m> through u other than m and u H^perp");
    if (s2.count(l) || s2.count(sigma_image(space, l))) throw NotATransversal("S2 meets a sigma-orbit twice");
    s2.insert(l);
  }

  std::vector<std::vector<Vec6>> tests;
  for (const auto& p : cfg.s1) tests.push_back({space.polar_functional(p.coords)});
  for (const auto& l : cfg.s2) {
    std::vector<Vec6> fs;
    for (const auto& b : l.basis()) fs.push_back(space.polar_functional(b));
    tests.push_back(std::move(fs));
  }
  const auto& xs = space.x_points();
  PointSubset t(xs.size());
  for (std::uint32_t i = 0; i < xs.size(); ++i)
    for (const auto& fs : tests)
      if (std::all_of(fs.begin(), fs.end(), [&](const Vec6& g) { return vec_dot(f, g, xs[i].coords).value == 0; })) {
        t.insert(i);
        break;
      }
  return t;
}

DegreePair perp_counts(const SchemeInstance& s, const PointSubset& y) {
  auto deg = s.degrees(y.bits())[3];
  for (auto i : y.indices()) ++deg[i];
  return split_degrees(deg, y);
}

// ---- theorems and counting checks ----

bool verify_theorem_hemi(const IntrigueReport& report, const PointSubset& y, const std::vector<std::uint32_t>& sigma) {
  if (!report.intriguing()) throw std::invalid_argument("the dichotomy concerns intriguing sets only");
  if (report.type == 1 || report.type == 3) {
    if (2 * y.size() != y.universe())
      throw TheoremViolated("type " + std::to_string(report.type) + " set of size " + std::to_string(y.size()) +
                            " is not half of X");
    for (std::uint32_t p = 0; p < y.universe(); ++p)
      if (y.contains(p) == y.contains(sigma[p]))
        throw TheoremViolated("conjugate pair {" + std::to_string(p) + "," + std::to_string(sigma[p]) +
                              "} does not meet Y exactly once");
  } else if (!(y.image(sigma) == y)) {
    throw TheoremViolated("type " + std::to_string(report.type) + " set is not sigma-invariant");
  }
  return true;
}

MCoverReport verify_m_cover(const QuadraticSpace& space, const PointSubset& y) {
  MCoverReport r;
  std::optional<std::size_t> first;
  for (const auto& g : generators_off_hyperplane(space)) {
    std::size_t c = 0;
    for (auto i : g) c += y.contains(i);
    ++r.histogram[c];
    if (!first) first = c;
    else if (c != *first && r.witness.empty()) r.witness = g;
  }
  if (r.histogram.size() == 1) r.m = r.histogram.begin()->first;
  return r;
}

const char* to_string(QuadricSetKind k) {
  switch (k) {
    case QuadricSetKind::Tight: return "tight";
    case QuadricSetKind::HemisystemType: return "hemisystem-type";
    case QuadricSetKind::Neither: return "neither";
  }
  return "?";
}

Bitset lift_to_quadric(const QuadraticSpace& space, const PointSubset& y) {
  Bitset b(space.quadric_points().size());
  for (auto i : y.indices()) b.set(space.x_in_quadric()[i]);
  return b;
}

QuadricTightReport is_quadric_tight_set(const QuadraticSpace& space, const Bitset& y) {
  const auto& pts = space.quadric_points();
  if (y.size() != pts.size()) throw std::invalid_argument("subset is not indexed over the quadric");
  const GaloisField& f = space.field();
  const auto members = y.indices();
  std::vector<std::int64_t> deg(pts.size(), 0);
  for (std::size_t x = 0; x < pts.size(); ++x) {
    const Vec6 fx = space.polar_functional(pts[x].coords);
    for (auto t : members)
      if (t != x && vec_dot(f, fx, pts[t].coords).value == 0) ++deg[x];
  }
  QuadricTightReport r;
  PointSubset ys(y);
  r.degrees = split_degrees(deg, ys);
  const std::int64_t q = space.q();
  const std::int64_t n = static_cast<std::int64_t>(pts.size()), size = static_cast<std::int64_t>(members.size());
  if (size == 0 || size == n) return r;
  const std::int64_t k = q * (q * q + 1);
  if (const auto h = bart_pair(size, n, k, q - 1); h && matches(r.degrees, *h, ys.size(), pts.size())) {
    r.kind = QuadricSetKind::Tight;
    r.alpha = h->second;
  } else if (const auto g = bart_pair(size, n, k, -(q * q + 1)); g && matches(r.degrees, *g, ys.size(), pts.size())) {
    r.kind = QuadricSetKind::HemisystemType;
  }
  return r;
}

namespace {

struct ProfileLookup {
  const QuadraticSpace& space;
  const std::vector<std::optional<std::int64_t>>& s;

  /// Sum of s over the quadric points of a subspace of H, with the points found.
  std::pair<std::int64_t, std::vector<std::int64_t>> over(const Subspace& sub) const {
    std::int64_t total = 0;
    std::vector<std::int64_t> vals;
    for (const auto& p : space.quadric_points_in(sub)) {
      const auto i = space.boundary_index(p);
      if (!i) throw std::logic_error("subspace of H has a quadric point off H");
      vals.push_back(*s[*i]);
      total += vals.back();
    }
    return {total, vals};
  }
};

void record(IdentityCheck& c, bool ok, const std::string& what) {
  ++c.instances;
  if (!ok && c.holds) {
    c.holds = false;
    c.detail = what;
  }
}

bool has_zero(const std::vector<std::int64_t>& v) { return std::find(v.begin(), v.end(), 0) != v.end(); }

}  // namespace

SProfile s_profile(const QuadraticSpace& space, const PointSubset& y, bool subspace_laws) {
  const auto& bd = space.boundary_points();
  const std::int64_t q = space.q();
  SProfile prof;
  prof.s.resize(bd.size());
  for (std::uint32_t b = 0; b < bd.size(); ++b) {
    std::optional<std::int64_t> val;
    bool constant = true;
    for (const auto& g : generators_off_hyperplane_through(space, bd[b])) {
      std::int64_t c = 0;
      for (auto i : g) c += y.contains(i);
      if (!val) val = c;
      else if (*val != c) constant = false;
    }
    if (constant) {
      prof.s[b] = val;
      prof.sum += *val;
      prof.sum_pairs += *val * (*val - 1);
    } else {
      prof.non_constant.push_back(b);
    }
  }
  if (!prof.valid()) return prof;

  IdentityCheck sum{"sum", true, 0, ""}, pairs{"sum_pairs", true, 0, ""};
  record(sum, prof.sum == q * q * q + q, "sum of s_p is " + std::to_string(prof.sum));
  record(pairs, prof.sum_pairs == q * (q - 1), "sum of s_p(s_p-1) is " + std::to_string(prof.sum_pairs));
  prof.identities = {sum, pairs};

  if (!subspace_laws || q > 5) {
    prof.subspace_laws_skipped = true;
    return prof;
  }

  const GaloisField& f = space.field();
  const ProfileLookup look{space, prof.s};
  const Subspace h = space.hyperplane();
  const bool odd = q % 2 == 1;

  IdentityCheck lines{"generators_in_h", true, 0, ""};
  for (const auto& g : generators_in_hyperplane(space)) {
    const auto [t, v] = look.over(g);
    record(lines, t == q, "a generator of H has s = " + std::to_string(t));
  }

  IdentityCheck ell{"elliptic_solids", true, 0, ""}, hyp{"hyperbolic_solids", true, 0, ""};
  for_each_subspace(f, h, 4, [&](const Subspace& u) {
    const auto [t, v] = look.over(u);
    if (v.size() == static_cast<std::size_t>(q * q + 1) && space.classify_solid(u) == SolidKind::Elliptic) {
      if (has_zero(v)) record(ell, t == q * q - q, "elliptic solid with s = " + std::to_string(t));
    } else if (v.size() == static_cast<std::size_t>((q + 1) * (q + 1))) {
      record(hyp, t == q * q + q, "hyperbolic solid with s = " + std::to_string(t));
    }
  });

  IdentityCheck conics{odd ? "conics_odd" : "conics_even", true, 0, ""};
  for_each_subspace(f, h, 3, [&](const Subspace& pi) {
    const auto pts = space.quadric_points_in(pi);
    if (pts.size() != static_cast<std::size_t>(q + 1)) return;
    std::vector<Vec6> vs;
    for (const auto& p : pts) vs.push_back(p.coords);
    if (rank(f, vs) != 3) return;  // a line, not a conic
    const auto [sc, v] = look.over(pi);
    if (odd) {
      if (!has_zero(v)) return;
      const Subspace l = meet(f, space.perp(pi), h);
      const auto [sl, lv] = look.over(l);
      if (lv.empty()) record(conics, sc == q - 1, "external case: s_C = " + std::to_string(sc));
      else if (lv.size() == 2) record(conics, sc == q + 1 - sl, "secant case: s_C = " + std::to_string(sc));
      else record(conics, false, "pi^perp cap H meets Q in " + std::to_string(lv.size()) + " points");
    } else if (!pi.contains(f, space.pole().coords)) {
      if (!has_zero(v)) return;
      const Subspace l = meet(f, space.perp(pi), h);
      const auto [su, lv] = look.over(l);
      if (lv.size() != 1) record(conics, false, "pi^perp cap H meets Q in " + std::to_string(lv.size()) + " points");
      else record(conics, sc + su == q, "s_C + s_u = " + std::to_string(sc + su));
    } else {
      const auto [sc2, v2] = look.over(space.perp(pi));
      if (v2.size() != static_cast<std::size_t>(q + 1)) record(conics, false, "pi^perp is not a conic plane");
      else record(conics, sc + sc2 == 2 * q, "s_C + s_C' = " + std::to_string(sc + sc2));
    }
  });

  IdentityCheck secants{"secant_lines", true, 0, ""};
  for_each_subspace(f, h, 2, [&](const Subspace& l) {
    const auto pts = space.quadric_points_in(l);
    if (pts.size() != 2) return;
    const std::int64_t s0 = *prof.s[*space.boundary_index(pts[0])];
    const std::int64_t s1 = *prof.s[*space.boundary_index(pts[1])];
    const auto [sc, v] = look.over(meet(f, space.perp(l), h));
    if (s0 == 0) record(secants, sc == q * (2 - s1), "s_C = " + std::to_string(sc) + " with s_r = " + std::to_string(s1));
    if (s1 == 0) record(secants, sc == q * (2 - s0), "s_C = " + std::to_string(sc) + " with s_r = " + std::to_string(s0));
  });

  for (auto* c : {&lines, &ell, &hyp, &conics, &secants}) prof.identities.push_back(*c);
  return prof;
}

bool verify_bart2(const SchemeInstance& s, const PointSubset& y1, const PointSubset& y2) {
  const auto r1 = classify(s, y1), r2 = classify(s, y2);
  if (!r1.intriguing() || !r2.intriguing()) throw std::invalid_argument("both sets must be intriguing");
  if (r1.type == r2.type) throw SameType("both sets have type " + std::to_string(r1.type));
  return intersect(y1, y2).size() * s.size() == y1.size() * y2.size();
}

}  // namespace pw
