#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pw/intriguing.hpp"
#include "pw/search.hpp"
#include "support.hpp"

using namespace pw;
using pw::test::scheme;
using pw::test::space;

namespace {

// |R_i(x) cap Y| counted pair by pair from the definitions of the relations.
std::array<std::vector<std::int64_t>, 5> degree_oracle(const QuadraticSpace& sp, const PointSubset& y) {
  const auto& xs = sp.x_points();
  std::array<std::vector<std::int64_t>, 5> deg;
  for (auto& d : deg) d.assign(xs.size(), 0);
  for (std::uint32_t u = 0; u < xs.size(); ++u)
    for (auto v : y.indices()) {
      const ProjPoint vs = sp.sigma(xs[v]);
      int r;
      if (u == v) r = 0;
      else if (xs[u] == vs) r = 4;
      else {
        const bool c = sp.bilinear(xs[u].coords, xs[v].coords).value == 0;
        const bool cs = sp.bilinear(xs[u].coords, vs.coords).value == 0;
        r = c ? 3 : (cs ? 1 : 2);
      }
      ++deg[r][u];
    }
  return deg;
}

// Type from the spectral definition, with |X| E_j built here from Q and the oracle degrees.
int type_oracle(const SchemeInstance& s, const PointSubset& y) {
  if (y.size() == 0 || y.size() == s.size()) return -1;
  const auto deg = degree_oracle(s.space(), y);
  const auto& Q = paper_matrices(s.q()).Q;
  int type = 0, count = 0;
  for (std::size_t j = 1; j < 5; ++j) {
    bool nz = false;
    for (std::size_t x = 0; x < s.size() && !nz; ++x) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < 5; ++i) acc += Q[i][j] * deg[i][x];
      nz = acc != 0;
    }
    if (nz) {
      ++count;
      type = static_cast<int>(j);
    }
  }
  return count == 1 ? type : 0;
}

bool is_zero(const std::vector<std::int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t t) { return t == 0; });
}

PointSubset random_sigma_closed(const SchemeInstance& s, std::mt19937& rng) {
  PointSubset y(s.size());
  std::bernoulli_distribution coin(0.5);
  for (std::uint32_t x = 0; x < s.size(); ++x)
    if (x < s.sigma()[x] && coin(rng)) {
      y.insert(x);
      y.insert(s.sigma()[x]);
    }
  return y;
}

PointSubset type2_set(std::uint32_t q) { return construct_type2(space(q), default_type2_config(space(q))).set; }
PointSubset type3_set(std::uint32_t q) {
  if (q % 2) return construct_type3_odd(space(q), default_type3_odd_config(space(q)));
  const auto solid = hyperbolic_solids_in_hyperplane(space(q)).front();
  return construct_type3_even(space(q), solid, canonical_even_transversal(space(q), solid));
}
PointSubset type4_set(std::uint32_t q) { return construct_type4(space(q), space(q).boundary_points().front()); }

}  // namespace

TEST_CASE("expected_degrees") {
  CHECK(expected_degrees(18, 72, 20, -4) == std::pair<std::int64_t, std::int64_t>{2, 6});
  CHECK(expected_degrees(16, 72, 20, 2) == std::pair<std::int64_t, std::int64_t>{6, 4});
  CHECK_THROWS_AS(expected_degrees(1, 72, 20, -4), NonIntegral);
  CHECK_THROWS_AS(expected_degrees(18, 72, 20, 20), std::invalid_argument);
}

TEST_CASE("classify trivial sets") {
  const auto& s = scheme(3);
  const auto single = PointSubset::from_indices(72, {0});
  const auto r = classify(s, single);
  CHECK(r.type == 0);
  CHECK(r.type_string() == "none");
  for (std::size_t j = 1; j < 5; ++j) CHECK(r.nonzero[j]);

  const auto all = PointSubset(72).complement();
  CHECK(all.size() == 72);
  const auto ra = classify(s, all);
  CHECK(ra.principal_or_empty);
  CHECK(ra.type_string() == "principal-or-empty");
  CHECK_FALSE(ra.intriguing());
  CHECK(classify(s, PointSubset(72)).principal_or_empty);
  CHECK_THROWS_AS(classify(s, PointSubset(10)), std::invalid_argument);
}

TEST_CASE("type 4 construction") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const auto& s = scheme(q);
    const auto y = type4_set(q);
    const auto r = classify(s, y);
    CAPTURE(q);
    CHECK(y.size() == q * q * (q - 1));
    CHECK(r.type == 4);
    CHECK(r.degrees[3].inside == std::int64_t(q - 1));
    CHECK(r.degrees[3].outside == std::int64_t(q * q - q));
    CHECK(r.sigma == SigmaBehavior::Invariant);
    CHECK_FALSE(r.alpha);
    CHECK(verify_theorem_hemi(r, y, s.sigma()));
  }
  const auto& sp = space(3);
  std::set<PointSubset> distinct;
  for (const auto& w : sp.boundary_points()) distinct.insert(construct_type4(sp, w));
  CHECK(distinct.size() == 40);
  CHECK_THROWS_AS(construct_type4(sp, sp.x_points()[0]), NotOnBoundary);
  CHECK_THROWS_AS(construct_type4(sp, sp.pole()), NotOnBoundary);
}

TEST_CASE("type 2 construction") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const auto& s = scheme(q);
    const auto c = construct_type2(space(q), default_type2_config(space(q)));
    const auto r = classify(s, c.set);
    CAPTURE(q);
    CHECK(c.set.size() == 4 * (q + 1));
    CHECK(r.type == 2);
    CHECK(r.sigma == SigmaBehavior::Invariant);
    CHECK(r.alpha == 4);
    CHECK(verify_theorem_hemi(r, c.set, s.sigma()));
    if (q % 2 == 0) CHECK(c.p2 == default_type2_config(space(q)).p1);
    const auto tight = is_quadric_tight_set(space(q), lift_to_quadric(space(q), c.set));
    CHECK(tight.kind == QuadricSetKind::Tight);
    CHECK(tight.alpha == 4);
  }
  // R3 degrees at q = 3 match the plugged-in values (6, 4).
  CHECK(classify(scheme(3), type2_set(3)).degrees[3] == DegreePair{true, 6, 4});
}

TEST_CASE("type 2 construction rejects bad configurations") {
  const auto& sp = space(3);
  const auto cfg = default_type2_config(sp);
  auto bad = cfg;
  bad.p1 = sp.pole();
  CHECK_THROWS_AS(construct_type2(sp, bad), BadConfiguration);
  bad = cfg;
  for_each_subspace(sp.field(), cfg.solid, 2, [&](const Subspace& l) {
    if (sp.classify_line(l) == LineKind::Secant) bad.line = l;
  });
  CHECK_THROWS_AS(construct_type2(sp, bad), BadConfiguration);
  bad = cfg;
  bad.solid = sp.perp(Subspace::span(sp.field(), {sp.pole().coords, sp.boundary_points()[0].coords}));
  CHECK_THROWS_AS(construct_type2(sp, bad), BadConfiguration);
}

TEST_CASE("type 3 construction, q even") {
  const auto& sp = space(4);
  const auto& s = scheme(4);
  const auto solid = hyperbolic_solids_in_hyperplane(sp).front();
  const auto m = canonical_even_transversal(sp, solid);
  REQUIRE(m.size() == 2);
  std::vector<ProjPoint> mc;
  for (const auto& p : m) mc.push_back(sp.sigma_any(p));
  const auto t = construct_type3_even(sp, solid, m);
  const auto tc = construct_type3_even(sp, solid, mc);
  const auto r = classify(s, t);
  CHECK(t.size() == 120);
  CHECK(r.type == 3);
  CHECK(r.sigma == SigmaBehavior::DisjointImage);
  CHECK(verify_theorem_hemi(r, t, s.sigma()));
  CHECK(unite(t, tc).size() == 240);
  CHECK(intersect(t, tc).size() == 0);
  CHECK(t.image(s.sigma()) == tc);

  CHECK_THROWS_AS(construct_type3_even(sp, solid, {m[0], sp.sigma_any(m[0])}), NotATransversal);
  CHECK_THROWS_AS(construct_type3_even(sp, solid, {m[0]}), NotATransversal);
  CHECK_THROWS_AS(construct_type3_even(sp, solid, {m[0], sp.pole()}), BadConfiguration);
  CHECK_THROWS_AS(construct_type3_even(space(3), hyperbolic_solids_in_hyperplane(space(3)).front(), {}), ParityError);
  CHECK_THROWS_AS(canonical_even_transversal(space(3), hyperbolic_solids_in_hyperplane(space(3)).front()), ParityError);
}

TEST_CASE("type 3 construction, q odd") {
  for (std::uint32_t q : {3u, 5u}) {
    const auto& s = scheme(q);
    const auto t = type3_set(q);
    const auto r = classify(s, t);
    CAPTURE(q);
    CHECK(t.size() == q * q * (q * q - 1) / 2);
    CHECK(r.type == 3);
    CHECK(r.sigma == SigmaBehavior::DisjointImage);
    CHECK(verify_theorem_hemi(r, t, s.sigma()));
    const auto pc = perp_counts(s, t);
    CHECK(pc.outside == std::int64_t((q - 1) * q * q / 2));
    CHECK(pc.inside == std::int64_t((q - 1) * q * q / 2 + q));
    const auto tight = is_quadric_tight_set(space(q), lift_to_quadric(space(q), t));
    CHECK(tight.kind == QuadricSetKind::Tight);
    CHECK(tight.alpha == std::int64_t(q * q * (q - 1) / 2));
  }
  CHECK(perp_counts(scheme(3), type3_set(3)).outside == 9);
  CHECK_THROWS_AS(default_type3_odd_config(space(4)), ParityError);

  const auto& sp = space(3);
  auto cfg = default_type3_odd_config(sp);
  REQUIRE(cfg.s1.size() == 1);
  auto bad = cfg;
  bad.s1.push_back(sp.sigma_any(cfg.s1[0]));
  CHECK_THROWS_AS(construct_type3_odd(sp, bad), NotATransversal);
  bad = cfg;
  bad.s1 = {cfg.u};
  CHECK_THROWS_AS(construct_type3_odd(sp, bad), BadConfiguration);
  bad = cfg;
  bad.s2.clear();
  CHECK_THROWS_AS(construct_type3_odd(sp, bad), NotATransversal);

  // The other choice in each orbit gives the complementary set.
  auto other = cfg;
  const auto [pts, lines] = type3_odd_candidates(sp, cfg.m, cfg.u);
  REQUIRE(pts.size() == 2);
  REQUIRE(lines.size() == 2);
  other.s1 = {pts[0] == cfg.s1[0] ? pts[1] : pts[0]};
  other.s2 = {lines[0] == cfg.s2[0] ? lines[1] : lines[0]};
  const auto t = construct_type3_odd(sp, cfg), t2 = construct_type3_odd(sp, other);
  CHECK(classify(scheme(3), t2).type == 3);
  CHECK(t2 == t.complement());
}

TEST_CASE("complements keep the type") {
  const auto& s = scheme(3);
  for (const auto& y : {type2_set(3), type3_set(3), type4_set(3)}) {
    CHECK(classify(s, y.complement()).type == classify(s, y).type);
  }
}

TEST_CASE("classifier agrees with an independent degree oracle") {
  std::mt19937 rng(5);
  for (std::uint32_t q : {3u, 4u}) {
    const auto& s = scheme(q);
    std::vector<PointSubset> sets = {type2_set(q), type3_set(q), type4_set(q)};
    for (int t = 0; t < 10; ++t) sets.push_back(random_sigma_closed(s, rng));
    sets.push_back(PointSubset::from_indices(s.size(), {0, 1, 2}));
    for (const auto& y : sets) {
      const auto r = classify(s, y);
      REQUIRE(r.type == type_oracle(s, y));
      const auto deg = degree_oracle(s.space(), y);
      for (std::size_t i = 0; i < 5; ++i) REQUIRE(split_degrees(deg[i], y) == r.degrees[i]);
      if (r.intriguing())
        for (std::size_t i = 1; i < 5; ++i) {
          const auto& P = s.eigenmatrices().P;
          if (P[r.type][i] == P[0][i]) continue;  // R_i does not separate Y from its complement
          const auto h = expected_degrees(static_cast<std::int64_t>(y.size()), static_cast<std::int64_t>(s.size()),
                                          P[0][i], P[r.type][i]);
          REQUIRE(r.degrees[i].inside == h.first);
          REQUIRE(r.degrees[i].outside == h.second);
        }
    }
  }
}

TEST_CASE("sigma-closed sets are exactly those orthogonal to V1 and V3") {
  const auto& s = scheme(3);
  std::mt19937 rng(17);
  std::bernoulli_distribution coin(0.5);
  int closed = 0, open = 0;
  while (closed < 200 || open < 200) {
    PointSubset y(72);
    if (closed < 200) {
      y = random_sigma_closed(s, rng);
    } else {
      for (std::uint32_t x = 0; x < 72; ++x)
        if (coin(rng)) y.insert(x);
    }
    const bool inv = y.image(s.sigma()) == y;
    const bool orth = is_zero(projection(s, y, 1)) && is_zero(projection(s, y, 3));
    REQUIRE(inv == orth);
    (inv ? closed : open)++;
  }
}

TEST_CASE("in V0+V2+V3: sigma-invariant iff type 2, transversal iff type 3") {
  const auto& s = scheme(3);
  std::vector<PointSubset> sets = {type2_set(3), type3_set(3), type3_set(3).image(s.sigma())};
  for (const auto& y : enumerate_type2_structured(s).found) sets.push_back(y);
  for (const auto& y : std::vector<PointSubset>(sets)) sets.push_back(y.complement());
  for (const auto& y : sets) {
    REQUIRE(is_zero(projection(s, y, 1)));
    REQUIRE(is_zero(projection(s, y, 4)));
    const auto r = classify(s, y);
    const bool inv = r.sigma == SigmaBehavior::Invariant;
    const bool transversal = r.sigma == SigmaBehavior::DisjointImage && y.size() == 36;
    REQUIRE(inv == (r.type == 2));
    REQUIRE(transversal == (r.type == 3));
  }
}

TEST_CASE("perpendicular conics disjoint from H are never sigma-closed") {
  const auto& sp = space(3);
  const GaloisField& f = sp.field();
  std::vector<Vec6> e(6);
  for (std::size_t i = 0; i < 6; ++i) e[i][i] = f.one();
  const Subspace whole = Subspace::span(f, e);
  std::size_t pairs = 0;
  for_each_subspace(f, whole, 3, [&](const Subspace& pi) {
    const auto c1 = sp.quadric_points_in(pi);
    if (c1.size() != 4) return;
    std::vector<Vec6> vs;
    for (const auto& p : c1) vs.push_back(p.coords);
    if (rank(f, vs) != 3) return;
    const Subspace pp = sp.perp(pi);
    if (!(pi < pp)) return;  // each pair once
    const auto c2 = sp.quadric_points_in(pp);
    if (c2.size() != 4) return;
    PointSubset y(72);
    for (const auto* c : {&c1, &c2})
      for (const auto& p : *c) {
        const auto i = sp.x_index(p);
        if (!i) return;
        y.insert(*i);
      }
    ++pairs;
    REQUIRE(y.size() == 8);
    REQUIRE_FALSE(y.image(sp.sigma_table()) == y);
  });
  CHECK(pairs > 0);
}

TEST_CASE("conjugate-pair dichotomy and its failures") {
  const auto& s = scheme(3);
  const auto y = type4_set(3);
  auto r = classify(s, y);
  r.type = 3;
  CHECK_THROWS_AS(verify_theorem_hemi(r, y, s.sigma()), TheoremViolated);
  const auto t = type3_set(3);
  auto r3 = classify(s, t);
  r3.type = 2;
  CHECK_THROWS_AS(verify_theorem_hemi(r3, t, s.sigma()), TheoremViolated);
  CHECK_THROWS_AS(verify_theorem_hemi(classify(s, PointSubset::from_indices(72, {0})), y, s.sigma()),
                  std::invalid_argument);
}

TEST_CASE("m-cover scan") {
  const auto& sp = space(3);
  const auto odd = verify_m_cover(sp, type3_set(3));
  CHECK_FALSE(odd.m);
  CHECK(odd.histogram.size() > 1);
  CHECK(odd.witness.size() == 3);
  const auto all = verify_m_cover(sp, PointSubset(72).complement());
  CHECK(all.m == 3u);
  CHECK(all.histogram.at(3) == 240);
  CHECK(verify_m_cover(sp, PointSubset(72)).m == 0u);
}

TEST_CASE("tight sets of the quadric") {
  const auto& sp = space(3);
  const Subspace g = generators_in_hyperplane(sp).front();
  Bitset line(sp.quadric_points().size());
  for (const auto& v : g.points(sp.field())) line.set(*sp.quadric_index(ProjPoint{v}));
  const auto r = is_quadric_tight_set(sp, line);
  CHECK(r.kind == QuadricSetKind::Tight);
  CHECK(r.alpha == 1);

  Bitset one(sp.quadric_points().size());
  one.set(0);
  CHECK(is_quadric_tight_set(sp, one).kind == QuadricSetKind::Neither);
  CHECK_THROWS_AS(is_quadric_tight_set(sp, Bitset(5)), std::invalid_argument);
}

TEST_CASE("s-profile of the type-4 set at q = 3") {
  const auto& sp = space(3);
  const auto& w = sp.boundary_points()[7];
  const auto prof = s_profile(sp, construct_type4(sp, w));
  REQUIRE(prof.valid());
  CHECK(prof.sum == 30);
  CHECK(prof.sum_pairs == 6);
  std::size_t top = 0;
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    REQUIRE(prof.s[i]);
    const auto v = *prof.s[i];
    CHECK((v == 0 || v == 1 || v == 3));
    if (v == 3) {
      ++top;
      CHECK(i == 7);
    }
  }
  CHECK(top == 1);
  CHECK_FALSE(prof.subspace_laws_skipped);
  std::set<std::string> names;
  for (const auto& id : prof.identities) {
    CAPTURE(id.name);
    CAPTURE(id.detail);
    CHECK(id.holds);
    names.insert(id.name);
    if (id.name == "generators_in_h") CHECK(id.instances == 40);
    if (id.name == "secant_lines") CHECK(id.instances > 0);
  }
  CHECK(names == std::set<std::string>{"sum", "sum_pairs", "generators_in_h", "elliptic_solids", "hyperbolic_solids",
                                       "conics_odd", "secant_lines"});

  const auto bad = s_profile(sp, PointSubset::from_indices(72, {0}));
  CHECK_FALSE(bad.valid());
  CHECK(bad.identities.empty());
}

TEST_CASE("small type-4 sets are determined by the point with s_p = q") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const auto& sp = space(q);
    for (std::size_t i = 0; i < sp.boundary_points().size(); i += (q == 3 ? 1 : 17)) {
      const auto y = construct_type4(sp, sp.boundary_points()[i]);
      const auto prof = s_profile(sp, y, q == 4);
      REQUIRE(prof.valid());
      std::optional<std::size_t> top;
      for (std::size_t b = 0; b < prof.s.size(); ++b) {
        const auto v = *prof.s[b];
        if (q % 2) REQUIRE((v == 0 || v == 1 || v == std::int64_t(q)));
        if (v == std::int64_t(q)) {
          REQUIRE_FALSE(top);
          top = b;
        }
      }
      REQUIRE(top);
      CHECK(construct_type4(sp, sp.boundary_points()[*top]) == y);
      for (const auto& id : prof.identities) CHECK(id.holds);
    }
  }
}

TEST_CASE("intersections of intriguing sets of different types") {
  const auto& s = scheme(3);
  const auto y2 = type2_set(3), y3 = type3_set(3), y4 = type4_set(3);
  CHECK(intersect(y2, y4).size() == 4);
  CHECK(intersect(y3, y4).size() == 9);
  CHECK(intersect(y3, y2).size() == 8);
  CHECK(verify_bart2(s, y2, y4));
  CHECK(verify_bart2(s, y3, y4));
  CHECK(verify_bart2(s, y3, y2));
  CHECK_THROWS_AS(verify_bart2(s, y4, construct_type4(space(3), space(3).boundary_points()[1])), SameType);
  CHECK_THROWS_AS(verify_bart2(s, y4, PointSubset::from_indices(72, {0})), std::invalid_argument);
}

TEST_CASE("report rendering") {
  const auto r = classify(scheme(3), type2_set(3));
  const auto text = render_report(r);
  CHECK(text.find("type: 2\n") != std::string::npos);
  CHECK(text.find("sigma: invariant\n") != std::string::npos);
  CHECK(text.find("alpha: 4\n") != std::string::npos);
  CHECK(text.find("nonzero_projections: 2\n") != std::string::npos);
  CHECK(text.find("degrees_R3: 6 4\n") != std::string::npos);
  CHECK(text.rfind("q: 3\nsize: 16\n", 0) == 0);

  const auto ra = render_report(classify(scheme(3), PointSubset(72).complement()));
  CHECK(ra.find("nonzero_projections: -\n") != std::string::npos);
  CHECK(ra.find("degrees_R3: 20 -\n") != std::string::npos);
}

TEST_CASE("subset helpers") {
  const auto a = PointSubset::from_indices(10, {1, 2, 3});
  const auto b = PointSubset::from_indices(10, {3, 4});
  CHECK(intersect(a, b).indices() == std::vector<std::uint32_t>{3});
  CHECK(unite(a, b).size() == 4);
  CHECK(a.complement().size() == 7);
  CHECK_THROWS_AS(PointSubset::from_indices(10, {10}), std::out_of_range);
  const std::vector<std::uint32_t> swap01 = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8};
  CHECK(PointSubset::from_indices(10, {0}).image(swap01) == PointSubset::from_indices(10, {1}));
  CHECK(sigma_behavior(swap01, PointSubset::from_indices(10, {0, 1})) == SigmaBehavior::Invariant);
  CHECK(sigma_behavior(swap01, PointSubset::from_indices(10, {0})) == SigmaBehavior::DisjointImage);
  CHECK(sigma_behavior(swap01, PointSubset::from_indices(10, {0, 1, 2})) == SigmaBehavior::Mixed);
  const auto d = split_degrees({1, 1, 2, 2}, PointSubset::from_indices(4, {0, 1}));
  CHECK(d == DegreePair{true, 1, 2});
  CHECK_FALSE(split_degrees({1, 0, 2, 2}, PointSubset::from_indices(4, {0, 1})).constant);
}
