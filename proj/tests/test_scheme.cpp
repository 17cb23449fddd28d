#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "pw/scheme.hpp"

using namespace pw;

namespace {

std::shared_ptr<const QuadraticSpace> space_ptr(std::uint32_t q) {
  const auto [p, e] = prime_power_decompose(q);
  return std::make_shared<const QuadraticSpace>(QuadraticSpace::build(GaloisField::build(p, e)));
}

const SchemeInstance& scheme(std::uint32_t q) {
  static std::map<std::uint32_t, SchemeInstance> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, SchemeInstance::build(space_ptr(q))).first;
  return it->second;
}

// Relation from the definition, using only the polarity and sigma.
int relation_oracle(const QuadraticSpace& s, std::uint32_t u, std::uint32_t v) {
  const auto& x = s.x_points();
  const ProjPoint& pu = x[u];
  const ProjPoint& pv = x[v];
  const ProjPoint pvs = s.sigma(pv);
  if (pu == pv) return 0;
  if (pu == pvs) return 4;
  const bool c = s.bilinear(pu.coords, pv.coords).value == 0;
  const bool cs = s.bilinear(pu.coords, pvs.coords).value == 0;
  if (c && !cs) return 3;
  if (!c && cs) return 1;
  if (!c && !cs) return 2;
  return -1;
}

IntMatrix naive_product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

std::int64_t naive_rank(IntMatrix m) {
  // Fraction-free over doubles is unsafe; do Gaussian elimination mod a large prime.
  constexpr std::int64_t p = 1'000'000'007;
  const auto mod = [](std::int64_t v) { return ((v % p) + p) % p; };
  const auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a = mod(a);
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * a % p);
      a = static_cast<std::int64_t>((__int128)a * a % p);
      e >>= 1;
    }
    return r;
  };
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j));
  std::int64_t rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(piv, j));
    const std::int64_t iv = inv(m(row, col));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      const std::int64_t f = static_cast<std::int64_t>((__int128)m(i, col) * iv % p);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) = mod(m(i, j) - static_cast<std::int64_t>((__int128)f * m(row, j) % p));
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("closed-form eigenmatrices at q = 3") {
  const auto m = paper_matrices(3);
  CHECK(m.P[0] == std::array<std::int64_t, 5>{1, 20, 30, 20, 1});
  CHECK(m.P[1] == std::array<std::int64_t, 5>{1, 10, 0, -10, -1});
  CHECK(m.P[2] == std::array<std::int64_t, 5>{1, 2, -6, 2, 1});
  CHECK(m.P[3] == std::array<std::int64_t, 5>{1, -2, 0, 2, -1});
  CHECK(m.P[4] == std::array<std::int64_t, 5>{1, -4, 6, -4, 1});
  CHECK(m.Q[0] == std::array<std::int64_t, 5>{1, 6, 20, 30, 15});
  CHECK(m.Q[2] == std::array<std::int64_t, 5>{1, 0, -4, 0, 3});
  CHECK(eigenspace_dimensions(4) == std::array<std::int64_t, 5>{1, 18, 85, 102, 34});
  CHECK_THROWS_AS(paper_matrices(2), QTooSmall);
}

TEST_CASE("P Q = |X| I for many q") {
  for (std::uint64_t q = 3; q <= 64; ++q) {
    const auto m = paper_matrices(q);
    const auto n = static_cast<std::int64_t>(q * q * (q * q - 1));
    std::int64_t dims = 0, vals = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      dims += m.Q[0][i];
      vals += m.P[0][i];
      for (std::size_t j = 0; j < 5; ++j) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < 5; ++k) s += m.P[i][k] * m.Q[k][j];
        REQUIRE(s == (i == j ? n : 0));
      }
    }
    CHECK(dims == n);
    CHECK(vals == n);
    CHECK(x_size_formula(q) == static_cast<std::uint64_t>(n));
  }
}

TEST_CASE("relations match the definition") {
  for (std::uint32_t q : {3u, 4u}) {
    const auto& s = scheme(q);
    for (std::uint32_t u = 0; u < s.size(); ++u)
      for (std::uint32_t v = 0; v < s.size(); ++v) REQUIRE(s.relation(u, v) == relation_oracle(s.space(), u, v));
  }
}

TEST_CASE("valencies equal row 0 of P") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const auto& s = scheme(q);
    const auto& rel = s.relations();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t x = 0; x < s.size(); ++x) REQUIRE(static_cast<std::int64_t>(rel[i].row(x).count()) == s.eigenmatrices().P[0][i]);
    CHECK(valencies_from_geometry(s) == s.eigenmatrices().P[0]);
  }
  CHECK(scheme(4).eigenmatrices().P[0] == std::array<std::int64_t, 5>{1, 51, 136, 51, 1});
  CHECK(scheme(3).eigenmatrices().P[0] == std::array<std::int64_t, 5>{1, 20, 30, 20, 1});
  // Geometric path for a sparse instance.
  const auto big = SchemeInstance::build(space_ptr(7));
  CHECK_FALSE(big.dense());
  CHECK(valencies_from_geometry(big) == paper_matrices(7).P[0]);
}

TEST_CASE("scheme axioms and intersection numbers") {
  for (std::uint32_t q : {3u, 4u}) {
    const auto& s = scheme(q);
    const auto& rel = s.relations();
    const auto p = verify_axioms(rel);
    const auto k = s.eigenmatrices().P[0];
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t kk = 0; kk < 5; ++kk) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < 5; ++j) sum += p[i][j][kk];
        CHECK(sum == k[i]);  // sum over j of p^k_ij
      }
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) CHECK(p[i][j][0] == (i == j ? k[i] : 0));

    if (q == 3) {
      // A_i A_j = sum_k p^k_ij A_k by explicit multiplication.
      std::array<IntMatrix, 5> a;
      for (std::size_t i = 0; i < 5; ++i) a[i] = IntMatrix::from_bits(rel[i]);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
          IntMatrix rhs(s.size(), s.size());
          for (std::size_t kk = 0; kk < 5; ++kk) rhs.add_scaled(rel[kk], p[i][j][kk]);
          REQUIRE(naive_product(a[i], a[j]) == rhs);
        }
    }
  }
}

TEST_CASE("a corrupted relation is rejected") {
  const auto& s = scheme(3);
  RelationSet rel = s.relations();
  // Move the symmetric pair (0, v) from R2 to R3.
  std::uint32_t v = 0;
  while (!rel[2].test(0, v)) ++v;
  rel[2].row(0).reset(v);
  rel[2].row(v).reset(0);
  rel[3].row(0).set(v);
  rel[3].row(v).set(0);
  CHECK_THROWS_AS(verify_axioms(rel), AxiomViolation);

  RelationSet asym = s.relations();
  asym[2].row(0).reset(v);
  asym[3].row(0).set(v);
  CHECK_THROWS_AS(verify_axioms(asym), AxiomViolation);

  RelationSet hole = s.relations();
  hole[2].row(0).reset(v);
  CHECK_THROWS_AS(verify_axioms(hole), AxiomViolation);
}

TEST_CASE("eigenstructure of the scaled idempotents") {
  for (std::uint32_t q : {3u, 4u}) {
    const auto& s = scheme(q);
    const auto rep = verify_eigenstructure(s);
    CHECK(rep.valencies == s.eigenmatrices().P[0]);
    CHECK(rep.traces[1] == static_cast<std::int64_t>(s.size()) * s.eigenmatrices().Q[0][1]);
  }
  const auto& s3 = scheme(3);
  const auto& e = s3.scaled_idempotents();
  const auto a3 = IntMatrix::from_bits(s3.relations()[3]);
  CHECK(naive_product(a3, e[4]) == e[4].scaled(-4));
  // trace(|X| E_j) = |X| * m_j
  for (std::size_t j = 0; j < 5; ++j) CHECK(e[j].trace() == 72 * s3.eigenmatrices().Q[0][j]);

  const auto& s4 = scheme(4);
  CHECK(multiply(s4.relations()[3], s4.scaled_idempotents()[1]) == s4.scaled_idempotents()[1].scaled(-17));
}

TEST_CASE("the quadric idempotent restricts to E1 and E4") {
  for (std::uint32_t q : {3u, 4u}) {
    const auto& s = scheme(q);
    const auto qs = QuadricScheme::build(s.space());
    const auto rep = embedding_check(s, qs);
    const auto dims = eigenspace_dimensions(q);
    CHECK(rep.rank == static_cast<std::size_t>(dims[1] + dims[4]));
    CHECK(rep.expected_rank == dims[1] + dims[4]);

    // S B1 S^T = A3, the collinearity restricted to X.
    CHECK(qs.restrict_to_x(qs.collinearity) == s.relations()[3]);
    const auto sm = IntMatrix(naive_product(naive_product(qs.inclusion_matrix(), qs.scaled_minus_idempotent),
                                            [&] {
                                              const auto si = qs.inclusion_matrix();
                                              IntMatrix t(si.cols(), si.rows());
                                              for (std::size_t i = 0; i < si.rows(); ++i)
                                                for (std::size_t j = 0; j < si.cols(); ++j) t(j, i) = si(i, j);
                                              return t;
                                            }()));
    CHECK(sm == qs.restrict_to_x(qs.scaled_minus_idempotent));
    const std::int64_t qq = q;
    IntMatrix rhs = s.scaled_idempotents()[1].scaled(qq * (qq + 1) * (qq + 1));
    rhs.add_scaled(s.scaled_idempotents()[4], qq * (qq * qq - 1));
    CHECK(sm.scaled(static_cast<std::int64_t>(s.size())) == rhs);
  }
}

TEST_CASE("sigma difference and sum spans") {
  for (std::uint32_t q : {3u, 4u}) {
    const auto& s = scheme(q);
    const auto rep = sigma_span_check(s);
    const auto d = eigenspace_dimensions(q);
    CHECK(rep.rank_differences == static_cast<std::size_t>(d[1] + d[3]));
    CHECK(rep.rank_sums == static_cast<std::size_t>(d[0] + d[2] + d[4]));
    CHECK(rep.rank_differences == s.size() / 2);
  }
}

TEST_CASE("exact rank agrees with rank modulo a large prime") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = 3 + t % 7, c = 4 + t % 5;
    IntMatrix m(r, c);
    // Low-rank products for some trials.
    if (t % 3 == 0) {
      IntMatrix a(r, 2), b(2, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < 2; ++j) a(i, j) = val(rng);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < c; ++j) b(i, j) = val(rng);
      m = naive_product(a, b);
    } else {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = val(rng);
    }
    CHECK(static_cast<std::int64_t>(exact_rank(m)) == naive_rank(m));
  }
  CHECK(exact_rank(IntMatrix::identity(5)) == 5);
  CHECK(exact_rank(IntMatrix(4, 4)) == 0);
  // The scaled idempotents have rank equal to the multiplicities.
  const auto& s = scheme(3);
  for (std::size_t j = 0; j < 5; ++j)
    CHECK(static_cast<std::int64_t>(exact_rank(s.scaled_idempotents()[j])) == s.eigenmatrices().Q[0][j]);
}

TEST_CASE("MatrixMarket output") {
  IntMatrix m(3, 3);
  m(0, 0) = 2;
  m(1, 0) = m(0, 1) = -1;
  m(2, 2) = 5;
  const auto path = (std::filesystem::temp_directory_path() / "pw_test_matrix.mtx").string();
  write_matrix_market(path, m);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "%%MatrixMarket matrix coordinate integer symmetric\n3 3 3\n1 1 2\n2 1 -1\n3 3 5\n");
  std::remove(path.c_str());
}
