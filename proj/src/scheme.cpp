#include "pw/scheme.hpp"

#include <fstream>
#include <sstream>

namespace pw {

std::uint64_t x_size_formula(std::uint64_t q) { return q * q * (q * q - 1); }

EigenMatrices paper_matrices(std::uint64_t uq) {
  if (uq <= 2) throw QTooSmall("q must exceed 2: the relation R2 is empty when q = 2");
  const std::int64_t q = static_cast<std::int64_t>(uq);
  const std::int64_t q2 = q * q;
  EigenMatrices m;
  m.P = {{
      {1, (q - 1) * (q2 + 1), (q - 2) * q * (q2 + 1), (q - 1) * (q2 + 1), 1},
      {1, q2 + 1, 0, -(q2 + 1), -1},
      {1, q - 1, -2 * q, q - 1, 1},
      {1, -(q - 1), 0, q - 1, -1},
      {1, -(q - 1) * (q - 1), 2 * (q - 2) * q, -(q - 1) * (q - 1), 1},
  }};
  // Every entry is an integer: the halved products always contain an even factor.
  const std::int64_t a = (q - 1) * (q - 1) * q / 2;
  const std::int64_t b = (q - 2) * (q + 1) * (q2 + 1) / 2;
  const std::int64_t c = (q - 1) * q * (q2 + 1) / 2;
  const std::int64_t d = q * (q2 + 1) / 2;
  const std::int64_t e = (q - 1) * q / 2;
  const std::int64_t g = (q - 2) * (q + 1) / 2;
  m.Q = {{
      {1, a, b, c, d},
      {1, e, g, -e, -e},
      {1, 0, -q - 1, 0, q},
      {1, -e, g, e, -e},
      {1, -a, b, -c, d},
  }};

  const std::int64_t n = static_cast<std::int64_t>(x_size_formula(uq));
  for (std::size_t i = 0; i < kClasses; ++i)
    for (std::size_t j = 0; j < kClasses; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < kClasses; ++k) s += m.P[i][k] * m.Q[k][j];
      if (s != (i == j ? n : 0))
        throw std::logic_error("P Q != |X| I at entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return m;
}

std::array<std::int64_t, kClasses> eigenspace_dimensions(std::uint64_t q) {
  return paper_matrices(q).Q[0];
}

SchemeInstance SchemeInstance::build(std::shared_ptr<const QuadraticSpace> space) {
  SchemeInstance s;
  s.space_ = std::move(space);
  s.eigen_ = paper_matrices(s.space_->q());
  const auto& xs = s.space_->x_points();
  s.functionals_.reserve(xs.size());
  for (const auto& p : xs) s.functionals_.push_back(s.space_->polar_functional(p.coords));

  if (xs.size() <= kDenseLimit) {
    s.relations_ = build_relations(s);
    const std::int64_t n = static_cast<std::int64_t>(xs.size());
    for (std::size_t i = 0; i < kClasses; ++i) {
      if (static_cast<std::int64_t>(s.relations_[i].row(0).count()) != s.eigen_.P[0][i])
        throw AxiomViolation("valency of R" + std::to_string(i) + " differs from row 0 of P");
    }
    for (std::size_t j = 0; j < kClasses; ++j) {
      IntMatrix e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < kClasses; ++i) e.add_scaled(s.relations_[i], s.eigen_.Q[i][j]);
      s.idempotents_[j] = std::move(e);
    }
  }
  return s;
}

bool SchemeInstance::collinear(std::uint32_t u, std::uint32_t v) const {
  return u != v && vec_dot(space_->field(), functionals_[u], space_->x_points()[v].coords).value == 0;
}

int SchemeInstance::relation(std::uint32_t u, std::uint32_t v) const {
  if (u == v) return 0;
  const auto& sig = space_->sigma_table();
  if (sig[v] == u) return 4;
  const GaloisField& f = space_->field();
  const auto& xs = space_->x_points();
  if (vec_dot(f, functionals_[u], xs[v].coords).value == 0) return 3;
  if (vec_dot(f, functionals_[u], xs[sig[v]].coords).value == 0) return 1;
  return 2;
}

const RelationSet& SchemeInstance::relations() const {
  if (!dense()) throw std::logic_error("relation matrices are only built for |X| <= 600 (q <= 5)");
  return relations_;
}

const std::array<IntMatrix, kClasses>& SchemeInstance::scaled_idempotents() const {
  if (!dense()) throw std::logic_error("idempotents are only built for |X| <= 600 (q <= 5)");
  return idempotents_;
}

RelationSet build_relations(const SchemeInstance& s) {
  const std::size_t n = s.size();
  RelationSet rel;
  for (auto& m : rel) m = BitMatrix(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    rel[0].row(u).set(u);
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const int r = s.relation(u, v);
      rel[r].row(u).set(v);
      rel[r].row(v).set(u);
    }
  }
  return rel;
}

std::array<std::vector<std::int64_t>, kClasses> SchemeInstance::degrees(const Bitset& y) const {
  const std::size_t n = size();
  if (y.size() != n) throw std::invalid_argument("subset is not indexed over X");
  std::array<std::vector<std::int64_t>, kClasses> deg;
  for (auto& d : deg) d.assign(n, 0);
  if (dense()) {
    for (std::size_t i = 0; i < kClasses; ++i)
      for (std::size_t x = 0; x < n; ++x) deg[i][x] = static_cast<std::int64_t>(relations_[i].row(x).and_count(y));
    return deg;
  }
  const auto members = y.indices();
  for (std::uint32_t x = 0; x < n; ++x)
    for (auto m : members) ++deg[relation(x, m)][x];
  return deg;
}

IntersectionNumbers verify_axioms(const RelationSet& rel) {
  const std::size_t n = rel[0].size();
  std::vector<std::uint8_t> index(n * n, 0xff);
  for (std::size_t u = 0; u < n; ++u) {
    if (!rel[0].test(u, u) || rel[0].row(u).count() != 1)
      throw AxiomViolation("A0 is not the identity at row " + std::to_string(u));
    for (std::size_t i = 0; i < kClasses; ++i) {
      for (auto v : rel[i].row(u).indices()) {
        if (index[u * n + v] != 0xff)
          throw AxiomViolation("pair (" + std::to_string(u) + "," + std::to_string(v) + ") lies in R" +
                               std::to_string(index[u * n + v]) + " and R" + std::to_string(i));
        index[u * n + v] = static_cast<std::uint8_t>(i);
        if (!rel[i].test(v, u))
          throw AxiomViolation("A" + std::to_string(i) + " is not symmetric at (" + std::to_string(u) + "," +
                               std::to_string(v) + ")");
      }
    }
  }
  for (std::size_t k = 0; k < n * n; ++k)
    if (index[k] == 0xff)
      throw AxiomViolation("pair (" + std::to_string(k / n) + "," + std::to_string(k % n) + ") lies in no relation");

  IntersectionNumbers p{};
  std::array<std::array<std::array<bool, kClasses>, kClasses>, kClasses> seen{};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t k = index[u * n + v];
      for (std::size_t i = 0; i < kClasses; ++i)
        for (std::size_t j = 0; j < kClasses; ++j) {
          const auto c = static_cast<std::int64_t>(rel[i].row(u).and_count(rel[j].row(v)));
          if (!seen[i][j][k]) {
            seen[i][j][k] = true;
            p[i][j][k] = c;
          } else if (p[i][j][k] != c) {
            std::ostringstream msg;
            msg << "intersection number p^" << k << "_{" << i << j << "} is not constant: " << p[i][j][k]
                << " vs " << c << " at entry (" << u << "," << v << ")";
            throw AxiomViolation(msg.str());
          }
        }
    }
  return p;
}

EigenReport verify_eigenstructure(const SchemeInstance& s) {
  const auto& rel = s.relations();
  const auto& e = s.scaled_idempotents();
  const auto& P = s.eigenmatrices().P;
  const std::size_t n = s.size();
  const auto dims = eigenspace_dimensions(s.q());
  const std::int64_t nx = static_cast<std::int64_t>(n);
  EigenReport report;

  for (std::size_t j = 0; j < kClasses; ++j) {
    report.valencies[j] = static_cast<std::int64_t>(rel[j].row(0).count());
    for (std::size_t u = 0; u < n; ++u)
      if (static_cast<std::int64_t>(rel[j].row(u).count()) != P[0][j])
        throw EigenMismatch(0, j, "row " + std::to_string(u) + " of A" + std::to_string(j) +
                                      " does not sum to the valency P[0][" + std::to_string(j) + "]");
  }

  for (std::size_t i = 0; i < kClasses; ++i) {
    for (std::size_t j = 0; j < kClasses; ++j) {
      const IntMatrix prod = multiply(rel[j], e[i]);
      if (!(prod == e[i].scaled(P[i][j])))
        throw EigenMismatch(i, j, "A" + std::to_string(j) + " E" + std::to_string(i) + " != " +
                                      std::to_string(P[i][j]) + " E" + std::to_string(i));
    }
  }

  IntMatrix total(n, n);
  for (std::size_t i = 0; i < kClasses; ++i) {
    total.add_scaled(e[i], 1);
    for (std::size_t j = i; j < kClasses; ++j) {
      const IntMatrix prod = multiply(e[i], e[j]);
      const bool ok = i == j ? prod == e[i].scaled(nx) : prod.is_zero();
      if (!ok)
        throw EigenMismatch(i, j, "scaled idempotents E" + std::to_string(i) + " E" + std::to_string(j) +
                                      " violate E_i E_j = |X| delta_ij E_i");
    }
    report.traces[i] = e[i].trace();
    if (report.traces[i] != nx * dims[i])
      throw EigenMismatch(i, i, "trace of |X| E" + std::to_string(i) + " is " + std::to_string(report.traces[i]) +
                                    ", expected |X| * " + std::to_string(dims[i]));
  }
  if (!(total == IntMatrix::identity(n).scaled(nx)))
    throw EigenMismatch(0, 0, "scaled idempotents do not sum to |X| I");
  return report;
}

std::array<std::int64_t, kClasses> valencies_from_geometry(const SchemeInstance& s) {
  const std::size_t n = s.size();
  const auto& P = s.eigenmatrices().P;
  std::array<std::int64_t, kClasses> first{};
  for (std::uint32_t u = 0; u < n; ++u) {
    std::array<std::int64_t, kClasses> counts{};
    for (std::uint32_t v = 0; v < n; ++v) ++counts[s.relation(u, v)];
    if (u == 0) first = counts;
    for (std::size_t i = 0; i < kClasses; ++i)
      if (counts[i] != P[0][i])
        throw AxiomViolation("point " + std::to_string(u) + " has R" + std::to_string(i) + "-valency " +
                             std::to_string(counts[i]) + ", expected " + std::to_string(P[0][i]));
  }
  return first;
}

QuadricScheme QuadricScheme::build(const QuadraticSpace& space) {
  QuadricScheme qs;
  const auto& pts = space.quadric_points();
  const std::size_t n = pts.size();
  const GaloisField& f = space.field();
  qs.points = n;
  qs.collinearity = BitMatrix(n);
  for (std::size_t u = 0; u < n; ++u) {
    const Vec6 fu = space.polar_functional(pts[u].coords);
    for (std::size_t v = u + 1; v < n; ++v)
      if (vec_dot(f, fu, pts[v].coords).value == 0) {
        qs.collinearity.row(u).set(v);
        qs.collinearity.row(v).set(u);
      }
  }
  const std::int64_t q = space.q();
  IntMatrix m(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) m(u, v) = 1;  // J
  m.add_scaled(qs.collinearity, -(q + 1));
  m.add_scaled(IntMatrix::identity(n), q * q - 1);
  qs.scaled_minus_idempotent = std::move(m);
  qs.inclusion = space.x_in_quadric();
  return qs;
}

IntMatrix QuadricScheme::inclusion_matrix() const {
  IntMatrix s(inclusion.size(), points);
  for (std::size_t x = 0; x < inclusion.size(); ++x) s(x, inclusion[x]) = 1;
  return s;
}

IntMatrix QuadricScheme::restrict_to_x(const IntMatrix& m) const {
  const std::size_t n = inclusion.size();
  IntMatrix r(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) r(u, v) = m(inclusion[u], inclusion[v]);
  return r;
}

BitMatrix QuadricScheme::restrict_to_x(const BitMatrix& m) const {
  const std::size_t n = inclusion.size();
  BitMatrix r(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (m.test(inclusion[u], inclusion[v])) r.row(u).set(v);
  return r;
}

EmbeddingReport embedding_check(const SchemeInstance& s, const QuadricScheme& qs, bool with_rank) {
  const auto& rel = s.relations();
  const auto& e = s.scaled_idempotents();
  const std::int64_t q = s.q();
  const std::size_t n = s.size();

  // S B_k S^T against the scheme relations.
  const BitMatrix b1 = qs.restrict_to_x(qs.collinearity);
  if (!(b1 == rel[3])) throw IdentityFails("S B1 S^T != A3");
  BitMatrix b2(n);
  for (std::size_t u = 0; u < n; ++u) b2.row(u) = (rel[1].row(u) | rel[2].row(u)) | rel[4].row(u);
  IntMatrix b2_restricted(n, n);
  {
    IntMatrix full(qs.points, qs.points);
    for (std::size_t u = 0; u < qs.points; ++u)
      for (std::size_t v = 0; v < qs.points; ++v)
        full(u, v) = (u != v && !qs.collinearity.test(u, v)) ? 1 : 0;
    b2_restricted = qs.restrict_to_x(full);
  }
  if (!(b2_restricted == IntMatrix::from_bits(b2))) throw IdentityFails("S B2 S^T != A1 + A2 + A4");
  if (!(qs.restrict_to_x(IntMatrix::identity(qs.points)) == IntMatrix::from_bits(rel[0])))
    throw IdentityFails("S B0 S^T != A0");

  // q(q+1)^2 E^- is a scaled idempotent of the quadric scheme.
  const std::int64_t scale = q * (q + 1) * (q + 1);
  const IntMatrix& m = qs.scaled_minus_idempotent;
  if (!(multiply(m, m) == m.scaled(scale))) throw IdentityFails("q(q+1)^2 E^- is not a scaled idempotent");

  const IntMatrix restricted = qs.restrict_to_x(m);
  IntMatrix rhs = e[1].scaled(scale);
  rhs.add_scaled(e[4], q * (q * q - 1));
  if (!(restricted.scaled(static_cast<std::int64_t>(n)) == rhs))
    throw IdentityFails("S E^- S^T != E1 + (q-1)/(q+1) E4");

  EmbeddingReport report;
  const auto dims = eigenspace_dimensions(s.q());
  report.expected_rank = dims[1] + dims[4];
  if (with_rank) {
    report.rank = exact_rank(restricted);
    if (static_cast<std::int64_t>(report.rank) != report.expected_rank)
      throw IdentityFails("rank of S E^- S^T is " + std::to_string(report.rank) + ", expected " +
                          std::to_string(report.expected_rank));
  }
  return report;
}

SigmaSpanReport sigma_span_check(const SchemeInstance& s, bool with_rank) {
  const auto& e = s.scaled_idempotents();
  const auto& sig = s.sigma();
  const std::size_t n = s.size();
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t ps = sig[p];
    for (std::size_t j = 0; j < kClasses; ++j) {
      const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
      const std::int64_t* a = e[j].row_ptr(p);
      const std::int64_t* b = e[j].row_ptr(ps);
      for (std::size_t k = 0; k < n; ++k)
        if (a[k] != sign * b[k])
          throw SpanMismatch("E" + std::to_string(j) + (sign > 0 ? " (chi_p - chi_p^sigma)" : " (chi_p + chi_p^sigma)") +
                             " != 0 at p = " + std::to_string(p));
    }
  }
  SigmaSpanReport report;
  if (!with_rank) return report;
  IntMatrix diff(n, n), sum(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    diff(p, p) += 1;
    diff(p, sig[p]) -= 1;
    sum(p, p) += 1;
    sum(p, sig[p]) += 1;
  }
  const auto dims = eigenspace_dimensions(s.q());
  report.rank_differences = exact_rank(diff);
  report.rank_sums = exact_rank(sum);
  if (static_cast<std::int64_t>(report.rank_differences) != dims[1] + dims[3])
    throw SpanMismatch("rank of {chi_p - chi_p^sigma} is " + std::to_string(report.rank_differences));
  if (static_cast<std::int64_t>(report.rank_sums) != dims[0] + dims[2] + dims[4])
    throw SpanMismatch("rank of {chi_p + chi_p^sigma} is " + std::to_string(report.rank_sums));
  return report;
}

void write_matrix_market(const std::string& path, const IntMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m(i, j) != 0) ++nnz;
  out << "%%MatrixMarket matrix coordinate integer symmetric\n";
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = j; i < m.rows(); ++i)
      if (m(i, j) != 0) out << (i + 1) << ' ' << (j + 1) << ' ' << m(i, j) << '\n';
}

}  // namespace pw
