#include "pw/geometry.hpp"

#include <algorithm>

namespace pw {

const char* to_string(LineKind k) {
  switch (k) {
    case LineKind::Elliptic: return "elliptic";
    case LineKind::Tangent: return "tangent";
    case LineKind::Secant: return "secant";
    case LineKind::Generator: return "generator";
  }
  return "?";
}

const char* to_string(SolidKind k) {
  switch (k) {
    case SolidKind::Elliptic: return "elliptic";
    case SolidKind::Hyperbolic: return "hyperbolic";
    case SolidKind::Cone: return "cone";
    case SolidKind::Other: return "other";
  }
  return "?";
}

std::vector<ProjPoint> all_points(const GaloisField& f) {
  const std::uint32_t q = f.order();
  std::vector<ProjPoint> pts;
  for (std::size_t lead = 0; lead < kAmbientDim; ++lead) {
    std::uint64_t count = 1;
    for (std::size_t i = lead + 1; i < kAmbientDim; ++i) count *= q;
    for (std::uint64_t n = 0; n < count; ++n) {
      ProjPoint p;
      p.coords[lead] = f.one();
      std::uint64_t m = n;
      for (std::size_t i = kAmbientDim; i-- > lead + 1;) {
        p.coords[i] = FieldElement{static_cast<std::uint32_t>(m % q)};
        m /= q;
      }
      pts.push_back(p);
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

QuadraticSpace QuadraticSpace::build(GaloisField field) {
  if (field.order() <= 2)
    throw QTooSmall("q must exceed 2: the relation R2 is empty when q = 2");
  QuadraticSpace s(std::move(field));
  const GaloisField& f = s.field_;
  std::tie(s.a_, s.b_) = find_irreducible_quadratic(f);
  s.two_ = f.from_integer(2);
  s.two_b_ = f.mul(s.two_, s.b_);

  Vec6 c{};
  c[0] = f.one();
  c[1] = f.neg(f.one());
  s.pole_ = ProjPoint::from(f, c);
  const FieldElement qc = s.quad(s.pole_.coords);
  if (qc.value == 0) throw std::logic_error("hyperplane is tangent: Q(H^perp) = 0");
  s.pole_quad_inv_ = f.inv(qc);

  Vec6 e0{}, e2{}, e3{}, e4{}, e5{};
  e0[0] = f.one();
  e0[1] = f.one();
  e2[2] = f.one();
  e3[3] = f.one();
  e4[4] = f.one();
  e5[5] = f.one();
  s.hyperplane_ = Subspace::span(f, {e0, e2, e3, e4, e5});
  if (!(s.perp(s.hyperplane_) == point_space(f, s.pole_)))
    throw std::logic_error("pole is not the polar point of H");

  for (const auto& p : all_points(f)) {
    if (!s.on_quadric(p)) continue;
    s.quadric_.push_back(p);
    if (s.in_hyperplane(p)) {
      s.boundary_.push_back(p);
    } else {
      s.x_in_quadric_.push_back(static_cast<std::uint32_t>(s.quadric_.size() - 1));
      s.x_.push_back(p);
    }
  }
  const std::uint64_t q = f.order();
  if (s.x_.size() != q * q * (q * q - 1))
    throw std::logic_error("|X| differs from q^2(q^2-1); the form is not elliptic");

  s.sigma_.resize(s.x_.size());
  for (std::size_t i = 0; i < s.x_.size(); ++i) s.sigma_[i] = *s.x_index(s.sigma_any(s.x_[i]));
  return s;
}

FieldElement QuadraticSpace::quad(const Vec6& x) const {
  const GaloisField& f = field_;
  FieldElement v = f.add(f.mul(x[0], x[1]), f.mul(x[2], x[3]));
  v = f.add(v, f.mul(x[4], x[4]));
  v = f.add(v, f.mul(a_, f.mul(x[4], x[5])));
  v = f.add(v, f.mul(b_, f.mul(x[5], x[5])));
  return v;
}

Vec6 QuadraticSpace::polar_functional(const Vec6& x) const {
  const GaloisField& f = field_;
  Vec6 r;
  r[0] = x[1];
  r[1] = x[0];
  r[2] = x[3];
  r[3] = x[2];
  r[4] = f.add(f.mul(two_, x[4]), f.mul(a_, x[5]));
  r[5] = f.add(f.mul(a_, x[4]), f.mul(two_b_, x[5]));
  return r;
}

FieldElement QuadraticSpace::bilinear(const Vec6& x, const Vec6& y) const {
  return vec_dot(field_, polar_functional(x), y);
}

ProjPoint QuadraticSpace::sigma_any(const ProjPoint& p) const {
  const FieldElement t = field_.neg(field_.mul(bilinear(p.coords, pole_.coords), pole_quad_inv_));
  return ProjPoint::from(field_, vec_axpy(field_, p.coords, t, pole_.coords));
}

ProjPoint QuadraticSpace::sigma(const ProjPoint& p) const {
  if (!in_x(p)) throw NotInX("sigma is defined on X = Q minus H only");
  return sigma_any(p);
}

bool QuadraticSpace::collinear(const ProjPoint& u, const ProjPoint& v) const {
  if (!on_quadric(u) || !on_quadric(v)) throw NotOnQuadric("collinearity needs quadric points");
  return !(u == v) && bilinear(u.coords, v.coords).value == 0;
}

Subspace QuadraticSpace::perp(const Subspace& s) const {
  std::vector<Vec6> rows;
  rows.reserve(s.basis().size());
  for (const auto& v : s.basis()) rows.push_back(polar_functional(v));
  return Subspace::span(field_, dot_annihilator(field_, rows));
}

std::vector<ProjPoint> QuadraticSpace::quadric_points_in(const Subspace& s) const {
  std::vector<ProjPoint> out;
  for (const auto& v : s.points(field_))
    if (quad(v).value == 0) out.push_back(ProjPoint{v});
  return out;
}

std::size_t QuadraticSpace::count_quadric_points(const Subspace& s) const {
  return quadric_points_in(s).size();
}

LineKind QuadraticSpace::classify_line(const Subspace& line) const {
  if (line.dim() != 1) throw std::invalid_argument("classify_line needs a line");
  const std::size_t n = count_quadric_points(line);
  if (n == 0) return LineKind::Elliptic;
  if (n == 1) return LineKind::Tangent;
  if (n == 2) return LineKind::Secant;
  if (n == q() + 1u) return LineKind::Generator;
  throw std::logic_error("a line meets a quadric in 0, 1, 2 or q+1 points");
}

SolidKind QuadraticSpace::classify_solid(const Subspace& solid) const {
  if (solid.dim() != 3) throw std::invalid_argument("classify_solid needs a solid");
  const std::uint64_t n = count_quadric_points(solid);
  const std::uint64_t qq = q();
  if (n == qq * qq + 1) return SolidKind::Elliptic;
  if (n == (qq + 1) * (qq + 1)) return SolidKind::Hyperbolic;
  if (n == qq * qq + qq + 1) return SolidKind::Cone;
  return SolidKind::Other;
}

namespace {

std::optional<std::uint32_t> find_sorted(const std::vector<ProjPoint>& v, const ProjPoint& p) {
  const auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || !(*it == p)) return std::nullopt;
  return static_cast<std::uint32_t>(it - v.begin());
}

}  // namespace

std::optional<std::uint32_t> QuadraticSpace::x_index(const ProjPoint& p) const { return find_sorted(x_, p); }
std::optional<std::uint32_t> QuadraticSpace::quadric_index(const ProjPoint& p) const {
  return find_sorted(quadric_, p);
}
std::optional<std::uint32_t> QuadraticSpace::boundary_index(const ProjPoint& p) const {
  return find_sorted(boundary_, p);
}

std::vector<std::vector<std::uint32_t>> generators_off_hyperplane_through(const QuadraticSpace& space,
                                                                          const ProjPoint& w) {
  if (!space.boundary_index(w)) throw std::invalid_argument("point is not in H cap Q");
  const GaloisField& f = space.field();
  const Vec6 fw = space.polar_functional(w.coords);
  const auto& xs = space.x_points();
  std::vector<char> seen(xs.size(), 0);
  std::vector<std::vector<std::uint32_t>> lines;
  for (std::uint32_t i = 0; i < xs.size(); ++i) {
    if (seen[i] || vec_dot(f, fw, xs[i].coords).value != 0) continue;
    std::vector<std::uint32_t> line;
    for (const auto t : f.elements()) {
      const auto idx = space.x_index(ProjPoint::from(f, vec_axpy(f, xs[i].coords, t, w.coords)));
      line.push_back(*idx);
      seen[*idx] = 1;
    }
    std::sort(line.begin(), line.end());
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::vector<std::vector<std::uint32_t>> generators_off_hyperplane(const QuadraticSpace& space) {
  std::vector<std::vector<std::uint32_t>> all;
  for (const auto& w : space.boundary_points()) {
    auto part = generators_off_hyperplane_through(space, w);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace pw
