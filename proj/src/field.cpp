#include "pw/field.hpp"

#include <algorithm>

namespace pw {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), e};
}

namespace poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime; Fermat.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t k = p - 2;
  while (k) {
    if (k & 1) result = result * base % p;
    base = base * base % p;
    k >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Poly mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = static_cast<std::uint64_t>(f.back()) * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = c * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return mod(std::move(prod), m, p);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t k = n;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(k % p);
        k /= p;
      }
      if (mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

GaloisField GaloisField::build(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw NonPrime("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw std::invalid_argument("field degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw TooLarge("field order " + std::to_string(p) + "^" + std::to_string(e) +
                     " exceeds 2^16");
  }

  GaloisField f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);

  for (std::uint64_t n = 0; n < q; ++n) {
    poly::Poly m(e + 1, 0);
    m[e] = 1;
    std::uint64_t k = n;
    for (std::uint32_t i = 0; i < e; ++i) {
      m[i] = static_cast<std::uint32_t>(k % p);
      k /= p;
    }
    if (poly::is_irreducible(m, p)) {
      f.modulus_ = m;
      break;
    }
  }

  f.neg_.resize(f.q_);
  for (std::uint32_t a = 0; a < f.q_; ++a) {
    auto c = f.coeffs({a});
    for (auto& x : c) x = (p - x) % p;
    f.neg_[a] = f.from_coeffs(c).value;
  }

  // Multiplicative structure: find a generator by brute force over elements.
  const std::uint32_t order = f.q_ - 1;
  auto to_poly = [&](std::uint32_t a) {
    poly::Poly c = f.coeffs({a});
    poly::trim(c);
    return c;
  };
  auto from_poly = [&](const poly::Poly& c) {
    std::vector<std::uint32_t> full(e, 0);
    std::copy(c.begin(), c.end(), full.begin());
    return f.from_coeffs(full).value;
  };
  for (std::uint32_t g = 1; g < f.q_; ++g) {
    std::vector<std::uint32_t> powers;
    powers.reserve(order);
    poly::Poly gp = to_poly(g);
    poly::Poly cur{1};
    bool primitive = true;
    for (std::uint32_t k = 0; k < order; ++k) {
      const std::uint32_t v = from_poly(cur);
      if (k > 0 && v == 1) {
        primitive = false;
        break;
      }
      powers.push_back(v);
      cur = poly::mulmod(cur, gp, f.modulus_, p);
    }
    if (!primitive) continue;
    f.exp_.resize(2 * static_cast<std::size_t>(order));
    f.log_.assign(f.q_, 0);
    for (std::uint32_t k = 0; k < 2 * order; ++k) f.exp_[k] = powers[k % order];
    for (std::uint32_t k = 0; k < order; ++k) f.log_[powers[k]] = k;
    break;
  }

  if (f.q_ <= 256) {
    f.add_table_.resize(static_cast<std::size_t>(f.q_) * f.q_);
    f.mul_table_.resize(static_cast<std::size_t>(f.q_) * f.q_);
    for (std::uint32_t a = 0; a < f.q_; ++a)
      for (std::uint32_t b = 0; b < f.q_; ++b) {
        f.add_table_[a * f.q_ + b] = static_cast<std::uint16_t>(f.add_slow({a}, {b}).value);
        f.mul_table_[a * f.q_ + b] = static_cast<std::uint16_t>(
            (a == 0 || b == 0) ? 0 : f.exp_[f.log_[a] + f.log_[b]]);
      }
  }
  return f;
}

FieldElement GaloisField::element(std::uint32_t encoding) const {
  if (encoding >= q_)
    throw std::out_of_range("encoding " + std::to_string(encoding) + " not below q=" +
                            std::to_string(q_));
  return {encoding};
}

FieldElement GaloisField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  std::uint32_t n = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const std::uint32_t c = i < coeffs.size() ? coeffs[i] % p_ : 0;
    n += c * scale;
    scale *= p_;
  }
  return {n};
}

std::vector<std::uint32_t> GaloisField::coeffs(FieldElement a) const {
  std::vector<std::uint32_t> c(e_);
  std::uint32_t n = a.value;
  for (std::uint32_t i = 0; i < e_; ++i) {
    c[i] = n % p_;
    n /= p_;
  }
  return c;
}

FieldElement GaloisField::add_slow(FieldElement a, FieldElement b) const {
  std::uint32_t x = a.value, y = b.value, n = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    n += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return {n};
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a.value == 0) throw DivideByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
  const std::uint32_t order = q_ - 1;
  return {exp_[(order - log_[a.value]) % order]};
}

FieldElement GaloisField::pow(FieldElement a, std::uint64_t k) const {
  if (k == 0) return one();
  if (a.value == 0) return zero();
  const std::uint64_t order = q_ - 1;
  return {exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a.value]) * (k % order)) % order)]};
}

FieldElement GaloisField::from_integer(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

std::vector<FieldElement> GaloisField::elements() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

std::pair<FieldElement, FieldElement> find_irreducible_quadratic(const GaloisField& field) {
  const std::uint32_t q = field.order();
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      bool has_root = false;
      for (std::uint32_t x = 0; x < q && !has_root; ++x) {
        const FieldElement t{x};
        const FieldElement v =
            field.add(field.add(field.mul(t, t), field.mul({a}, t)), FieldElement{b});
        has_root = v.value == 0;
      }
      if (!has_root) return {FieldElement{a}, FieldElement{b}};
    }
  }
  throw std::logic_error("no irreducible quadratic found");
}

}  // namespace pw
