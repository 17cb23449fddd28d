#pragma once

// Exact arithmetic in GF(p^e), polynomial basis.
//
// An element is stored as its base-p positional encoding
//     n = c_0 + c_1 p + ... + c_{e-1} p^{e-1},
// where c_i are the coordinates with respect to 1, t, ..., t^{e-1} modulo the
// field's monic irreducible modulus.  The same integer is used in every file
// format, and the natural order on n is the total order on elements.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pw {

class NonPrime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivideByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FieldElement {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

/// Returns (p, e) with q = p^e, or nullopt-like (0, 0) when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q);

class GaloisField {
 public:
  /// Builds GF(p^e) with the least monic irreducible modulus of degree e.
  /// Polynomials are ordered by the encoding of their non-leading
  /// coefficients, i.e. lexicographically from the t^{e-1} coefficient down.
  static GaloisField build(std::uint32_t p, std::uint32_t e);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint32_t order() const { return q_; }

  /// Modulus coefficients c_0..c_e (c_e == 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement element(std::uint32_t encoding) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const {
    if (!add_table_.empty()) return {add_table_[a.value * q_ + b.value]};
    return add_slow(a, b);
  }
  FieldElement neg(FieldElement a) const { return {neg_[a.value]}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (!mul_table_.empty()) return {mul_table_[a.value * q_ + b.value]};
    if (a.value == 0 || b.value == 0) return {0};
    return {exp_[log_[a.value] + log_[b.value]]};
  }
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t k) const;

  /// Image of an integer under Z -> GF(p).
  FieldElement from_integer(std::int64_t n) const;

  /// A fixed primitive element (generator of the multiplicative group).
  FieldElement primitive() const { return {exp_[1]}; }

  /// All elements in increasing order.
  std::vector<FieldElement> elements() const;

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  GaloisField() = default;
  FieldElement add_slow(FieldElement a, FieldElement b) const;

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint16_t> add_table_;  // only for q <= 256
  std::vector<std::uint16_t> mul_table_;
};

/// Least (a, b) in encoding order such that t^2 + a t + b has no root in the field.
std::pair<FieldElement, FieldElement> find_irreducible_quadratic(const GaloisField& field);

namespace poly {

/// Dense polynomials over Z_p, index = degree.  Trailing zeros are trimmed.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& f);
Poly mod(Poly f, const Poly& g, std::uint32_t p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p);

/// True iff the monic polynomial f has no monic factor of degree 1..deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p);

}  // namespace poly

}  // namespace pw
