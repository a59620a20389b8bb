#pragma once

// Arithmetic in GF(2^k) and in the quadratic tower GF(q) < GF(q^2), q = 2^m.
//
// Elements are encoded as the little-endian coefficient bit-string of their
// polynomial-basis representation. For the quadratic extension GF(q)[w]/(w^2+w+nu)
// the element a + b*w is encoded as a | (b << m), so GF(q) embeds as (a, 0) and
// addition is XOR in every field.

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace arcforge {

using Elem = std::uint32_t;

class Field {
 public:
  /// GF(2^k) = GF(2)[x]/(poly); `poly` includes the leading x^k bit. 1 <= k <= 16.
  static std::shared_ptr<const Field> binary(int k, std::uint32_t poly);

  /// base[w]/(w^2 + w + nu); nu must have absolute trace 1 over base.
  static std::shared_ptr<const Field> quadratic(std::shared_ptr<const Field> base, Elem nu);

  int degree() const { return k_; }
  std::uint64_t order() const { return std::uint64_t{1} << k_; }
  bool contains(Elem a) const { return std::uint64_t{a} < order(); }
  bool is_extension() const { return base_ != nullptr; }
  const Field* base() const { return base_.get(); }
  Elem nu() const { return nu_; }
  /// Defining polynomial of an absolute field (bit-encoded), 0 for an extension.
  std::uint32_t modulus() const { return poly_; }

  static Elem add(Elem a, Elem b) { return a ^ b; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (tabled()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
  }
  Elem square(Elem a) const { return mul(a, a); }
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Absolute trace down to GF(2); returns 0 or 1.
  Elem trace(Elem a) const;

  /// A fixed generator of the multiplicative group (least encoding).
  Elem generator() const { return generator_; }
  /// Discrete log base generator(); a must be nonzero and the field tabled.
  std::uint32_t log(Elem a) const;
  bool tabled() const { return !log_.empty(); }

  /// y += a * x, element-wise.
  void axpy(Elem a, std::span<const Elem> x, std::span<Elem> y) const;

 private:
  Field() = default;
  Elem slow_mul(Elem a, Elem b) const;
  void build_tables();

  int k_ = 0;
  std::uint32_t poly_ = 0;
  std::shared_ptr<const Field> base_;
  Elem nu_ = 0;
  Elem generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2*(order-1) so log sums need no reduction
};

/// The pair GF(q) < GF(q^2) with q = 2^m.
class FieldTower {
 public:
  /// 1 <= m <= 16; throws std::invalid_argument otherwise.
  static FieldTower build(int m);

  int m() const { return m_; }
  std::uint32_t q() const { return std::uint32_t{1} << m_; }
  std::uint64_t q2() const { return std::uint64_t{1} << (2 * m_); }
  const Field& base() const { return *base_; }
  const Field& ext() const { return *ext_; }
  std::shared_ptr<const Field> base_ptr() const { return base_; }
  std::shared_ptr<const Field> ext_ptr() const { return ext_; }
  Elem nu() const { return ext_->nu(); }

  bool in_base(Elem x) const { return (x >> m_) == 0; }

  /// x^q.
  Elem frobenius(Elem x) const;
  /// x^(q+1), an element of GF(q).
  Elem norm(Elem x) const;
  /// x = a + b*w.
  std::pair<Elem, Elem> split(Elem x) const { return {x & (q() - 1), x >> m_}; }
  Elem lift(Elem a, Elem b) const { return a | (b << m_); }

 private:
  int m_ = 0;
  std::shared_ptr<const Field> base_;
  std::shared_ptr<const Field> ext_;
};

/// Least-encoding irreducible polynomial of degree k over GF(2), except for the
/// fixed choices x^2+x+1, x^3+x+1 and x^5+x^2+1.
std::uint32_t default_modulus(int k);

/// Trial-division irreducibility test over GF(2).
bool is_irreducible_gf2(std::uint32_t poly);

}  // namespace arcforge
