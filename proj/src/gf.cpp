#include "arcforge/gf.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace arcforge {

namespace {

std::uint64_t clmul_reduce(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int k) {
  std::uint64_t prod = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1u) prod ^= std::uint64_t{a} << i;
  for (int i = 63; i >= k; --i)
    if ((prod >> i) & 1u) prod ^= std::uint64_t{poly} << (i - k);
  return prod;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) {
  if (poly < 2) return false;
  const int deg = static_cast<int>(std::bit_width(poly)) - 1;
  // trial division by every polynomial of degree 1..deg/2
  for (std::uint32_t d = 2; (static_cast<int>(std::bit_width(d)) - 1) * 2 <= deg; ++d) {
    const int dd = static_cast<int>(std::bit_width(d)) - 1;
    std::uint32_t r = poly;
    for (int i = deg; i >= dd; --i)
      if ((r >> i) & 1u) r ^= d << (i - dd);
    if (r == 0) return false;
  }
  return true;
}

std::uint32_t default_modulus(int k) {
  switch (k) {
    case 1: return 0b11;
    case 2: return 0b111;
    case 3: return 0b1011;
    case 5: return 0b100101;
    default: break;
  }
  for (std::uint32_t p = (1u << k) | 1u; p < (2u << k); p += 2)
    if (is_irreducible_gf2(p)) return p;
  throw std::logic_error("no irreducible polynomial of degree " + std::to_string(k));
}

std::shared_ptr<const Field> Field::binary(int k, std::uint32_t poly) {
  if (k < 1 || k > 16) throw std::invalid_argument("binary field degree out of range");
  if (static_cast<int>(std::bit_width(poly)) - 1 != k || !is_irreducible_gf2(poly))
    throw std::invalid_argument("modulus is not an irreducible polynomial of degree " +
                                std::to_string(k));
  auto f = std::shared_ptr<Field>(new Field());
  f->k_ = k;
  f->poly_ = poly;
  f->build_tables();
  return f;
}

std::shared_ptr<const Field> Field::quadratic(std::shared_ptr<const Field> base, Elem nu) {
  if (!base || base->is_extension()) throw std::invalid_argument("quadratic extension needs an absolute base field");
  if (!base->contains(nu) || base->trace(nu) != 1)
    throw std::invalid_argument("w^2 + w + nu is reducible: trace(nu) must be 1");
  auto f = std::shared_ptr<Field>(new Field());
  f->k_ = 2 * base->degree();
  f->base_ = std::move(base);
  f->nu_ = nu;
  f->build_tables();
  return f;
}

Elem Field::slow_mul(Elem a, Elem b) const {
  if (!base_) return static_cast<Elem>(clmul_reduce(a, b, poly_, k_));
  const int m = base_->degree();
  const Elem mask = (Elem{1} << m) - 1;
  const Elem a0 = a & mask, a1 = a >> m, b0 = b & mask, b1 = b >> m;
  const Field& F = *base_;
  // w^2 = w + nu
  const Elem hi = F.mul(a1, b1);
  const Elem c0 = F.mul(a0, b0) ^ F.mul(hi, nu_);
  const Elem c1 = F.mul(a0, b1) ^ F.mul(a1, b0) ^ hi;
  return c0 | (c1 << m);
}

void Field::build_tables() {
  const std::uint64_t n = order() - 1;
  const auto factors = prime_factors(n);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1u) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  for (Elem g = 1; std::uint64_t{g} <= n; ++g) {
    bool ok = (n == 1) || g != 1;
    for (auto p : factors)
      if (ok && slow_pow(g, n / p) == 1) ok = false;
    if (ok) {
      generator_ = g;
      break;
    }
  }
  if (k_ > 16) return;
  log_.assign(order(), 0);
  exp_.assign(2 * n, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = exp_[i + n] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, generator_);
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (tabled()) return exp_[(order() - 1 - log_[a]) % (order() - 1)];
  // a^-1 = conj(a) / norm(a); conj(a0 + a1 w) = (a0 + a1) + a1 w
  const int m = base_->degree();
  const Elem mask = (Elem{1} << m) - 1;
  const Elem a0 = a & mask, a1 = a >> m;
  const Field& F = *base_;
  const Elem nrm = F.square(a0) ^ F.mul(a0, a1) ^ F.mul(F.square(a1), nu_);
  const Elem ni = F.inv(nrm);
  return F.mul(a0 ^ a1, ni) | (F.mul(a1, ni) << m);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tabled()) return exp_[(std::uint64_t{log_[a]} * (e % (order() - 1))) % (order() - 1)];
  Elem r = 1;
  while (e) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::trace(Elem a) const {
  Elem t = 0, x = a;
  for (int i = 0; i < k_; ++i) {
    t ^= x;
    x = mul(x, x);
  }
  return t;
}

std::uint32_t Field::log(Elem a) const {
  if (a == 0 || !tabled()) throw std::domain_error("log undefined");
  return log_[a];
}

void Field::axpy(Elem a, std::span<const Elem> x, std::span<Elem> y) const {
  if (a == 0) return;
  if (!tabled()) {
    for (std::size_t j = 0; j < x.size(); ++j) y[j] ^= mul(a, x[j]);
    return;
  }
  const std::uint32_t la = log_[a];
  const Elem* e = exp_.data();
  const std::uint32_t* lg = log_.data();
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j]) y[j] ^= e[la + lg[x[j]]];
}

FieldTower FieldTower::build(int m) {
  if (m < 1 || m > 16) throw std::invalid_argument("field tower exponent m must lie in [1, 16], got " + std::to_string(m));
  FieldTower t;
  t.m_ = m;
  t.base_ = Field::binary(m, default_modulus(m));
  Elem nu = 1;
  while (t.base_->trace(nu) != 1) ++nu;  // m >= 1 guarantees a trace-1 element exists
  t.ext_ = Field::quadratic(t.base_, nu);
  return t;
}

Elem FieldTower::frobenius(Elem x) const {
  // w^q = w + 1, so (a + b w)^q = (a + b) + b w
  const auto [a, b] = split(x);
  return lift(a ^ b, b);
}

Elem FieldTower::norm(Elem x) const { return ext_->mul(x, frobenius(x)); }

}  // namespace arcforge
