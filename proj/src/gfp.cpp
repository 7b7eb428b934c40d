#include "psolv/gfp.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>

namespace psolv {

bool is_odd_prime(int n) noexcept {
  if (n < 3 || n % 2 == 0) return false;
  for (int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

const PrimeField::Tables& PrimeField::tables_for(std::uint32_t p) {
  static std::array<std::unique_ptr<Tables>, kMaxPrime + 1> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  if (cache[p]) return *cache[p];

  auto t = std::make_unique<Tables>();
  t->square.assign(p, false);
  for (std::uint32_t x = 0; x < p; ++x) t->square[(x * x) % p] = true;
  for (std::uint32_t x = 1; x < p; ++x) {
    if (!t->square[x]) {
      t->tau = x;
      break;
    }
  }
  t->inverse.assign(p, 0);
  for (std::uint32_t x = 1; x < p; ++x)
    for (std::uint32_t y = 1; y < p; ++y)
      if ((x * y) % p == 1) {
        t->inverse[x] = y;
        break;
      }
  for (std::uint32_t g = 2; g < p; ++g) {
    std::uint32_t x = 1, order = 0;
    do {
      x = (x * g) % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) {
      t->root = g;
      break;
    }
  }
  cache[p] = std::move(t);
  return *cache[p];
}

PrimeField::PrimeField(int p) {
  if (p == 2) throw std::invalid_argument("p = 2 is not supported; p must be an odd prime");
  if (!is_odd_prime(p) || p > kMaxPrime)
    throw std::invalid_argument("p must be an odd prime in [3, 97], got " + std::to_string(p));
  p_ = static_cast<std::uint32_t>(p);
  tables_ = &tables_for(p_);
}

Fp PrimeField::pow(Fp a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Fp r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fp PrimeField::inv(Fp a) const {
  if (a.v == 0) throw DivisionByZero();
  return Fp{tables_->inverse[a.v]};
}

std::vector<Fp> PrimeField::elements() const {
  std::vector<Fp> out;
  out.reserve(p_);
  for (std::uint32_t x = 0; x < p_; ++x) out.push_back(Fp{x});
  return out;
}

}  // namespace psolv
