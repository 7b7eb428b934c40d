#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace psolv {

// Scalar in F_p. Always stored fully reduced, 0 <= v < p.
struct Fp {
  std::uint32_t v = 0;

  friend bool operator==(Fp, Fp) = default;
  friend auto operator<=>(Fp, Fp) = default;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in F_p") {}
};

// Arithmetic context for the prime field F_p, p an odd prime in [3, 97].
class PrimeField {
 public:
  static constexpr int kMaxPrime = 97;

  explicit PrimeField(int p);

  int p() const noexcept { return p_; }

  Fp zero() const noexcept { return Fp{0}; }
  Fp one() const noexcept { return Fp{1}; }
  Fp from_int(long long x) const noexcept {
    long long r = x % p_;
    if (r < 0) r += p_;
    return Fp{static_cast<std::uint32_t>(r)};
  }

  Fp add(Fp a, Fp b) const noexcept {
    std::uint32_t r = a.v + b.v;
    return Fp{r >= static_cast<std::uint32_t>(p_) ? r - p_ : r};
  }
  Fp sub(Fp a, Fp b) const noexcept {
    return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
  }
  Fp neg(Fp a) const noexcept { return Fp{a.v == 0 ? 0u : p_ - a.v}; }
  Fp mul(Fp a, Fp b) const noexcept { return Fp{(a.v * b.v) % p_}; }
  Fp pow(Fp a, long long e) const;
  // Throws DivisionByZero on a = 0.
  Fp inv(Fp a) const;
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  // 0 counts as a square.
  bool is_square(Fp a) const noexcept { return tables_->square[a.v]; }
  // Smallest positive non-residue mod p.
  Fp canonical_nonsquare() const noexcept { return Fp{tables_->tau}; }
  // Smallest generator of F_p^*.
  Fp primitive_root() const noexcept { return Fp{tables_->root}; }
  Fp half() const noexcept { return Fp{static_cast<std::uint32_t>((p_ + 1) / 2)}; }

  std::vector<Fp> elements() const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
    return a.p_ == b.p_;
  }

 private:
  struct Tables {
    std::uint32_t tau = 0;
    std::uint32_t root = 0;
    std::vector<bool> square;
    std::vector<std::uint32_t> inverse;
  };
  static const Tables& tables_for(std::uint32_t p);

  std::uint32_t p_;
  // Shared per-prime lookup tables; PrimeField is cheap to copy.
  const Tables* tables_;
};

bool is_odd_prime(int n) noexcept;

// Free-function spellings of the field operations.
inline Fp inv(const PrimeField& f, Fp a) { return f.inv(a); }
inline bool is_square(const PrimeField& f, Fp a) { return f.is_square(a); }
inline Fp canonical_nonsquare(const PrimeField& f) { return f.canonical_nonsquare(); }

}  // namespace psolv
