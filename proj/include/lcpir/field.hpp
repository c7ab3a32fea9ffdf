#pragma once

#include <cstdint>

#include "lcpir/errors.hpp"

namespace lcpir {

/// Element of a prime field, stored as its canonical residue.
using Fe = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// Arithmetic modulo a runtime prime q < 2^31.
class Field {
 public:
  explicit Field(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }

  Fe reduce(std::uint64_t v) const { return static_cast<Fe>(v % q_); }

  Fe add(Fe a, Fe b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Fe>(s >= q_ ? s - q_ : s);
  }

  Fe sub(Fe a, Fe b) const {
    return a >= b ? a - b : static_cast<Fe>(q_ - b + a);
  }

  Fe neg(Fe a) const { return a == 0 ? 0 : static_cast<Fe>(q_ - a); }

  Fe mul(Fe a, Fe b) const {
    return static_cast<Fe>(std::uint64_t(a) * b % q_);
  }

  Fe pow(Fe base, std::uint64_t exp) const;

  /// Multiplicative inverse; throws DivisionByZero for 0.
  Fe inverse(Fe a) const;

  Fe div(Fe a, Fe b) const { return mul(a, inverse(b)); }

  bool operator==(const Field& o) const { return q_ == o.q_; }

 private:
  std::uint64_t q_;
};

}  // namespace lcpir
