#include "lcpir/field.hpp"

namespace lcpir {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n | 1;
  while (!is_prime(c)) c += 2;
  return c;
}

Field::Field(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) throw NotPrime("modulus " + std::to_string(q) + " is not prime");
  if (q >= (std::uint64_t(1) << 31)) throw NotPrime("modulus must fit in 31 bits");
}

Fe Field::pow(Fe base, std::uint64_t exp) const {
  std::uint64_t r = 1 % q_;
  std::uint64_t b = base % q_;
  while (exp > 0) {
    if (exp & 1) r = r * b % q_;
    b = b * b % q_;
    exp >>= 1;
  }
  return static_cast<Fe>(r);
}

Fe Field::inverse(Fe a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  return pow(a, q_ - 2);
}

}  // namespace lcpir
