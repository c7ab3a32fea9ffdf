#include <doctest.h>

#include "lcpir/field.hpp"
#include "lcpir/rng.hpp"

using namespace lcpir;

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(17));
  CHECK(is_prime(211));
  CHECK(is_prime(2147483647));  // 2^31 - 1
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(15));
  CHECK_FALSE(is_prime(221));  // 13 * 17
  CHECK(next_prime(16) == 17);
  CHECK(next_prime(17) == 17);
  CHECK(next_prime(18) == 19);
  CHECK(next_prime(200) == 211);
}

TEST_CASE("constructor rejects non-primes") {
  CHECK_THROWS_AS(Field(15), NotPrime);
  CHECK_THROWS_AS(Field(1), NotPrime);
  CHECK_THROWS_AS(Field(std::uint64_t(1) << 31), NotPrime);
}

TEST_CASE("arithmetic in F_17") {
  const Field f(17);
  CHECK(f.add(9, 9) == 1);
  CHECK(f.sub(3, 5) == 15);
  CHECK(f.mul(9, 2) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(5) == 12);
  CHECK(f.inverse(5) == 7);  // 5 * 7 = 35 = 2 * 17 + 1
  CHECK(f.div(1, 5) == 7);
  CHECK(f.pow(3, 16) == 1);  // Fermat
  CHECK(f.pow(0, 0) == 1);
  CHECK_THROWS_AS(f.inverse(0), DivisionByZero);
}

TEST_CASE("inverse round-trip over the whole field") {
  const Field f(211);
  for (Fe a = 1; a < 211; ++a) {
    CHECK(f.mul(a, f.inverse(a)) == 1);
  }
}

TEST_CASE("no overflow near the 31-bit ceiling") {
  const Field f(2147483647);
  const Fe a = 2147483646;
  CHECK(f.mul(a, a) == 1);  // (-1)^2
  CHECK(f.add(a, a) == 2147483645);
  CHECK(f.mul(f.inverse(12345), 12345) == 1);
}

TEST_CASE("split streams are stable and disjoint") {
  Rng a(42);
  Rng b(42);
  CHECK(a.next_u64() == b.next_u64());
  Rng c1 = Rng(42).child({1, 2, 3});
  Rng c2 = Rng(42).child(1).child(2).child(3);
  CHECK(c1.next_u64() == c2.next_u64());
  Rng d1 = Rng(42).child(1);
  Rng d2 = Rng(42).child(2);
  CHECK(d1.next_u64() != d2.next_u64());
}

TEST_CASE("uniform draws stay below the modulus") {
  const Field f(17);
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.uniform(f) < 17);
  }
  for (int i = 0; i < 100; ++i) {
    CHECK(r.uniform_nonzero(f) != 0);
  }
}
