#include <doctest.h>

#include <algorithm>

#include "lcpir/rng.hpp"
#include "lcpir/rscode.hpp"

using namespace lcpir;

namespace {

Poly random_message(std::uint32_t dim, const Field& f, Rng& rng) {
  std::vector<Fe> c(dim);
  for (Fe& v : c) v = rng.uniform(f);
  return Poly(std::move(c));
}

std::vector<Fe> distinct_points(std::size_t n, const Field& f, Rng& rng) {
  std::vector<bool> used(f.modulus(), false);
  std::vector<Fe> pts;
  while (pts.size() < n) {
    const Fe x = rng.uniform(f);
    if (used[x]) continue;
    used[x] = true;
    pts.push_back(x);
  }
  return pts;
}

}  // namespace

TEST_CASE("encoding evaluates the message") {
  const Field f(17);
  const Poly msg({3, 14, 9, 1});
  std::vector<Fe> pts;
  for (Fe x = 0; x < 10; ++x) pts.push_back(x);
  CHECK(rs_encode(msg, pts, f) ==
        std::vector<Fe>{3, 10, 7, 0, 12, 15, 15, 1, 13, 6});
  CHECK_THROWS_AS(rs_encode(Poly({1, 1, 1}), {0, 1}, f), DegreeTooHigh);
  CHECK_THROWS_AS(rs_encode(Poly({1}), {4, 4}, f), DuplicateNode);
}

TEST_CASE("hand-checked decode with errors and an erasure") {
  const Field f(17);
  // Codeword of 3 + 14x + 9x^2 + x^3 on 0..9; positions 2 and 6 corrupted,
  // position 9 erased; dimension 4 tolerates floor((9-4)/2) = 2 errors.
  ReceivedWord w;
  for (Fe x = 0; x < 10; ++x) w.points.push_back(x);
  for (Fe v : {3, 10, 12, 0, 12, 15, 9, 1, 13}) w.symbols.emplace_back(v);
  w.symbols.emplace_back(std::nullopt);
  CHECK(rs_decode(w, 4, f) == Poly({3, 14, 9, 1}));
}

TEST_CASE("decode without corruption is plain interpolation") {
  const Field f(17);
  const Poly msg({5, 0, 2});
  ReceivedWord w;
  w.points = {1, 2, 3};
  for (Fe v : rs_encode(msg, w.points, f)) w.symbols.emplace_back(v);
  CHECK(rs_decode(w, 3, f) == msg);
}

TEST_CASE("too few survivors") {
  const Field f(17);
  ReceivedWord w;
  w.points = {1, 2, 3, 4};
  w.symbols = {std::nullopt, std::nullopt, Fe(1), Fe(2)};
  CHECK_THROWS_AS(rs_decode(w, 3, f), DecodeFailure);
}

TEST_CASE("shape errors") {
  const Field f(17);
  ReceivedWord w;
  w.points = {1, 2};
  w.symbols = {Fe(0)};
  CHECK_THROWS_AS(rs_decode(w, 1, f), ShapeMismatch);
  w.symbols = {Fe(0), Fe(1)};
  CHECK_THROWS_AS(rs_decode(w, 0, f), ShapeMismatch);
}

TEST_CASE("randomized decoding inside the bound is exact") {
  Rng rng(20240917);
  int executed = 0;
  while (executed < 1000) {
    const std::uint64_t q = next_prime(23 + rng.below(180));
    const Field f(q);
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(17));  // <= 20
    if (n > q) continue;
    const std::uint32_t dim = 1 + static_cast<std::uint32_t>(rng.below(n));
    const std::uint32_t slack = n - dim;
    const std::uint32_t erasures = static_cast<std::uint32_t>(rng.below(slack + 1));
    const std::uint32_t errors = static_cast<std::uint32_t>(rng.below((slack - erasures) / 2 + 1));
    ++executed;

    Rng trial = rng.child(executed);
    const Poly msg = random_message(dim, f, trial);
    const std::vector<Fe> pts = distinct_points(n, f, trial);
    const std::vector<Fe> code = rs_encode(msg, pts, f);

    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[trial.below(i)]);
    }
    ReceivedWord w;
    w.points = pts;
    for (Fe v : code) w.symbols.emplace_back(v);
    for (std::uint32_t i = 0; i < erasures; ++i) w.symbols[perm[i]].reset();
    for (std::uint32_t i = 0; i < errors; ++i) {
      const std::uint32_t pos = perm[erasures + i];
      const Fe wrong = f.add(code[pos], trial.uniform_nonzero(f));
      w.symbols[pos] = wrong;
    }
    REQUIRE(rs_decode(w, dim, f) == msg);
  }
}

TEST_CASE("beyond the bound the decoder never silently returns the wrong answer unflagged") {
  // The oracle here is the transmitted message itself: every outcome must
  // be either a DecodeFailure or a polynomial the caller can compare.
  Rng rng(555);
  int failures = 0, wrong = 0, correct = 0;
  for (int trial_i = 0; trial_i < 400; ++trial_i) {
    const Field f(211);
    const std::uint32_t n = 8 + static_cast<std::uint32_t>(rng.below(13));
    const std::uint32_t dim = 1 + static_cast<std::uint32_t>(rng.below(n - 4));
    const std::uint32_t bound = (n - dim) / 2;
    const std::uint32_t errors =
        bound + 1 + static_cast<std::uint32_t>(rng.below(n - dim - bound));

    Rng trial = rng.child(trial_i + 10000);
    const Poly msg = random_message(dim, f, trial);
    const std::vector<Fe> pts = distinct_points(n, f, trial);
    const std::vector<Fe> code = rs_encode(msg, pts, f);
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[trial.below(i)]);
    }
    ReceivedWord w;
    w.points = pts;
    for (Fe v : code) w.symbols.emplace_back(v);
    for (std::uint32_t i = 0; i < errors; ++i) {
      const std::uint32_t pos = perm[i];
      w.symbols[pos] = f.add(code[pos], trial.uniform_nonzero(f));
    }
    try {
      const Poly out = rs_decode(w, dim, f);
      // With more corruption than the bound the decoder may settle on a
      // different codeword, but it can never reproduce the original: the
      // answer it returns agrees with the received word outside at most
      // `bound` positions, while the original disagrees in more.
      REQUIRE(out != msg);
      ++wrong;
    } catch (const DecodeFailure&) {
      ++failures;
    }
  }
  CHECK(failures + wrong + correct == 400);
  CHECK(failures > 0);
}

TEST_CASE("erasure-only decoding at full budget") {
  const Field f(211);
  Rng rng(99);
  for (int t = 0; t < 50; ++t) {
    Rng trial = rng.child(t);
    const std::uint32_t n = 12;
    const std::uint32_t dim = 5;
    const Poly msg = random_message(dim, f, trial);
    const std::vector<Fe> pts = distinct_points(n, f, trial);
    const std::vector<Fe> code = rs_encode(msg, pts, f);
    ReceivedWord w;
    w.points = pts;
    for (Fe v : code) w.symbols.emplace_back(v);
    // Erase down to exactly dim survivors.
    for (std::uint32_t i = 0; i < n - dim; ++i) w.symbols[i].reset();
    CHECK(rs_decode(w, dim, f) == msg);
  }
}

TEST_CASE("linear solver handles underdetermined and inconsistent systems") {
  const Field f(17);
  // x + y = 5 with a free variable: pinned solution x = 5, y = 0.
  auto sol = solve_linear({{1, 1, 5}}, 2, f);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 5);
  CHECK((*sol)[1] == 0);
  // Inconsistent pair.
  CHECK_FALSE(solve_linear({{1, 1, 5}, {2, 2, 11}}, 2, f).has_value());
  // Unique system.
  sol = solve_linear({{1, 1, 5}, {1, 16, 1}}, 2, f);
  REQUIRE(sol.has_value());
  CHECK(f.add((*sol)[0], (*sol)[1]) == 5);
  CHECK(f.add((*sol)[0], f.mul(16, (*sol)[1])) == 1);
}
