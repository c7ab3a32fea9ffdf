#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lcpir/field.hpp"

namespace lcpir {

/// Dense univariate polynomial, coefficients lowest-degree first with the
/// leading coefficient nonzero. The zero polynomial has no coefficients and
/// degree -1 (sentinel for degree negative infinity).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fe> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(Fe v) {
    return v == 0 ? Poly() : Poly(std::vector<Fe>{v});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Fe coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Fe>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Fe> c_;
};

Fe evaluate(const Poly& p, Fe x, const Field& f);

std::vector<Fe> evaluate_many(const Poly& p, const std::vector<Fe>& xs, const Field& f);

/// Unique polynomial of degree < nodes.size() through the given
/// (x, y) pairs; throws DuplicateNode on repeated x.
Poly interpolate(const std::vector<std::pair<Fe, Fe>>& nodes, const Field& f);

Poly add(const Poly& a, const Poly& b, const Field& f);
Poly sub(const Poly& a, const Poly& b, const Field& f);
Poly mul(const Poly& a, const Poly& b, const Field& f);
Poly scale(const Poly& a, Fe s, const Field& f);

/// Quotient and remainder; throws DivisionByZero when b is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Field& f);

}  // namespace lcpir
