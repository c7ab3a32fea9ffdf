#include "lcpir/polynomial.hpp"

namespace lcpir {

Fe evaluate(const Poly& p, Fe x, const Field& f) {
  Fe r = 0;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) r = f.add(f.mul(r, x), c[i]);
  return r;
}

std::vector<Fe> evaluate_many(const Poly& p, const std::vector<Fe>& xs, const Field& f) {
  std::vector<Fe> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = evaluate(p, xs[i], f);
  return out;
}

Poly interpolate(const std::vector<std::pair<Fe, Fe>>& nodes, const Field& f) {
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (nodes[i].first == nodes[j].first) {
        throw DuplicateNode("interpolation node " + std::to_string(nodes[i].first) + " repeats");
      }
    }
  }
  std::vector<Fe> acc(n, 0);
  std::vector<Fe> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // basis = prod_{j != i} (x - x_j), denom = prod_{j != i} (x_i - x_j)
    basis.assign(1, 1);
    Fe denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Fe xj = nodes[j].first;
      basis.push_back(0);
      for (std::size_t d = basis.size() - 1; d > 0; --d) {
        basis[d] = f.sub(basis[d - 1], f.mul(basis[d], xj));
      }
      basis[0] = f.mul(basis[0], f.neg(xj));
      denom = f.mul(denom, f.sub(nodes[i].first, xj));
    }
    const Fe s = f.div(nodes[i].second, denom);
    for (std::size_t d = 0; d < basis.size(); ++d) acc[d] = f.add(acc[d], f.mul(s, basis[d]));
  }
  return Poly(std::move(acc));
}

Poly add(const Poly& a, const Poly& b, const Field& f) {
  std::vector<Fe> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly sub(const Poly& a, const Poly& b, const Field& f) {
  std::vector<Fe> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly mul(const Poly& a, const Poly& b, const Field& f) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Fe> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeff(i) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] = f.add(c[i + j], f.mul(a.coeff(i), b.coeff(j)));
    }
  }
  return Poly(std::move(c));
}

Poly scale(const Poly& a, Fe s, const Field& f) {
  std::vector<Fe> c(a.coeffs());
  for (Fe& v : c) v = f.mul(v, s);
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Field& f) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Fe> rem(a.coeffs());
  std::vector<Fe> quo(a.degree() - b.degree() + 1, 0);
  const Fe lead_inv = f.inverse(b.coeffs().back());
  for (std::size_t i = quo.size(); i-- > 0;) {
    const Fe c = f.mul(rem[i + b.degree()], lead_inv);
    quo[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      rem[i + j] = f.sub(rem[i + j], f.mul(c, b.coeff(j)));
    }
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

}  // namespace lcpir
