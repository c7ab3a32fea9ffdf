#include "lcpir/rscode.hpp"

namespace lcpir {

std::vector<Fe> rs_encode(const Poly& message, const std::vector<Fe>& points, const Field& f) {
  if (message.degree() >= 0 &&
      static_cast<std::size_t>(message.degree()) >= points.size()) {
    throw DegreeTooHigh("message degree " + std::to_string(message.degree()) +
                        " too high for length " + std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw DuplicateNode("codeword points repeat");
    }
  }
  return evaluate_many(message, points, f);
}

std::optional<std::vector<Fe>> solve_linear(std::vector<std::vector<Fe>> aug,
                                            std::size_t unknowns, const Field& f) {
  const std::size_t rows = aug.size();
  std::vector<std::size_t> pivot_col(rows, unknowns);
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && aug[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(aug[sel], aug[r]);
    const Fe inv = f.inverse(aug[r][c]);
    for (std::size_t j = c; j <= unknowns; ++j) aug[r][j] = f.mul(aug[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      const Fe m = aug[i][c];
      for (std::size_t j = c; j <= unknowns; ++j) {
        aug[i][j] = f.sub(aug[i][j], f.mul(m, aug[r][j]));
      }
    }
    pivot_col[r] = c;
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (aug[i][unknowns] != 0) return std::nullopt;
  }
  std::vector<Fe> sol(unknowns, 0);
  for (std::size_t i = 0; i < r; ++i) sol[pivot_col[i]] = aug[i][unknowns];
  return sol;
}

Poly rs_decode(const ReceivedWord& word, std::uint32_t dim, const Field& f) {
  if (word.points.size() != word.symbols.size()) {
    throw ShapeMismatch("received word has mismatched points and symbols");
  }
  if (dim == 0) throw ShapeMismatch("code dimension must be positive");

  std::vector<Fe> xs, rs;
  for (std::size_t i = 0; i < word.points.size(); ++i) {
    if (word.symbols[i].has_value()) {
      xs.push_back(word.points[i]);
      rs.push_back(*word.symbols[i]);
    }
  }
  const std::size_t survivors = xs.size();
  if (survivors < dim) {
    throw DecodeFailure("only " + std::to_string(survivors) + " symbols for dimension " +
                        std::to_string(dim));
  }

  const std::uint32_t max_errors = static_cast<std::uint32_t>((survivors - dim) / 2);
  for (std::uint32_t e = max_errors;; --e) {
    // Unknowns: numerator coefficients (dim + e), then the e low-order
    // coefficients of the monic error locator.
    const std::size_t nq = dim + e;
    const std::size_t unknowns = nq + e;
    std::vector<std::vector<Fe>> aug(survivors, std::vector<Fe>(unknowns + 1, 0));
    for (std::size_t i = 0; i < survivors; ++i) {
      Fe xp = 1;
      for (std::size_t j = 0; j < nq; ++j) {
        aug[i][j] = xp;
        xp = f.mul(xp, xs[i]);
      }
      xp = 1;
      for (std::size_t j = 0; j < e; ++j) {
        aug[i][nq + j] = f.neg(f.mul(rs[i], xp));
        xp = f.mul(xp, xs[i]);
      }
      aug[i][unknowns] = f.mul(rs[i], xp);  // r_i * x_i^e
    }
    auto sol = solve_linear(std::move(aug), unknowns, f);
    if (sol.has_value()) {
      std::vector<Fe> qc(sol->begin(), sol->begin() + nq);
      std::vector<Fe> ec(sol->begin() + nq, sol->end());
      ec.push_back(1);
      const Poly numer{std::move(qc)};
      const Poly locator{std::move(ec)};
      auto [quotient, remainder] = divmod(numer, locator, f);
      if (remainder.is_zero() && quotient.degree() < static_cast<int>(dim)) {
        std::size_t disagreements = 0;
        for (std::size_t i = 0; i < survivors; ++i) {
          if (evaluate(quotient, xs[i], f) != rs[i]) ++disagreements;
        }
        if (disagreements <= max_errors) return quotient;
      }
    }
    if (e == 0) break;
  }
  throw DecodeFailure("no polynomial within " + std::to_string(max_errors) +
                      " errors of the received word");
}

}  // namespace lcpir
