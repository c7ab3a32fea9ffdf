#include "lcpir/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcpir {

namespace {

// Series expansion of P(a, x); converges fast for x < a + 1.
double gamma_series_p(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x); converges fast for x >= a + 1.
double gamma_cf_q(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gammq(double a, double x) {
  if (a <= 0 || x < 0) throw std::invalid_argument("gammq domain");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series_p(a, x);
  return gamma_cf_q(a, x);
}

Chi2 chi2_uniform(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  Chi2 r;
  if (counts.size() < 2 || total == 0) return r;
  const double expected = double(total) / double(counts.size());
  for (std::uint64_t c : counts) {
    const double d = double(c) - expected;
    r.stat += d * d / expected;
  }
  r.dof = double(counts.size() - 1);
  r.p = gammq(r.dof / 2.0, r.stat / 2.0);
  return r;
}

Chi2 chi2_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("samples need equal bin counts");
  return chi2_independence({a, b});
}

Chi2 chi2_independence(const std::vector<std::vector<std::uint64_t>>& table) {
  const std::size_t rows = table.size();
  const std::size_t cols = rows ? table[0].size() : 0;
  std::vector<double> row_sum(rows, 0), col_sum(cols, 0);
  double total = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (table[r].size() != cols) throw std::invalid_argument("ragged contingency table");
    for (std::size_t c = 0; c < cols; ++c) {
      row_sum[r] += double(table[r][c]);
      col_sum[c] += double(table[r][c]);
      total += double(table[r][c]);
    }
  }
  std::size_t live_rows = 0, live_cols = 0;
  for (double s : row_sum) live_rows += s > 0;
  for (double s : col_sum) live_cols += s > 0;
  Chi2 out;
  if (live_rows < 2 || live_cols < 2 || total == 0) return out;
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_sum[r] == 0) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_sum[c] == 0) continue;
      const double e = row_sum[r] * col_sum[c] / total;
      const double d = double(table[r][c]) - e;
      out.stat += d * d / e;
    }
  }
  out.dof = double((live_rows - 1) * (live_cols - 1));
  out.p = gammq(out.dof / 2.0, out.stat / 2.0);
  return out;
}

}  // namespace lcpir
