#pragma once

#include <cstdint>
#include <vector>

namespace lcpir {

/// Regularized upper incomplete gamma Q(a, x); the chi-square upper tail
/// is Q(dof/2, stat/2).
double gammq(double a, double x);

struct Chi2 {
  double stat = 0;
  double dof = 0;
  double p = 1;
};

/// Goodness of fit against the uniform distribution over the bins.
Chi2 chi2_uniform(const std::vector<std::uint64_t>& counts);

/// Two-sample homogeneity: were both count vectors drawn from the same
/// distribution? Bins empty in both samples are dropped.
Chi2 chi2_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

/// Independence of the two variables indexing a contingency table. Rows
/// and columns with zero margin are dropped.
Chi2 chi2_independence(const std::vector<std::vector<std::uint64_t>>& table);

}  // namespace lcpir
