#include "lcpir/params.hpp"

#include <algorithm>
#include <set>

namespace lcpir {

namespace {

void check_shape(const SystemParams& p) {
  if (p.users == 0) throw InfeasibleParams("need at least one user");
  if (p.mds_k == 0) throw InfeasibleParams("need at least one column per file");
  if (p.collusion_t.size() != p.users) {
    throw InfeasibleParams("collusion_t must have one entry per user");
  }
  if (p.file_counts.size() != p.users) {
    throw InfeasibleParams("file_counts must have one entry per user");
  }
  for (std::uint32_t t : p.collusion_t) {
    if (t == 0) throw InfeasibleParams("every collusion tolerance must be >= 1");
  }
  for (std::uint32_t f : p.file_counts) {
    if (f == 0) throw InfeasibleParams("every file count must be >= 1");
  }
}

std::uint32_t overhead(const SystemParams& p) {
  return p.mds_k + p.security_x + p.sum_t() + 2 * p.byzantine_b + p.unresponsive_u - 1;
}

DerivedParams derive_common(const SystemParams& p) {
  check_shape(p);
  const std::uint32_t h = overhead(p);
  if (p.servers <= h) {
    throw InfeasibleParams("need more than " + std::to_string(h) + " servers, have " +
                           std::to_string(p.servers));
  }
  DerivedParams d;
  d.recovered_per_round = p.servers - h;
  d.rows = d.recovered_per_round;
  d.rounds = p.mds_k;
  d.file_symbols = d.rows * p.mds_k;
  return d;
}

}  // namespace

DerivedParams derive_params(const SystemParams& p) {
  DerivedParams d = derive_common(p);
  d.modulus = next_prime(p.servers + std::max(p.mds_k, d.rows));
  return d;
}

DerivedParams derive_params(const SystemParams& p, std::uint64_t modulus_override) {
  DerivedParams d = derive_common(p);
  const std::uint64_t least = p.servers + std::max(p.mds_k, d.rows);
  if (modulus_override < least) {
    throw FieldTooSmall("modulus " + std::to_string(modulus_override) + " below " +
                        std::to_string(least));
  }
  if (!is_prime(modulus_override)) {
    throw NotPrime("modulus " + std::to_string(modulus_override) + " is not prime");
  }
  d.modulus = modulus_override;
  return d;
}

PublicPoints generate_public_points(const SystemParams& p, const DerivedParams& d) {
  const std::uint32_t spread = std::max(p.mds_k, d.rows);
  if (d.modulus < p.servers + spread) {
    throw FieldTooSmall("field of size " + std::to_string(d.modulus) +
                        " cannot separate file and server points");
  }
  PublicPoints pts;
  pts.server_points.resize(p.servers);
  for (std::uint32_t n = 0; n < p.servers; ++n) {
    pts.server_points[n] = static_cast<Fe>(spread + n);
  }
  pts.file_points.assign(d.rows, std::vector<Fe>(p.mds_k + p.security_x));
  for (std::uint32_t i = 0; i < d.rows; ++i) {
    for (std::uint32_t j = 0; j < p.mds_k; ++j) {
      pts.file_points[i][j] = static_cast<Fe>((i + j) % spread);
    }
    // Noise symbols sit on the first security_x server points; a server
    // holding one of them sees only that noise, never data.
    for (std::uint32_t x = 0; x < p.security_x; ++x) {
      pts.file_points[i][p.mds_k + x] = pts.server_points[x];
    }
  }
  return pts;
}

std::vector<PointViolation> validate_points(const PublicPoints& pts, const SystemParams& p,
                                            const DerivedParams& d) {
  if (pts.file_points.size() != d.rows) {
    throw ShapeMismatch("expected " + std::to_string(d.rows) + " point rows");
  }
  for (const auto& row : pts.file_points) {
    if (row.size() != p.mds_k + p.security_x) {
      throw ShapeMismatch("expected " + std::to_string(p.mds_k + p.security_x) +
                          " points per row");
    }
  }
  if (pts.server_points.size() != p.servers) {
    throw ShapeMismatch("expected " + std::to_string(p.servers) + " server points");
  }

  std::vector<PointViolation> out;
  for (std::uint32_t i = 0; i < d.rows; ++i) {
    const auto& row = pts.file_points[i];
    for (std::uint32_t a = 0; a < row.size(); ++a) {
      for (std::uint32_t b = a + 1; b < row.size(); ++b) {
        if (row[a] == row[b]) {
          // Violations are reporting output, so ids are 1-based like every
          // other external index.
          out.push_back({"row-nodes-distinct",
                         {i + 1, a + 1, b + 1},
                         "row " + std::to_string(i + 1) + " repeats node " +
                             std::to_string(row[a])});
        }
      }
    }
  }
  for (std::uint32_t j = 0; j < p.mds_k; ++j) {
    for (std::uint32_t a = 0; a < d.rows; ++a) {
      for (std::uint32_t b = a + 1; b < d.rows; ++b) {
        if (pts.file_points[a][j] == pts.file_points[b][j]) {
          out.push_back({"column-nodes-distinct",
                         {j + 1, a + 1, b + 1},
                         "column " + std::to_string(j + 1) + " repeats node " +
                             std::to_string(pts.file_points[a][j])});
        }
      }
    }
  }
  for (std::uint32_t a = 0; a < pts.server_points.size(); ++a) {
    for (std::uint32_t b = a + 1; b < pts.server_points.size(); ++b) {
      if (pts.server_points[a] == pts.server_points[b]) {
        out.push_back({"server-points-distinct",
                       {a + 1, b + 1},
                       "servers " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                           " share point " + std::to_string(pts.server_points[a])});
      }
    }
  }
  std::set<Fe> data_nodes;
  for (std::uint32_t i = 0; i < d.rows; ++i) {
    for (std::uint32_t j = 0; j < p.mds_k; ++j) data_nodes.insert(pts.file_points[i][j]);
  }
  for (std::uint32_t n = 0; n < pts.server_points.size(); ++n) {
    if (data_nodes.count(pts.server_points[n])) {
      out.push_back({"server-points-avoid-data-nodes",
                     {n + 1},
                     "server " + std::to_string(n + 1) + " sits on data node " +
                         std::to_string(pts.server_points[n])});
    }
  }
  return out;
}

}  // namespace lcpir
