#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcpir/field.hpp"

namespace lcpir {

/// Configuration of one deployment: the server pool, the user pool and the
/// adversary budget the deployment must survive.
struct SystemParams {
  /// Number of storage servers.
  std::uint32_t servers = 0;
  /// Number of users retrieving one jointly indexed file.
  std::uint32_t users = 0;
  /// Columns per file; also the number of retrieval rounds.
  std::uint32_t mds_k = 0;
  /// Storage noise terms per row; any this many servers learn nothing
  /// about the database.
  std::uint32_t security_x = 0;
  /// Per-user collusion tolerance (size users, every entry >= 1).
  std::vector<std::uint32_t> collusion_t;
  /// Servers that may answer arbitrarily.
  std::uint32_t byzantine_b = 0;
  /// Servers that may not answer at all.
  std::uint32_t unresponsive_u = 0;
  /// Files indexed by each user's coordinate (size users).
  std::vector<std::uint32_t> file_counts;
  /// When false the dealer distributes no answer masks and servers leak
  /// residual file information to the users.
  bool server_privacy = true;

  std::uint32_t sum_t() const {
    std::uint32_t s = 0;
    for (std::uint32_t t : collusion_t) s += t;
    return s;
  }

  std::uint64_t total_files() const {
    std::uint64_t n = 1;
    for (std::uint32_t f : file_counts) n *= f;
    return n;
  }
};

struct DerivedParams {
  /// Desired symbols recovered per round.
  std::uint32_t recovered_per_round = 0;
  /// Rows per file; equals recovered_per_round.
  std::uint32_t rows = 0;
  /// Retrieval rounds; equals mds_k.
  std::uint32_t rounds = 0;
  /// Symbols per file (rows * mds_k).
  std::uint32_t file_symbols = 0;
  /// Field modulus.
  std::uint64_t modulus = 0;
};

/// Evaluation points shared by every party. file_points[i][j] pins row i's
/// j-th storage symbol (data for j < mds_k, noise after); server_points[n]
/// is where server n's share and answer live.
struct PublicPoints {
  std::vector<std::vector<Fe>> file_points;
  std::vector<Fe> server_points;
};

struct PointViolation {
  std::string condition;
  std::vector<std::uint32_t> indices;
  std::string detail;
};

/// Checks feasibility and fills in the derived sizes. The modulus is the
/// smallest prime admitting the point layout unless overridden.
DerivedParams derive_params(const SystemParams& p);
DerivedParams derive_params(const SystemParams& p, std::uint64_t modulus_override);

/// Deterministic point layout for a parameter set; identical inputs yield
/// identical points, so all parties derive them independently.
PublicPoints generate_public_points(const SystemParams& p, const DerivedParams& d);

/// Empty result means the layout supports correctness and all privacy
/// arguments; otherwise one entry per violated condition.
std::vector<PointViolation> validate_points(const PublicPoints& pts, const SystemParams& p,
                                            const DerivedParams& d);

}  // namespace lcpir
