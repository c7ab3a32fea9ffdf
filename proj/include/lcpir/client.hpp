#pragma once

#include <cstdint>
#include <vector>

#include "lcpir/params.hpp"
#include "lcpir/polynomial.hpp"
#include "lcpir/rng.hpp"

namespace lcpir {

/// One user's retrieval state. theta is the 0-based coordinate of the
/// desired file in this user's dimension; noise is the root of the user's
/// private stream and never leaves the user.
struct UserState {
  std::uint32_t user = 0;
  std::uint32_t theta = 0;
  Rng noise{0};
};

/// Evaluations one user uploads to one server for one round, indexed by
/// candidate * rows + row.
struct RoundQuery {
  std::uint32_t user = 0;
  std::uint32_t server = 0;
  std::uint32_t round = 0;
  std::vector<Fe> values;
};

/// One polynomial per (candidate file coordinate, row): degree at most the
/// user's collusion tolerance, 1 on the row's round node iff the candidate
/// is desired, fresh noise on the first collusion_t server points.
std::vector<Poly> build_query_polynomials(const UserState& u, const SystemParams& p,
                                          const DerivedParams& d, const PublicPoints& pts,
                                          const Field& f, std::uint32_t round);

/// One query per server for the given round.
std::vector<RoundQuery> emit_queries(const UserState& u, const SystemParams& p,
                                     const DerivedParams& d, const PublicPoints& pts,
                                     const Field& f, std::uint32_t round);

}  // namespace lcpir
