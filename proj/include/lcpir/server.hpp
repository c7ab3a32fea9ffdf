#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lcpir/client.hpp"
#include "lcpir/params.hpp"
#include "lcpir/polynomial.hpp"
#include "lcpir/rng.hpp"

namespace lcpir {

/// Everything one server knows: its share vector from the dealer and its
/// share of the current round's answer mask. No plaintext ever appears here.
struct ServerState {
  std::uint32_t server = 0;
  std::span<const Fe> storage;
  Fe mask_share = 0;
};

struct RoundAnswer {
  std::uint32_t server = 0;
  std::uint32_t round = 0;
  std::optional<Fe> value;
};

enum class Strategy {
  uniform_random,
  additive_offset,
  constant,
};

struct AdversaryConfig {
  std::vector<std::uint32_t> byzantine;
  std::vector<std::uint32_t> unresponsive;
  Strategy strategy = Strategy::uniform_random;
  Fe constant = 0;
};

/// Row-selector polynomials for one round: the j-th is 1 on row j's round
/// node and 0 on every other row's. Data-independent, so they are built
/// once per round and shared by all servers.
std::vector<Poly> build_intermediate_polys(const PublicPoints& pts, std::uint32_t rows,
                                           std::uint32_t round, const Field& f);

/// Honest answer: a single field element combining the server's shares
/// with all users' query values, plus its mask share.
RoundAnswer compute_answer(const ServerState& st, std::span<const RoundQuery> queries,
                           const std::vector<Poly>& intermediates, const SystemParams& p,
                           const DerivedParams& d, const PublicPoints& pts, const Field& f,
                           std::uint32_t round);

/// Corrupts or drops the answer according to the server's role; honest
/// servers pass through untouched.
RoundAnswer apply_adversary(const RoundAnswer& answer, const AdversaryConfig& cfg,
                            const Field& f, const Rng& rng);

}  // namespace lcpir
