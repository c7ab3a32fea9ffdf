#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcpir/params.hpp"
#include "lcpir/parallel.hpp"
#include "lcpir/rational.hpp"
#include "lcpir/retrieval.hpp"
#include "lcpir/server.hpp"
#include "lcpir/storage.hpp"

namespace lcpir {

struct RoundRecord {
  std::uint32_t round = 0;
  std::uint64_t queries_digest = 0;
  /// Post-adversary answer per server; nullopt where the server went silent.
  std::vector<std::optional<Fe>> answers;
  Poly recovered;
  std::vector<Fe> column;
};

struct Metrics {
  std::uint64_t file_symbols = 0;
  std::uint64_t downloaded = 0;
  /// file_symbols / downloaded, exact.
  Rational rate;
  std::uint64_t randomness_symbols = 0;
  /// randomness_symbols / file_symbols, exact.
  Rational mask_rate;
  /// Wall time is informational only; transcript equality ignores it.
  double wall_ms = 0;
};

struct Transcript {
  SystemParams params;
  DerivedParams derived;
  std::uint64_t points_digest = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> theta;
  AdversaryConfig adversary;
  std::vector<RoundRecord> rounds;
  Matrix retrieved;
  bool file_matches = false;
  /// Plaintext reads observed while servers were answering; must be zero.
  std::uint64_t plaintext_reads_during_answers = 0;
  Metrics metrics;
};

struct RunOptions {
  Exec exec = Exec::parallel;
  /// Nonzero replaces the derived modulus.
  std::uint64_t modulus_override = 0;
  /// Permit adversary sets larger than the configured budget.
  bool allow_excess_adversary = false;
  /// Stream roots, normally derived from the seed. Audits pin individual
  /// streams to hold one noise source fixed while varying another.
  std::optional<Rng> storage_rng;
  std::optional<Rng> mask_rng;
  std::optional<Rng> user_rng;
  std::optional<Rng> adversary_rng;
};

/// Full end-to-end execution: deal shares and masks, emit queries, collect
/// and corrupt answers, decode every round and assemble the file. The same
/// (params, database, theta, adversary, seed) always yields the same
/// transcript apart from wall time.
Transcript run_protocol(const SystemParams& p, const Database& db,
                        const std::vector<std::uint32_t>& theta, const AdversaryConfig& adv,
                        std::uint64_t seed, const RunOptions& opt = {});

SystemParams demo_params();

/// Reference run: 13 servers, two users over a 2x2 file grid, one server
/// answering garbage and one silent, database drawn from the seed.
Transcript run_demo(std::uint64_t seed, const RunOptions& opt = {});

std::uint64_t points_digest(const PublicPoints& pts);

}  // namespace lcpir
