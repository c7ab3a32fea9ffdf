#pragma once

#include <cstdint>
#include <vector>

#include "lcpir/params.hpp"
#include "lcpir/polynomial.hpp"
#include "lcpir/server.hpp"
#include "lcpir/storage.hpp"

namespace lcpir {

struct DecodedRound {
  std::uint32_t round = 0;
  Poly answer;
  std::vector<Fe> column;
};

/// Treats the round's answers as a codeword with erasures at silent
/// servers and decodes the answer polynomial despite up to byzantine_b
/// corrupted values.
Poly recover_answer_polynomial(const std::vector<RoundAnswer>& answers, const SystemParams& p,
                               const DerivedParams& d, const PublicPoints& pts, const Field& f);

/// The round's desired symbols: the answer polynomial on the round nodes.
std::vector<Fe> extract_round_symbols(const Poly& answer, const DerivedParams& d,
                                      const PublicPoints& pts, const Field& f,
                                      std::uint32_t round);

/// Stitches per-round columns into the retrieved file.
Matrix assemble_file(const std::vector<DecodedRound>& rounds, const SystemParams& p,
                     const DerivedParams& d);

}  // namespace lcpir
