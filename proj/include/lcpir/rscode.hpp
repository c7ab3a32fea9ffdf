#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcpir/polynomial.hpp"

namespace lcpir {

/// Codeword as delivered: one symbol per evaluation point, nullopt where
/// the sender went silent.
struct ReceivedWord {
  std::vector<Fe> points;
  std::vector<std::optional<Fe>> symbols;
};

/// Evaluates message (degree < points.size()) at every point.
std::vector<Fe> rs_encode(const Poly& message, const std::vector<Fe>& points, const Field& f);

/// Recovers the unique polynomial of degree < dim that agrees with the
/// surviving symbols outside at most floor((survivors - dim) / 2)
/// positions. Throws DecodeFailure when no such polynomial exists.
Poly rs_decode(const ReceivedWord& word, std::uint32_t dim, const Field& f);

/// Row-reduces the augmented system and back-substitutes with free
/// variables pinned to zero; nullopt when the system is inconsistent.
std::optional<std::vector<Fe>> solve_linear(std::vector<std::vector<Fe>> aug,
                                            std::size_t unknowns, const Field& f);

}  // namespace lcpir
