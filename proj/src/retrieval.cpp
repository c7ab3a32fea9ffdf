#include "lcpir/retrieval.hpp"

#include "lcpir/rscode.hpp"

namespace lcpir {

Poly recover_answer_polynomial(const std::vector<RoundAnswer>& answers, const SystemParams& p,
                               const DerivedParams& d, const PublicPoints& pts,
                               const Field& f) {
  ReceivedWord word;
  word.points = pts.server_points;
  word.symbols.assign(p.servers, std::nullopt);
  for (const RoundAnswer& a : answers) {
    if (a.server >= p.servers) throw ShapeMismatch("answer from unknown server");
    word.symbols[a.server] = a.value;
  }
  const std::uint32_t dim = d.rows + p.mds_k + p.security_x + p.sum_t() - 1;
  return rs_decode(word, dim, f);
}

std::vector<Fe> extract_round_symbols(const Poly& answer, const DerivedParams& d,
                                      const PublicPoints& pts, const Field& f,
                                      std::uint32_t round) {
  if (round >= d.rounds) throw ShapeMismatch("round out of range");
  std::vector<Fe> out(d.rows);
  for (std::uint32_t i = 0; i < d.rows; ++i) {
    out[i] = evaluate(answer, pts.file_points[i][round], f);
  }
  return out;
}

Matrix assemble_file(const std::vector<DecodedRound>& rounds, const SystemParams& p,
                     const DerivedParams& d) {
  Matrix out(d.rows, p.mds_k);
  std::vector<bool> seen(d.rounds, false);
  for (const DecodedRound& r : rounds) {
    if (r.round >= d.rounds) throw ShapeMismatch("round out of range");
    if (seen[r.round]) throw MissingRound("round " + std::to_string(r.round) + " appears twice");
    if (r.column.size() != d.rows) throw ShapeMismatch("column has wrong length");
    seen[r.round] = true;
    for (std::uint32_t i = 0; i < d.rows; ++i) out.at(i, r.round) = r.column[i];
  }
  for (std::uint32_t s = 0; s < d.rounds; ++s) {
    if (!seen[s]) throw MissingRound("round " + std::to_string(s) + " missing");
  }
  return out;
}

}  // namespace lcpir
