#include "lcpir/storage.hpp"

#include <set>

namespace lcpir {

Database::Database(std::vector<std::uint32_t> file_counts, std::uint32_t rows,
                   std::uint32_t cols)
    : file_counts_(std::move(file_counts)), rows_(rows), cols_(cols) {
  std::size_t total = 1;
  for (std::uint32_t f : file_counts_) {
    if (f == 0) throw ShapeMismatch("file count of zero");
    total *= f;
  }
  files_.assign(total, Matrix(rows, cols));
}

Database Database::random(std::vector<std::uint32_t> file_counts, std::uint32_t rows,
                          std::uint32_t cols, const Field& f, Rng rng) {
  Database db(std::move(file_counts), rows, cols);
  for (std::size_t i = 0; i < db.files_.size(); ++i) {
    for (Fe& v : db.files_[i].a) v = rng.uniform(f);
  }
  return db;
}

std::size_t Database::flat_index(const std::vector<std::uint32_t>& tuple) const {
  if (tuple.size() != file_counts_.size()) throw ShapeMismatch("index tuple has wrong arity");
  std::size_t flat = 0;
  for (std::size_t m = 0; m < tuple.size(); ++m) {
    if (tuple[m] >= file_counts_[m]) {
      throw ShapeMismatch("index " + std::to_string(tuple[m]) + " out of range");
    }
    flat = flat * file_counts_[m] + tuple[m];
  }
  return flat;
}

std::vector<std::uint32_t> Database::tuple_of(std::size_t flat) const {
  std::vector<std::uint32_t> tuple(file_counts_.size(), 0);
  for (std::size_t m = file_counts_.size(); m-- > 0;) {
    tuple[m] = static_cast<std::uint32_t>(flat % file_counts_[m]);
    flat /= file_counts_[m];
  }
  return tuple;
}

EncodedStorage encode_database(const Database& db, const SystemParams& p,
                               const DerivedParams& d, const PublicPoints& pts,
                               const Field& f, const Rng& rng, bool keep_polys, Exec exec) {
  if (db.rows() != d.rows || db.cols() != p.mds_k || db.file_counts() != p.file_counts) {
    throw ShapeMismatch("database shape does not match parameters");
  }
  const std::size_t entries = db.file_count() * d.rows;
  EncodedStorage out;
  out.shares.assign(p.servers, std::vector<Fe>(entries, 0));
  if (keep_polys) out.polys.assign(entries, Poly());

  const Rng root = rng.child(kStorageStream);
  parallel_for(entries, exec, [&](std::size_t idx) {
    const std::size_t file = idx / d.rows;
    const std::uint32_t row = static_cast<std::uint32_t>(idx % d.rows);
    std::vector<std::pair<Fe, Fe>> nodes;
    nodes.reserve(p.mds_k + p.security_x);
    const Matrix& w = db.file(file);
    for (std::uint32_t j = 0; j < p.mds_k; ++j) {
      nodes.emplace_back(pts.file_points[row][j], w.at(row, j));
    }
    for (std::uint32_t x = 0; x < p.security_x; ++x) {
      Rng z = root.child({static_cast<std::uint64_t>(file), row, x});
      nodes.emplace_back(pts.file_points[row][p.mds_k + x], z.uniform(f));
    }
    const Poly phi = interpolate(nodes, f);
    for (std::uint32_t n = 0; n < p.servers; ++n) {
      out.shares[n][idx] = evaluate(phi, pts.server_points[n], f);
    }
    if (keep_polys) out.polys[idx] = phi;
  });
  return out;
}

std::vector<Fe> reconstruct_from_shares(const std::vector<std::pair<std::uint32_t, Fe>>& shares,
                                        std::uint32_t row, const SystemParams& p,
                                        const DerivedParams& d, const PublicPoints& pts,
                                        const Field& f) {
  const std::size_t need = p.mds_k + p.security_x;
  std::set<std::uint32_t> seen;
  std::vector<std::pair<Fe, Fe>> nodes;
  for (const auto& [server, value] : shares) {
    if (server >= p.servers) throw ShapeMismatch("share from unknown server");
    if (!seen.insert(server).second) continue;
    nodes.emplace_back(pts.server_points[server], value);
    if (nodes.size() == need) break;
  }
  if (nodes.size() < need) {
    throw NotEnoughShares("need " + std::to_string(need) + " distinct shares, have " +
                          std::to_string(nodes.size()));
  }
  const Poly phi = interpolate(nodes, f);
  if (row >= d.rows) throw ShapeMismatch("row out of range");
  std::vector<Fe> out(p.mds_k);
  for (std::uint32_t j = 0; j < p.mds_k; ++j) {
    out[j] = evaluate(phi, pts.file_points[row][j], f);
  }
  return out;
}

RoundRandomness generate_round_randomness(const SystemParams& p, const DerivedParams& d,
                                          const PublicPoints& pts, const Field& f,
                                          std::uint32_t round, const Rng& rng,
                                          bool keep_poly) {
  if (!p.server_privacy) throw ModeOff("answer masking is switched off");
  if (round >= d.rounds) throw ShapeMismatch("round out of range");
  const std::uint32_t extra = p.mds_k + p.security_x + p.sum_t() - 1;
  std::vector<std::pair<Fe, Fe>> nodes;
  nodes.reserve(d.rows + extra);
  for (std::uint32_t i = 0; i < d.rows; ++i) {
    nodes.emplace_back(pts.file_points[i][round], 0);
  }
  const Rng root = rng.child(kMaskStream);
  for (std::uint32_t i = 0; i < extra; ++i) {
    Rng z = root.child({round, i});
    nodes.emplace_back(pts.server_points[i], z.uniform(f));
  }
  const Poly mask = interpolate(nodes, f);
  RoundRandomness out;
  out.shares = evaluate_many(mask, pts.server_points, f);
  if (keep_poly) out.mask = mask;
  return out;
}

}  // namespace lcpir
