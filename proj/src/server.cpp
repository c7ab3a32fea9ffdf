#include "lcpir/server.hpp"

#include <algorithm>

namespace lcpir {

std::vector<Poly> build_intermediate_polys(const PublicPoints& pts, std::uint32_t rows,
                                           std::uint32_t round, const Field& f) {
  std::vector<Poly> out(rows);
  for (std::uint32_t j = 0; j < rows; ++j) {
    std::vector<std::pair<Fe, Fe>> nodes;
    nodes.reserve(rows);
    for (std::uint32_t i = 0; i < rows; ++i) {
      nodes.emplace_back(pts.file_points[i][round], i == j ? 1 : 0);
    }
    out[j] = interpolate(nodes, f);
  }
  return out;
}

RoundAnswer compute_answer(const ServerState& st, std::span<const RoundQuery> queries,
                           const std::vector<Poly>& intermediates, const SystemParams& p,
                           const DerivedParams& d, const PublicPoints& pts, const Field& f,
                           std::uint32_t round) {
  if (queries.size() != p.users) {
    throw MissingQuery("expected one query per user, got " + std::to_string(queries.size()));
  }
  for (std::uint32_t m = 0; m < p.users; ++m) {
    const RoundQuery& q = queries[m];
    if (q.user != m || q.server != st.server || q.round != round) {
      throw MissingQuery("query for user " + std::to_string(m) + " does not address server " +
                         std::to_string(st.server) + " round " + std::to_string(round));
    }
    if (q.values.size() != std::size_t(p.file_counts[m]) * d.rows) {
      throw ShapeMismatch("query vector has wrong length");
    }
  }
  if (intermediates.size() != d.rows) throw ShapeMismatch("need one selector per row");

  const Fe point = pts.server_points.at(st.server);
  std::vector<Fe> selector(d.rows);
  for (std::uint32_t j = 0; j < d.rows; ++j) selector[j] = evaluate(intermediates[j], point, f);

  const std::size_t total = st.storage.size() / d.rows;
  std::vector<std::uint32_t> tuple(p.users, 0);
  Fe acc = 0;
  for (std::size_t file = 0; file < total; ++file) {
    for (std::uint32_t j = 0; j < d.rows; ++j) {
      Fe term = selector[j];
      for (std::uint32_t m = 0; m < p.users; ++m) {
        term = f.mul(term, queries[m].values[std::size_t(tuple[m]) * d.rows + j]);
      }
      term = f.mul(term, st.storage[file * d.rows + j]);
      acc = f.add(acc, term);
    }
    for (std::size_t m = p.users; m-- > 0;) {
      if (++tuple[m] < p.file_counts[m]) break;
      tuple[m] = 0;
    }
  }
  return RoundAnswer{st.server, round, f.add(acc, st.mask_share)};
}

RoundAnswer apply_adversary(const RoundAnswer& answer, const AdversaryConfig& cfg,
                            const Field& f, const Rng& rng) {
  const auto in = [&](const std::vector<std::uint32_t>& v) {
    return std::find(v.begin(), v.end(), answer.server) != v.end();
  };
  RoundAnswer out = answer;
  if (in(cfg.unresponsive)) {
    out.value.reset();
    return out;
  }
  if (in(cfg.byzantine) && out.value.has_value()) {
    switch (cfg.strategy) {
      case Strategy::uniform_random: {
        Rng r = rng.child({kAdversaryStream, answer.round, answer.server});
        out.value = r.uniform(f);
        break;
      }
      case Strategy::additive_offset:
        out.value = f.add(*out.value, cfg.constant);
        break;
      case Strategy::constant:
        out.value = cfg.constant;
        break;
    }
  }
  return out;
}

}  // namespace lcpir
