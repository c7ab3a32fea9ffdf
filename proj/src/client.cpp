#include "lcpir/client.hpp"

namespace lcpir {

std::vector<Poly> build_query_polynomials(const UserState& u, const SystemParams& p,
                                          const DerivedParams& d, const PublicPoints& pts,
                                          const Field& f, std::uint32_t round) {
  if (u.user >= p.users) throw ShapeMismatch("user index out of range");
  if (round >= d.rounds) throw ShapeMismatch("round out of range");
  const std::uint32_t candidates = p.file_counts[u.user];
  if (u.theta >= candidates) throw ShapeMismatch("desired index out of range");
  const std::uint32_t t = p.collusion_t[u.user];

  std::vector<Poly> polys(std::size_t(candidates) * d.rows);
  for (std::uint32_t c = 0; c < candidates; ++c) {
    for (std::uint32_t j = 0; j < d.rows; ++j) {
      std::vector<std::pair<Fe, Fe>> nodes;
      nodes.reserve(t + 1);
      nodes.emplace_back(pts.file_points[j][round], c == u.theta ? 1 : 0);
      for (std::uint32_t v = 0; v < t; ++v) {
        Rng z = u.noise.child({round, c, j, v});
        nodes.emplace_back(pts.server_points[v], z.uniform(f));
      }
      polys[std::size_t(c) * d.rows + j] = interpolate(nodes, f);
    }
  }
  return polys;
}

std::vector<RoundQuery> emit_queries(const UserState& u, const SystemParams& p,
                                     const DerivedParams& d, const PublicPoints& pts,
                                     const Field& f, std::uint32_t round) {
  const std::vector<Poly> polys = build_query_polynomials(u, p, d, pts, f, round);
  std::vector<RoundQuery> out(p.servers);
  for (std::uint32_t n = 0; n < p.servers; ++n) {
    out[n].user = u.user;
    out[n].server = n;
    out[n].round = round;
    out[n].values.resize(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
      out[n].values[i] = evaluate(polys[i], pts.server_points[n], f);
    }
  }
  return out;
}

}  // namespace lcpir
