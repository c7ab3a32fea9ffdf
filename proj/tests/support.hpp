#pragma once

#include <vector>

#include "lcpir/client.hpp"
#include "lcpir/harness.hpp"
#include "lcpir/server.hpp"
#include "lcpir/storage.hpp"

namespace lcpir::testing {

/// One dealt instance with everything an oracle needs kept in plaintext.
struct Deal {
  SystemParams p;
  DerivedParams d;
  PublicPoints pts;
  Field f;
  Database db;
  EncodedStorage enc;
  std::vector<UserState> users;
  std::vector<std::uint32_t> theta;
};

inline Deal make_deal(const SystemParams& p, std::vector<std::uint32_t> theta,
                      std::uint64_t seed) {
  const DerivedParams d = derive_params(p);
  const Field f(d.modulus);
  PublicPoints pts = generate_public_points(p, d);
  const Rng root(seed);
  Database db =
      Database::random(p.file_counts, d.rows, p.mds_k, f, root.child(kDatabaseStream));
  EncodedStorage enc = encode_database(db, p, d, pts, f, root, true);
  std::vector<UserState> users(p.users);
  for (std::uint32_t m = 0; m < p.users; ++m) {
    users[m] = UserState{m, theta[m], root.child(kUserStream).child(m)};
  }
  return Deal{p, d, std::move(pts), f, std::move(db), std::move(enc), std::move(users),
              std::move(theta)};
}

/// Answer polynomial assembled symbolically from the plaintext-side
/// polynomials; servers must produce exactly its evaluations. This takes a
/// different route than the servers (polynomial products instead of sums
/// of evaluated terms), so it is an independent oracle for them.
inline Poly answer_polynomial(const Deal& deal,
                              const std::vector<std::vector<Poly>>& query_polys,
                              const Poly& mask, std::uint32_t round) {
  const auto& [p, d, pts, f, db, enc, users, theta] = deal;
  const std::vector<Poly> selectors = build_intermediate_polys(pts, d.rows, round, f);
  Poly acc;
  std::vector<std::uint32_t> tuple(p.users, 0);
  for (std::size_t file = 0; file < db.file_count(); ++file) {
    for (std::uint32_t j = 0; j < d.rows; ++j) {
      Poly term = selectors[j];
      for (std::uint32_t m = 0; m < p.users; ++m) {
        term = mul(term, query_polys[m][std::size_t(tuple[m]) * d.rows + j], f);
      }
      term = mul(term, enc.polys[file * d.rows + j], f);
      acc = add(acc, term, f);
    }
    for (std::size_t m = p.users; m-- > 0;) {
      if (++tuple[m] < p.file_counts[m]) break;
      tuple[m] = 0;
    }
  }
  return add(acc, mask, f);
}

}  // namespace lcpir::testing
