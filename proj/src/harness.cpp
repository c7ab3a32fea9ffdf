#include "lcpir/harness.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace lcpir {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;

void check_adversary(const AdversaryConfig& adv, const SystemParams& p, bool allow_excess) {
  std::set<std::uint32_t> byz(adv.byzantine.begin(), adv.byzantine.end());
  std::set<std::uint32_t> silent(adv.unresponsive.begin(), adv.unresponsive.end());
  if (byz.size() != adv.byzantine.size() || silent.size() != adv.unresponsive.size()) {
    throw InfeasibleParams("adversary lists repeat a server");
  }
  for (std::uint32_t n : byz) {
    if (n >= p.servers) throw InfeasibleParams("byzantine server out of range");
    if (silent.count(n)) throw InfeasibleParams("server cannot be byzantine and silent");
  }
  for (std::uint32_t n : silent) {
    if (n >= p.servers) throw InfeasibleParams("unresponsive server out of range");
  }
  if (!allow_excess && (byz.size() > p.byzantine_b || silent.size() > p.unresponsive_u)) {
    throw InfeasibleParams("adversary exceeds the configured budget");
  }
}

}  // namespace

std::uint64_t points_digest(const PublicPoints& pts) {
  std::uint64_t h = kFnvBasis;
  h = fnv1a(h, pts.file_points.size());
  for (const auto& row : pts.file_points) {
    h = fnv1a(h, row.size());
    for (Fe v : row) h = fnv1a(h, v);
  }
  h = fnv1a(h, pts.server_points.size());
  for (Fe v : pts.server_points) h = fnv1a(h, v);
  return h;
}

Transcript run_protocol(const SystemParams& p, const Database& db,
                        const std::vector<std::uint32_t>& theta, const AdversaryConfig& adv,
                        std::uint64_t seed, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const DerivedParams d =
      opt.modulus_override ? derive_params(p, opt.modulus_override) : derive_params(p);
  const Field f(d.modulus);
  const PublicPoints pts = generate_public_points(p, d);
  if (!validate_points(pts, p, d).empty()) {
    throw InfeasibleParams("generated points violate their own layout conditions");
  }
  if (theta.size() != p.users) throw ShapeMismatch("need one desired index per user");
  for (std::uint32_t m = 0; m < p.users; ++m) {
    if (theta[m] >= p.file_counts[m]) throw ShapeMismatch("desired index out of range");
  }
  check_adversary(adv, p, opt.allow_excess_adversary);
  for (std::size_t i = 0; i < db.file_count(); ++i) {
    for (Fe v : db.file(i).a) {
      if (v >= d.modulus) throw ShapeMismatch("database entry outside the field");
    }
  }

  const Rng root(seed);
  const Rng storage_rng = opt.storage_rng.value_or(root);
  const Rng mask_rng = opt.mask_rng.value_or(root);
  const Rng user_rng = opt.user_rng.value_or(root.child(kUserStream));
  const Rng adversary_rng = opt.adversary_rng.value_or(root);
  Transcript tr;
  tr.params = p;
  tr.derived = d;
  tr.points_digest = points_digest(pts);
  tr.seed = seed;
  tr.theta = theta;
  tr.adversary = adv;

  const EncodedStorage enc = encode_database(db, p, d, pts, f, storage_rng, false, opt.exec);
  std::vector<UserState> users(p.users);
  for (std::uint32_t m = 0; m < p.users; ++m) {
    users[m] = UserState{m, theta[m], user_rng.child(m)};
  }

  const std::uint64_t reads_before = db.plaintext_reads();
  std::vector<DecodedRound> decoded(d.rounds);
  tr.rounds.resize(d.rounds);
  std::uint64_t downloaded = 0;
  for (std::uint32_t s = 0; s < d.rounds; ++s) {
    std::vector<std::vector<RoundQuery>> queries(p.users);
    for (std::uint32_t m = 0; m < p.users; ++m) {
      queries[m] = emit_queries(users[m], p, d, pts, f, s);
    }
    std::uint64_t qd = kFnvBasis;
    for (std::uint32_t m = 0; m < p.users; ++m) {
      for (const RoundQuery& q : queries[m]) {
        for (Fe v : q.values) qd = fnv1a(qd, v);
      }
    }

    std::vector<Fe> mask_shares(p.servers, 0);
    if (p.server_privacy) {
      mask_shares = generate_round_randomness(p, d, pts, f, s, mask_rng, false).shares;
    }

    const std::vector<Poly> intermediates = build_intermediate_polys(pts, d.rows, s, f);
    std::vector<RoundAnswer> answers(p.servers);
    parallel_for(p.servers, opt.exec, [&](std::size_t n) {
      std::vector<RoundQuery> for_server(p.users);
      for (std::uint32_t m = 0; m < p.users; ++m) for_server[m] = queries[m][n];
      const ServerState st{static_cast<std::uint32_t>(n),
                           std::span<const Fe>(enc.shares[n]), mask_shares[n]};
      const RoundAnswer honest = compute_answer(st, for_server, intermediates, p, d, pts, f, s);
      answers[n] = apply_adversary(honest, adv, f, adversary_rng);
    });

    RoundRecord& rec = tr.rounds[s];
    rec.round = s;
    rec.queries_digest = qd;
    rec.answers.resize(p.servers);
    for (std::uint32_t n = 0; n < p.servers; ++n) {
      rec.answers[n] = answers[n].value;
      downloaded += answers[n].value.has_value();
    }
    rec.recovered = recover_answer_polynomial(answers, p, d, pts, f);
    rec.column = extract_round_symbols(rec.recovered, d, pts, f, s);
    decoded[s] = DecodedRound{s, rec.recovered, rec.column};
  }
  tr.plaintext_reads_during_answers = db.plaintext_reads() - reads_before;

  tr.retrieved = assemble_file(decoded, p, d);
  tr.file_matches = tr.retrieved == db.file(db.flat_index(theta));

  tr.metrics.file_symbols = d.file_symbols;
  tr.metrics.downloaded = downloaded;
  tr.metrics.rate = Rational(static_cast<std::int64_t>(d.file_symbols),
                             static_cast<std::int64_t>(downloaded));
  tr.metrics.randomness_symbols =
      p.server_privacy
          ? std::uint64_t(d.rounds) * (p.mds_k + p.security_x + p.sum_t() - 1)
          : 0;
  tr.metrics.mask_rate = Rational(static_cast<std::int64_t>(tr.metrics.randomness_symbols),
                                  static_cast<std::int64_t>(d.file_symbols));
  tr.metrics.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return tr;
}

SystemParams demo_params() {
  SystemParams p;
  p.servers = 13;
  p.users = 2;
  p.mds_k = 2;
  p.security_x = 2;
  p.collusion_t = {2, 2};
  p.byzantine_b = 1;
  p.unresponsive_u = 1;
  p.file_counts = {2, 2};
  p.server_privacy = true;
  return p;
}

Transcript run_demo(std::uint64_t seed, const RunOptions& opt) {
  const SystemParams p = demo_params();
  const DerivedParams d = derive_params(p);
  const Field f(d.modulus);
  const Database db = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                       Rng(seed).child(kDatabaseStream));
  AdversaryConfig adv;
  adv.byzantine = {2};
  adv.unresponsive = {6};
  adv.strategy = Strategy::uniform_random;
  return run_protocol(p, db, {1, 0}, adv, seed, opt);
}

}  // namespace lcpir
