#include "lcpir/audit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lcpir/client.hpp"
#include "lcpir/stats.hpp"

namespace lcpir {

namespace {

bool invertible(std::vector<std::vector<Fe>> m, const Field& f) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m[sel][c] == 0) ++sel;
    if (sel == n) return false;
    std::swap(m[sel], m[c]);
    const Fe inv = f.inverse(m[c][c]);
    for (std::size_t j = c; j < n; ++j) m[c][j] = f.mul(m[c][j], inv);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Fe s = m[i][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] = f.sub(m[i][j], f.mul(s, m[c][j]));
    }
  }
  return true;
}

std::uint64_t binom_capped(std::uint32_t n, std::uint32_t k, std::uint64_t cap) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

/// All size-k subsets of [0, n) when their number fits the cap, otherwise
/// cap subsets sampled uniformly. Returns the subsets and whether the
/// sweep is exhaustive.
std::pair<std::vector<std::vector<std::uint32_t>>, bool> subset_sweep(std::uint32_t n,
                                                                      std::uint32_t k,
                                                                      std::uint64_t cap,
                                                                      Rng rng) {
  std::vector<std::vector<std::uint32_t>> out;
  if (k == 0 || k > n) return {out, true};
  if (binom_capped(n, k, cap) <= cap) {
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      std::uint32_t i = k;
      while (i-- > 0) {
        if (idx[i] + (k - i) < n) break;
        if (i == 0) return {out, true};
      }
      ++idx[i];
      for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  for (std::uint64_t t = 0; t < cap; ++t) {
    std::set<std::uint32_t> pick;
    for (std::uint32_t j = n - k; j < n; ++j) {
      const std::uint32_t v = static_cast<std::uint32_t>(rng.below(j + 1));
      pick.insert(pick.count(v) ? j : v);
    }
    out.emplace_back(pick.begin(), pick.end());
  }
  return {out, false};
}

struct Chi2Record {
  std::string name;
  Chi2 c;
};

/// Bonferroni verdict plus summary evidence for a family of tests.
bool summarize_tests(const std::vector<Chi2Record>& tests, double significance, Json& ev) {
  const double threshold = tests.empty() ? 0 : significance / double(tests.size());
  bool pass = true;
  double min_p = 1;
  std::string worst;
  Json failing = Json::array();
  for (const auto& t : tests) {
    if (t.c.p < min_p) {
      min_p = t.c.p;
      worst = t.name;
    }
    if (t.c.p < threshold) {
      pass = false;
      if (failing.size() < 8) {
        failing.push_back({{"test", t.name}, {"stat", t.c.stat}, {"dof", t.c.dof}, {"p", t.c.p}});
      }
    }
  }
  ev["tests"] = tests.size();
  ev["significance"] = significance;
  ev["threshold_per_test"] = threshold;
  ev["min_p"] = min_p;
  ev["worst_test"] = worst;
  ev["failing"] = failing;
  return pass;
}

/// External reports use 1-based ids, like the CLI and the JSON formats.
Json one_based(const std::vector<std::uint32_t>& v) {
  Json a = Json::array();
  for (std::uint32_t x : v) a.push_back(x + 1);
  return a;
}

/// Lagrange basis over the given nodes: polys[i] is 1 at nodes[i], 0 at
/// the others.
std::vector<Poly> lagrange_basis(const std::vector<Fe>& nodes, const Field& f) {
  std::vector<Poly> out(nodes.size());
  std::vector<std::pair<Fe, Fe>> pts(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) pts[i] = {nodes[i], 0};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    pts[i].second = 1;
    out[i] = interpolate(pts, f);
    pts[i].second = 0;
  }
  return out;
}

}  // namespace

AuditReport audit_points(const SystemParams& p, const DerivedParams& d,
                         const PublicPoints& pts) {
  AuditReport r;
  r.name = "points";
  r.mode = AuditMode::algebraic;
  const std::vector<PointViolation> v = validate_points(pts, p, d);
  r.pass = v.empty();
  Json violations = Json::array();
  for (const PointViolation& pv : v) {
    violations.push_back({{"condition", pv.condition}, {"indices", pv.indices}, {"detail", pv.detail}});
  }
  r.evidence["violations"] = violations;
  r.evidence["rows"] = d.rows;
  r.evidence["servers"] = p.servers;
  return r;
}

std::vector<AuditReport> audit_x_security(const SystemParams& p, const DerivedParams& d,
                                          const PublicPoints& pts, const Field& f,
                                          const AuditOptions& opt) {
  AuditReport alg;
  alg.name = "x-security-algebraic";
  alg.mode = AuditMode::algebraic;
  alg.seed = opt.seed;
  AuditReport st;
  st.name = "x-security-statistical";
  st.mode = AuditMode::statistical;
  st.seed = opt.seed;

  if (p.security_x == 0) {
    alg.pass = true;
    alg.evidence["skipped"] = "no storage noise to audit";
    st.pass = true;
    st.evidence["skipped"] = "no storage noise to audit";
    return {alg, st};
  }

  // Noise-column basis polynomials of every row's share encoding.
  std::vector<std::vector<Poly>> noise_basis(d.rows);
  for (std::uint32_t i = 0; i < d.rows; ++i) {
    const std::vector<Poly> basis = lagrange_basis(pts.file_points[i], f);
    noise_basis[i].assign(basis.begin() + p.mds_k, basis.end());
  }

  auto [sweep, exhaustive] =
      subset_sweep(p.servers, p.security_x, opt.subset_cap, Rng(opt.seed).child(kTrialStream));
  std::vector<std::uint8_t> ok(sweep.size() * d.rows, 0);
  parallel_for(sweep.size() * d.rows, opt.exec, [&](std::size_t task) {
    const std::size_t si = task / d.rows;
    const std::uint32_t row = static_cast<std::uint32_t>(task % d.rows);
    std::vector<std::vector<Fe>> m(p.security_x, std::vector<Fe>(p.security_x));
    for (std::uint32_t a = 0; a < p.security_x; ++a) {
      const Fe pt = pts.server_points[sweep[si][a]];
      for (std::uint32_t b = 0; b < p.security_x; ++b) {
        m[a][b] = evaluate(noise_basis[row][b], pt, f);
      }
    }
    ok[task] = invertible(std::move(m), f) ? 1 : 0;
  });
  std::uint64_t singular = 0;
  Json singular_list = Json::array();
  for (std::size_t task = 0; task < ok.size(); ++task) {
    if (ok[task]) continue;
    ++singular;
    if (singular_list.size() < 8) {
      singular_list.push_back({{"subset", one_based(sweep[task / d.rows])},
                               {"row", task % d.rows + 1}});
    }
  }
  alg.pass = singular == 0;
  alg.evidence["matrix_order"] = p.security_x;
  alg.evidence["subsets_checked"] = sweep.size();
  alg.evidence["rows_checked"] = d.rows;
  alg.evidence["exhaustive"] = exhaustive;
  alg.evidence["singular_count"] = singular;
  alg.evidence["singular"] = singular_list;

  // Statistical run: fixed plaintext, fresh storage noise per trial; the
  // observed subset is the last security_x servers.
  const std::uint64_t q = f.modulus();
  std::vector<std::uint32_t> observed(p.security_x);
  for (std::uint32_t a = 0; a < p.security_x; ++a) {
    observed[a] = p.servers - p.security_x + a;
  }
  const Database db = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                       Rng(opt.seed).child(kDatabaseStream));
  std::vector<Fe> samples(std::size_t(opt.trials) * p.security_x);
  const Rng root(opt.seed);
  parallel_for(opt.trials, opt.exec, [&](std::size_t t) {
    const EncodedStorage enc = encode_database(db, p, d, pts, f,
                                               root.child({kTrialStream, t}), false,
                                               Exec::serial);
    for (std::uint32_t a = 0; a < p.security_x; ++a) {
      samples[t * p.security_x + a] = enc.shares[observed[a]][0];
    }
  });

  std::vector<Chi2Record> tests;
  for (std::uint32_t a = 0; a < p.security_x; ++a) {
    std::vector<std::uint64_t> counts(q, 0);
    for (std::uint32_t t = 0; t < opt.trials; ++t) ++counts[samples[std::size_t(t) * p.security_x + a]];
    tests.push_back({"share-uniform-server-" + std::to_string(observed[a] + 1),
                     chi2_uniform(counts)});
  }
  const double joint_bins = std::pow(double(q), double(p.security_x));
  const bool joint_ok = joint_bins <= 65536 && double(opt.trials) >= 5 * joint_bins;
  if (joint_ok) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(joint_bins), 0);
    for (std::uint32_t t = 0; t < opt.trials; ++t) {
      std::size_t idx = 0;
      for (std::uint32_t a = 0; a < p.security_x; ++a) {
        idx = idx * q + samples[std::size_t(t) * p.security_x + a];
      }
      ++counts[idx];
    }
    tests.push_back({"share-uniform-joint", chi2_uniform(counts)});
  }
  st.pass = summarize_tests(tests, opt.significance, st.evidence);
  st.evidence["trials"] = opt.trials;
  st.evidence["observed_servers"] = one_based(observed);
  st.evidence["joint_tested"] = joint_ok;
  return {alg, st};
}

std::vector<AuditReport> audit_user_privacy(const SystemParams& p, const DerivedParams& d,
                                            const PublicPoints& pts, const Field& f,
                                            std::uint32_t user, const AuditOptions& opt) {
  if (user >= p.users) throw ShapeMismatch("user index out of range");
  const std::uint32_t t_user = p.collusion_t[user];
  const std::uint32_t candidates = p.file_counts[user];
  // Report names are external output, so the user id is 1-based like all
  // other external indices.
  const std::string suffix = "-user-" + std::to_string(user + 1);

  AuditReport alg;
  alg.name = "user-privacy-algebraic" + suffix;
  alg.mode = AuditMode::algebraic;
  alg.seed = opt.seed;

  // One basis family per (row, round): over nodes {round node, anchor
  // points}; the noise part of a query is carried by the anchor bases.
  auto [sweep, exhaustive] =
      subset_sweep(p.servers, t_user, opt.subset_cap, Rng(opt.seed).child(kTrialStream));
  const std::size_t cells = std::size_t(d.rows) * d.rounds;
  std::vector<std::vector<Poly>> anchor_basis(cells);
  for (std::uint32_t j = 0; j < d.rows; ++j) {
    for (std::uint32_t s = 0; s < d.rounds; ++s) {
      std::vector<Fe> nodes{pts.file_points[j][s]};
      for (std::uint32_t v = 0; v < t_user; ++v) nodes.push_back(pts.server_points[v]);
      std::vector<Poly> basis = lagrange_basis(nodes, f);
      anchor_basis[std::size_t(j) * d.rounds + s].assign(basis.begin() + 1, basis.end());
    }
  }
  std::vector<std::uint8_t> ok(sweep.size() * cells, 0);
  parallel_for(ok.size(), opt.exec, [&](std::size_t task) {
    const std::size_t si = task / cells;
    const std::size_t cell = task % cells;
    std::vector<std::vector<Fe>> m(t_user, std::vector<Fe>(t_user));
    for (std::uint32_t a = 0; a < t_user; ++a) {
      const Fe pt = pts.server_points[sweep[si][a]];
      for (std::uint32_t b = 0; b < t_user; ++b) {
        m[a][b] = evaluate(anchor_basis[cell][b], pt, f);
      }
    }
    ok[task] = invertible(std::move(m), f) ? 1 : 0;
  });
  std::uint64_t singular = 0;
  Json singular_list = Json::array();
  for (std::size_t task = 0; task < ok.size(); ++task) {
    if (ok[task]) continue;
    ++singular;
    if (singular_list.size() < 8) {
      singular_list.push_back({{"subset", one_based(sweep[task / cells])},
                               {"row", (task % cells) / d.rounds + 1},
                               {"round", (task % cells) % d.rounds + 1}});
    }
  }
  alg.pass = singular == 0;
  alg.evidence["matrix_order"] = t_user;
  alg.evidence["subsets_checked"] = sweep.size();
  alg.evidence["row_round_cells"] = cells;
  alg.evidence["exhaustive"] = exhaustive;
  alg.evidence["singular_count"] = singular;
  alg.evidence["singular"] = singular_list;

  AuditReport st;
  st.name = "user-privacy-statistical" + suffix;
  st.mode = AuditMode::statistical;
  st.seed = opt.seed;
  // Colluding subset observed in the statistical run: the last t_user
  // servers, far from the anchor points.
  std::vector<std::uint32_t> observed(t_user);
  for (std::uint32_t a = 0; a < t_user; ++a) observed[a] = p.servers - t_user + a;
  const std::uint32_t theta_a = 0;
  const std::uint32_t theta_b = candidates >= 2 ? 1 : 0;
  const std::uint32_t n_theta = candidates >= 2 ? 2 : 1;
  const std::size_t coords = std::size_t(candidates) * d.rows * t_user;
  const std::uint64_t q = f.modulus();
  const Rng root(opt.seed);

  // samples[theta][trial * coords + coord]
  std::vector<std::vector<Fe>> samples(n_theta,
                                       std::vector<Fe>(std::size_t(opt.trials) * coords));
  for (std::uint32_t ti = 0; ti < n_theta; ++ti) {
    const std::uint32_t theta = ti == 0 ? theta_a : theta_b;
    parallel_for(opt.trials, opt.exec, [&, ti, theta](std::size_t t) {
      UserState u{user, theta, root.child({kTrialStream, ti, t})};
      const std::vector<Poly> polys = build_query_polynomials(u, p, d, pts, f, 0);
      std::size_t coord = 0;
      for (const Poly& poly : polys) {
        for (std::uint32_t a = 0; a < t_user; ++a) {
          samples[ti][t * coords + coord++] =
              evaluate(poly, pts.server_points[observed[a]], f);
        }
      }
    });
  }

  std::vector<Chi2Record> tests;
  for (std::size_t c = 0; c < coords; ++c) {
    const std::string cname = "candidate-" + std::to_string(c / (d.rows * t_user) + 1) +
                              "-row-" + std::to_string(c / t_user % d.rows + 1) + "-server-" +
                              std::to_string(observed[c % t_user] + 1);
    std::vector<std::vector<std::uint64_t>> counts(n_theta, std::vector<std::uint64_t>(q, 0));
    for (std::uint32_t ti = 0; ti < n_theta; ++ti) {
      for (std::uint32_t t = 0; t < opt.trials; ++t) {
        ++counts[ti][samples[ti][std::size_t(t) * coords + c]];
      }
      tests.push_back({"query-uniform-theta" + std::to_string(ti + 1) + "-" + cname,
                       chi2_uniform(counts[ti])});
    }
    if (n_theta == 2) {
      tests.push_back({"query-same-law-" + cname, chi2_homogeneity(counts[0], counts[1])});
    }
  }
  st.pass = summarize_tests(tests, opt.significance, st.evidence);
  st.evidence["trials_per_theta"] = opt.trials;
  st.evidence["observed_servers"] = one_based(observed);
  st.evidence["thetas_compared"] = n_theta;
  st.evidence["round"] = 1;
  return {alg, st};
}

std::vector<AuditReport> audit_server_privacy(const SystemParams& p, const DerivedParams& d,
                                              const PublicPoints& pts, const Field& f,
                                              const AuditOptions& opt) {
  AuditReport st;
  st.name = "server-privacy-statistical";
  st.mode = AuditMode::statistical;
  st.seed = opt.seed;

  const std::uint64_t q = f.modulus();
  const std::uint32_t residuals = p.mds_k + p.security_x + p.sum_t() - 1;
  const std::size_t coords = std::size_t(d.rounds) * residuals;
  const std::vector<std::uint32_t> theta(p.users, 0);
  const Rng root(opt.seed);

  Database base = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                   root.child(kDatabaseStream));
  const std::size_t theta_flat = base.flat_index(theta);
  // Probed symbol: entry (0, 0) of the first file the users did not ask for.
  std::optional<std::size_t> probe_flat;
  for (std::size_t i = 0; i < base.file_count(); ++i) {
    if (i != theta_flat) {
      probe_flat = i;
      break;
    }
  }

  // Every noise source the users could condition on is pinned across
  // trials; only the probed symbol and the answer masks are redrawn.
  RunOptions ro;
  ro.exec = Exec::serial;
  ro.modulus_override = d.modulus;
  ro.storage_rng = root.child(kStorageStream);
  ro.user_rng = root.child(kUserStream);
  ro.adversary_rng = root.child(kAdversaryStream);

  std::vector<Fe> probes(opt.trials, 0);
  std::vector<Fe> observed(std::size_t(opt.trials) * coords);
  std::vector<std::uint8_t> recovered_ok(opt.trials, 0);
  parallel_for(opt.trials, opt.exec, [&](std::size_t t) {
    Database db = base;
    if (probe_flat.has_value()) {
      Rng pr = root.child({kProbeStream, t});
      probes[t] = pr.uniform(f);
      db.file_mut(*probe_flat).at(0, 0) = probes[t];
    }
    RunOptions ro_t = ro;
    ro_t.mask_rng = root.child({kTrialStream, t});
    const Transcript tr = run_protocol(p, db, theta, AdversaryConfig{}, opt.seed, ro_t);
    recovered_ok[t] = tr.file_matches ? 1 : 0;
    for (std::uint32_t s = 0; s < d.rounds; ++s) {
      for (std::uint32_t i = 0; i < residuals; ++i) {
        observed[t * coords + std::size_t(s) * residuals + i] =
            evaluate(tr.rounds[s].recovered, pts.server_points[i], f);
      }
    }
  });

  std::uint64_t correctness_failures = 0;
  for (std::uint32_t t = 0; t < opt.trials; ++t) correctness_failures += !recovered_ok[t];

  const bool independence_ok =
      probe_flat.has_value() && double(opt.trials) >= 5.0 * double(q) * double(q);
  std::vector<Chi2Record> tests;
  for (std::size_t c = 0; c < coords; ++c) {
    const std::string cname =
        "round-" + std::to_string(c / residuals + 1) + "-point-" + std::to_string(c % residuals + 1);
    std::vector<std::uint64_t> counts(q, 0);
    for (std::uint32_t t = 0; t < opt.trials; ++t) {
      ++counts[observed[std::size_t(t) * coords + c]];
    }
    tests.push_back({"residual-uniform-" + cname, chi2_uniform(counts)});
    if (independence_ok) {
      std::vector<std::vector<std::uint64_t>> table(q, std::vector<std::uint64_t>(q, 0));
      for (std::uint32_t t = 0; t < opt.trials; ++t) {
        ++table[probes[t]][observed[std::size_t(t) * coords + c]];
      }
      tests.push_back({"residual-free-of-probe-" + cname, chi2_independence(table)});
    }
  }
  st.pass = summarize_tests(tests, opt.significance, st.evidence) && correctness_failures == 0;
  st.evidence["trials"] = opt.trials;
  st.evidence["residuals_per_round"] = residuals;
  st.evidence["masking"] = p.server_privacy;
  st.evidence["probe_tested"] = independence_ok;
  st.evidence["correctness_failures"] = correctness_failures;
  if (probe_flat.has_value()) {
    st.evidence["probe_file"] = one_based(base.tuple_of(*probe_flat));
  }
  return {st};
}

AuditReport audit_rates(const Transcript& tr) {
  const SystemParams& p = tr.params;
  const DerivedParams& d = tr.derived;
  AuditReport r;
  r.name = "rates";
  r.mode = AuditMode::algebraic;
  r.seed = tr.seed;

  const std::int64_t lam = d.rows;
  const Rational formula_rate(lam, std::int64_t(p.servers) - std::int64_t(p.unresponsive_u));
  const Rational formula_mask =
      p.server_privacy
          ? Rational(std::int64_t(p.mds_k) + p.security_x + p.sum_t() - 1, lam)
          : Rational(0, 1);

  const std::uint64_t silent = tr.adversary.unresponsive.size();
  const Rational expected_measured(
      std::int64_t(d.file_symbols),
      std::int64_t(d.rounds) * (std::int64_t(p.servers) - std::int64_t(silent)));

  const bool budget_used = silent == p.unresponsive_u;
  const bool rate_ok = budget_used ? tr.metrics.rate == formula_rate
                                   : tr.metrics.rate == expected_measured;
  const bool mask_ok = tr.metrics.mask_rate == formula_mask;
  r.pass = rate_ok && mask_ok;
  r.evidence["measured_rate"] = tr.metrics.rate.str();
  r.evidence["formula_rate"] = formula_rate.str();
  r.evidence["measured_mask_rate"] = tr.metrics.mask_rate.str();
  r.evidence["formula_mask_rate"] = formula_mask.str();
  r.evidence["downloaded"] = tr.metrics.downloaded;
  r.evidence["file_symbols"] = tr.metrics.file_symbols;
  r.evidence["silent_servers"] = silent;
  r.evidence["silent_budget"] = p.unresponsive_u;
  if (!budget_used) {
    r.evidence["note"] = "fewer silent servers than budgeted; measured rate exceeds the formula";
  }
  return r;
}

}  // namespace lcpir
