#include <doctest.h>

#include "lcpir/audit.hpp"

using namespace lcpir;

namespace {

struct Setup {
  SystemParams p;
  DerivedParams d;
  PublicPoints pts;
  Field f;
};

Setup make_setup(const SystemParams& p) {
  const DerivedParams d = derive_params(p);
  return Setup{p, d, generate_public_points(p, d), Field(d.modulus)};
}

AuditOptions quick_opts(std::uint32_t trials = 2000, std::uint64_t seed = 1) {
  AuditOptions o;
  o.trials = trials;
  o.seed = seed;
  o.exec = Exec::serial;
  return o;
}

// A single-user configuration with no storage noise.
SystemParams no_storage_noise_params() {
  SystemParams p;
  p.servers = 8;
  p.users = 1;
  p.mds_k = 2;
  p.security_x = 0;
  p.collusion_t = {1};
  p.byzantine_b = 1;
  p.unresponsive_u = 1;
  p.file_counts = {2};
  p.server_privacy = true;
  return p;
}

}  // namespace

TEST_CASE("point layout audit") {
  const Setup s = make_setup(demo_params());
  SUBCASE("generated points pass") {
    const AuditReport r = audit_points(s.p, s.d, s.pts);
    CHECK(r.pass);
    CHECK(r.evidence["violations"].empty());
  }
  SUBCASE("a tampered layout is flagged with the broken condition") {
    PublicPoints bad = s.pts;
    bad.file_points[1][0] = bad.file_points[0][0];  // two rows share a round node
    const AuditReport r = audit_points(s.p, s.d, bad);
    CHECK_FALSE(r.pass);
    bool found = false;
    for (const auto& v : r.evidence["violations"]) {
      if (v["condition"] == "column-nodes-distinct") found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("storage confidentiality audit on the reference parameters") {
  const Setup s = make_setup(demo_params());
  const std::vector<AuditReport> rs = audit_x_security(s.p, s.d, s.pts, s.f, quick_opts());
  REQUIRE(rs.size() == 2);

  const AuditReport& alg = rs[0];
  CHECK(alg.mode == AuditMode::algebraic);
  CHECK(alg.pass);
  CHECK(alg.evidence["subsets_checked"] == 78);  // C(13, 2) server pairs
  CHECK(alg.evidence["rows_checked"] == 3);
  CHECK(alg.evidence["exhaustive"] == true);
  CHECK(alg.evidence["singular_count"] == 0);

  const AuditReport& st = rs[1];
  CHECK(st.mode == AuditMode::statistical);
  CHECK(st.pass);
  CHECK(st.evidence["trials"] == 2000);
  CHECK(st.evidence["joint_tested"] == true);
  CHECK(st.evidence["failing"].empty());
}

TEST_CASE("storage audit is vacuous without storage noise") {
  const Setup s = make_setup(no_storage_noise_params());
  const std::vector<AuditReport> rs = audit_x_security(s.p, s.d, s.pts, s.f, quick_opts(100));
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].pass);
  CHECK(rs[1].pass);
  CHECK(rs[0].evidence.contains("skipped"));
}

TEST_CASE("subset sweeps fall back to sampling under a tight cap") {
  const Setup s = make_setup(demo_params());
  AuditOptions o = quick_opts(100);
  o.subset_cap = 10;
  const std::vector<AuditReport> rs = audit_x_security(s.p, s.d, s.pts, s.f, o);
  CHECK(rs[0].pass);
  CHECK(rs[0].evidence["exhaustive"] == false);
  CHECK(rs[0].evidence["subsets_checked"] == 10);
}

TEST_CASE("index confidentiality audit for both users") {
  const Setup s = make_setup(demo_params());
  for (std::uint32_t user = 0; user < 2; ++user) {
    const std::vector<AuditReport> rs =
        audit_user_privacy(s.p, s.d, s.pts, s.f, user, quick_opts());
    REQUIRE(rs.size() == 2);

    const AuditReport& alg = rs[0];
    CHECK(alg.pass);
    CHECK(alg.evidence["matrix_order"] == 2);
    CHECK(alg.evidence["subsets_checked"] == 78);
    CHECK(alg.evidence["row_round_cells"] == 6);
    CHECK(alg.evidence["exhaustive"] == true);
    CHECK(alg.evidence["singular_count"] == 0);

    const AuditReport& st = rs[1];
    CHECK(st.pass);
    CHECK(st.evidence["thetas_compared"] == 2);
    CHECK(st.evidence["failing"].empty());
  }
  CHECK_THROWS_AS(audit_user_privacy(s.p, s.d, s.pts, s.f, 2, quick_opts(10)), ShapeMismatch);
}

TEST_CASE("database confidentiality audit passes with masking on") {
  const Setup s = make_setup(demo_params());
  const std::vector<AuditReport> rs = audit_server_privacy(s.p, s.d, s.pts, s.f, quick_opts());
  REQUIRE(rs.size() == 1);
  const AuditReport& st = rs[0];
  CHECK(st.pass);
  CHECK(st.evidence["masking"] == true);
  CHECK(st.evidence["probe_tested"] == true);  // trials >= 5 q^2
  CHECK(st.evidence["correctness_failures"] == 0);
  CHECK(st.evidence["residuals_per_round"] == 7);
}

TEST_CASE("database confidentiality audit fails with masking off") {
  // Negative control: without answer masks the decoded answers leak the
  // probed symbol, and the audit must say so.
  SystemParams p = demo_params();
  p.server_privacy = false;
  const Setup s = make_setup(p);
  const std::vector<AuditReport> rs = audit_server_privacy(s.p, s.d, s.pts, s.f, quick_opts());
  REQUIRE(rs.size() == 1);
  const AuditReport& st = rs[0];
  CHECK_FALSE(st.pass);
  CHECK(st.evidence["masking"] == false);
  CHECK(st.evidence["correctness_failures"] == 0);  // retrieval itself still works
  CHECK(st.evidence["failing"].size() > 0);
}

TEST_CASE("rate audit") {
  SUBCASE("reference run matches the closed forms") {
    const AuditReport r = audit_rates(run_demo(11));
    CHECK(r.pass);
    CHECK(r.evidence["measured_rate"] == "1/4");
    CHECK(r.evidence["formula_rate"] == "1/4");
    CHECK(r.evidence["measured_mask_rate"] == "7/3");
    CHECK(r.evidence["silent_servers"] == 1);
  }
  SUBCASE("an underused silence budget is explained, not failed") {
    const SystemParams p = demo_params();
    const DerivedParams d = derive_params(p);
    const Field f(d.modulus);
    const Database db = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                         Rng(12).child(kDatabaseStream));
    const Transcript tr = run_protocol(p, db, {0, 0}, AdversaryConfig{}, 12);
    const AuditReport r = audit_rates(tr);
    CHECK(r.pass);
    CHECK(r.evidence["measured_rate"] == "3/13");
    CHECK(r.evidence["formula_rate"] == "1/4");
    CHECK(r.evidence.contains("note"));
  }
  SUBCASE("a doctored transcript is caught") {
    Transcript tr = run_demo(13);
    tr.metrics.rate = Rational(1, 3);
    CHECK_FALSE(audit_rates(tr).pass);
  }
  SUBCASE("masking off zeroes the mask-rate formula") {
    SystemParams p = demo_params();
    p.server_privacy = false;
    const DerivedParams d = derive_params(p);
    const Field f(d.modulus);
    const Database db = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                         Rng(14).child(kDatabaseStream));
    AdversaryConfig adv;
    adv.unresponsive = {5};
    const Transcript tr = run_protocol(p, db, {1, 1}, adv, 14);
    const AuditReport r = audit_rates(tr);
    CHECK(r.pass);
    CHECK(r.evidence["formula_mask_rate"] == "0");
  }
}
