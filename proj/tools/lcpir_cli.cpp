#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcpir/audit.hpp"
#include "lcpir/harness.hpp"
#include "lcpir/json_io.hpp"

namespace {

using namespace lcpir;

constexpr int kExitOk = 0;
constexpr int kExitGeneric = 1;
constexpr int kExitDecode = 2;
constexpr int kExitAudit = 3;
constexpr int kExitUsage = 64;

std::vector<std::uint32_t> parse_u32_list(const std::string& s, const std::string& what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      const long long v = std::stoll(part);
      if (v < 0) throw std::out_of_range(part);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw ParseError("bad " + what + " entry '" + part + "'");
    }
  }
  if (out.empty()) throw ParseError(what + " list is empty");
  return out;
}

std::vector<std::uint32_t> one_based_servers(const std::string& s, const std::string& what) {
  if (s.empty()) return {};
  std::vector<std::uint32_t> v = parse_u32_list(s, what);
  for (auto& n : v) {
    if (n == 0) throw ParseError(what + " ids are 1-based");
    --n;
  }
  return v;
}

/// Shared parameter flags; defaults reproduce the reference configuration.
struct ParamFlags {
  std::uint32_t servers = 13;
  std::uint32_t users = 2;
  std::uint32_t mds_k = 2;
  std::uint32_t security_x = 2;
  std::string collusion = "2,2";
  std::uint32_t byzantine_b = 1;
  std::uint32_t unresponsive_u = 1;
  std::string files = "2,2";
  bool no_server_privacy = false;

  SystemParams to_params() const {
    SystemParams p;
    p.servers = servers;
    p.users = users;
    p.mds_k = mds_k;
    p.security_x = security_x;
    p.collusion_t = parse_u32_list(collusion, "collusion tolerance");
    p.byzantine_b = byzantine_b;
    p.unresponsive_u = unresponsive_u;
    p.file_counts = parse_u32_list(files, "file count");
    p.server_privacy = !no_server_privacy;
    return p;
  }
};

void register_param_flags(CLI::App* cmd, ParamFlags& pf) {
  cmd->add_option("-n,--servers", pf.servers, "number of servers")->capture_default_str();
  cmd->add_option("-m,--users", pf.users, "number of users")->capture_default_str();
  cmd->add_option("-k,--mds-k", pf.mds_k, "columns per file / retrieval rounds")
      ->capture_default_str();
  cmd->add_option("-x,--security-x", pf.security_x, "storage noise symbols per row")
      ->capture_default_str();
  cmd->add_option("-t,--collusion", pf.collusion,
                  "per-user collusion tolerances, comma separated")
      ->capture_default_str();
  cmd->add_option("-b,--byzantine-budget", pf.byzantine_b, "tolerated corrupted servers")
      ->capture_default_str();
  cmd->add_option("-u,--unresponsive-budget", pf.unresponsive_u, "tolerated silent servers")
      ->capture_default_str();
  cmd->add_option("-f,--files", pf.files, "files per user coordinate, comma separated")
      ->capture_default_str();
  cmd->add_flag("--no-server-privacy", pf.no_server_privacy,
                "switch off answer masking (leaks undesired symbols to users)");
}

Strategy parse_strategy(const std::string& s, std::uint64_t& constant) {
  if (s == "random") return Strategy::uniform_random;
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  if (head == "offset" || head == "const") {
    if (colon == std::string::npos) {
      throw ParseError("strategy '" + head + "' needs a constant, e.g. " + head + ":3");
    }
    try {
      constant = std::stoull(s.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw ParseError("bad strategy constant in '" + s + "'");
    }
    return head == "offset" ? Strategy::additive_offset : Strategy::constant;
  }
  throw ParseError("unknown strategy '" + s + "' (random | offset:C | const:C)");
}

void write_or_print(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";
}

std::string tuple_str(const std::vector<std::uint32_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i] + 1);
  }
  return s + ")";
}

void print_summary(const Transcript& tr, std::ostream& os) {
  const SystemParams& p = tr.params;
  os << "servers " << p.servers << ", users " << p.users << ", modulus "
     << tr.derived.modulus << ", rows " << tr.derived.rows << ", rounds "
     << tr.derived.rounds << "\n";
  os << "desired file " << tuple_str(tr.theta) << ": "
     << (tr.file_matches ? "retrieved exactly" : "MISMATCH") << "\n";
  os << "download rate " << tr.metrics.rate.str() << " (" << tr.metrics.file_symbols
     << " symbols from " << tr.metrics.downloaded << " downloads), mask rate "
     << tr.metrics.mask_rate.str() << "\n";
}

int cmd_demo(std::uint64_t seed, bool as_json, Exec exec) {
  RunOptions opt;
  opt.exec = exec;
  const Transcript tr = run_demo(seed, opt);
  if (as_json) {
    std::cout << transcript_to_json(tr).dump(2) << "\n";
  } else {
    print_summary(tr, std::cout);
    std::cout << "adversary: byzantine server 3 answers garbage, server 7 stays silent\n";
  }
  return tr.file_matches ? kExitOk : kExitDecode;
}

struct RunFlags {
  ParamFlags pf;
  std::string theta;
  std::string byz;
  std::string unresp;
  std::string strategy = "random";
  std::uint64_t seed = 0;
  bool seeded = false;
  std::uint64_t modulus = 0;
  std::string db_path;
  std::string out_path;
  bool force = false;
  bool serial = false;
};

int cmd_run(const RunFlags& rf) {
  const SystemParams p = rf.pf.to_params();
  std::uint64_t modulus_override = rf.modulus;

  std::optional<Database> db;
  if (!rf.db_path.empty()) {
    std::ifstream in(rf.db_path);
    if (!in) throw ParseError("cannot read '" + rf.db_path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ParseError("invalid JSON in '" + rf.db_path + "': " + e.what());
    }
    auto [parsed, q] = database_from_json(j);
    if (rf.modulus && rf.modulus != q) {
      throw ParseError("--q disagrees with the modulus recorded in '" + rf.db_path + "'");
    }
    modulus_override = q;
    db = std::move(parsed);
  }

  const DerivedParams d =
      modulus_override ? derive_params(p, modulus_override) : derive_params(p);
  const std::uint64_t seed = rf.seeded ? rf.seed : std::random_device{}();
  if (!db.has_value()) {
    const Field f(d.modulus);
    db = Database::random(p.file_counts, d.rows, p.mds_k, f, Rng(seed).child(kDatabaseStream));
  }

  std::vector<std::uint32_t> theta = parse_u32_list(rf.theta, "desired index");
  for (auto& v : theta) {
    if (v == 0) throw ParseError("desired indices are 1-based");
    --v;
  }

  AdversaryConfig adv;
  adv.byzantine = one_based_servers(rf.byz, "byzantine server");
  adv.unresponsive = one_based_servers(rf.unresp, "unresponsive server");
  std::uint64_t constant = 0;
  adv.strategy = parse_strategy(rf.strategy, constant);
  adv.constant = Field(d.modulus).reduce(constant);

  RunOptions opt;
  opt.exec = rf.serial ? Exec::serial : Exec::parallel;
  opt.modulus_override = modulus_override;
  opt.allow_excess_adversary = rf.force;

  const Transcript tr = run_protocol(p, *db, theta, adv, seed, opt);
  write_or_print(transcript_to_json(tr), rf.out_path);
  if (!rf.out_path.empty()) print_summary(tr, std::cout);
  if (!tr.file_matches) {
    std::cerr << "error: decoded file does not match the database\n";
    return kExitDecode;
  }
  return kExitOk;
}

struct AuditFlags {
  ParamFlags pf;
  std::vector<std::string> checks{"all"};
  std::uint32_t trials = 5000;
  std::uint64_t seed = 1;
  std::string out_path;
  bool serial = false;
};

int cmd_audit(const AuditFlags& af) {
  const SystemParams p = af.pf.to_params();
  const DerivedParams d = derive_params(p);
  const Field f(d.modulus);
  const PublicPoints pts = generate_public_points(p, d);

  bool points = false, xsec = false, userpriv = false, srvpriv = false, rates = false;
  for (const std::string& c : af.checks) {
    if (c == "all") {
      points = xsec = userpriv = srvpriv = rates = true;
    } else if (c == "points") {
      points = true;
    } else if (c == "xsec") {
      xsec = true;
    } else if (c == "userpriv") {
      userpriv = true;
    } else if (c == "srvpriv") {
      srvpriv = true;
    } else if (c == "rates") {
      rates = true;
    } else {
      throw ParseError("unknown check '" + c + "' (points|xsec|userpriv|srvpriv|rates|all)");
    }
  }

  AuditOptions opt;
  opt.trials = af.trials;
  opt.seed = af.seed;
  opt.exec = af.serial ? Exec::serial : Exec::parallel;

  std::vector<AuditReport> reports;
  if (points) reports.push_back(audit_points(p, d, pts));
  if (xsec) {
    for (AuditReport& r : audit_x_security(p, d, pts, f, opt)) reports.push_back(std::move(r));
  }
  if (userpriv) {
    for (std::uint32_t m = 0; m < p.users; ++m) {
      for (AuditReport& r : audit_user_privacy(p, d, pts, f, m, opt)) {
        reports.push_back(std::move(r));
      }
    }
  }
  if (srvpriv) {
    for (AuditReport& r : audit_server_privacy(p, d, pts, f, opt)) {
      reports.push_back(std::move(r));
    }
  }
  if (rates) {
    // Rate audit needs a finished run; exercise the full adversary budget
    // so the measured rate must hit the closed form exactly.
    const Database db = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                         Rng(af.seed).child(kDatabaseStream));
    AdversaryConfig adv;
    for (std::uint32_t i = 0; i < p.byzantine_b; ++i) adv.byzantine.push_back(i);
    for (std::uint32_t i = 0; i < p.unresponsive_u; ++i) {
      adv.unresponsive.push_back(p.servers - 1 - i);
    }
    RunOptions ro;
    ro.exec = opt.exec;
    const std::vector<std::uint32_t> theta(p.users, 0);
    reports.push_back(audit_rates(run_protocol(p, db, theta, adv, af.seed, ro)));
  }

  Json out = Json::array();
  bool all_pass = true;
  for (const AuditReport& r : reports) {
    out.push_back(report_to_json(r));
    all_pass = all_pass && r.pass;
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
  }
  write_or_print(out, af.out_path);
  return all_pass ? kExitOk : kExitAudit;
}

struct BenchFlags {
  std::string out_path = "bench.csv";
  std::uint64_t seed = 1;
  std::uint32_t repeats = 3;
};

double run_timed(const SystemParams& p, const Database& db,
                 const std::vector<std::uint32_t>& theta, const AdversaryConfig& adv,
                 std::uint64_t seed, Exec exec, std::uint32_t repeats, Json& digest) {
  RunOptions opt;
  opt.exec = exec;
  double best = 0;
  for (std::uint32_t r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const Transcript tr = run_protocol(p, db, theta, adv, seed, opt);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!tr.file_matches) throw DecodeFailure("benchmark run failed to retrieve the file");
    if (r == 0 || ms < best) best = ms;
    Json j = transcript_to_json(tr);
    j["metrics"].erase("wall_ms");
    if (digest.is_null()) {
      digest = std::move(j);
    } else if (digest != j) {
      throw Error("execution policies disagree on the transcript");
    }
  }
  return best;
}

int cmd_bench(const BenchFlags& bf) {
  struct GridRow {
    std::uint32_t servers;
    std::uint32_t files_per_user;
  };
  const GridRow grid[] = {{13, 2}, {21, 4}, {29, 6}, {37, 8}, {53, 10}, {77, 12}};

  std::ofstream csv(bf.out_path);
  if (!csv) throw Error("cannot write '" + bf.out_path + "'");
  csv << "servers,users,mds_k,security_x,sum_t,byzantine_b,unresponsive_u,files_per_user,"
         "modulus,rows,rounds,rate,mask_rate,serial_ms,parallel_ms,speedup\n";
  std::cout << "threads available: " << max_threads() << "\n";
  std::cout << "servers  files  modulus  rows  serial_ms  parallel_ms  speedup\n";

  for (const GridRow& g : grid) {
    SystemParams p = demo_params();
    p.servers = g.servers;
    p.file_counts = {g.files_per_user, g.files_per_user};
    const DerivedParams d = derive_params(p);
    const Field f(d.modulus);
    const Database db = Database::random(p.file_counts, d.rows, p.mds_k, f,
                                         Rng(bf.seed).child(kDatabaseStream));
    AdversaryConfig adv;
    adv.byzantine = {0};
    adv.unresponsive = {p.servers - 1};
    const std::vector<std::uint32_t> theta(p.users, 0);

    Json serial_digest, parallel_digest;
    const double serial_ms =
        run_timed(p, db, theta, adv, bf.seed, Exec::serial, bf.repeats, serial_digest);
    const double parallel_ms =
        run_timed(p, db, theta, adv, bf.seed, Exec::parallel, bf.repeats, parallel_digest);
    if (serial_digest != parallel_digest) {
      throw Error("execution policies disagree on the transcript");
    }
    const double speedup = parallel_ms > 0 ? serial_ms / parallel_ms : 0;

    const Rational rate(static_cast<std::int64_t>(d.rows),
                        static_cast<std::int64_t>(p.servers) - p.unresponsive_u);
    const Rational mask_rate(static_cast<std::int64_t>(p.mds_k + p.security_x + p.sum_t() - 1),
                             static_cast<std::int64_t>(d.rows));
    csv << p.servers << ',' << p.users << ',' << p.mds_k << ',' << p.security_x << ','
        << p.sum_t() << ',' << p.byzantine_b << ',' << p.unresponsive_u << ','
        << g.files_per_user << ',' << d.modulus << ',' << d.rows << ',' << d.rounds << ','
        << rate.str() << ',' << mask_rate.str() << ',' << serial_ms << ',' << parallel_ms << ','
        << speedup << "\n";
    std::cout << g.servers << "  " << g.files_per_user << "x" << g.files_per_user << "  "
              << d.modulus << "  " << d.rows << "  " << serial_ms << "  " << parallel_ms << "  "
              << speedup << "\n";
  }
  std::cout << "wrote " << bf.out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-user symmetric PIR simulator over MDS-coded storage"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads for parallel kernels (0 = library default)");

  std::uint64_t demo_seed = 424242;
  bool demo_json = false;
  bool demo_serial = false;
  CLI::App* demo = app.add_subcommand("demo", "run the 13-server reference configuration");
  demo->fallthrough();
  demo->add_option("--seed", demo_seed, "seed for database and randomness")
      ->capture_default_str();
  demo->add_flag("--json", demo_json, "print the full transcript as JSON");
  demo->add_flag("--serial", demo_serial, "use the serial reference kernels");

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "run one retrieval with explicit parameters");
  run->fallthrough();
  register_param_flags(run, rf.pf);
  run->add_option("--theta", rf.theta, "desired 1-based index per user, comma separated")
      ->required();
  run->add_option("--byz", rf.byz, "1-based ids of corrupted servers, comma separated");
  run->add_option("--unresp", rf.unresp, "1-based ids of silent servers, comma separated");
  run->add_option("--strategy", rf.strategy, "corruption strategy: random | offset:C | const:C")
      ->capture_default_str();
  CLI::Option* seed_opt =
      run->add_option("--seed", rf.seed, "seed (default: fresh system entropy)");
  run->add_option("--q", rf.modulus, "field modulus override (prime)");
  run->add_option("--db", rf.db_path, "database JSON to serve instead of a random one");
  run->add_option("--out", rf.out_path, "write the transcript JSON here instead of stdout");
  run->add_flag("--force", rf.force, "allow adversary sets beyond the configured budget");
  run->add_flag("--serial", rf.serial, "use the serial reference kernels");

  AuditFlags af;
  CLI::App* audit = app.add_subcommand("audit", "verify privacy, security and rate claims");
  audit->fallthrough();
  register_param_flags(audit, af.pf);
  audit->add_option("--check", af.checks,
                    "checks to run: points|xsec|userpriv|srvpriv|rates|all")
      ->delimiter(',')
      ->capture_default_str();
  audit->add_option("--trials", af.trials, "trials per statistical test")->capture_default_str();
  audit->add_option("--seed", af.seed, "audit seed")->capture_default_str();
  audit->add_option("--out", af.out_path, "write the JSON report array here instead of stdout");
  audit->add_flag("--serial", af.serial, "use the serial reference kernels");

  BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "compare serial and parallel kernels");
  bench->fallthrough();
  bench->add_option("--out", bf.out_path, "CSV output path")->capture_default_str();
  bench->add_option("--seed", bf.seed, "database seed")->capture_default_str();
  bench->add_option("--repeats", bf.repeats, "timing repeats, best of")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (threads > 0) set_threads(threads);
  rf.seeded = seed_opt->count() > 0;

  try {
    if (demo->parsed()) {
      return cmd_demo(demo_seed, demo_json, demo_serial ? Exec::serial : Exec::parallel);
    }
    if (run->parsed()) return cmd_run(rf);
    if (audit->parsed()) return cmd_audit(af);
    if (bench->parsed()) return cmd_bench(bf);
  } catch (const DecodeFailure& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return kExitDecode;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleParams& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FieldTooSmall& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotPrime& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeMismatch& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneric;
  }
  return kExitOk;
}
