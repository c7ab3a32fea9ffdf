#include "lcpir/json_io.hpp"

#include <sstream>

namespace lcpir {

namespace {

std::string tuple_key(const std::vector<std::uint32_t>& tuple) {
  std::string key;
  for (std::size_t m = 0; m < tuple.size(); ++m) {
    if (m) key += ',';
    key += std::to_string(tuple[m] + 1);
  }
  return key;
}

std::vector<std::uint32_t> parse_tuple_key(const std::string& key, std::size_t arity) {
  std::vector<std::uint32_t> tuple;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      const long v = std::stol(part);
      if (v < 1) throw ParseError("file index " + part + " must be >= 1");
      tuple.push_back(static_cast<std::uint32_t>(v - 1));
    } catch (const std::logic_error&) {
      throw ParseError("bad file key '" + key + "'");
    }
  }
  if (tuple.size() != arity) throw ParseError("file key '" + key + "' has wrong arity");
  return tuple;
}

template <typename T>
T require(const Json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  try {
    return j.at(field).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(std::string("field '") + field + "' has the wrong type");
  }
}

Json rational_to_json(const Rational& r) {
  return Json{{"num", r.num}, {"den", r.den}};
}

Rational rational_from_json(const Json& j) {
  return Rational(require<std::int64_t>(j, "num"), require<std::int64_t>(j, "den"));
}

std::vector<std::uint32_t> to_external(const std::vector<std::uint32_t>& v) {
  std::vector<std::uint32_t> out(v);
  for (auto& x : out) ++x;
  return out;
}

std::vector<std::uint32_t> from_external(std::vector<std::uint32_t> v, const char* what) {
  for (auto& x : v) {
    if (x == 0) throw ParseError(std::string(what) + " indices are 1-based");
    --x;
  }
  return v;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::uniform_random: return "random";
    case Strategy::additive_offset: return "offset";
    case Strategy::constant: return "const";
  }
  return "random";
}

Strategy strategy_from_name(const std::string& s) {
  if (s == "random") return Strategy::uniform_random;
  if (s == "offset") return Strategy::additive_offset;
  if (s == "const") return Strategy::constant;
  throw ParseError("unknown strategy '" + s + "'");
}

}  // namespace

Json database_to_json(const Database& db, std::uint64_t modulus) {
  Json files = Json::object();
  for (std::size_t i = 0; i < db.file_count(); ++i) {
    const Matrix& m = db.file(i);
    Json rows = Json::array();
    for (std::uint32_t r = 0; r < m.rows; ++r) {
      Json row = Json::array();
      for (std::uint32_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
      rows.push_back(row);
    }
    files[tuple_key(db.tuple_of(i))] = rows;
  }
  return Json{{"q", modulus},
              {"M", db.file_counts().size()},
              {"F", db.file_counts()},
              {"lambda", db.rows()},
              {"K", db.cols()},
              {"files", files}};
}

std::pair<Database, std::uint64_t> database_from_json(const Json& j) {
  const auto q = require<std::uint64_t>(j, "q");
  const auto users = require<std::uint32_t>(j, "M");
  const auto counts = require<std::vector<std::uint32_t>>(j, "F");
  const auto rows = require<std::uint32_t>(j, "lambda");
  const auto cols = require<std::uint32_t>(j, "K");
  if (counts.size() != users) throw ParseError("'F' must list one count per user");
  for (std::uint32_t f : counts) {
    if (f == 0) throw ParseError("file counts must be positive");
  }
  Database db(counts, rows, cols);
  if (!j.contains("files") || !j.at("files").is_object()) {
    throw ParseError("missing 'files' object");
  }
  std::vector<bool> seen(db.file_count(), false);
  for (const auto& [key, value] : j.at("files").items()) {
    std::size_t flat;
    try {
      flat = db.flat_index(parse_tuple_key(key, users));
    } catch (const ShapeMismatch& e) {
      throw ParseError("file key '" + key + "': " + e.what());
    }
    if (seen[flat]) throw ParseError("file '" + key + "' appears twice");
    seen[flat] = true;
    if (!value.is_array() || value.size() != rows) {
      throw ParseError("file '" + key + "' needs " + std::to_string(rows) + " rows");
    }
    Matrix& m = db.file_mut(flat);
    for (std::uint32_t r = 0; r < rows; ++r) {
      const Json& row = value.at(r);
      if (!row.is_array() || row.size() != cols) {
        throw ParseError("file '" + key + "' needs " + std::to_string(cols) + " columns");
      }
      for (std::uint32_t c = 0; c < cols; ++c) {
        std::uint64_t v;
        try {
          v = row.at(c).get<std::uint64_t>();
        } catch (const Json::exception&) {
          throw ParseError("file '" + key + "' has a non-integer entry");
        }
        if (v >= q) throw ParseError("file '" + key + "' entry outside the field");
        m.at(r, c) = static_cast<Fe>(v);
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ParseError("file '" + tuple_key(db.tuple_of(i)) + "' missing");
  }
  return {std::move(db), q};
}

Json transcript_to_json(const Transcript& tr) {
  const SystemParams& p = tr.params;
  Json params{{"servers", p.servers},
              {"users", p.users},
              {"mds_k", p.mds_k},
              {"security_x", p.security_x},
              {"collusion_t", p.collusion_t},
              {"byzantine_b", p.byzantine_b},
              {"unresponsive_u", p.unresponsive_u},
              {"file_counts", p.file_counts},
              {"server_privacy", p.server_privacy}};
  Json derived{{"recovered_per_round", tr.derived.recovered_per_round},
               {"rows", tr.derived.rows},
               {"rounds", tr.derived.rounds},
               {"file_symbols", tr.derived.file_symbols},
               {"modulus", tr.derived.modulus}};
  Json adversary{{"byzantine", to_external(tr.adversary.byzantine)},
                 {"unresponsive", to_external(tr.adversary.unresponsive)},
                 {"strategy", strategy_name(tr.adversary.strategy)},
                 {"constant", tr.adversary.constant}};
  Json rounds = Json::array();
  for (const RoundRecord& rec : tr.rounds) {
    Json answers = Json::array();
    for (const auto& a : rec.answers) {
      if (a.has_value()) {
        answers.push_back(*a);
      } else {
        answers.push_back(nullptr);
      }
    }
    rounds.push_back(Json{{"round", rec.round + 1},
                          {"queries_digest", rec.queries_digest},
                          {"answers", answers},
                          {"recovered", rec.recovered.coeffs()},
                          {"column", rec.column}});
  }
  Json retrieved = Json::array();
  for (std::uint32_t r = 0; r < tr.retrieved.rows; ++r) {
    Json row = Json::array();
    for (std::uint32_t c = 0; c < tr.retrieved.cols; ++c) row.push_back(tr.retrieved.at(r, c));
    retrieved.push_back(row);
  }
  Json metrics{{"file_symbols", tr.metrics.file_symbols},
               {"downloaded", tr.metrics.downloaded},
               {"rate", rational_to_json(tr.metrics.rate)},
               {"randomness_symbols", tr.metrics.randomness_symbols},
               {"mask_rate", rational_to_json(tr.metrics.mask_rate)},
               {"wall_ms", tr.metrics.wall_ms}};
  return Json{{"params", params},
              {"derived", derived},
              {"points_digest", tr.points_digest},
              {"seed", tr.seed},
              {"theta", to_external(tr.theta)},
              {"adversary", adversary},
              {"rounds", rounds},
              {"retrieved", retrieved},
              {"file_matches", tr.file_matches},
              {"plaintext_reads_during_answers", tr.plaintext_reads_during_answers},
              {"metrics", metrics}};
}

Transcript transcript_from_json(const Json& j) {
  Transcript tr;
  const Json& jp = j.contains("params") ? j.at("params") : throw ParseError("missing 'params'");
  tr.params.servers = require<std::uint32_t>(jp, "servers");
  tr.params.users = require<std::uint32_t>(jp, "users");
  tr.params.mds_k = require<std::uint32_t>(jp, "mds_k");
  tr.params.security_x = require<std::uint32_t>(jp, "security_x");
  tr.params.collusion_t = require<std::vector<std::uint32_t>>(jp, "collusion_t");
  tr.params.byzantine_b = require<std::uint32_t>(jp, "byzantine_b");
  tr.params.unresponsive_u = require<std::uint32_t>(jp, "unresponsive_u");
  tr.params.file_counts = require<std::vector<std::uint32_t>>(jp, "file_counts");
  tr.params.server_privacy = require<bool>(jp, "server_privacy");
  const Json& jd = j.contains("derived") ? j.at("derived") : throw ParseError("missing 'derived'");
  tr.derived.recovered_per_round = require<std::uint32_t>(jd, "recovered_per_round");
  tr.derived.rows = require<std::uint32_t>(jd, "rows");
  tr.derived.rounds = require<std::uint32_t>(jd, "rounds");
  tr.derived.file_symbols = require<std::uint32_t>(jd, "file_symbols");
  tr.derived.modulus = require<std::uint64_t>(jd, "modulus");
  tr.points_digest = require<std::uint64_t>(j, "points_digest");
  tr.seed = require<std::uint64_t>(j, "seed");
  tr.theta = from_external(require<std::vector<std::uint32_t>>(j, "theta"), "theta");
  const Json& ja =
      j.contains("adversary") ? j.at("adversary") : throw ParseError("missing 'adversary'");
  tr.adversary.byzantine =
      from_external(require<std::vector<std::uint32_t>>(ja, "byzantine"), "server");
  tr.adversary.unresponsive =
      from_external(require<std::vector<std::uint32_t>>(ja, "unresponsive"), "server");
  tr.adversary.strategy = strategy_from_name(require<std::string>(ja, "strategy"));
  tr.adversary.constant = require<Fe>(ja, "constant");
  if (!j.contains("rounds") || !j.at("rounds").is_array()) throw ParseError("missing 'rounds'");
  for (const Json& jr : j.at("rounds")) {
    RoundRecord rec;
    const auto round = require<std::uint32_t>(jr, "round");
    if (round == 0) throw ParseError("round indices are 1-based");
    rec.round = round - 1;
    rec.queries_digest = require<std::uint64_t>(jr, "queries_digest");
    if (!jr.contains("answers") || !jr.at("answers").is_array()) {
      throw ParseError("round missing 'answers'");
    }
    for (const Json& a : jr.at("answers")) {
      if (a.is_null()) {
        rec.answers.push_back(std::nullopt);
      } else {
        rec.answers.push_back(a.get<Fe>());
      }
    }
    rec.recovered = Poly(require<std::vector<Fe>>(jr, "recovered"));
    rec.column = require<std::vector<Fe>>(jr, "column");
    tr.rounds.push_back(std::move(rec));
  }
  if (!j.contains("retrieved") || !j.at("retrieved").is_array()) {
    throw ParseError("missing 'retrieved'");
  }
  const Json& jm = j.at("retrieved");
  const std::uint32_t rows = static_cast<std::uint32_t>(jm.size());
  const std::uint32_t cols = rows ? static_cast<std::uint32_t>(jm.at(0).size()) : 0;
  tr.retrieved = Matrix(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    if (jm.at(r).size() != cols) throw ParseError("'retrieved' is ragged");
    for (std::uint32_t c = 0; c < cols; ++c) tr.retrieved.at(r, c) = jm.at(r).at(c).get<Fe>();
  }
  tr.file_matches = require<bool>(j, "file_matches");
  tr.plaintext_reads_during_answers = require<std::uint64_t>(j, "plaintext_reads_during_answers");
  const Json& jmet = j.contains("metrics") ? j.at("metrics") : throw ParseError("missing 'metrics'");
  tr.metrics.file_symbols = require<std::uint64_t>(jmet, "file_symbols");
  tr.metrics.downloaded = require<std::uint64_t>(jmet, "downloaded");
  tr.metrics.rate = rational_from_json(jmet.at("rate"));
  tr.metrics.randomness_symbols = require<std::uint64_t>(jmet, "randomness_symbols");
  tr.metrics.mask_rate = rational_from_json(jmet.at("mask_rate"));
  tr.metrics.wall_ms = require<double>(jmet, "wall_ms");
  return tr;
}

Json report_to_json(const AuditReport& r) {
  return Json{{"name", r.name},
              {"mode", r.mode == AuditMode::algebraic ? "algebraic" : "statistical"},
              {"verdict", r.pass ? "pass" : "fail"},
              {"seed", r.seed},
              {"evidence", r.evidence}};
}

}  // namespace lcpir
