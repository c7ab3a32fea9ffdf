#pragma once

#include <cstdint>
#include <utility>

#include <json.hpp>

#include "lcpir/audit.hpp"
#include "lcpir/harness.hpp"
#include "lcpir/storage.hpp"

namespace lcpir {

/// External JSON conventions: server, user, round and file indices are all
/// 1-based; internal structures are 0-based throughout.

Json database_to_json(const Database& db, std::uint64_t modulus);

/// Returns the database and the modulus recorded with it.
std::pair<Database, std::uint64_t> database_from_json(const Json& j);

Json transcript_to_json(const Transcript& tr);
Transcript transcript_from_json(const Json& j);

Json report_to_json(const AuditReport& r);

}  // namespace lcpir
