#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcpir/harness.hpp"
#include "lcpir/parallel.hpp"
#include "lcpir/params.hpp"

namespace lcpir {

using Json = nlohmann::ordered_json;

enum class AuditMode { algebraic, statistical };

struct AuditReport {
  std::string name;
  AuditMode mode = AuditMode::algebraic;
  bool pass = false;
  std::uint64_t seed = 0;
  Json evidence;
};

struct AuditOptions {
  std::uint32_t trials = 5000;
  std::uint64_t seed = 1;
  double significance = 0.01;
  Exec exec = Exec::parallel;
  /// Subset sweeps are exhaustive up to this many subsets, sampled beyond.
  std::uint64_t subset_cap = 20000;
};

/// Layout conditions on the public points.
AuditReport audit_points(const SystemParams& p, const DerivedParams& d,
                         const PublicPoints& pts);

/// Storage confidentiality against any security_x servers. Algebraic: the
/// noise-to-share map of every such server subset has full rank, so shares
/// are a bijective image of the noise. Statistical: shares of a fixed
/// database are uniform across fresh encodings.
std::vector<AuditReport> audit_x_security(const SystemParams& p, const DerivedParams& d,
                                          const PublicPoints& pts, const Field& f,
                                          const AuditOptions& opt);

/// Index confidentiality against any collusion_t[user] servers. Algebraic:
/// the noise-to-query map of every such subset has full rank. Statistical:
/// query values are uniform and indistinguishable across desired indices.
std::vector<AuditReport> audit_user_privacy(const SystemParams& p, const DerivedParams& d,
                                            const PublicPoints& pts, const Field& f,
                                            std::uint32_t user, const AuditOptions& opt);

/// Database confidentiality beyond the desired file. Holds every noise
/// source fixed except the answer masks and one probed undesired symbol,
/// re-randomizes both across full protocol runs, then tests the decoded
/// answers' residual evaluations for uniformity and for independence from
/// the probed symbol. With masking off the residuals are a deterministic
/// function of the probe and the test fails, which is the power check.
std::vector<AuditReport> audit_server_privacy(const SystemParams& p, const DerivedParams& d,
                                              const PublicPoints& pts, const Field& f,
                                              const AuditOptions& opt);

/// Exact rational comparison of the transcript's measured download rate
/// and mask rate against their closed forms.
AuditReport audit_rates(const Transcript& tr);

}  // namespace lcpir
