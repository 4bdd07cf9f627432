#pragma once

// Claim manifests and the regression runner behind `fixspace verify`.
//
// Text format, one claim per [[claim]] block:
//
//   [[claim]]
//   id = mersenne-3
//   kind = bound
//   module = (deleted (perm AGL1_8) :field (gf 7))
//   source = stated
//   anchor = mersenne-sharpness
//   expect.min_semisimple_fixdim = 3
//   expect.classes_checked >= 1
//
// Keys are `name = value`; expectations may use =, >= or <= (the last two
// compare integers). `#` starts a comment line. A claim with
// `scale = beyond_desk` is documented but never run.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fixspace {

class GroupLibrary;

struct Expectation {
  enum class Op { Eq, Ge, Le };
  std::string key;
  Op op = Op::Eq;
  std::string value;
};

struct Claim {
  std::string id;
  std::string kind;  // triple pair exception bound scott weights phi example
  std::size_t line = 0;
  std::map<std::string, std::string> inputs;
  std::vector<Expectation> expect;
  std::string source;  // stated | derived
  std::string anchor;  // required for stated claims
  bool beyond_desk = false;
};

struct Manifest {
  std::vector<Claim> claims;
};

// Throws Parse with the offending line number in the message.
Manifest parse_manifest(std::string_view text);
// Throws Io, Parse.
Manifest load_manifest(const std::filesystem::path& path);

enum class ClaimVerdict { Pass, Fail, Unverified };
std::string_view claim_verdict_name(ClaimVerdict v) noexcept;

struct ClaimOutcome {
  std::string id;
  std::string kind;
  ClaimVerdict verdict = ClaimVerdict::Fail;
  std::vector<std::pair<std::string, std::string>> observed;  // run order
  std::vector<std::string> mismatches;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;  // claim-level pool; results do not depend on it
  std::optional<std::filesystem::path> cache_dir;
};

// Runs every claim; outcomes come back in manifest order. Errors raised
// while running a claim turn it into a FAIL carrying an `error` line.
std::vector<ClaimOutcome> run_manifest(const Manifest& m, GroupLibrary& lib, const VerifyOptions& opt);
ClaimOutcome run_claim(const Claim& c, GroupLibrary& lib, const VerifyOptions& opt);

// Stable `key = value` report.
std::string format_report(const std::vector<ClaimOutcome>& outcomes, std::uint64_t seed);
bool report_passes(const std::vector<ClaimOutcome>& outcomes);

// The manifest shipped with the tool: every catalog claim.
std::string_view default_manifest();

} // namespace fixspace
