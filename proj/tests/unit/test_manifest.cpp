#include "doctest.h"

#include <fixspace/error.hpp>
#include <fixspace/library.hpp>
#include <fixspace/manifest.hpp>

#include <string>

using namespace fixspace;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Inconclusive;  // sentinel: nothing thrown
}

std::string error_text(std::string_view text) {
  try {
    parse_manifest(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<ClaimOutcome> run(std::string_view text, unsigned workers = 1) {
  GroupLibrary lib;
  VerifyOptions o;
  o.workers = workers;
  return run_manifest(parse_manifest(text), lib, o);
}

const char* kMersenneWrong = R"(
[[claim]]
id = mersenne-wrong
kind = bound
module = (deleted (perm AGL1_8) :field (gf 7))
source = derived
expect.min_semisimple_fixdim = 2
)";

} // namespace

TEST_CASE("manifest parsing") {
  const Manifest m = parse_manifest(R"(
# comment
[[claim]]
id = a
kind = phi
n = 4
q = "2"
source = stated
anchor = x
expect.phi_star = 5
expect.phi_star >= 1

[[claim]]
id = b
kind = triple
group = O7_3
scale = beyond_desk
source = derived
)");
  REQUIRE(m.claims.size() == 2);
  CHECK(m.claims[0].inputs.at("q") == "2");
  CHECK(m.claims[0].expect.size() == 2);
  CHECK(m.claims[0].expect[1].op == Expectation::Op::Ge);
  CHECK(m.claims[0].line == 3);
  CHECK(m.claims[1].beyond_desk);

  CHECK(parse_manifest("").claims.empty());
  CHECK(parse_manifest("# only comments\n\n").claims.empty());

  CHECK(error_text("id = x\n").find("line 1") != std::string::npos);
  CHECK(error_text("[[claim]]\nid = a\nkind = phi\nsource = derived\n[[claim]]\nid = a\nkind = phi\nsource = derived\n")
            .find("duplicate") != std::string::npos);
  CHECK(error_text("[[claim]]\nid = a\nkind = nonsense\nsource = derived\n").find("unknown kind") != std::string::npos);
  CHECK(error_text("[[claim]]\nid = a\nkind = phi\nsource = stated\n").find("anchor") != std::string::npos);
  CHECK(error_text("[[claim]]\nid = a\nkind = phi\nsource = derived\nn 4\n").find("line 5") != std::string::npos);
  CHECK(error_text("[[claim]]\nid = a\nkind = phi\nsource = derived\nexpect.x >= big\n").find("integer") !=
        std::string::npos);
  CHECK(error_text("[[claim]]\nid = a\nkind = phi\nsource = derived\nscale = small\n").find("beyond_desk") !=
        std::string::npos);
  CHECK(code_of([] { load_manifest("/nonexistent/claims.manifest"); }) == Errc::Io);
}

TEST_CASE("empty manifest passes with an empty report") {
  const auto out = run("");
  CHECK(out.empty());
  CHECK(report_passes(out));
  CHECK(format_report(out, 1).find("claims = 0") != std::string::npos);
}

TEST_CASE("wrong expectation fails with the observed value") {
  const auto out = run(kMersenneWrong);
  REQUIRE(out.size() == 1);
  CHECK(out[0].verdict == ClaimVerdict::Fail);
  REQUIRE(out[0].mismatches.size() == 1);
  CHECK(out[0].mismatches[0] == "min_semisimple_fixdim: expected 2, observed 3");
  CHECK_FALSE(report_passes(out));
}

TEST_CASE("claims that raise errors fail, beyond-desk claims are unverified") {
  const auto out = run(R"(
[[claim]]
id = missing-group
kind = triple
group = NoSuchGroup
p = 2
source = derived
expect.verdict = generates

[[claim]]
id = big
kind = triple
group = O7_3
scale = beyond_desk
source = derived
expect.verdict = generates

[[claim]]
id = unobserved
kind = phi
n = 6
q = 2
source = derived
expect.nothing = 1
)");
  REQUIRE(out.size() == 3);
  CHECK(out[0].verdict == ClaimVerdict::Fail);
  CHECK(out[0].observed.at(0).first == "error");
  CHECK(out[1].verdict == ClaimVerdict::Unverified);
  CHECK(out[2].verdict == ClaimVerdict::Fail);
  CHECK(out[2].mismatches[0] == "nothing: not observed");
  CHECK_FALSE(report_passes(out));
  CHECK(report_passes({out[1]}));
}

TEST_CASE("ordered expectations") {
  const auto out = run(R"(
[[claim]]
id = ge
kind = phi
n = 6
q = 3
source = derived
expect.phi_star >= 7
expect.phi_star <= 7

[[claim]]
id = le
kind = phi
n = 6
q = 3
source = derived
expect.phi_star <= 6
)");
  CHECK(out[0].verdict == ClaimVerdict::Pass);
  CHECK(out[1].verdict == ClaimVerdict::Fail);
  CHECK(out[1].mismatches[0] == "phi_star: expected <= 6, observed 7");
}

TEST_CASE("report order and bytes do not depend on the worker count") {
  const std::string text = std::string(kMersenneWrong) + R"(
[[claim]]
id = t
kind = triple
group = A6
p = 5
orders = 4,4,4
source = derived
expect.verdict = generates

[[claim]]
id = s
kind = scott
module = (deleted (perm A5) :field (gf 7))
pairs = 200
source = derived
expect.violations = 0
)";
  const auto one = run(text, 1);
  const auto three = run(text, 3);
  CHECK(format_report(one, 1) == format_report(three, 1));
  CHECK(one[1].id == "t");
  CHECK(one[1].verdict == ClaimVerdict::Pass);
  CHECK(one[2].verdict == ClaimVerdict::Pass);
}

TEST_CASE("built-in manifest parses and documents large groups") {
  const Manifest m = parse_manifest(default_manifest());
  CHECK(m.claims.size() > 200);
  std::size_t beyond = 0, stated = 0;
  for (const auto& c : m.claims) {
    beyond += c.beyond_desk;
    stated += c.source == "stated";
  }
  CHECK(beyond == 9);
  CHECK(stated > 0);
}
