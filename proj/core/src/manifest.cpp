#include "fixspace/manifest.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "fixspace/bounds.hpp"
#include "fixspace/chartab.hpp"
#include "fixspace/error.hpp"
#include "fixspace/gensearch.hpp"
#include "fixspace/library.hpp"
#include "fixspace/weights.hpp"

namespace fixspace {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::Parse, "manifest line " + std::to_string(line) + ": " + msg);
}

const std::set<std::string, std::less<>> kKinds = {"triple", "pair", "exception", "bound",
                                                   "scott",  "weights", "phi", "example"};

void validate(const Claim& c, std::set<std::string>& ids) {
  if (c.id.empty()) parse_fail(c.line, "claim without id");
  if (!ids.insert(c.id).second) parse_fail(c.line, "duplicate id '" + c.id + "'");
  if (!kKinds.count(c.kind)) parse_fail(c.line, "unknown kind '" + c.kind + "'");
  if (c.source != "stated" && c.source != "derived") parse_fail(c.line, "source must be stated or derived");
  if (c.source == "stated" && c.anchor.empty()) parse_fail(c.line, "stated claim needs an anchor");
}

std::uint64_t to_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::InvalidArgument, std::string(what) + ": expected an unsigned integer, got '" + std::string(s) + "'");
  return v;
}

std::optional<std::int64_t> to_i64(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::int64_t> to_list(std::string_view s, std::string_view what) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    const auto v = to_i64(s.substr(start, comma - start));
    if (!v) throw Error(Errc::InvalidArgument, std::string(what) + ": bad integer list '" + std::string(s) + "'");
    out.push_back(*v);
    start = comma + 1;
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string yes(bool b) { return b ? "true" : "false"; }

// "7" or "5^2"
FieldCtx field_from(std::string_view s) {
  const auto caret = s.find('^');
  if (caret == std::string_view::npos) return make_field(to_u64(s, "field"));
  return make_field(to_u64(s.substr(0, caret), "field"), static_cast<unsigned>(to_u64(s.substr(caret + 1), "field")));
}

class Runner {
public:
  Runner(const Claim& c, GroupLibrary& lib, const VerifyOptions& opt) : c_(c), lib_(lib), opt_(opt) {}

  ClaimOutcome run() {
    out_.id = c_.id;
    out_.kind = c_.kind;
    if (c_.beyond_desk) {
      out_.verdict = ClaimVerdict::Unverified;
      obs("reason", "beyond_desk_scale");
      return std::move(out_);
    }
    try {
      dispatch();
    } catch (const std::exception& e) {
      obs("error", e.what());
      out_.mismatches.push_back("claim raised an error");
    }
    compare();
    out_.verdict = out_.mismatches.empty() ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    return std::move(out_);
  }

private:
  const std::string& in(const std::string& key) const {
    const auto it = c_.inputs.find(key);
    if (it == c_.inputs.end()) throw Error(Errc::InvalidArgument, "claim '" + c_.id + "' needs input '" + key + "'");
    return it->second;
  }
  bool has(const std::string& key) const { return c_.inputs.count(key) > 0; }
  std::uint64_t num(const std::string& key) const { return to_u64(in(key), key); }
  std::uint64_t num_or(const std::string& key, std::uint64_t dflt) const { return has(key) ? num(key) : dflt; }

  void obs(std::string key, std::string value) { out_.observed.emplace_back(std::move(key), std::move(value)); }
  void obs(std::string key, std::uint64_t value) { obs(std::move(key), std::to_string(value)); }

  void dispatch() {
    if (c_.kind == "triple") return triple();
    if (c_.kind == "pair") return pair();
    if (c_.kind == "exception") return exception();
    if (c_.kind == "bound") return bound();
    if (c_.kind == "scott") return scott();
    if (c_.kind == "weights") return weights();
    if (c_.kind == "phi") return obs("phi_star", phi_star(static_cast<unsigned>(num("n")), num("q")));
    return example();
  }

  SearchOptions search_options() const {
    SearchOptions o;
    o.budget = num_or("budget", o.budget);
    o.seed = opt_.seed;
    o.workers = 1;
    return o;
  }

  void triple() {
    const auto G = lib_.group(in("group"));
    SearchOptions o = search_options();
    if (has("orders")) {
      const auto v = to_list(in("orders"), "orders");
      if (v.size() != 3) throw Error(Errc::InvalidArgument, "orders needs three entries");
      o.triple_orders = std::array<std::uint64_t, 3>{static_cast<std::uint64_t>(v[0]), static_cast<std::uint64_t>(v[1]),
                                                      static_cast<std::uint64_t>(v[2])};
    }
    const TripleCertificate c = find_triple(*G, num("p"), o);
    obs("verdict", std::string(verdict_name(c.verdict)));
    obs("orders", join(std::vector<std::uint64_t>(c.orders.begin(), c.orders.end())));
    obs("subgroup_order", c.subgroup_order);
    obs("group_order", G->order());
    obs("certified", yes(verify_certificate(*G, c)));
  }

  void pair() {
    const auto G = lib_.group(in("group"));
    SearchOptions o = search_options();
    if (has("order")) o.element_order = num("order");
    const PairCertificate c = find_conjugate_pair(*G, num("p"), o);
    obs("verdict", std::string(verdict_name(c.verdict)));
    obs("order", c.order);
    obs("subgroup_order", c.subgroup_order);
    obs("certified", yes(verify_certificate(*G, c)));
  }

  void exception() {
    const auto G = lib_.group(in("group"));
    const ExhaustiveResult r = exhaustive_triple_search(*G, num("p"));
    obs("completeness", std::string(completeness_name(r.verdict)));
    obs("class_triples", r.class_triples);
    obs("pruned_by_count", r.pruned_by_count);
    obs("pairs_tested", r.pairs_tested);
  }

  void bound() {
    const MatRep R = build_rep(parse_module_spec(in("module")), lib_);
    const BoundReport rep = check_bound_theorems(R);
    obs("dim", rep.n);
    obs("p", rep.p);
    obs("group_order", rep.group_order);
    obs("min_semisimple_fixdim", rep.min.dim);
    obs("witness_order", rep.min.witness ? rep.min.witness->order : 1);
    obs("classes_checked", rep.min.per_class.size());
    for (const auto& cl : rep.clauses)
      obs("clause." + cl.id, !cl.applicable ? "not_applicable" : cl.satisfied ? "satisfied" : "violated");
    obs("all_clauses", yes(rep.all_satisfied()));
  }

  void scott() {
    const MatRep R = build_rep(parse_module_spec(in("module")), lib_);
    const std::uint64_t pairs = num_or("pairs", 1000);
    SeedStream rng = SeedStream::fork(opt_.seed, 0);
    std::uint64_t violations = 0, tight = 0;
    for (std::uint64_t i = 0; i < pairs; ++i) {
      const Perm x = R.group().random_element(rng);
      const Perm y = R.group().random_element(rng);
      const ScottRecord s = scott_check(R, x, y);
      violations += !s.holds;
      tight += s.lhs == s.rhs;
    }
    obs("pairs", pairs);
    obs("violations", violations);
    obs("tight", tight);
  }

  void weights() {
    const std::string check = has("check") ? in("check") : "dim";
    const std::size_t samples = num_or("samples", 20);
    if (check == "dim") {
      const RootSystem rs = RootSystem::parse(in("type"));
      const Weight lambda = to_list(in("lambda"), "lambda");
      const WeightMultiset w = weight_multiset(rs, lambda);
      obs("weyl_dim", weyl_dim(rs, lambda));
      obs("freudenthal_total", w.total());
      obs("distinct_weights", w.entries.size());
      obs("zero_weight_mult", w.multiplicity(Weight(rs.rank(), 0)));
      return;
    }
    if (check == "sl2") {
      const Sl2EigenReport r = sl2_distinct_eigenvalues(num("q"), static_cast<unsigned>(num("s")));
      obs("distinct", yes(r.distinct));
      obs("predicted_distinct", yes(r.predicted_distinct));
      obs("agrees", yes(r.distinct == r.predicted_distinct));
      return;
    }
    const FieldCtx F = field_from(in("field"));
    DivisibilityReport r;
    if (check == "sym") {
      const auto n = static_cast<unsigned>(num("n"));
      r = check_sym_divisibility(n, static_cast<unsigned>(num("s")), F, torus_samples(F, n - 1, samples, opt_.seed));
    } else if (check == "twist") {
      const RootSystem rs = RootSystem::parse(in("type"));
      r = check_twist_divisibility(rs, to_list(in("lambda0"), "lambda0"), to_list(in("lambda1"), "lambda1"), F.p(), F,
                                   torus_samples(F, rs.rank(), samples, opt_.seed));
    } else if (check == "cartan") {
      const RootSystem rs = RootSystem::parse(in("type"));
      r = check_cartan_mult(rs, to_list(in("lambda"), "lambda"), to_list(in("mu"), "mu"), F,
                            torus_samples(F, rs.rank(), samples, opt_.seed));
    } else {
      throw Error(Errc::InvalidArgument, "unknown weights check '" + check + "'");
    }
    obs("verdict", std::string(check_verdict_name(r.verdict)));
    obs("containment", yes(r.containment));
    obs("samples", r.samples);
    obs("samples_dividing", r.samples_dividing);
  }

  void example() {
    const std::string& name = in("name");
    if (name == "mersenne") {
      const MersenneReport r = mersenne_check(static_cast<unsigned>(num("a")), lib_);
      std::set<std::size_t> values;
      for (const auto& c : r.per_class) values.insert(c.fixdim);
      obs("p", r.p);
      obs("dim", r.n);
      obs("irreducible", yes(r.irreducible));
      obs("fixdims", join(std::vector<std::size_t>(values.begin(), values.end())));
      obs("sharp", yes(r.sharp));
    } else if (name == "sl_adjoint") {
      const AdjointReport r = sl_p_adjoint_check(num("p"), lib_);
      obs("dim_w", r.dim_w);
      obs("factor_dims", join(r.factor_dims));
      obs("dim_v", r.dim_v);
      obs("section_irreducible", yes(r.section_irreducible));
      obs("min_fix_w", r.min_fix_w);
      obs("min_fix_v", r.min_fix_v);
      obs("holds", yes(r.holds));
    } else if (name == "free_cyclic") {
      const MatRep R = build_rep(parse_module_spec(in("module")), lib_);
      const auto cls = free_cyclic_class(R, conjugacy_classes(R.group()), num("r"));
      obs("free", yes(cls.has_value()));
    } else if (name == "fpf") {
      const auto G = lib_.group(in("group"));
      const Perm g = find_fpf_prime_power_element(*G, num_or("budget", 10'000), opt_.seed);
      obs("order", element_order(g));
      obs("fixed_points", g.fixed_points());
    } else if (name == "table") {
      const auto G = lib_.group(in("group"));
      const ConjugacyClasses classes = conjugacy_classes(*G);
      const CharTable T =
          opt_.cache_dir ? character_table_cached(*G, classes, *opt_.cache_dir) : character_table(*G, classes);
      std::vector<std::uint64_t> deg = T.degrees;
      std::sort(deg.begin(), deg.end());
      std::uint64_t squares = 0;
      for (auto d : deg) squares += d * d;
      bool orth = true;
      for (std::size_t i = 0; i < T.num_characters(); ++i)
        for (std::size_t j = 0; j < T.num_characters(); ++j)
          orth = orth && row_inner_product(T, i, j) == static_cast<std::int64_t>(i == j ? G->order() : 0);
      obs("group_order", G->order());
      obs("classes", T.num_classes());
      obs("degrees", join(deg));
      obs("sum_squares", squares);
      obs("orthogonal", yes(orth));
    } else {
      throw Error(Errc::InvalidArgument, "unknown example '" + name + "'");
    }
  }

  void compare() {
    for (const Expectation& e : c_.expect) {
      const auto it = std::find_if(out_.observed.begin(), out_.observed.end(),
                                   [&](const auto& kv) { return kv.first == e.key; });
      if (it == out_.observed.end()) {
        out_.mismatches.push_back(e.key + ": not observed");
        continue;
      }
      bool ok = false;
      if (e.op == Expectation::Op::Eq) {
        ok = it->second == e.value;
      } else {
        const auto have = to_i64(it->second), want = to_i64(e.value);
        ok = have && want && (e.op == Expectation::Op::Ge ? *have >= *want : *have <= *want);
      }
      if (!ok) {
        const char* op = e.op == Expectation::Op::Eq ? "" : e.op == Expectation::Op::Ge ? ">= " : "<= ";
        out_.mismatches.push_back(e.key + ": expected " + op + e.value + ", observed " + it->second);
      }
    }
  }

  const Claim& c_;
  GroupLibrary& lib_;
  const VerifyOptions& opt_;
  ClaimOutcome out_;
};

} // namespace

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  std::set<std::string> ids;
  Claim* cur = nullptr;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (line == "[[claim]]") {
      if (cur) validate(*cur, ids);
      m.claims.emplace_back();
      cur = &m.claims.back();
      cur->line = lineno;
      continue;
    }
    if (!cur) parse_fail(lineno, "expected [[claim]] before keys");
    std::size_t k = 0;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])) && line[k] != '=' && line[k] != '<' &&
           line[k] != '>')
      ++k;
    const std::string key(line.substr(0, k));
    std::string_view rest = trim(line.substr(k));
    Expectation::Op op = Expectation::Op::Eq;
    if (rest.starts_with(">=")) {
      op = Expectation::Op::Ge;
      rest.remove_prefix(2);
    } else if (rest.starts_with("<=")) {
      op = Expectation::Op::Le;
      rest.remove_prefix(2);
    } else if (rest.starts_with("=")) {
      rest.remove_prefix(1);
    } else {
      parse_fail(lineno, "expected '=' after '" + key + "'");
    }
    if (key.empty()) parse_fail(lineno, "missing key");
    std::string value(trim(rest));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.starts_with("expect.")) {
      if (key.size() == 7) parse_fail(lineno, "empty expectation key");
      if (op != Expectation::Op::Eq && !to_i64(value)) parse_fail(lineno, "ordered comparison needs an integer");
      cur->expect.push_back({key.substr(7), op, value});
      continue;
    }
    if (op != Expectation::Op::Eq) parse_fail(lineno, "only expectations may use >= or <=");
    if (key == "id") cur->id = value;
    else if (key == "kind") cur->kind = value;
    else if (key == "source") cur->source = value;
    else if (key == "anchor") cur->anchor = value;
    else if (key == "scale") {
      if (value != "beyond_desk") parse_fail(lineno, "scale must be beyond_desk");
      cur->beyond_desk = true;
    } else if (!cur->inputs.emplace(key, value).second) {
      parse_fail(lineno, "repeated key '" + key + "'");
    }
  }
  if (cur) validate(*cur, ids);
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::string_view claim_verdict_name(ClaimVerdict v) noexcept {
  switch (v) {
    case ClaimVerdict::Pass: return "PASS";
    case ClaimVerdict::Fail: return "FAIL";
    case ClaimVerdict::Unverified: return "UNVERIFIED";
  }
  return "?";
}

ClaimOutcome run_claim(const Claim& c, GroupLibrary& lib, const VerifyOptions& opt) {
  return Runner(c, lib, opt).run();
}

std::vector<ClaimOutcome> run_manifest(const Manifest& m, GroupLibrary& lib, const VerifyOptions& opt) {
  std::vector<ClaimOutcome> out(m.claims.size());
  const unsigned W = std::max(1U, std::min<unsigned>(opt.workers, static_cast<unsigned>(m.claims.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < m.claims.size();) out[i] = run_claim(m.claims[i], lib, opt);
  };
  if (W == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < W; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::string format_report(const std::vector<ClaimOutcome>& outcomes, std::uint64_t seed) {
  std::ostringstream os;
  std::size_t pass = 0, fail = 0, unverified = 0;
  os << "report = verify\nseed = " << seed << "\nclaims = " << outcomes.size() << "\n";
  for (const ClaimOutcome& o : outcomes) {
    os << "\n[claim " << o.id << "]\nkind = " << o.kind << "\nstatus = " << claim_verdict_name(o.verdict) << "\n";
    for (const auto& [k, v] : o.observed) os << k << " = " << v << "\n";
    for (const auto& mm : o.mismatches) os << "mismatch = " << mm << "\n";
    pass += o.verdict == ClaimVerdict::Pass;
    fail += o.verdict == ClaimVerdict::Fail;
    unverified += o.verdict == ClaimVerdict::Unverified;
  }
  os << "\n[summary]\npass = " << pass << "\nfail = " << fail << "\nunverified = " << unverified << "\n";
  return os.str();
}

bool report_passes(const std::vector<ClaimOutcome>& outcomes) {
  return std::none_of(outcomes.begin(), outcomes.end(),
                      [](const ClaimOutcome& o) { return o.verdict == ClaimVerdict::Fail; });
}

} // namespace fixspace
