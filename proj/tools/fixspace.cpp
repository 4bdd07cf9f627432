#include <CLI11.hpp>

#include <fixspace/bounds.hpp>
#include <fixspace/chartab.hpp>
#include <fixspace/error.hpp>
#include <fixspace/gensearch.hpp>
#include <fixspace/library.hpp>
#include <fixspace/manifest.hpp>
#include <fixspace/weights.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fixspace;

namespace {

// Human-readable lines first, then the stable `key = value` block.
class Output {
public:
  explicit Output(bool records_only) : records_only_(records_only) {}

  std::ostream& human() { return human_; }
  template <class T>
  void rec(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    records_.emplace_back(key, os.str());
  }
  void flush() {
    if (!records_only_ && !human_.str().empty()) std::cout << human_.str() << "\n";
    for (const auto& [k, v] : records_) std::cout << k << " = " << v << "\n";
    std::cout.flush();
  }

private:
  bool records_only_;
  std::ostringstream human_;
  std::vector<std::pair<std::string, std::string>> records_;
};

struct Common {
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string cache_dir;
  std::uint64_t budget = 100'000;
  std::string format = "plain";
  std::vector<std::string> lib_files;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::Io, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    out += line + "\n";
  }
  return out;
}

// Registers a .grp or .mat file and returns the group name inside it.
std::string register_file(GroupLibrary& lib, const fs::path& p) {
  const std::string text = read_file(p);
  if (p.extension() == ".mat") {
    MatGroupSpec spec = parse_matgroup(text);
    std::string name = spec.name;
    lib.add_matgroup(std::move(spec));
    return name;
  }
  GroupSpec spec = parse_group_spec(text);
  std::string name = spec.name;
  lib.add_group(std::move(spec));
  return name;
}

// A path to a .grp/.mat file, or a library name.
std::string resolve_group(GroupLibrary& lib, const std::string& arg) {
  const fs::path p(arg);
  if (p.extension() == ".grp" || p.extension() == ".mat") {
    if (!fs::exists(p)) throw Error(Errc::Io, "no such group file " + arg);
    lib.add_search_dir(p.has_parent_path() ? p.parent_path() : fs::path("."));
    return register_file(lib, p);
  }
  return arg;
}

// A path to a .mod file or inline recipe text.
ModuleSpec resolve_module(GroupLibrary& lib, const std::string& arg) {
  const fs::path p(arg);
  if (p.extension() == ".mod") {
    if (!fs::exists(p)) throw Error(Errc::Io, "no such module file " + arg);
    lib.add_search_dir(p.has_parent_path() ? p.parent_path() : fs::path("."));
    return parse_module_spec(strip_comments(read_file(p)));
  }
  return parse_module_spec(arg);
}

void load_lib_files(GroupLibrary& lib, const Common& c) {
  for (const auto& f : c.lib_files) register_file(lib, f);
}

std::uint64_t need_seed(const Common& c, const char* cmd) {
  if (!c.seed) throw CLI::RequiredError(std::string("--seed (") + cmd + " is randomized)");
  return *c.seed;
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stoll(item, &used));
    if (used != item.size()) throw Error(Errc::InvalidArgument, "bad integer list '" + s + "'");
  }
  return out;
}

FieldCtx parse_field(const std::string& s) {
  const auto caret = s.find('^');
  if (caret == std::string::npos) return make_field(std::stoull(s));
  return make_field(std::stoull(s.substr(0, caret)), static_cast<unsigned>(std::stoul(s.substr(caret + 1))));
}

void cmd_table(const Common& c, const std::string& group) {
  GroupLibrary lib;
  load_lib_files(lib, c);
  const auto G = lib.group(resolve_group(lib, group));
  const ConjugacyClasses classes = conjugacy_classes(*G);
  const CharTable T = c.cache_dir.empty() ? character_table(*G, classes)
                                          : character_table_cached(*G, classes, c.cache_dir);
  Output out(c.format == "records");
  auto& h = out.human();
  h << "character table of " << group << ", order " << G->order() << ", " << T.num_classes() << " classes\n";
  h << "class sizes:";
  for (auto s : T.class_sizes) h << " " << s;
  h << "\nelement orders:";
  for (auto o : T.class_orders) h << " " << o;
  h << "\n";
  for (std::size_t i = 0; i < T.num_characters(); ++i) {
    h << "chi" << i << ":";
    for (std::size_t j = 0; j < T.num_classes(); ++j) h << " " << cyclo::to_string(T.values[i][j], T.exponent);
    h << "\n";
  }
  std::vector<std::uint64_t> deg = T.degrees;
  std::sort(deg.begin(), deg.end());
  std::uint64_t squares = 0;
  for (auto d : deg) squares += d * d;
  out.rec("group_order", G->order());
  out.rec("classes", T.num_classes());
  out.rec("exponent", T.exponent);
  out.rec("degrees", join_u64(deg));
  out.rec("sum_squares", squares);
  out.flush();
}

void triple_records(Output& out, const PermGroup& G, const TripleCertificate& t) {
  out.rec("orders", join_u64({t.orders[0], t.orders[1], t.orders[2]}));
  out.rec("x", t.x.to_cycle_string());
  out.rec("y", t.y.to_cycle_string());
  out.rec("z", t.z.to_cycle_string());
  out.rec("subgroup_order", t.subgroup_order);
  out.rec("certified", verify_certificate(G, t) ? "true" : "false");
}

void cmd_triples(const Common& c, const std::string& group, std::uint64_t p, bool exhaustive,
                 const std::string& orders) {
  GroupLibrary lib;
  load_lib_files(lib, c);
  const auto G = lib.group(resolve_group(lib, group));
  Output out(c.format == "records");
  out.rec("group", group);
  out.rec("group_order", G->order());
  out.rec("p", p);
  if (exhaustive) {
    const ExhaustiveResult r = exhaustive_triple_search(*G, p);
    out.human() << "exhaustive search over " << r.class_triples << " p'-class triples ("
                << r.pruned_by_count << " ruled out by structure constants, " << r.pairs_tested
                << " products tested)\n";
    out.rec("verdict", completeness_name(r.verdict));
    out.rec("class_triples", r.class_triples);
    out.rec("pruned_by_count", r.pruned_by_count);
    out.rec("pairs_tested", r.pairs_tested);
    if (r.witness) triple_records(out, *G, *r.witness);
    out.flush();
    return;
  }
  SearchOptions o;
  o.seed = need_seed(c, "triples");
  o.budget = c.budget;
  o.workers = c.workers;
  if (!orders.empty()) {
    const auto v = parse_list(orders);
    if (v.size() != 3) throw Error(Errc::InvalidArgument, "--orders needs three entries");
    o.triple_orders = std::array<std::uint64_t, 3>{static_cast<std::uint64_t>(v[0]), static_cast<std::uint64_t>(v[1]),
                                                    static_cast<std::uint64_t>(v[2])};
  }
  const TripleCertificate t = find_triple(*G, p, o);
  out.human() << "randomized search, " << t.attempts << " attempts: " << verdict_name(t.verdict) << "\n";
  out.rec("verdict", verdict_name(t.verdict));
  out.rec("attempts", t.attempts);
  if (t.verdict == Verdict::Generates) triple_records(out, *G, t);
  out.flush();
}

void cmd_pairs(const Common& c, const std::string& group, std::uint64_t p, std::uint64_t order) {
  GroupLibrary lib;
  load_lib_files(lib, c);
  const auto G = lib.group(resolve_group(lib, group));
  SearchOptions o;
  o.seed = need_seed(c, "pairs");
  o.budget = c.budget;
  o.workers = c.workers;
  if (order) o.element_order = order;
  const PairCertificate r = find_conjugate_pair(*G, p, o);
  Output out(c.format == "records");
  out.human() << "conjugate pair search, " << r.attempts << " attempts: " << verdict_name(r.verdict) << "\n";
  out.rec("group", group);
  out.rec("group_order", G->order());
  out.rec("p", p);
  out.rec("verdict", verdict_name(r.verdict));
  out.rec("attempts", r.attempts);
  if (r.verdict == Verdict::Generates) {
    out.rec("order", r.order);
    out.rec("x", r.x.to_cycle_string());
    out.rec("h", r.h.to_cycle_string());
    out.rec("y", r.y.to_cycle_string());
    out.rec("subgroup_order", r.subgroup_order);
    out.rec("certified", verify_certificate(*G, r) ? "true" : "false");
  }
  out.flush();
}

MatRep load_rep(GroupLibrary& lib, const std::string& module, std::uint64_t p) {
  ModuleSpec spec = resolve_module(lib, module);
  if (p) {
    if (!spec.field) spec.field = std::make_pair(p, 1U);
    else if (spec.field->first != p)
      throw Error(Errc::FieldMismatch, "--p " + std::to_string(p) + " disagrees with the module's field");
  }
  return build_rep(spec, lib);
}

void cmd_bounds(const Common& c, const std::string& module, std::uint64_t p) {
  GroupLibrary lib;
  load_lib_files(lib, c);
  const MatRep R = load_rep(lib, module, p);
  const ConjugacyClasses classes = conjugacy_classes(R.group());
  const BoundReport rep = check_bound_theorems(R, classes, c.workers);
  Output out(c.format == "records");
  auto& h = out.human();
  h << "module " << R.label() << ": dim " << rep.n << " over GF(" << R.field().order() << "), group order "
    << rep.group_order << "\n";
  h << "class  order  dim C_V(g)\n";
  for (const auto& row : rep.min.per_class)
    h << std::setw(5) << row.cls << "  " << std::setw(5) << row.order << "  " << std::setw(10) << row.fixdim << "\n";
  for (const auto& cl : rep.clauses)
    h << "bound " << cl.id << " (" << (cl.id == "eigenspace" ? "largest eigenspace <= 1" : cl.bound.text()) << "): "
      << (!cl.applicable ? "not applicable" : cl.satisfied ? "satisfied" : "VIOLATED") << "\n";
  out.rec("dim", rep.n);
  out.rec("p", rep.p);
  out.rec("group_order", rep.group_order);
  out.rec("min_semisimple_fixdim", rep.min.dim);
  if (rep.min.witness) {
    out.rec("witness_class", rep.min.witness->cls);
    out.rec("witness_order", rep.min.witness->order);
    out.rec("witness", classes[rep.min.witness->cls].rep.to_cycle_string());
  }
  for (const auto& cl : rep.clauses)
    out.rec("clause." + cl.id, !cl.applicable ? "not_applicable" : cl.satisfied ? "satisfied" : "violated");
  out.rec("all_clauses", rep.all_satisfied() ? "true" : "false");
  out.flush();
}

void cmd_scott(const Common& c, const std::string& module, std::uint64_t pairs) {
  GroupLibrary lib;
  load_lib_files(lib, c);
  const MatRep R = load_rep(lib, module, 0);
  SeedStream rng = SeedStream::fork(need_seed(c, "scott"), 0);
  std::uint64_t violations = 0, tight = 0;
  std::optional<std::pair<Perm, Perm>> first_bad;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const Perm x = R.group().random_element(rng);
    const Perm y = R.group().random_element(rng);
    const ScottRecord s = scott_check(R, x, y);
    if (!s.holds && !first_bad) first_bad = {x, y};
    violations += !s.holds;
    tight += s.lhs == s.rhs;
  }
  Output out(c.format == "records");
  out.human() << "Scott inequality on " << pairs << " random pairs of " << R.label() << ": " << violations
              << " violations, " << tight << " with equality\n";
  out.rec("dim", R.dim());
  out.rec("pairs", pairs);
  out.rec("violations", violations);
  out.rec("tight", tight);
  if (first_bad) {
    out.rec("counterexample_x", first_bad->first.to_cycle_string());
    out.rec("counterexample_y", first_bad->second.to_cycle_string());
  }
  out.flush();
}

struct WeightArgs {
  std::string type, lambda, lambda1, mu, field, check = "dim";
  unsigned n = 0, s = 0;
  std::uint64_t q = 0;
  std::size_t samples = 25;
};

void cmd_weights(const Common& c, const WeightArgs& a) {
  Output out(c.format == "records");
  auto& h = out.human();
  out.rec("check", a.check);
  if (a.check == "dim") {
    const RootSystem rs = RootSystem::parse(a.type);
    const Weight lambda = parse_list(a.lambda);
    const WeightMultiset w = weight_multiset(rs, lambda);
    h << "weights of V(" << a.lambda << ") for " << rs.name() << " (fundamental coordinates):\n";
    for (const auto& [mu, m] : w.entries) {
      h << " ";
      for (auto x : mu) h << " " << std::setw(3) << x;
      h << "  x" << m << "\n";
    }
    out.rec("type", rs.name());
    out.rec("lambda", a.lambda);
    out.rec("weyl_dim", weyl_dim(rs, lambda));
    out.rec("freudenthal_total", w.total());
    out.rec("distinct_weights", w.entries.size());
    out.rec("zero_weight_mult", w.multiplicity(Weight(rs.rank(), 0)));
  } else if (a.check == "sl2") {
    const Sl2EigenReport r = sl2_distinct_eigenvalues(a.q, a.s);
    h << "weights s, s-2, ..., -s for s = " << a.s << " at an element of order " << a.q + 1 << "\n";
    out.rec("q", a.q);
    out.rec("s", a.s);
    out.rec("distinct", r.distinct ? "true" : "false");
    out.rec("predicted_distinct", r.predicted_distinct ? "true" : "false");
    if (r.collision) out.rec("collision", std::to_string(r.collision->first) + "," + std::to_string(r.collision->second));
  } else {
    const FieldCtx F = parse_field(a.field);
    const std::uint64_t seed = need_seed(c, "weights");
    DivisibilityReport r;
    if (a.check == "sym") {
      r = check_sym_divisibility(a.n, a.s, F, torus_samples(F, a.n - 1, a.samples, seed));
    } else if (a.check == "twist") {
      const RootSystem rs = RootSystem::parse(a.type);
      r = check_twist_divisibility(rs, parse_list(a.lambda), parse_list(a.lambda1), F.p(), F,
                                   torus_samples(F, rs.rank(), a.samples, seed));
    } else if (a.check == "cartan") {
      const RootSystem rs = RootSystem::parse(a.type);
      r = check_cartan_mult(rs, parse_list(a.lambda), parse_list(a.mu), F,
                            torus_samples(F, rs.rank(), a.samples, seed));
    } else {
      throw Error(Errc::InvalidArgument, "unknown check '" + a.check + "'");
    }
    h << a.check << " divisibility over GF(" << F.order() << "): " << r.samples_dividing << "/" << r.samples
      << " torus samples divide; " << r.note << "\n";
    out.rec("verdict", check_verdict_name(r.verdict));
    out.rec("containment", r.containment ? "true" : "false");
    out.rec("samples", r.samples);
    out.rec("samples_dividing", r.samples_dividing);
  }
  out.flush();
}

void cmd_phi(const Common& c, unsigned n, std::uint64_t q) {
  Output out(c.format == "records");
  const std::uint64_t v = phi_star(n, q);
  out.human() << "primitive part of " << q << "^" << n << " - 1\n";
  out.rec("n", n);
  out.rec("q", q);
  out.rec("phi_star", v);
  out.flush();
}

int cmd_verify(const Common& c, const std::string& manifest_path, const std::string& report_path) {
  GroupLibrary lib;
  load_lib_files(lib, c);
  const Manifest m = manifest_path.empty() ? parse_manifest(default_manifest()) : load_manifest(manifest_path);
  if (!manifest_path.empty()) {
    const fs::path p(manifest_path);
    lib.add_search_dir(p.has_parent_path() ? p.parent_path() : fs::path("."));
  }
  VerifyOptions o;
  o.seed = c.seed.value_or(1);
  o.workers = c.workers;
  if (!c.cache_dir.empty()) o.cache_dir = fs::path(c.cache_dir);
  const auto outcomes = run_manifest(m, lib, o);
  const std::string report = format_report(outcomes, o.seed);
  if (c.format != "records") {
    for (const auto& oc : outcomes) {
      std::cout << std::left << std::setw(11) << claim_verdict_name(oc.verdict) << oc.id << "\n";
      for (const auto& mm : oc.mismatches) std::cout << "           " << mm << "\n";
    }
    std::cout << "\n";
  }
  std::cout << report;
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) throw Error(Errc::Io, "cannot write " + report_path);
    f << report;
  }
  return report_passes(outcomes) ? 0 : 1;
}

void add_common(CLI::App* sub, Common& c, bool randomized) {
  sub->add_option("--seed", c.seed, randomized ? "Master seed (required)" : "Master seed");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1U, 256U));
  sub->add_option("--cache-dir", c.cache_dir, "Directory for cached character tables");
  sub->add_option("--budget", c.budget, "Search attempts")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "plain or records")->check(CLI::IsMember({"plain", "records"}));
  sub->add_option("--lib", c.lib_files, "Extra .grp/.mat files to register")->check(CLI::ExistingFile);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-space dimensions, generation certificates and weight checks for finite groups"};
  app.require_subcommand(1);
  Common common;

  std::string group, module, orders, manifest, report;
  std::uint64_t p = 0, order = 0, pairs = 1000, q = 0;
  unsigned n = 0;
  bool exhaustive = false;
  WeightArgs wa;

  auto* table = app.add_subcommand("table", "Character table of a group");
  table->add_option("--group", group, "Group name or .grp/.mat file")->required();
  add_common(table, common, false);

  auto* triples = app.add_subcommand("triples", "p'-triples x y z = 1 generating the group");
  triples->add_option("--group", group, "Group name or .grp/.mat file")->required();
  triples->add_option("--p", p, "Prime")->required();
  triples->add_flag("--exhaustive", exhaustive, "Complete search over class triples");
  triples->add_option("--orders", orders, "Element orders a,b,c to insist on");
  add_common(triples, common, true);

  auto* pairs_cmd = app.add_subcommand("pairs", "Generating pairs of conjugate p'-elements");
  pairs_cmd->add_option("--group", group, "Group name or .grp/.mat file")->required();
  pairs_cmd->add_option("--p", p, "Prime")->required();
  pairs_cmd->add_option("--order", order, "Element order to insist on");
  add_common(pairs_cmd, common, true);

  auto* bounds = app.add_subcommand("bounds", "Minimum fixed-space dimension and bound clauses");
  bounds->add_option("--module", module, ".mod file or recipe text")->required();
  bounds->add_option("--p", p, "Characteristic (fills in or checks the module field)");
  add_common(bounds, common, false);

  auto* scott = app.add_subcommand("scott", "Scott inequality on random pairs");
  scott->add_option("--module", module, ".mod file or recipe text")->required();
  scott->add_option("--pairs", pairs, "Number of pairs")->check(CLI::PositiveNumber);
  add_common(scott, common, true);

  auto* weights = app.add_subcommand("weights", "Weyl dimensions, weight multisets and divisibility checks");
  weights->add_option("--check", wa.check, "dim, sym, twist, cartan or sl2")
      ->check(CLI::IsMember({"dim", "sym", "twist", "cartan", "sl2"}));
  weights->add_option("--type", wa.type, "Root system such as A2, B3, G2");
  weights->add_option("--lambda", wa.lambda, "Highest weight a,b,... (lambda0 for twist)");
  weights->add_option("--lambda1", wa.lambda1, "Twisted factor's highest weight");
  weights->add_option("--mu", wa.mu, "Root-lattice shift for cartan");
  weights->add_option("--field", wa.field, "Field as p or p^k");
  weights->add_option("--n", wa.n, "SL_n for sym");
  weights->add_option("--s", wa.s, "Symmetric power or sl2 highest weight");
  weights->add_option("--q", wa.q, "Field size for sl2");
  weights->add_option("--samples", wa.samples, "Torus samples");
  add_common(weights, common, false);

  auto* phi = app.add_subcommand("phi", "Primitive part of q^n - 1");
  phi->add_option("n", n, "Exponent")->required();
  phi->add_option("q", q, "Prime power")->required();
  add_common(phi, common, false);

  auto* verify = app.add_subcommand("verify", "Run a claim manifest (the built-in one by default)");
  verify->add_option("manifest", manifest, "Manifest file");
  verify->add_option("--report", report, "Also write the report to this file");
  add_common(verify, common, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table) cmd_table(common, group);
    else if (*triples) cmd_triples(common, group, p, exhaustive, orders);
    else if (*pairs_cmd) cmd_pairs(common, group, p, order);
    else if (*bounds) cmd_bounds(common, module, p);
    else if (*scott) cmd_scott(common, module, pairs);
    else if (*weights) cmd_weights(common, wa);
    else if (*phi) cmd_phi(common, n, q);
    else if (*verify) return cmd_verify(common, manifest, report);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
