#include "fixspace/library.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fixspace/arith.hpp"
#include "fixspace/error.hpp"
#include "fixspace/ff.hpp"

namespace fixspace {

namespace {

bool parse_uint(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

Perm from_map(std::size_t, const std::vector<std::uint32_t>& img) { return Perm(img); }

std::vector<std::uint32_t> cycle_images(std::size_t n, std::size_t from, std::size_t to) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0U);
  for (std::size_t i = from; i < to; ++i) img[i] = static_cast<std::uint32_t>(i + 1 == to ? from : i + 1);
  return img;
}

GroupSpec alternating(std::size_t n) {
  GroupSpec s;
  s.name = "A" + std::to_string(n);
  s.degree = n;
  s.generators.push_back(from_map(n, cycle_images(n, 0, 3)));
  if (n > 3) {
    s.generators.push_back(from_map(n, n % 2 ? cycle_images(n, 0, n) : cycle_images(n, 1, n)));
  }
  return s;
}

GroupSpec symmetric(std::size_t n) {
  GroupSpec s;
  s.name = "S" + std::to_string(n);
  s.degree = n;
  s.generators.push_back(from_map(n, cycle_images(n, 0, 2)));
  if (n > 2) s.generators.push_back(from_map(n, cycle_images(n, 0, n)));
  return s;
}

GroupSpec cyclic(std::size_t n) {
  GroupSpec s;
  s.name = "C" + std::to_string(n);
  s.degree = n;
  s.generators.push_back(from_map(n, cycle_images(n, 0, n)));
  return s;
}

// PSL(2, q) on GF(q) u {inf}; inf is point q.
GroupSpec projective_line(std::uint64_t q, std::string name) {
  const auto [p, k] = arith::prime_power(q);
  const FieldCtx F = make_field(p, k);
  const FieldElem w = F.primitive_element();
  const FieldElem w2 = F.mul(w, w);
  const auto inf = static_cast<std::uint32_t>(q);
  std::vector<std::uint32_t> t(q + 1), m(q + 1), s(q + 1);
  for (std::uint64_t c = 0; c < q; ++c) {
    const FieldElem x = F.element(c);
    t[c] = static_cast<std::uint32_t>(F.add(x, F.one()).code);
    m[c] = static_cast<std::uint32_t>(F.mul(x, w2).code);
    s[c] = F.is_zero(x) ? inf : static_cast<std::uint32_t>(F.neg(F.inv(x)).code);
  }
  t[q] = m[q] = inf;
  s[q] = 0;
  GroupSpec g;
  g.name = std::move(name);
  g.degree = q + 1;
  g.generators = {Perm(t), Perm(m), Perm(s)};
  return g;
}

GroupSpec affine_line(std::uint64_t q) {
  const auto [p, k] = arith::prime_power(q);
  const FieldCtx F = make_field(p, k);
  const FieldElem w = F.primitive_element();
  std::vector<std::uint32_t> t(q), m(q);
  for (std::uint64_t c = 0; c < q; ++c) {
    t[c] = static_cast<std::uint32_t>(F.add(F.element(c), F.one()).code);
    m[c] = static_cast<std::uint32_t>(F.mul(F.element(c), w).code);
  }
  GroupSpec g;
  g.name = "AGL1_" + std::to_string(q);
  g.degree = q;
  g.generators = {Perm(t), Perm(m)};
  return g;
}

MatGroupSpec matgroup(std::string name, std::uint64_t p, std::size_t dim,
                      std::vector<std::vector<std::vector<std::int64_t>>> gens) {
  MatGroupSpec s;
  s.name = std::move(name);
  s.p = p;
  s.k = 1;
  s.dim = dim;
  s.gens = std::move(gens);
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

std::optional<GroupSpec> builtin_group(std::string_view name) {
  std::uint64_t n = 0;
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'S' || name[0] == 'C') &&
      parse_uint(name.substr(1), n)) {
    if (name[0] == 'A' && n >= 3 && n <= 16) return alternating(n);
    if (name[0] == 'S' && n >= 2 && n <= 16) return symmetric(n);
    if (name[0] == 'C' && n >= 1 && n <= 64) return cyclic(n);
    return std::nullopt;
  }
  std::string_view qtext;
  if (name.starts_with("L2(") && name.ends_with(")")) {
    qtext = name.substr(3, name.size() - 4);
  } else if (name.starts_with("L2_")) {
    qtext = name.substr(3);
  }
  if (!qtext.empty() && parse_uint(qtext, n) && n >= 2 && n <= 64 && arith::prime_power(n).first != 0) {
    return projective_line(n, "L2(" + std::to_string(n) + ")");
  }
  if (name.starts_with("AGL1_") && parse_uint(name.substr(5), n) && n >= 2 && n <= 256 &&
      arith::prime_power(n).first != 0) {
    return affine_line(n);
  }
  return std::nullopt;
}

std::optional<MatGroupSpec> builtin_matgroup(std::string_view name) {
  std::uint64_t p = 0;
  if (name.starts_with("SL2_") && parse_uint(name.substr(4), p) && p <= 31 && arith::is_prime(p)) {
    const auto m1 = static_cast<std::int64_t>(p - 1);
    return matgroup(std::string(name), p, 2, {{{1, 1}, {0, 1}}, {{0, 1}, {m1, 0}}});
  }
  if (name == "SL3_3") {
    return matgroup("SL3_3", 3, 3, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}});
  }
  if (name == "Ex3_7") {
    return matgroup("Ex3_7", 7, 3, {{{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}});
  }
  return std::nullopt;
}

void GroupLibrary::add_search_dir(std::filesystem::path dir) {
  std::lock_guard lock(mu_);
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(Errc::Io, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    if (f.extension() == ".grp") {
      auto spec = parse_group_spec(read_file(f));
      group_specs_[spec.name] = std::move(spec);
    } else if (f.extension() == ".mat") {
      auto spec = parse_matgroup(read_file(f));
      mat_specs_[spec.name] = std::move(spec);
    }
  }
  dirs_.push_back(std::move(dir));
}

void GroupLibrary::add_group(GroupSpec spec) {
  std::lock_guard lock(mu_);
  groups_.erase(spec.name);
  group_specs_[spec.name] = std::move(spec);
}

void GroupLibrary::add_matgroup(MatGroupSpec spec) {
  std::lock_guard lock(mu_);
  embedded_.erase(spec.name);
  mat_specs_[spec.name] = std::move(spec);
}

std::optional<GroupSpec> GroupLibrary::find_group_spec(const std::string& name) {
  if (auto it = group_specs_.find(name); it != group_specs_.end()) return it->second;
  return builtin_group(name);
}

std::optional<MatGroupSpec> GroupLibrary::find_matgroup_spec(const std::string& name) {
  if (auto it = mat_specs_.find(name); it != mat_specs_.end()) return it->second;
  return builtin_matgroup(name);
}

bool GroupLibrary::is_matgroup(std::string_view name) {
  std::lock_guard lock(mu_);
  return find_matgroup_spec(std::string(name)).has_value();
}

std::shared_ptr<const PermGroup> GroupLibrary::group(std::string_view name) {
  std::lock_guard lock(mu_);
  const std::string key(name);
  if (auto it = groups_.find(key); it != groups_.end()) return it->second;
  if (auto spec = find_group_spec(key)) {
    auto G = std::make_shared<PermGroup>(build_group(*spec));
    G->set_name(key);
    groups_[key] = G;
    return G;
  }
  if (find_matgroup_spec(key)) return matgroup(key).group;
  throw Error(Errc::NotFound, "unknown group '" + key + "'");
}

const EmbeddedGroup& GroupLibrary::matgroup(std::string_view name) {
  std::lock_guard lock(mu_);
  const std::string key(name);
  if (auto it = embedded_.find(key); it != embedded_.end()) return *it->second;
  auto spec = find_matgroup_spec(key);
  if (!spec) throw Error(Errc::NotFound, "unknown matrix group '" + key + "'");
  const FieldCtx F = make_field(spec->p, spec->k);
  auto emb = std::make_unique<EmbeddedGroup>(embed_matrix_group(F, spec->dim, matgroup_matrices(F, *spec), key));
  const EmbeddedGroup& ref = *emb;
  embedded_[key] = std::move(emb);
  return ref;
}

} // namespace fixspace
