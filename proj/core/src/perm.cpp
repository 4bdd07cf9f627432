#include "fixspace/perm.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "fixspace/arith.hpp"
#include "fixspace/error.hpp"

namespace fixspace {

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v]) {
      throw Error(Errc::NotBijection, "image list is not a permutation");
    }
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.img_.resize(degree);
  std::iota(p.img_.begin(), p.img_.end(), 0U);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
  Perm p = identity(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const auto a = cyc[i];
      if (a >= degree || used[a]) throw Error(Errc::NotBijection, "bad cycle notation");
      used[a] = true;
      p.img_[a] = cyc[(i + 1) % cyc.size()];
    }
  }
  return p;
}

Perm Perm::operator*(const Perm& rhs) const {
  if (rhs.img_.size() != img_.size()) throw Error(Errc::DegreeMismatch, "permutation product");
  Perm out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[i] = rhs.img_[img_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = static_cast<std::uint32_t>(i);
  return out;
}

Perm Perm::pow(std::int64_t e) const {
  Perm base = e < 0 ? inverse() : *this;
  auto n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  Perm result = identity(img_.size());
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Perm Perm::conjugate_by(const Perm& h) const { return h.inverse() * (*this) * h; }

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<std::size_t> Perm::cycle_type() const {
  std::vector<std::size_t> out;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Perm::fixed_points() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < img_.size(); ++i) c += img_[i] == i ? 1 : 0;
  return c;
}

std::string Perm::to_cycle_string(bool one_based) const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  const std::uint32_t shift = one_based ? 1 : 0;
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      if (!first) os << ',';
      first = false;
      os << j + shift;
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t element_order(const Perm& g) {
  std::uint64_t ord = 1;
  for (auto c : g.cycle_type()) ord = arith::lcm(ord, c);
  return ord;
}

bool is_p_prime_element(const Perm& g, std::uint64_t p) { return element_order(g) % p != 0; }

Perm parse_cycles(std::string_view text, std::size_t degree, bool one_based) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(Errc::Parse, "expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<std::uint32_t> cyc;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc()) throw Error(Errc::Parse, "bad point in cycle notation: " + std::string(text));
      i = static_cast<std::size_t>(ptr - text.data());
      if (one_based) {
        if (v == 0) throw Error(Errc::Parse, "point 0 in 1-based cycle notation");
        --v;
      }
      cyc.push_back(v);
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return Perm::from_cycles(degree, cycles);
}

// ---------------------------------------------------------------------------
// Straight-line programs

std::uint32_t StraightLineProgram::identity() {
  if (!identity_) {
    identity_ = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({Op::Identity, 0, 0});
  }
  return *identity_;
}

std::uint32_t StraightLineProgram::gen(std::uint32_t i) {
  nodes_.push_back({Op::Gen, i, 0});
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t StraightLineProgram::mul(std::uint32_t a, std::uint32_t b) {
  if (identity_ && a == *identity_) return b;
  if (identity_ && b == *identity_) return a;
  nodes_.push_back({Op::Mul, a, b});
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t StraightLineProgram::inv(std::uint32_t a) {
  if (identity_ && a == *identity_) return a;
  if (auto it = inverse_of_.find(a); it != inverse_of_.end()) return it->second;
  nodes_.push_back({Op::Inv, a, 0});
  const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
  inverse_of_.emplace(a, id);
  inverse_of_.emplace(id, a);
  return id;
}

// ---------------------------------------------------------------------------
// Schreier-Sims (Knuth's formulation with base 0, 1, ..., n-1)

namespace {

struct ChainBuilder {
  struct Lvl {
    bool active = false;
    std::vector<std::int32_t> slot;
    std::vector<std::uint32_t> orbit;
    std::vector<Perm> reps, rep_inv;
    std::vector<std::uint32_t> rep_node;
    std::vector<std::uint32_t> gens;
  };

  std::size_t n;
  StraightLineProgram& slp;
  std::vector<Lvl> L;
  std::vector<Perm> strong;
  std::vector<std::uint32_t> strong_node;

  ChainBuilder(std::size_t degree, StraightLineProgram& program)
      : n(degree), slp(program), L(degree) {}

  void activate(std::size_t k) {
    Lvl& l = L[k];
    if (l.active) return;
    l.active = true;
    l.slot.assign(n, -1);
    l.slot[k] = 0;
    l.orbit = {static_cast<std::uint32_t>(k)};
    l.reps = {Perm::identity(n)};
    l.rep_inv = {Perm::identity(n)};
    l.rep_node = {slp.identity()};
  }

  bool member_from(std::size_t k, Perm g) const {
    for (std::size_t j = k; j < n; ++j) {
      const std::uint32_t beta = g[j];
      if (beta == j) continue;
      if (!L[j].active || L[j].slot[beta] < 0) return false;
      g = g * L[j].rep_inv[static_cast<std::size_t>(L[j].slot[beta])];
    }
    return true;
  }

  void add_strong(std::size_t k, const Perm& g, std::uint32_t node) {
    if (k >= n || member_from(k, g)) return;
    const auto idx = static_cast<std::uint32_t>(strong.size());
    strong.push_back(g);
    strong_node.push_back(node);
    activate(k);
    L[k].gens.push_back(idx);
    const std::size_t count = L[k].reps.size();
    for (std::size_t i = 0; i < count; ++i) {
      Perm prod = L[k].reps[i] * g;
      const std::uint32_t pn = slp.mul(L[k].rep_node[i], node);
      extend(k, std::move(prod), pn);
    }
  }

  void extend(std::size_t k, Perm g0, std::uint32_t node0) {
    std::vector<std::pair<Perm, std::uint32_t>> work;
    work.emplace_back(std::move(g0), node0);
    while (!work.empty()) {
      auto [g, node] = std::move(work.back());
      work.pop_back();
      Lvl& l = L[k];
      const std::uint32_t beta = g[k];
      const std::int32_t s = l.slot[beta];
      if (s >= 0) {
        const auto si = static_cast<std::size_t>(s);
        Perm h = g * l.rep_inv[si];
        if (h.is_identity()) continue;
        const std::uint32_t hn = slp.mul(node, slp.inv(l.rep_node[si]));
        add_strong(k + 1, h, hn);
      } else {
        l.slot[beta] = static_cast<std::int32_t>(l.reps.size());
        l.orbit.push_back(beta);
        l.rep_inv.push_back(g.inverse());
        l.rep_node.push_back(node);
        l.reps.push_back(g);
        for (auto gi : l.gens) {
          work.emplace_back(g * strong[gi], slp.mul(node, strong_node[gi]));
        }
      }
    }
  }
};

} // namespace

PermGroup group_from_generators(std::size_t degree, std::vector<Perm> gens) {
  PermGroup G;
  G.degree_ = degree;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw Error(Errc::DegreeMismatch, "generator degree");
  }
  G.gens_ = std::move(gens);
  ChainBuilder b(degree, G.slp_);
  for (std::size_t i = 0; i < G.gens_.size(); ++i) {
    const std::uint32_t node = G.slp_.gen(static_cast<std::uint32_t>(i));
    b.add_strong(0, G.gens_[i], node);
  }
  G.order_ = 1;
  for (std::size_t k = 0; k < degree; ++k) {
    auto& l = b.L[k];
    if (!l.active || l.reps.size() < 2) continue;
    PermGroup::Level out;
    out.base_point = static_cast<std::uint32_t>(k);
    out.orbit = std::move(l.orbit);
    out.slot = std::move(l.slot);
    out.reps = std::move(l.reps);
    out.rep_inverses = std::move(l.rep_inv);
    out.rep_nodes = std::move(l.rep_node);
    out.strong_generators = std::move(l.gens);
    const std::uint64_t sz = out.reps.size();
    if (G.order_ > UINT64_MAX / sz) throw Error(Errc::Overflow, "group order exceeds 64 bits");
    G.order_ *= sz;
    G.levels_.push_back(std::move(out));
  }
  G.strong_ = std::move(b.strong);
  return G;
}

std::vector<std::uint32_t> PermGroup::base() const {
  std::vector<std::uint32_t> out;
  for (const auto& l : levels_) out.push_back(l.base_point);
  return out;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) throw Error(Errc::DegreeMismatch, "membership test");
  Perm h = g;
  for (const auto& l : levels_) {
    const std::int32_t s = l.slot[h[l.base_point]];
    if (s < 0) return false;
    h = h * l.rep_inverses[static_cast<std::size_t>(s)];
  }
  return h.is_identity();
}

std::vector<std::uint32_t> PermGroup::factor(const Perm& g) const {
  if (g.degree() != degree_) throw Error(Errc::DegreeMismatch, "factor");
  Perm h = g;
  std::vector<std::uint32_t> nodes;
  for (const auto& l : levels_) {
    const std::int32_t s = l.slot[h[l.base_point]];
    if (s < 0) throw Error(Errc::NotInGroup, g.to_cycle_string());
    const auto si = static_cast<std::size_t>(s);
    nodes.push_back(l.rep_nodes[si]);
    h = h * l.rep_inverses[si];
  }
  if (!h.is_identity()) throw Error(Errc::NotInGroup, g.to_cycle_string());
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

Perm PermGroup::random_element(SeedStream& rng) const {
  Perm g = Perm::identity(degree_);
  std::vector<std::size_t> picks(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i) picks[i] = rng.below(levels_[i].reps.size());
  for (std::size_t i = levels_.size(); i-- > 0;) g = g * levels_[i].reps[picks[i]];
  return g;
}

std::uint64_t PermGroup::subgroup_order(std::span<const Perm> elems) const {
  for (const auto& e : elems) {
    if (!contains(e)) throw Error(Errc::NotInGroup, e.to_cycle_string());
  }
  return group_from_generators(degree_, std::vector<Perm>(elems.begin(), elems.end())).order();
}

std::vector<std::uint32_t> PermGroup::orbit(std::uint32_t point) const {
  std::vector<bool> seen(degree_, false);
  std::vector<std::uint32_t> out{point};
  seen[point] = true;
  for (std::size_t h = 0; h < out.size(); ++h) {
    for (const auto& g : gens_) {
      const std::uint32_t img = g[out[h]];
      if (!seen[img]) {
        seen[img] = true;
        out.push_back(img);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PermGroup::is_transitive() const { return degree_ == 0 || orbit(0).size() == degree_; }

std::vector<Perm> PermGroup::elements() const {
  std::vector<Perm> out;
  out.reserve(order_);
  // g = u_m * ... * u_0; build from the deepest level outward.
  std::vector<Perm> partial{Perm::identity(degree_)};
  for (std::size_t i = levels_.size(); i-- > 0;) {
    std::vector<Perm> next;
    next.reserve(partial.size() * levels_[i].reps.size());
    for (const auto& p : partial)
      for (const auto& u : levels_[i].reps) next.push_back(p * u);
    partial = std::move(next);
  }
  return partial;
}

std::uint64_t closure_order(std::size_t degree, const std::vector<Perm>& gens, std::uint64_t cap) {
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> frontier{Perm::identity(degree)};
  seen.insert(frontier.front());
  for (std::size_t h = 0; h < frontier.size(); ++h) {
    for (const auto& g : gens) {
      Perm x = frontier[h] * g;
      if (seen.insert(x).second) {
        if (seen.size() > cap) throw Error(Errc::GroupTooLarge, "closure enumeration");
        frontier.push_back(std::move(x));
      }
    }
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Conjugacy classes

ConjugacyClasses conjugacy_classes(const PermGroup& G, std::uint64_t cap) {
  if (G.order() > cap) {
    throw Error(Errc::GroupTooLarge, "|G| = " + std::to_string(G.order()) +
                                         " exceeds class-storage cap " + std::to_string(cap));
  }
  const std::vector<Perm> all = G.elements();
  std::vector<Perm> gen_inv;
  for (const auto& g : G.generators()) gen_inv.push_back(g.inverse());

  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  index.reserve(all.size() * 2);
  std::vector<ConjClass> raw;
  for (const auto& e : all) {
    if (index.count(e)) continue;
    const auto cid = static_cast<std::uint32_t>(raw.size());
    ConjClass c;
    c.members.push_back(e);
    index.emplace(e, cid);
    for (std::size_t h = 0; h < c.members.size(); ++h) {
      for (std::size_t gi = 0; gi < gen_inv.size(); ++gi) {
        Perm x = gen_inv[gi] * c.members[h] * G.generators()[gi];
        if (index.emplace(x, cid).second) c.members.push_back(std::move(x));
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.rep = c.members.front();
    c.size = c.members.size();
    c.element_order = element_order(c.rep);
    raw.push_back(std::move(c));
  }

  std::vector<std::size_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0U);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = raw[a];
    const auto& y = raw[b];
    if (x.element_order != y.element_order) return x.element_order < y.element_order;
    if (x.size != y.size) return x.size < y.size;
    return x.rep < y.rep;
  });
  std::vector<std::uint32_t> remap(raw.size());
  ConjugacyClasses out;
  out.group_order_ = G.order();
  for (std::size_t i = 0; i < perm.size(); ++i) {
    remap[perm[i]] = static_cast<std::uint32_t>(i);
    out.classes_.push_back(std::move(raw[perm[i]]));
  }
  for (auto& [k, v] : index) v = remap[v];
  out.index_ = std::move(index);
  out.inverse_.resize(out.classes_.size());
  for (std::size_t i = 0; i < out.classes_.size(); ++i) {
    out.inverse_[i] = out.class_of(out.classes_[i].rep.inverse());
  }
  return out;
}

std::size_t ConjugacyClasses::class_of(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw Error(Errc::NotInGroup, g.to_cycle_string());
  return it->second;
}

std::size_t ConjugacyClasses::power_class(std::size_t i, std::int64_t k) const {
  return class_of(classes_[i].rep.pow(k));
}

// ---------------------------------------------------------------------------
// Group spec files

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

} // namespace

GroupSpec parse_group_spec(std::string_view text) {
  GroupSpec spec;
  std::vector<std::pair<std::size_t, std::string>> gen_lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    const std::string_view key = line.substr(0, sp);
    const std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
    if (key == "group") {
      spec.name = std::string(rest);
    } else if (key == "degree") {
      std::size_t d = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
      if (ec != std::errc() || ptr != rest.data() + rest.size()) {
        throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": bad degree");
      }
      spec.degree = d;
    } else if (key == "gen") {
      gen_lines.emplace_back(line_no, std::string(rest.empty() ? "()" : rest));
    } else {
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (spec.degree == 0) throw Error(Errc::Parse, "missing degree");
  for (const auto& [ln, txt] : gen_lines) {
    try {
      spec.generators.push_back(parse_cycles(txt, spec.degree, true));
    } catch (const Error& e) {
      throw Error(Errc::Parse, "line " + std::to_string(ln) + ": " + e.what());
    }
  }
  return spec;
}

std::string format_group_spec(const GroupSpec& spec) {
  std::ostringstream os;
  if (!spec.name.empty()) os << "group " << spec.name << '\n';
  os << "degree " << spec.degree << '\n';
  for (const auto& g : spec.generators) os << "gen " << g.to_cycle_string(true) << '\n';
  return os.str();
}

PermGroup build_group(const GroupSpec& spec) {
  PermGroup G = group_from_generators(spec.degree, spec.generators);
  G.set_name(spec.name);
  return G;
}

} // namespace fixspace
