#include "fixspace/matrep.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fixspace/error.hpp"
#include "fixspace/library.hpp"

namespace fixspace {

// ---------------------------------------------------------------------------
// S-expressions

namespace {

struct Sexp {
  bool list = false;
  std::string atom;
  std::vector<Sexp> items;
};

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::Parse, "module spec: " + what); }

class SexpReader {
public:
  explicit SexpReader(std::string_view t) : t_(t) {}

  Sexp read() {
    skip();
    if (i_ >= t_.size()) parse_error("unexpected end");
    if (t_[i_] == '(') {
      ++i_;
      Sexp s;
      s.list = true;
      for (;;) {
        skip();
        if (i_ >= t_.size()) parse_error("missing ')'");
        if (t_[i_] == ')') {
          ++i_;
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (t_[i_] == ')') parse_error("unexpected ')'");
    Sexp s;
    if (t_[i_] == '[') {
      int depth = 0;
      const std::size_t start = i_;
      do {
        if (t_[i_] == '[') ++depth;
        if (t_[i_] == ']') --depth;
        ++i_;
      } while (i_ < t_.size() && depth > 0);
      if (depth != 0) parse_error("unbalanced '['");
      s.atom = std::string(t_.substr(start, i_ - start));
      return s;
    }
    const std::size_t start = i_;
    while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != '(' && t_[i_] != ')')
      ++i_;
    s.atom = std::string(t_.substr(start, i_ - start));
    return s;
  }

  bool at_end() {
    skip();
    return i_ >= t_.size();
  }

private:
  void skip() {
    while (i_ < t_.size()) {
      if (std::isspace(static_cast<unsigned char>(t_[i_]))) {
        ++i_;
      } else if (t_[i_] == ';') {
        while (i_ < t_.size() && t_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

std::uint64_t atom_uint(const Sexp& s) {
  if (s.list || s.atom.empty()) parse_error("expected a number");
  std::uint64_t v = 0;
  for (char c : s.atom) {
    if (!std::isdigit(static_cast<unsigned char>(c))) parse_error("expected a number, got '" + s.atom + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

// "[[1,0],[0,1]]" -> rows of integers.
std::vector<std::vector<std::int64_t>> parse_int_rows(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[') parse_error("expected '[['");
  ++i;
  for (;;) {
    skip();
    if (i >= text.size()) parse_error("unterminated matrix");
    if (text[i] == ']') {
      ++i;
      break;
    }
    if (text[i] != '[') parse_error("expected '['");
    ++i;
    std::vector<std::int64_t> row;
    for (;;) {
      skip();
      if (i >= text.size()) parse_error("unterminated row");
      if (text[i] == ']') {
        ++i;
        break;
      }
      const std::size_t start = i;
      if (text[i] == '-' || text[i] == '+') ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        parse_error("bad matrix entry");
      row.push_back(std::stoll(std::string(text.substr(start, i - start))));
    }
    rows.push_back(std::move(row));
  }
  skip();
  if (i != text.size()) parse_error("trailing text after matrix");
  return rows;
}

std::string format_int_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::string s = "[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) s += ',';
    s += '[';
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) s += ',';
      s += std::to_string(rows[r][c]);
    }
    s += ']';
  }
  return s + "]";
}

ModuleSpec to_spec(const Sexp& s) {
  if (!s.list || s.items.empty() || s.items[0].list) parse_error("expected (kind ...)");
  const std::string& head = s.items[0].atom;
  ModuleSpec m;
  std::vector<const Sexp*> pos;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const Sexp& it = s.items[i];
    if (!it.list && !it.atom.empty() && it.atom[0] == ':') {
      const std::string& key = it.atom;
      if (key == ":sumzero") {
        m.sumzero_marked = true;
        continue;
      }
      if (i + 1 >= s.items.size()) parse_error("missing value for " + key);
      const Sexp& val = s.items[++i];
      if (key == ":field") {
        if (!val.list || val.items.size() < 2 || val.items.size() > 3 || val.items[0].atom != "gf")
          parse_error(":field expects (gf p [k])");
        const std::uint64_t p = atom_uint(val.items[1]);
        const unsigned k = val.items.size() == 3 ? static_cast<unsigned>(atom_uint(val.items[2])) : 1U;
        m.field = std::make_pair(p, k);
      } else if (key == ":mode") {
        if (val.atom == "sub") {
          m.mode = ModuleSpec::Mode::Sub;
        } else if (val.atom == "quotient") {
          m.mode = ModuleSpec::Mode::Quotient;
        } else {
          parse_error("mode must be sub or quotient");
        }
      } else if (key == ":basis") {
        if (val.list) parse_error("bad :basis");
        if (val.atom == "ones") {
          m.basis = ModuleSpec::Basis::Ones;
        } else if (val.atom == "sumzero") {
          m.basis = ModuleSpec::Basis::SumZero;
        } else if (val.atom == "fixed") {
          m.basis = ModuleSpec::Basis::Fixed;
        } else if (val.atom == "cofixed") {
          m.basis = ModuleSpec::Basis::Cofixed;
        } else if (val.atom == "meataxe") {
          m.basis = ModuleSpec::Basis::MeatAxe;
        } else if (!val.atom.empty() && val.atom[0] == '[') {
          m.basis = ModuleSpec::Basis::Given;
          m.given_basis = parse_int_rows(val.atom);
        } else {
          parse_error("unknown basis '" + val.atom + "'");
        }
      } else {
        parse_error("unknown keyword " + key);
      }
      continue;
    }
    pos.push_back(&it);
  }
  auto need = [&](std::size_t n) {
    if (pos.size() != n) parse_error("'" + head + "' expects " + std::to_string(n) + " argument(s)");
  };
  auto name_arg = [&](const Sexp* x) {
    if (x->list || x->atom.empty()) parse_error("expected a name");
    return x->atom;
  };
  if (head == "perm") {
    need(1);
    m.kind = ModuleSpec::Kind::Perm;
    m.name = name_arg(pos[0]);
  } else if (head == "explicit") {
    need(1);
    m.kind = ModuleSpec::Kind::Explicit;
    m.name = name_arg(pos[0]);
  } else if (head == "deleted") {
    need(1);
    m.kind = ModuleSpec::Kind::Deleted;
    m.children.push_back(to_spec(*pos[0]));
  } else if (head == "dual") {
    need(1);
    m.kind = ModuleSpec::Kind::Dual;
    m.children.push_back(to_spec(*pos[0]));
  } else if (head == "section") {
    need(1);
    m.kind = ModuleSpec::Kind::Section;
    m.children.push_back(to_spec(*pos[0]));
  } else if (head == "twist" || head == "sym") {
    need(2);
    m.kind = head == "twist" ? ModuleSpec::Kind::Twist : ModuleSpec::Kind::Sym;
    m.param = static_cast<unsigned>(atom_uint(*pos[0]));
    m.children.push_back(to_spec(*pos[1]));
  } else if (head == "tensor") {
    if (pos.size() < 2) parse_error("'tensor' expects at least 2 arguments");
    m.kind = ModuleSpec::Kind::Tensor;
    for (const Sexp* x : pos) m.children.push_back(to_spec(*x));
  } else {
    parse_error("unknown module kind '" + head + "'");
  }
  return m;
}

} // namespace

ModuleSpec parse_module_spec(std::string_view text) {
  SexpReader rd(text);
  const Sexp s = rd.read();
  if (!rd.at_end()) parse_error("trailing text");
  return to_spec(s);
}

std::string format_module_spec(const ModuleSpec& m) {
  std::string s = "(";
  switch (m.kind) {
    case ModuleSpec::Kind::Perm: s += "perm " + m.name; break;
    case ModuleSpec::Kind::Explicit: s += "explicit " + m.name; break;
    case ModuleSpec::Kind::Deleted: s += "deleted " + format_module_spec(m.children[0]); break;
    case ModuleSpec::Kind::Dual: s += "dual " + format_module_spec(m.children[0]); break;
    case ModuleSpec::Kind::Twist: s += "twist " + std::to_string(m.param) + " " + format_module_spec(m.children[0]); break;
    case ModuleSpec::Kind::Sym: s += "sym " + std::to_string(m.param) + " " + format_module_spec(m.children[0]); break;
    case ModuleSpec::Kind::Tensor:
      s += "tensor";
      for (const auto& c : m.children) s += " " + format_module_spec(c);
      break;
    case ModuleSpec::Kind::Section: {
      s += "section " + format_module_spec(m.children[0]);
      s += m.mode == ModuleSpec::Mode::Sub ? " :mode sub" : " :mode quotient";
      static const char* names[] = {"ones", "sumzero", "fixed", "cofixed", "meataxe"};
      s += " :basis ";
      s += m.basis == ModuleSpec::Basis::Given ? format_int_rows(m.given_basis) : names[static_cast<int>(m.basis)];
      break;
    }
  }
  if (m.sumzero_marked) s += " :sumzero";
  if (m.field) {
    s += " :field (gf " + std::to_string(m.field->first);
    if (m.field->second != 1) s += " " + std::to_string(m.field->second);
    s += ")";
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// MatRep

namespace {

Matrix perm_matrix(const FieldCtx& F, const Perm& g) {
  Matrix m(g.degree(), g.degree());
  for (std::size_t i = 0; i < g.degree(); ++i) m(i, g[i]) = F.one();
  return m;
}

Matrix product(const FieldCtx& F, const std::vector<const Matrix*>& factors, std::size_t n) {
  if (factors.empty()) return Matrix::identity(F, n);
  Matrix acc = *factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = mat::mul(F, acc, *factors[i]);
  return acc;
}

} // namespace

MatRep::MatRep(std::shared_ptr<const PermGroup> group, FieldCtx field, std::vector<Matrix> gen_images,
               std::string label, std::size_t hom_words, std::uint64_t hom_seed)
    : group_(std::move(group)), F_(std::move(field)), gens_(std::move(gen_images)), label_(std::move(label)) {
  if (!group_) throw Error(Errc::InvalidArgument, "null group");
  if (gens_.size() != group_->generators().size()) {
    throw Error(Errc::IllTyped, "need one image per group generator");
  }
  dim_ = gens_.empty() ? 0 : gens_.front().rows();
  if (gens_.empty()) throw Error(Errc::IllTyped, "group without generators; give the dimension via a generator");
  for (const auto& A : gens_) {
    if (A.rows() != dim_ || A.cols() != dim_) throw Error(Errc::DegreeMismatch, "generator image shape");
    if (F_.is_zero(mat::det(F_, A))) throw Error(Errc::NotInvertible, "generator image is singular");
  }

  std::vector<std::uint32_t> targets;
  for (const auto& l : group_->levels()) targets.insert(targets.end(), l.rep_nodes.begin(), l.rep_nodes.end());
  const auto vals = group_->slp().evaluate<Matrix>(
      targets, std::span<const Matrix>(gens_), Matrix::identity(F_, dim_),
      [this](const Matrix& a, const Matrix& b) { return mat::mul(F_, a, b); },
      [this](const Matrix& a) { return mat::inverse(F_, a); });
  std::size_t at = 0;
  for (const auto& l : group_->levels()) {
    level_images_.emplace_back(vals.begin() + static_cast<std::ptrdiff_t>(at),
                               vals.begin() + static_cast<std::ptrdiff_t>(at + l.rep_nodes.size()));
    at += l.rep_nodes.size();
  }

  // A word w with w(gens) = 1 in G must give w(images) = 1. Comparing the
  // word image with the transversal image of the same element detects
  // exactly such relators.
  SeedStream rng(hom_seed);
  const auto& pg = group_->generators();
  for (std::size_t w = 0; w < hom_words; ++w) {
    const std::size_t len = 1 + rng.below(12);
    Perm g = Perm::identity(group_->degree());
    Matrix M = Matrix::identity(F_, dim_);
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t j = rng.below(pg.size());
      g = g * pg[j];
      M = mat::mul(F_, M, gens_[j]);
    }
    if (!(M == image(g))) throw Error(Errc::IllTyped, "generator images do not define a homomorphism");
  }
}

Matrix MatRep::image(const Perm& g) const {
  if (g.degree() != group_->degree()) throw Error(Errc::NotInGroup, "degree mismatch");
  Perm h = g;
  std::vector<const Matrix*> parts;
  const auto& levels = group_->levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    const std::int32_t s = l.slot[h[l.base_point]];
    if (s < 0) throw Error(Errc::NotInGroup, g.to_cycle_string());
    const auto si = static_cast<std::size_t>(s);
    parts.push_back(&level_images_[i][si]);
    h = h * l.rep_inverses[si];
  }
  if (!h.is_identity()) throw Error(Errc::NotInGroup, g.to_cycle_string());
  std::reverse(parts.begin(), parts.end());
  return product(F_, parts, dim_);
}

// ---------------------------------------------------------------------------
// Sub- and quotient modules

bool is_invariant_subspace(const FieldCtx& F, const std::vector<Matrix>& gens, const std::vector<Vec>& basis) {
  if (basis.empty()) return false;
  Subspace S(F, basis.front().size());
  for (const auto& v : basis) S.add(v);
  if (S.dim() == 0 || S.dim() == S.ambient()) return false;
  for (const auto& A : gens)
    for (const auto& v : S.basis())
      if (!S.contains(mat::vec_mul(F, v, A))) return false;
  return true;
}

MatRep submodule_rep(const MatRep& R, const std::vector<Vec>& basis) {
  const FieldCtx& F = R.field();
  const std::size_t n = R.dim();
  Subspace S(F, n);
  for (const auto& v : basis) {
    if (v.size() != n) throw Error(Errc::IllTyped, "basis vector length");
    if (!S.add(v)) throw Error(Errc::IllTyped, "section basis is linearly dependent");
  }
  const std::size_t d = S.dim();
  if (d == 0) throw Error(Errc::IllTyped, "empty submodule");
  // coordinates w.r.t. the given rows: solve on the pivot columns
  const auto& piv = S.pivots();
  Matrix Bp(d, d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) Bp(s, t) = basis[s][piv[t]];
  const Matrix Bp_inv = mat::inverse(F, Bp);
  std::vector<Matrix> imgs;
  for (const auto& A : R.gen_images()) {
    Matrix out(d, d);
    for (std::size_t s = 0; s < d; ++s) {
      const Vec w = mat::vec_mul(F, basis[s], A);
      if (!S.contains(w)) throw Error(Errc::IllTyped, "section basis is not invariant");
      Vec wp(d);
      for (std::size_t t = 0; t < d; ++t) wp[t] = w[piv[t]];
      const Vec c = mat::vec_mul(F, wp, Bp_inv);
      for (std::size_t t = 0; t < d; ++t) out(s, t) = c[t];
    }
    imgs.push_back(std::move(out));
  }
  return MatRep(R.group_ptr(), F, std::move(imgs), R.label() + " sub", 0);
}

MatRep quotient_rep(const MatRep& R, const std::vector<Vec>& basis) {
  const FieldCtx& F = R.field();
  const std::size_t n = R.dim();
  Subspace S(F, n);
  for (const auto& v : basis) {
    if (v.size() != n) throw Error(Errc::IllTyped, "basis vector length");
    S.add(v);
  }
  for (const auto& A : R.gen_images())
    for (const auto& v : S.basis())
      if (!S.contains(mat::vec_mul(F, v, A))) throw Error(Errc::IllTyped, "section basis is not invariant");
  const auto fc = S.free_columns();
  const std::size_t d = fc.size();
  if (d == 0) throw Error(Errc::IllTyped, "quotient is zero");
  std::vector<Matrix> imgs;
  for (const auto& A : R.gen_images()) {
    Matrix out(d, d);
    for (std::size_t s = 0; s < d; ++s) {
      const auto row = A.row(fc[s]);
      const Vec red = S.reduce(Vec(row.begin(), row.end()));
      for (std::size_t t = 0; t < d; ++t) out(s, t) = red[fc[t]];
    }
    imgs.push_back(std::move(out));
  }
  return MatRep(R.group_ptr(), F, std::move(imgs), R.label() + " quotient", 0);
}

// ---------------------------------------------------------------------------
// build_rep

namespace {

Matrix sym_power_matrix(const FieldCtx& F, const Matrix& A, unsigned s,
                        const std::vector<std::vector<unsigned>>& monos,
                        const std::map<std::vector<unsigned>, std::size_t>& index) {
  const std::size_t n = A.rows();
  Matrix out(monos.size(), monos.size());
  for (std::size_t r = 0; r < monos.size(); ++r) {
    std::map<std::vector<unsigned>, FieldElem> poly{{std::vector<unsigned>(n, 0), F.one()}};
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned e = 0; e < monos[r][i]; ++e) {
        std::map<std::vector<unsigned>, FieldElem> next;
        for (const auto& [m, c] : poly) {
          for (std::size_t j = 0; j < n; ++j) {
            if (F.is_zero(A(i, j))) continue;
            auto m2 = m;
            ++m2[j];
            auto& slot = next[m2];
            slot = F.add(slot, F.mul(c, A(i, j)));
          }
        }
        poly = std::move(next);
      }
    }
    for (const auto& [m, c] : poly) {
      if (!F.is_zero(c)) out(r, index.at(m)) = c;
    }
  }
  (void)s;
  return out;
}

// Exponent vectors of degree s in n variables, graded-lex (x_1^s first).
std::vector<std::vector<unsigned>> monomials(std::size_t n, unsigned s) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  if (n > 0) rec(rec, 0, s);
  return out;
}

std::vector<Vec> fixed_basis(const FieldCtx& F, const std::vector<Matrix>& gens, std::size_t n) {
  std::vector<Matrix> blocks;
  for (const auto& A : gens) blocks.push_back(mat::sub(F, A, Matrix::identity(F, n)));
  if (blocks.empty()) {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < n; ++i) {
      Vec v(n);
      v[i] = F.one();
      all.push_back(std::move(v));
    }
    return all;
  }
  return mat::left_nullspace(F, mat::hconcat(blocks));
}

MatRep build(const ModuleSpec& spec, GroupLibrary& lib, std::optional<FieldCtx> inherited) {
  std::optional<FieldCtx> field = inherited;
  if (spec.field) {
    const FieldCtx own = make_field(spec.field->first, spec.field->second);
    if (inherited && !(*inherited == own)) throw Error(Errc::FieldMismatch, "nested :field differs from the enclosing one");
    field = own;
  }
  auto need_field = [&]() -> const FieldCtx& {
    if (!field) throw Error(Errc::IllTyped, "no :field given for " + format_module_spec(spec));
    return *field;
  };

  switch (spec.kind) {
    case ModuleSpec::Kind::Perm: {
      const FieldCtx& F = need_field();
      auto G = lib.group(spec.name);
      std::vector<Matrix> imgs;
      for (const auto& g : G->generators()) imgs.push_back(perm_matrix(F, g));
      return MatRep(G, F, std::move(imgs), {}, 0);
    }
    case ModuleSpec::Kind::Explicit: {
      const EmbeddedGroup& e = lib.matgroup(spec.name);
      if (field && !(*field == e.rep.field())) {
        throw Error(Errc::FieldMismatch, spec.name + " is defined over " + e.rep.field().name());
      }
      return e.rep;
    }
    case ModuleSpec::Kind::Deleted: {
      const ModuleSpec& child = spec.children.at(0);
      if (child.kind != ModuleSpec::Kind::Perm) throw Error(Errc::IllTyped, "deleted needs a perm module");
      const MatRep P = build(child, lib, field);
      const std::size_t n = P.dim();
      if (n < 2) throw Error(Errc::IllTyped, "deleted module of a single point");
      if (n % P.field().p() == 0 && !spec.sumzero_marked) {
        throw Error(Errc::IllTyped, "characteristic divides the number of points; use :sumzero or section");
      }
      std::vector<Vec> basis;
      for (std::size_t i = 1; i < n; ++i) {
        Vec v(n);
        v[i] = P.field().one();
        v[0] = P.field().from_int(-1);
        basis.push_back(std::move(v));
      }
      return submodule_rep(P, basis);
    }
    case ModuleSpec::Kind::Tensor: {
      MatRep acc = build(spec.children.at(0), lib, field);
      for (std::size_t c = 1; c < spec.children.size(); ++c) {
        const MatRep next = build(spec.children[c], lib, field);
        if (acc.group_ptr() != next.group_ptr()) throw Error(Errc::IllTyped, "tensor factors act on different groups");
        if (!(acc.field() == next.field())) throw Error(Errc::FieldMismatch, "tensor factors over different fields");
        std::vector<Matrix> imgs;
        for (std::size_t i = 0; i < acc.gen_images().size(); ++i)
          imgs.push_back(mat::kron(acc.field(), acc.gen_images()[i], next.gen_images()[i]));
        acc = MatRep(acc.group_ptr(), acc.field(), std::move(imgs), {}, 0);
      }
      return acc;
    }
    case ModuleSpec::Kind::Dual: {
      const MatRep M = build(spec.children.at(0), lib, field);
      std::vector<Matrix> imgs;
      for (const auto& A : M.gen_images()) imgs.push_back(mat::transpose(mat::inverse(M.field(), A)));
      return MatRep(M.group_ptr(), M.field(), std::move(imgs), {}, 0);
    }
    case ModuleSpec::Kind::Twist: {
      const MatRep M = build(spec.children.at(0), lib, field);
      std::vector<Matrix> imgs;
      for (const auto& A : M.gen_images()) imgs.push_back(mat::frobenius(M.field(), A, spec.param));
      return MatRep(M.group_ptr(), M.field(), std::move(imgs), {}, 0);
    }
    case ModuleSpec::Kind::Sym: {
      const MatRep M = build(spec.children.at(0), lib, field);
      if (spec.param == 0) throw Error(Errc::IllTyped, "sym 0 is the trivial module; not supported");
      const auto monos = monomials(M.dim(), spec.param);
      std::map<std::vector<unsigned>, std::size_t> index;
      for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
      std::vector<Matrix> imgs;
      for (const auto& A : M.gen_images()) imgs.push_back(sym_power_matrix(M.field(), A, spec.param, monos, index));
      return MatRep(M.group_ptr(), M.field(), std::move(imgs), {}, 0);
    }
    case ModuleSpec::Kind::Section: {
      const MatRep M = build(spec.children.at(0), lib, field);
      const FieldCtx& F = M.field();
      const std::size_t n = M.dim();
      std::vector<Vec> basis;
      switch (spec.basis) {
        case ModuleSpec::Basis::Ones:
          basis.push_back(Vec(n, F.one()));
          break;
        case ModuleSpec::Basis::SumZero:
          for (std::size_t i = 1; i < n; ++i) {
            Vec v(n);
            v[i] = F.one();
            v[0] = F.from_int(-1);
            basis.push_back(std::move(v));
          }
          break;
        case ModuleSpec::Basis::Fixed:
          basis = fixed_basis(F, M.gen_images(), n);
          break;
        case ModuleSpec::Basis::Cofixed: {
          Subspace S(F, n);
          for (const auto& A : M.gen_images())
            for (std::size_t i = 0; i < n; ++i) {
              Vec v(A.row(i).begin(), A.row(i).end());
              v[i] = F.sub(v[i], F.one());
              S.add(std::move(v));
            }
          basis = S.basis();
          break;
        }
        case ModuleSpec::Basis::MeatAxe: {
          const auto res = is_irreducible(M);
          if (res.irreducible) throw Error(Errc::IllTyped, "module is irreducible; no proper submodule");
          basis = res.submodule;
          break;
        }
        case ModuleSpec::Basis::Given:
          for (const auto& row : spec.given_basis) {
            if (row.size() != n) throw Error(Errc::IllTyped, "given basis row has wrong length");
            Vec v;
            for (auto x : row) v.push_back(F.from_int(x));
            basis.push_back(std::move(v));
          }
          break;
      }
      if (basis.empty()) throw Error(Errc::IllTyped, "section basis is empty");
      return spec.mode == ModuleSpec::Mode::Sub ? submodule_rep(M, basis) : quotient_rep(M, basis);
    }
  }
  throw Error(Errc::IllTyped, "unknown module kind");
}

} // namespace

MatRep build_rep(const ModuleSpec& spec, GroupLibrary& lib) {
  MatRep R = build(spec, lib, std::nullopt);
  // final homomorphism check on the assembled images
  MatRep checked(R.group_ptr(), R.field(), R.gen_images(), format_module_spec(spec));
  return checked;
}

// ---------------------------------------------------------------------------
// Fixed spaces and eigenspaces

Poly char_poly(const MatRep& R, const Perm& g) { return mat::char_poly(R.field(), R.image(g)); }

std::size_t fixed_space_dim(const MatRep& R, const Perm& g) {
  const Matrix A = mat::sub(R.field(), R.image(g), Matrix::identity(R.field(), R.dim()));
  return R.dim() - mat::rank(R.field(), A);
}

EigenProfile eigenspace_profile(const MatRep& R, const Perm& g) {
  if (element_order(g) % R.field().p() == 0) {
    throw Error(Errc::NotSemisimple, "characteristic divides the order of " + g.to_cycle_string());
  }
  const FieldCtx& F = R.field();
  const Poly f = char_poly(R, g);
  EigenProfile out;
  for (const auto& part : squarefree_decomposition(F, f)) {
    out.parts.emplace_back(static_cast<unsigned>(part.part.degree()), part.multiplicity);
    out.max_eigenspace_dim = std::max<std::size_t>(out.max_eigenspace_dim, part.multiplicity);
  }
  out.fixed_multiplicity = root_multiplicity(F, f, F.one());
  return out;
}

std::size_t module_fixed_dim(const MatRep& R, const std::vector<Perm>& elems, bool dual) {
  const FieldCtx& F = R.field();
  std::vector<Matrix> mats;
  for (const auto& x : elems) {
    Matrix A = R.image(x);
    if (dual) A = mat::transpose(mat::inverse(F, A));
    mats.push_back(std::move(A));
  }
  return fixed_basis(F, mats, R.dim()).size();
}

// ---------------------------------------------------------------------------
// MeatAxe

namespace {

// An irreducible factor of the radical of f, preferring the smallest degree
// at which exactly one factor occurs. Empty when none is isolated cheaply.
std::optional<Poly> isolated_factor(const FieldCtx& F, const Poly& f) {
  Poly rad = poly::constant(F, F.one());
  for (const auto& part : squarefree_decomposition(F, f)) rad = poly::mul(F, rad, part.part);
  const Poly x = poly::x(F);
  Poly h = x;
  for (int d = 1; rad.degree() >= d; ++d) {
    h = poly::powmod(F, h, F.order(), rad);
    const Poly g = poly::gcd(F, poly::sub(F, h, x), rad);
    if (g.degree() <= 0) continue;
    if (d == 1) {
      const auto rts = poly::roots(F, g);
      return poly::linear(F, rts.front());
    }
    if (g.degree() == d) return g;
    rad = poly::quot(F, rad, g);
    h = poly::rem(F, h, rad);
  }
  return std::nullopt;
}

std::vector<Vec> annihilator(const FieldCtx& F, const Subspace& W) {
  return mat::left_nullspace(F, mat::transpose(W.basis_matrix()));
}

} // namespace

IrreducibilityResult meataxe(const FieldCtx& F, const std::vector<Matrix>& gens, std::uint64_t seed,
                             std::size_t budget) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "meataxe needs generator images");
  const std::size_t n = gens.front().rows();
  IrreducibilityResult res;
  if (n == 0) throw Error(Errc::InvalidArgument, "zero-dimensional module");
  if (n == 1) {
    res.irreducible = true;
    res.theta = Matrix::identity(F, 1);
    res.factor = poly::linear(F, F.one());
    return res;
  }
  std::vector<Matrix> tgens;
  for (const auto& A : gens) tgens.push_back(mat::transpose(A));
  SeedStream rng(seed);
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    res.attempts = attempt;
    Matrix theta(n, n);
    const std::size_t terms = 3 + rng.below(4);
    for (std::size_t t = 0; t < terms; ++t) {
      const std::size_t len = 1 + rng.below(8);
      Matrix w = gens[rng.below(gens.size())];
      for (std::size_t i = 1; i < len; ++i) w = mat::mul(F, w, gens[rng.below(gens.size())]);
      const FieldElem c = F.element(1 + rng.below(F.order() - 1));
      theta = mat::add(F, theta, mat::scale(F, w, c));
    }
    const auto phi = isolated_factor(F, mat::char_poly(F, theta));
    if (!phi) continue;
    const Matrix N = mat::eval_poly(F, *phi, theta);
    const auto ker = mat::left_nullspace(F, N);
    if (ker.empty()) continue;
    const Subspace U = spin(F, {ker.front()}, gens);
    if (U.dim() < n) {
      res.irreducible = false;
      res.submodule = U.basis();
      res.theta = theta;
      res.factor = *phi;
      return res;
    }
    if (ker.size() != static_cast<std::size_t>(phi->degree())) continue;
    const auto tker = mat::left_nullspace(F, mat::transpose(N));
    const Subspace W = spin(F, {tker.front()}, tgens);
    if (W.dim() < n) {
      res.irreducible = false;
      res.submodule = annihilator(F, W);
      res.theta = theta;
      res.factor = *phi;
      return res;
    }
    res.irreducible = true;
    res.theta = theta;
    res.factor = *phi;
    return res;
  }
  throw Error(Errc::Inconclusive, "no decisive group-algebra element after " + std::to_string(budget) + " draws");
}

IrreducibilityResult is_irreducible(const MatRep& R, std::uint64_t seed, std::size_t budget) {
  return meataxe(R.field(), R.gen_images(), seed, budget);
}

bool irreducible_by_enumeration(const FieldCtx& F, const std::vector<Matrix>& gens) {
  const std::size_t n = gens.front().rows();
  const std::uint64_t q = F.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > 2'000'000 / q) throw Error(Errc::TooLarge, "enumeration oracle too large");
    total *= q;
  }
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec v(n);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = F.element(c % q);
      c /= q;
    }
    // one representative per line: first nonzero coordinate equal to 1
    auto first = std::find_if(v.begin(), v.end(), [&](FieldElem e) { return !F.is_zero(e); });
    if (*first != F.one()) continue;
    if (spin(F, {v}, gens).dim() < n) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Matrix groups

namespace {

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto e : v) {
      h ^= e.code;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace

EmbeddedGroup embed_matrix_group(const FieldCtx& F, std::size_t dim, const std::vector<Matrix>& gens,
                                 std::string name, std::size_t cap) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "matrix group needs generators");
  for (const auto& A : gens) {
    if (A.rows() != dim || A.cols() != dim) throw Error(Errc::DegreeMismatch, "generator shape");
    if (F.is_zero(mat::det(F, A))) throw Error(Errc::NotInvertible, "generator is singular");
  }
  EmbeddedGroup out;
  std::unordered_map<Vec, std::uint32_t, VecHash> index;
  auto visit = [&](Vec v) {
    if (index.count(v)) return;
    if (out.points.size() >= cap) throw Error(Errc::OrbitTooLarge, "orbit exceeds " + std::to_string(cap));
    index.emplace(v, static_cast<std::uint32_t>(out.points.size()));
    out.points.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim);
    e[i] = F.one();
    visit(std::move(e));
  }
  for (std::size_t h = 0; h < out.points.size(); ++h)
    for (const auto& A : gens) visit(mat::vec_mul(F, out.points[h], A));

  std::vector<Perm> perms;
  for (const auto& A : gens) {
    std::vector<std::uint32_t> img(out.points.size());
    for (std::size_t i = 0; i < out.points.size(); ++i) img[i] = index.at(mat::vec_mul(F, out.points[i], A));
    perms.push_back(Perm(std::move(img)));
  }
  auto G = std::make_shared<PermGroup>(group_from_generators(out.points.size(), std::move(perms)));
  G->set_name(name);
  out.group = G;
  out.rep = MatRep(G, F, gens, name.empty() ? std::string("matrix group") : "(explicit " + name + ")");
  return out;
}

MatGroupSpec parse_matgroup(std::string_view text) {
  MatGroupSpec spec;
  bool header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "matgroup") {
      if (!(ls >> spec.name)) throw Error(Errc::Parse, "matgroup: missing name");
      std::string key;
      while (ls >> key) {
        std::uint64_t v = 0;
        if (!(ls >> v)) throw Error(Errc::Parse, "matgroup: missing value for " + key);
        if (key == "field") {
          spec.p = v;
        } else if (key == "ext") {
          spec.k = static_cast<unsigned>(v);
        } else if (key == "dim") {
          spec.dim = v;
        } else {
          throw Error(Errc::Parse, "matgroup: unknown key " + key);
        }
      }
      header = true;
    } else if (word == "gen") {
      if (!header) throw Error(Errc::Parse, "matgroup: gen before header");
      std::string rest;
      std::getline(ls, rest);
      auto rows = parse_int_rows(rest);
      if (rows.size() != spec.dim) throw Error(Errc::Parse, "matgroup: generator has wrong row count");
      for (const auto& r : rows)
        if (r.size() != spec.dim) throw Error(Errc::Parse, "matgroup: generator has wrong column count");
      spec.gens.push_back(std::move(rows));
    } else {
      throw Error(Errc::Parse, "matgroup: unknown line '" + word + "'");
    }
  }
  if (!header || spec.dim == 0) throw Error(Errc::Parse, "matgroup: missing header");
  if (spec.gens.empty()) throw Error(Errc::Parse, "matgroup: no generators");
  return spec;
}

std::string format_matgroup(const MatGroupSpec& spec) {
  std::string s = "matgroup " + spec.name + " field " + std::to_string(spec.p);
  if (spec.k != 1) s += " ext " + std::to_string(spec.k);
  s += " dim " + std::to_string(spec.dim) + "\n";
  for (const auto& g : spec.gens) s += "gen " + format_int_rows(g) + "\n";
  return s;
}

std::vector<Matrix> matgroup_matrices(const FieldCtx& F, const MatGroupSpec& spec) {
  std::vector<Matrix> out;
  for (const auto& g : spec.gens) {
    Matrix m(spec.dim, spec.dim);
    for (std::size_t i = 0; i < spec.dim; ++i)
      for (std::size_t j = 0; j < spec.dim; ++j) {
        const std::int64_t v = g[i][j];
        if (F.k() == 1) {
          m(i, j) = F.from_int(v);
        } else {
          if (v < 0 || static_cast<std::uint64_t>(v) >= F.order()) throw Error(Errc::Parse, "element code out of range");
          m(i, j) = F.element(static_cast<std::uint64_t>(v));
        }
      }
    out.push_back(std::move(m));
  }
  return out;
}

} // namespace fixspace
