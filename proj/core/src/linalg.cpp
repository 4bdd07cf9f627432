#include "fixspace/linalg.hpp"

#include <algorithm>

#include "fixspace/error.hpp"

namespace fixspace {

Matrix Matrix::identity(const FieldCtx& F, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw Error(Errc::InvalidArgument, "ragged matrix rows");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

namespace mat {

Matrix mul(const FieldCtx& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DegreeMismatch, "matrix product shape");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElem x = a(i, k);
      if (x.code == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
      }
    }
  }
  return c;
}

Matrix add(const FieldCtx& F, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.add(a(i, j), b(i, j));
  return c;
}

Matrix sub(const FieldCtx& F, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.sub(a(i, j), b(i, j));
  return c;
}

Matrix scale(const FieldCtx& F, const Matrix& a, FieldElem s) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.mul(a(i, j), s);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix inverse(const FieldCtx& F, const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(Errc::NotInvertible, "non-square matrix");
  Matrix m = a;
  Matrix inv = Matrix::identity(F, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).code == 0) ++piv;
    if (piv == n) throw Error(Errc::NotInvertible, "singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const FieldElem s = F.inv(m(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = F.mul(m(col, j), s);
      inv(col, j) = F.mul(inv(col, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const FieldElem f = m(r, col);
      if (f.code == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) = F.sub(m(r, j), F.mul(f, m(col, j)));
        inv(r, j) = F.sub(inv(r, j), F.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

Matrix pow(const FieldCtx& F, const Matrix& a, std::uint64_t e) {
  Matrix result = Matrix::identity(F, a.rows());
  Matrix base = a;
  while (e > 0) {
    if (e & 1U) result = mul(F, result, base);
    e >>= 1U;
    if (e > 0) base = mul(F, base, base);
  }
  return result;
}

Matrix kron(const FieldCtx& F, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const FieldElem x = a(i, j);
      if (x.code == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = F.mul(x, b(k, l));
    }
  return c;
}

Matrix hconcat(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  Matrix c(blocks.front().rows(), cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, off + j) = b(i, j);
    off += b.cols();
  }
  return c;
}

Matrix frobenius(const FieldCtx& F, const Matrix& a, unsigned i) {
  Matrix c = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) c(r, j) = F.frobenius(a(r, j), i);
  return c;
}

bool is_identity(const FieldCtx& F, const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != (i == j ? F.one() : F.zero())) return false;
  return true;
}

Vec vec_mul(const FieldCtx& F, std::span<const FieldElem> v, const Matrix& a) {
  Vec out(a.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].code == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] = F.add(out[j], F.mul(v[k], a(k, j)));
  }
  return out;
}

std::size_t rank(const FieldCtx& F, Matrix m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, col).code == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const FieldElem s = F.inv(m(r, col));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const FieldElem f = F.mul(m(i, col), s);
      if (f.code == 0) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    ++r;
  }
  return r;
}

std::vector<Vec> left_nullspace(const FieldCtx& F, const Matrix& a) {
  // v A = 0  <=>  A^T v^T = 0: right nullspace of the transpose.
  const Matrix t = transpose(a);
  Matrix m = t;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && m(piv, col).code == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const FieldElem s = F.inv(m(r, col));
    for (std::size_t j = 0; j < cols; ++j) m(r, j) = F.mul(m(r, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const FieldElem f = m(i, col);
      if (f.code == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    pivots.push_back(col);
    ++r;
  }
  std::vector<Vec> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t fcol = 0; fcol < cols; ++fcol) {
    if (is_pivot[fcol]) continue;
    Vec v(cols);
    v[fcol] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(m(i, fcol));
    basis.push_back(std::move(v));
  }
  Subspace s(F, cols);
  for (auto& v : basis) s.add(v);
  return s.basis();
}

Poly char_poly(const FieldCtx& F, const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(Errc::InvalidArgument, "char_poly of non-square matrix");
  Matrix h = a;
  // Reduce to upper Hessenberg form by elementary similarity transforms.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1).code == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, m));
    }
    const FieldElem t = F.inv(h(m, m - 1));
    for (std::size_t j = m + 1; j < n; ++j) {
      const FieldElem u = F.mul(h(j, m - 1), t);
      if (u.code == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h(j, c) = F.sub(h(j, c), F.mul(u, h(m, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, m) = F.add(h(r, m), F.mul(u, h(r, j)));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i,m} p_{m-i-1}
  std::vector<Poly> p(n + 1);
  p[0] = poly::constant(F, F.one());
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = poly::mul(F, poly::linear(F, h(m - 1, m - 1)), p[m - 1]);
    FieldElem t = F.one();
    for (std::size_t i = 1; i < m; ++i) {
      t = F.mul(t, h(m - i, m - i - 1));
      const FieldElem c = F.mul(t, h(m - i - 1, m - 1));
      if (c.code == 0) continue;
      p[m] = poly::sub(F, p[m], poly::scale(F, p[m - i - 1], c));
    }
  }
  return p[n];
}

Matrix eval_poly(const FieldCtx& F, const Poly& f, const Matrix& a) {
  Matrix acc(a.rows(), a.cols());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = mul(F, acc, a);
    for (std::size_t d = 0; d < a.rows(); ++d) acc(d, d) = F.add(acc(d, d), f.coeff(i));
  }
  return acc;
}

FieldElem det(const FieldCtx& F, Matrix m) {
  const std::size_t n = m.rows();
  FieldElem d = F.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).code == 0) ++piv;
    if (piv == n) return F.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, m(col, col));
    const FieldElem s = F.inv(m(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const FieldElem f = F.mul(m(i, col), s);
      if (f.code == 0) continue;
      for (std::size_t j = col; j < n; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(col, j)));
    }
  }
  return d;
}

} // namespace mat

Vec Subspace::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElem c = v[pivots_[i]];
    if (c.code == 0) continue;
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < n_; ++j) {
      if (r[j].code != 0) v[j] = F_.sub(v[j], F_.mul(c, r[j]));
    }
  }
  return v;
}

bool Subspace::contains(Vec v) const {
  v = reduce(std::move(v));
  return std::all_of(v.begin(), v.end(), [](FieldElem x) { return x.code == 0; });
}

bool Subspace::add(Vec v) {
  if (v.size() != n_) throw Error(Errc::DegreeMismatch, "vector length");
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < n_ && v[piv].code == 0) ++piv;
  if (piv == n_) return false;
  const FieldElem s = F_.inv(v[piv]);
  for (auto& x : v) x = F_.mul(x, s);
  // Keep the basis fully reduced: clear the new pivot from existing rows.
  for (auto& r : rows_) {
    const FieldElem c = r[piv];
    if (c.code == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (v[j].code != 0) r[j] = F_.sub(r[j], F_.mul(c, v[j]));
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  const auto idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, piv);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

std::vector<std::size_t> Subspace::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace spin(const FieldCtx& F, const std::vector<Vec>& seeds, const std::vector<Matrix>& gens) {
  const std::size_t n = seeds.empty() ? (gens.empty() ? 0 : gens.front().rows()) : seeds.front().size();
  Subspace s(F, n);
  std::vector<Vec> queue;
  for (const auto& v : seeds) {
    if (s.add(v)) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size() && s.dim() < n; ++head) {
    for (const auto& g : gens) {
      Vec w = mat::vec_mul(F, queue[head], g);
      if (s.add(w)) queue.push_back(std::move(w));
    }
  }
  return s;
}

} // namespace fixspace
