#include "ceforge/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace ceforge {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

Coefficients Coefficients::prime_field(unsigned long p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::DimensionMismatch, "prime field modulus " + std::to_string(p) + " is not prime");
  }
  if (p == 2) return binary_field();
  return Coefficients(Kind::PrimeField, p);
}

std::string Coefficients::symbol() const {
  switch (kind_) {
    case Kind::IntegerRing: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::BinaryField: return "Z2";
    case Kind::PrimeField: return "Z" + std::to_string(modulus_);
  }
  return "?";
}

std::string Coefficients::file_tag() const {
  if (kind_ == Kind::PrimeField) return "Zp " + std::to_string(modulus_);
  return symbol();
}

Scalar Coefficients::reduce(const Scalar& x) const {
  switch (kind_) {
    case Kind::Rationals:
      return x;
    case Kind::IntegerRing:
      if (x.get_den() != 1) throw Error(ErrorCode::DimensionMismatch, "non-integral entry " + x.get_str() + " over Z");
      return x;
    case Kind::PrimeField:
    case Kind::BinaryField: {
      mpz_class p(modulus_);
      mpz_class num = x.get_num() % p;
      if (num < 0) num += p;
      if (x.get_den() != 1) {
        mpz_class den = x.get_den() % p;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
          throw Error(ErrorCode::DimensionMismatch, "denominator divisible by modulus");
        }
        num = (num * inv) % p;
      }
      return Scalar(num);
    }
  }
  return x;
}

bool Coefficients::is_unit(const Scalar& x) const {
  if (is_field()) return x != 0;
  return x == 1 || x == -1;
}

Scalar Coefficients::inverse(const Scalar& x) const {
  if (!is_unit(x)) throw Error(ErrorCode::NotInvertible, "scalar " + x.get_str() + " is not a unit");
  if (kind_ == Kind::IntegerRing) return x;
  if (kind_ == Kind::Rationals) return Scalar(1) / x;
  mpz_class p(modulus_);
  mpz_class inv;
  mpz_class num = x.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  return Scalar(inv);
}

mpz_class Coefficients::norm(const Scalar& x) const {
  if (x == 0) return 0;
  if (is_field()) return 1;
  return abs(x.get_num());
}

Scalar Coefficients::quotient(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::IntegerRing) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    return Scalar(q);
  }
  return reduce(a * inverse(b));
}

bool Coefficients::divides(const Scalar& a, const Scalar& b) const {
  if (a == 0) return b == 0;
  if (is_field()) return true;
  return mpz_divisible_p(b.get_num_mpz_t(), a.get_num_mpz_t()) != 0;
}

// ---------------------------------------------------------------------------

Matrix Matrix::identity(Coefficients ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Coefficients ring, const std::vector<std::vector<long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(rows[i][j]));
  }
  return m;
}

Matrix Matrix::from_rows(Coefficients ring, const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(Coefficients ring, const std::vector<long>& entries) {
  Matrix m(ring, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, Scalar(entries[i]));
  return m;
}

void Matrix::add_to(std::size_t i, std::size_t j, const Scalar& x) {
  Scalar& e = data_[i * cols_ + j];
  e += x;
  if (ring_.is_finite()) e = ring_.reduce(e);
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix s(ring_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.data_[i * cols.size() + j] = (*this)(rows[i], cols[j]);
  return s;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> all(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
  return submatrix(all, cols);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<std::size_t> all(cols_);
  for (std::size_t j = 0; j < cols_; ++j) all[j] = j;
  return submatrix(rows, all);
}

void Matrix::place(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, const Matrix& block) {
  if (block.rows() != rows.size() || block.cols() != cols.size()) {
    throw Error(ErrorCode::DimensionMismatch, "block placement shape mismatch");
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) data_[rows[i] * cols_ + cols[j]] = block(i, j);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
  Matrix m(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.data_[i * m.cols_ + j] = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m.data_[i * m.cols_ + a.cols() + j] = b(i, j);
  }
  return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols());
  std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "product of " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                                  " and " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  }
  Matrix p(ring_, rows_, o.cols_);
  Scalar tmp;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = data_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.data_[k * o.cols_ + j];
        if (b == 0) continue;
        tmp = a * b;
        p.data_[i * o.cols_ + j] += tmp;
      }
    }
  }
  if (ring_.is_finite()) {
    for (auto& e : p.data_) e = ring_.reduce(e);
  }
  return p;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "sum shape mismatch");
  Matrix s(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = ring_.reduce(data_[k] + o.data_[k]);
  return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "difference shape mismatch");
  Matrix s(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = ring_.reduce(data_[k] - o.data_[k]);
  return s;
}

Matrix Matrix::operator-() const {
  Matrix s(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = ring_.reduce(-data_[k]);
  return s;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix s(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = ring_.reduce(data_[k] * c);
  return s;
}

bool Matrix::operator==(const Matrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string Matrix::to_string() const {
  if (rows_ == 0 || cols_ == 0) return "[]";
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << (*this)(i, j).get_str();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Working state of the elimination. Row operations act on `a` and `u` and,
// inversely, on `u_inv`; column operations on `a`, `v` and `v_inv`.
struct SmithWork {
  Coefficients ring;
  std::size_t r, c;
  std::vector<Scalar> a, u, ui, v, vi;

  Scalar& A(std::size_t i, std::size_t j) { return a[i * c + j]; }

  static void reduce_all(const Coefficients& ring, std::vector<Scalar>& xs, std::size_t from, std::size_t step,
                         std::size_t count) {
    if (!ring.is_finite()) return;
    for (std::size_t k = 0; k < count; ++k) xs[from + k * step] = ring.reduce(xs[from + k * step]);
  }

  // row_i -= q * row_t
  void row_axpy(std::size_t i, std::size_t t, const Scalar& q) {
    for (std::size_t j = 0; j < c; ++j) a[i * c + j] -= q * a[t * c + j];
    for (std::size_t j = 0; j < r; ++j) u[i * r + j] -= q * u[t * r + j];
    for (std::size_t k = 0; k < r; ++k) ui[k * r + t] += q * ui[k * r + i];
    reduce_all(ring, a, i * c, 1, c);
    reduce_all(ring, u, i * r, 1, r);
    reduce_all(ring, ui, t, r, r);
  }

  // col_j -= q * col_t
  void col_axpy(std::size_t j, std::size_t t, const Scalar& q) {
    for (std::size_t i = 0; i < r; ++i) a[i * c + j] -= q * a[i * c + t];
    for (std::size_t i = 0; i < c; ++i) v[i * c + j] -= q * v[i * c + t];
    for (std::size_t k = 0; k < c; ++k) vi[t * c + k] += q * vi[j * c + k];
    reduce_all(ring, a, j, c, r);
    reduce_all(ring, v, j, c, c);
    reduce_all(ring, vi, t * c, 1, c);
  }

  void swap_rows(std::size_t i, std::size_t t) {
    if (i == t) return;
    for (std::size_t j = 0; j < c; ++j) std::swap(a[i * c + j], a[t * c + j]);
    for (std::size_t j = 0; j < r; ++j) std::swap(u[i * r + j], u[t * r + j]);
    for (std::size_t k = 0; k < r; ++k) std::swap(ui[k * r + i], ui[k * r + t]);
  }

  void swap_cols(std::size_t j, std::size_t t) {
    if (j == t) return;
    for (std::size_t i = 0; i < r; ++i) std::swap(a[i * c + j], a[i * c + t]);
    for (std::size_t i = 0; i < c; ++i) std::swap(v[i * c + j], v[i * c + t]);
    for (std::size_t k = 0; k < c; ++k) std::swap(vi[j * c + k], vi[t * c + k]);
  }

  void scale_row(std::size_t t, const Scalar& s) {
    Scalar s_inv = ring.inverse(s);
    for (std::size_t j = 0; j < c; ++j) a[t * c + j] = ring.reduce(a[t * c + j] * s);
    for (std::size_t j = 0; j < r; ++j) u[t * r + j] = ring.reduce(u[t * r + j] * s);
    for (std::size_t k = 0; k < r; ++k) ui[k * r + t] = ring.reduce(ui[k * r + t] * s_inv);
  }

  // row_t += row_i
  void row_add(std::size_t t, std::size_t i) {
    for (std::size_t j = 0; j < c; ++j) a[t * c + j] += a[i * c + j];
    for (std::size_t j = 0; j < r; ++j) u[t * r + j] += u[i * r + j];
    for (std::size_t k = 0; k < r; ++k) ui[k * r + i] -= ui[k * r + t];
    reduce_all(ring, a, t * c, 1, c);
    reduce_all(ring, u, t * r, 1, r);
    reduce_all(ring, ui, i, r, r);
  }
};

std::vector<Scalar> identity_data(std::size_t n) {
  std::vector<Scalar> d(n * n);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1;
  return d;
}

Matrix wrap(const Coefficients& ring, std::size_t r, std::size_t c, const std::vector<Scalar>& data) {
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, data[i * c + j]);
  return m;
}

}  // namespace

std::vector<Scalar> SmithDecomposition::invariant_factors() const {
  std::vector<Scalar> out;
  out.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const Matrix& m) {
  const Coefficients& ring = m.ring();
  SmithWork w{ring, m.rows(), m.cols(), {}, identity_data(m.rows()), identity_data(m.rows()), identity_data(m.cols()),
              identity_data(m.cols())};
  w.a.resize(w.r * w.c);
  for (std::size_t i = 0; i < w.r; ++i)
    for (std::size_t j = 0; j < w.c; ++j) w.a[i * w.c + j] = m(i, j);

  const std::size_t limit = std::min(w.r, w.c);
  std::size_t t = 0;
  for (; t < limit; ++t) {
    // Pivot: nonzero entry of smallest norm in the trailing block.
    std::size_t pi = w.r, pj = w.c;
    mpz_class best;
    for (std::size_t i = t; i < w.r; ++i) {
      for (std::size_t j = t; j < w.c; ++j) {
        if (w.A(i, j) == 0) continue;
        mpz_class nrm = ring.norm(w.A(i, j));
        if (pi == w.r || nrm < best) {
          best = nrm;
          pi = i;
          pj = j;
          if (best == 1) break;
        }
      }
      if (pi != w.r && best == 1) break;
    }
    if (pi == w.r) break;
    w.swap_rows(pi, t);
    w.swap_cols(pj, t);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < w.r; ++i) {
        if (w.A(i, t) == 0) continue;
        w.row_axpy(i, t, ring.quotient(w.A(i, t), w.A(t, t)));
        if (w.A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.c; ++j) {
        if (w.A(t, j) == 0) continue;
        w.col_axpy(j, t, ring.quotient(w.A(t, j), w.A(t, t)));
        if (w.A(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t into the pivot slot.
        std::size_t bi = t, bj = t;
        mpz_class bn = ring.norm(w.A(t, t));
        for (std::size_t i = t + 1; i < w.r; ++i) {
          if (w.A(i, t) != 0 && ring.norm(w.A(i, t)) < bn) {
            bn = ring.norm(w.A(i, t));
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < w.c; ++j) {
          if (w.A(t, j) != 0 && ring.norm(w.A(t, j)) < bn) {
            bn = ring.norm(w.A(t, j));
            bi = t;
            bj = j;
          }
        }
        w.swap_rows(bi, t);
        w.swap_cols(bj, t);
        continue;
      }
      if (ring.is_field()) break;
      // Enforce d_t | every remaining entry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < w.r && divisible; ++i) {
        for (std::size_t j = t + 1; j < w.c; ++j) {
          if (!ring.divides(w.A(t, t), w.A(i, j))) {
            w.row_add(t, i);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }

    const Scalar piv = w.A(t, t);
    if (ring.is_field()) {
      if (piv != 1) w.scale_row(t, ring.inverse(piv));
    } else if (piv < 0) {
      w.scale_row(t, Scalar(-1));
    }
  }

  SmithDecomposition out;
  out.rank = t;
  out.d = wrap(ring, w.r, w.c, w.a);
  out.u = wrap(ring, w.r, w.r, w.u);
  out.u_inv = wrap(ring, w.r, w.r, w.ui);
  out.v = wrap(ring, w.c, w.c, w.v);
  out.v_inv = wrap(ring, w.c, w.c, w.vi);
  return out;
}

std::optional<Matrix> solve(const Matrix& a, const SmithDecomposition& snf, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row mismatch");
  const Coefficients& ring = a.ring();
  Matrix ub = snf.u * b;
  Matrix y(ring, a.cols(), b.cols());
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const Scalar& rhs = ub(i, col);
      if (i < snf.rank) {
        const Scalar& di = snf.d(i, i);
        if (!ring.divides(di, rhs)) return std::nullopt;
        y.set(i, col, ring.is_field() ? ring.reduce(rhs * ring.inverse(di)) : Scalar(rhs / di));
      } else if (rhs != 0) {
        return std::nullopt;
      }
    }
  }
  return snf.v * y;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) { return solve(a, smith_normal_form(a), b); }

Matrix kernel_basis(const Matrix& a) {
  if (a.is_zero()) return Matrix::identity(a.ring(), a.cols());
  SmithDecomposition snf = smith_normal_form(a);
  std::vector<std::size_t> cols;
  for (std::size_t j = snf.rank; j < a.cols(); ++j) cols.push_back(j);
  return snf.v.select_columns(cols);
}

std::size_t rank(const Matrix& a) { return smith_normal_form(a).rank; }

Scalar determinant(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const Coefficients& ring = a.ring();
  const std::size_t n = a.rows();
  // Over Z the elimination runs in Q; the result is integral.
  const bool finite = ring.is_finite();
  std::vector<Scalar> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = a(i, j);
  Scalar det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && w[p * n + k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w[p * n + j], w[k * n + j]);
      det = -det;
    }
    const Scalar piv = w[k * n + k];
    det *= piv;
    if (finite) det = ring.reduce(det);
    const Scalar inv = finite ? ring.inverse(piv) : Scalar(1 / piv);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w[i * n + k] == 0) continue;
      Scalar f = w[i * n + k] * inv;
      if (finite) f = ring.reduce(f);
      for (std::size_t j = k; j < n; ++j) {
        w[i * n + j] -= f * w[k * n + j];
        if (finite) w[i * n + j] = ring.reduce(w[i * n + j]);
      }
    }
  }
  return ring.reduce(det);
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) return std::nullopt;
  if (a.rows() == 0) return a;
  SmithDecomposition snf = smith_normal_form(a);
  if (snf.rank != a.rows()) return std::nullopt;
  const Coefficients& ring = a.ring();
  Matrix dinv(ring, a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!ring.is_unit(snf.d(i, i))) return std::nullopt;
    dinv.set(i, i, ring.inverse(snf.d(i, i)));
  }
  return snf.v * dinv * snf.u;
}

}  // namespace ceforge
