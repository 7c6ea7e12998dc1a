#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ceforge/error.hpp"

namespace ceforge {

using Scalar = mpq_class;

// Coefficient ring of every module in the engine: Z, Q or a prime field.
// All scalars are stored as mpq_class in the ring's canonical form
// (integers over Z, normalized fractions over Q, residues in [0,p) over Z/p).
class Coefficients {
 public:
  enum class Kind { IntegerRing, Rationals, PrimeField, BinaryField };

  static Coefficients integers() { return Coefficients(Kind::IntegerRing, 0); }
  static Coefficients rationals() { return Coefficients(Kind::Rationals, 0); }
  static Coefficients binary_field() { return Coefficients(Kind::BinaryField, 2); }
  static Coefficients prime_field(unsigned long p);

  Kind kind() const { return kind_; }
  unsigned long modulus() const { return modulus_; }
  bool is_field() const { return kind_ != Kind::IntegerRing; }
  bool is_finite() const { return modulus_ != 0; }

  // "Z", "Q", "Z2", "Z7" -- used when printing groups.
  std::string symbol() const;
  // Token sequence used by the instance file format ("Z", "Q", "Z2", "Zp 7").
  std::string file_tag() const;

  Scalar reduce(const Scalar& x) const;
  bool is_unit(const Scalar& x) const;
  Scalar inverse(const Scalar& x) const;

  // Euclidean structure. Over a field every nonzero element has norm 1 and
  // division is exact.
  mpz_class norm(const Scalar& x) const;
  Scalar quotient(const Scalar& a, const Scalar& b) const;
  bool divides(const Scalar& a, const Scalar& b) const;  // a | b

  bool operator==(const Coefficients& o) const { return kind_ == o.kind_ && modulus_ == o.modulus_; }
  bool operator!=(const Coefficients& o) const { return !(*this == o); }

 private:
  Coefficients(Kind k, unsigned long m) : kind_(k), modulus_(m) {}
  Kind kind_;
  unsigned long modulus_;
};

bool is_prime(unsigned long n);

// Dense matrix over a coefficient ring. Entries are kept canonical.
class Matrix {
 public:
  Matrix() : ring_(Coefficients::integers()) {}
  Matrix(Coefficients ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(Coefficients ring, std::size_t n);
  static Matrix from_rows(Coefficients ring, const std::vector<std::vector<long>>& rows);
  static Matrix from_rows(Coefficients ring, const std::vector<std::vector<Scalar>>& rows, std::size_t cols);
  static Matrix column(Coefficients ring, const std::vector<long>& entries);

  const Coefficients& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& x) { data_[i * cols_ + j] = ring_.reduce(x); }
  void add_to(std::size_t i, std::size_t j, const Scalar& x);

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  Matrix select_rows(const std::vector<std::size_t>& rows) const;
  // Writes `block` into this matrix at the given row/column index lists.
  void place(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, const Matrix& block);

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // "[[1,0],[0,2]]"; an r x 0 or 0 x c matrix prints as "[]".
  std::string to_string() const;

 private:
  Coefficients ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// u * m * v = d with u, v invertible over the ring and d diagonal,
// d(0,0) | d(1,1) | ... | d(rank-1,rank-1), all nonzero diagonal entries
// positive (over Z) or 1 (over a field).
struct SmithDecomposition {
  Matrix u, u_inv, d, v, v_inv;
  std::size_t rank = 0;

  std::vector<Scalar> invariant_factors() const;
};

SmithDecomposition smith_normal_form(const Matrix& m);

// Solves a * x = b (b may have several columns). Free parameters of the
// solution space are set to zero. Returns nullopt when no solution exists
// over the coefficient ring.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> solve(const Matrix& a, const SmithDecomposition& snf, const Matrix& b);

// Columns span ker a; over Z the basis spans the saturated kernel lattice.
Matrix kernel_basis(const Matrix& a);

std::size_t rank(const Matrix& a);
Scalar determinant(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace ceforge
