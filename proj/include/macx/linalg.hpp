#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace macx {

using Scalar = mpq_class;

/// Coefficient choice: exact rationals, a prime field F_p, or the integers.
/// Integer coefficients are only meaningful for simplicial (co)homology,
/// where torsion is read off the Smith normal form.
class Coefficients {
 public:
  enum class Kind { Rational, Prime, Integer };

  static Coefficients rationals() { return Coefficients(Kind::Rational, 0); }
  static Coefficients integers() { return Coefficients(Kind::Integer, 0); }
  /// Throws InputError unless p is prime.
  static Coefficients prime(unsigned p);
  /// Parses "rational", "q", "f2", "fp:<p>", "int", "z".
  static Coefficients parse(const std::string& text);

  Kind kind() const { return kind_; }
  unsigned characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integer; }
  std::string name() const;

  /// Image of x in the field: identity over Q, reduction to [0,p) over F_p.
  /// Throws InputError if p divides the denominator.
  Scalar reduce(const Scalar& x) const;
  Scalar inverse(const Scalar& x) const;

  bool operator==(const Coefficients&) const = default;

 private:
  Coefficients(Kind k, unsigned p) : kind_(k), p_(p) {}
  Kind kind_;
  unsigned p_;
};

bool is_prime(unsigned n);

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> column(std::size_t c) const;
  /// Appends columns; every vector must have rows() entries.
  Matrix with_columns(const std::vector<std::vector<Scalar>>& extra) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(const Coefficients& field, Matrix m);
std::size_t rank(const Coefficients& field, const Matrix& m);

/// One solution of A x = b with all free variables zero, or nullopt.
std::optional<std::vector<Scalar>> solve(const Coefficients& field, const Matrix& a,
                                         const std::vector<Scalar>& b);

/// Basis of the null space, one vector per free column in ascending order.
std::vector<std::vector<Scalar>> kernel_basis(const Coefficients& field, const Matrix& a);

/// Indices of a maximal independent subset of the given vectors, chosen
/// greedily in order, after the first `fixed` vectors (which are always kept
/// in the span but never reported).
std::vector<std::size_t> independent_extension(const Coefficients& field,
                                               const std::vector<std::vector<Scalar>>& vectors,
                                               std::size_t fixed, std::size_t dim);

/// Small integer matrix used for boundary and Koszul differentials, whose
/// entries are 0 or +-1 at construction.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Matrix to_field(const Coefficients& field) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact rank over Q (fraction-free elimination, widening to GMP on overflow)
/// or over F_p.
std::size_t rank(const Coefficients& field, const IntMatrix& m);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<mpz_class> invariant_factors(const IntMatrix& m);

}  // namespace macx
