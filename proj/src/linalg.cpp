#include "macx/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <utility>

#include "macx/errors.hpp"

namespace macx {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Coefficients Coefficients::prime(unsigned p) {
  if (!is_prime(p)) throw InputError("coefficient field F_" + std::to_string(p) + ": not a prime");
  return Coefficients(Kind::Prime, p);
}

Coefficients Coefficients::parse(const std::string& text) {
  if (text == "rational" || text == "q" || text == "Q") return rationals();
  if (text == "int" || text == "z" || text == "Z" || text == "integer") return integers();
  if (text == "f2" || text == "F2") return prime(2);
  if (text.rfind("fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
      throw InputError("bad prime in coefficient choice '" + text + "'");
    return prime(static_cast<unsigned>(std::stoul(digits)));
  }
  throw InputError("unknown coefficient choice '" + text + "' (expected rational, f2, fp:<p>, int)");
}

std::string Coefficients::name() const {
  switch (kind_) {
    case Kind::Rational: return "rational";
    case Kind::Integer: return "int";
    case Kind::Prime: return p_ == 2 ? "f2" : "fp:" + std::to_string(p_);
  }
  return "?";
}

Scalar Coefficients::reduce(const Scalar& x) const {
  if (kind_ != Kind::Prime) return x;
  mpz_class p = p_;
  mpz_class num = x.get_num() % p;
  mpz_class den = x.get_den() % p;
  if (den == 0) throw InputError("denominator divisible by the field characteristic");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * inv) % p;
  if (r < 0) r += p;
  return Scalar(r);
}

Scalar Coefficients::inverse(const Scalar& x) const {
  if (kind_ != Kind::Prime) return Scalar(1) / x;
  return reduce(Scalar(1) / x);
}

std::vector<Scalar> Matrix::column(std::size_t c) const {
  std::vector<Scalar> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::with_columns(const std::vector<std::vector<Scalar>>& extra) const {
  Matrix out(rows_, cols_ + extra.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t k = 0; k < extra.size(); ++k) out(r, cols_ + k) = extra[k].at(r);
  }
  return out;
}

Echelon row_reduce(const Coefficients& field, Matrix m) {
  const bool modp = field.kind() == Coefficients::Kind::Prime;
  if (modp)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = field.reduce(m(r, c));

  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const Scalar inv = field.inverse(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) {
      m(row, c) *= inv;
      if (modp) m(row, c) = field.reduce(m(row, c));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) == 0) continue;
        m(r, c) -= factor * m(row, c);
        if (modp) m(r, c) = field.reduce(m(r, c));
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const Coefficients& field, const Matrix& m) { return row_reduce(field, m).rank(); }

std::optional<std::vector<Scalar>> solve(const Coefficients& field, const Matrix& a,
                                         const std::vector<Scalar>& b) {
  const Matrix aug = a.with_columns({b});
  const Echelon e = row_reduce(field, aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

std::vector<std::vector<Scalar>> kernel_basis(const Coefficients& field, const Matrix& a) {
  const Echelon e = row_reduce(field, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = field.reduce(-e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> independent_extension(const Coefficients& field,
                                               const std::vector<std::vector<Scalar>>& vectors,
                                               std::size_t fixed, std::size_t dim) {
  Matrix m(dim, vectors.size());
  for (std::size_t c = 0; c < vectors.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = vectors[c].at(r);
  const Echelon e = row_reduce(field, m);
  std::vector<std::size_t> out;
  for (std::size_t p : e.pivots)
    if (p >= fixed) out.push_back(p);
  return out;
}

Matrix IntMatrix::to_field(const Coefficients& field) const {
  Matrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = field.reduce(Scalar((*this)(r, c)));
  return m;
}

namespace {

std::size_t rank_mod_p(const IntMatrix& in, std::uint64_t p) {
  const std::size_t rows = in.rows(), cols = in.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    std::int64_t v = in(i / cols, i % cols) % static_cast<std::int64_t>(p);
    a[i] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(p) : v);
  }
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[piv * cols + c], a[rank * cols + c]);
    const std::uint64_t ip = inv(a[rank * cols + col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = a[r * cols + col] * ip % p;
      if (!f) continue;
      for (std::size_t c = col; c < cols; ++c)
        a[r * cols + c] = (a[r * cols + c] + (p - f) * a[rank * cols + c]) % p;
    }
    ++rank;
  }
  return rank;
}

template <typename T>
std::size_t bareiss_rank(std::vector<T> a, std::size_t rows, std::size_t cols, bool& overflow);

// int64 Bareiss; sets overflow and bails out if an intermediate leaves int64.
template <>
std::size_t bareiss_rank<std::int64_t>(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols,
                                       bool& overflow) {
  overflow = false;
  std::int64_t prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[piv * cols + c], a[rank * cols + c]);
    const std::int64_t p = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::int64_t f = a[r * cols + col];
      for (std::size_t c = col; c < cols; ++c) {
        const __int128 v = static_cast<__int128>(p) * a[r * cols + c] - static_cast<__int128>(f) * a[rank * cols + c];
        const __int128 q = v / prev;
        if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min()) {
          overflow = true;
          return 0;
        }
        a[r * cols + c] = static_cast<std::int64_t>(q);
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

template <>
std::size_t bareiss_rank<mpz_class>(std::vector<mpz_class> a, std::size_t rows, std::size_t cols, bool& overflow) {
  overflow = false;
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[piv * cols + c], a[rank * cols + c]);
    const mpz_class p = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const mpz_class f = a[r * cols + col];
      for (std::size_t c = col; c < cols; ++c) {
        mpz_class v = p * a[r * cols + c] - f * a[rank * cols + c];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[r * cols + c] = v;
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank(const Coefficients& field, const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (field.kind() == Coefficients::Kind::Prime) return rank_mod_p(m, field.characteristic());
  // Rank over Z equals rank over Q.
  std::vector<std::int64_t> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = m(i / m.cols(), i % m.cols());
  bool overflow = false;
  const std::size_t r = bareiss_rank<std::int64_t>(a, m.rows(), m.cols(), overflow);
  if (!overflow) return r;
  std::vector<mpz_class> big(a.begin(), a.end());
  return bareiss_rank<mpz_class>(std::move(big), m.rows(), m.cols(), overflow);
}

std::vector<mpz_class> invariant_factors(const IntMatrix& in) {
  const std::size_t rows = in.rows(), cols = in.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = in(i / cols, i % cols);
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * cols + c]; };
  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 != r2)
      for (std::size_t c = 0; c < cols; ++c) std::swap(at(r1, c), at(r2, c));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 != c2)
      for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, c1), at(r, c2));
  };

  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block goes to (t, t).
    auto place_min = [&]() {
      bool found = false;
      std::size_t br = 0, bc = 0;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          if (at(r, c) == 0) continue;
          if (!found || abs(at(r, c)) < abs(at(br, bc))) {
            found = true;
            br = r;
            bc = c;
            if (abs(at(r, c)) == 1) goto done;
          }
        }
    done:
      if (!found) return false;
      swap_rows(t, br);
      swap_cols(t, bc);
      return true;
    };
    if (!place_min()) break;

    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (at(r, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), at(r, t).get_mpz_t(), at(t, t).get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) at(r, c) -= q * at(t, c);
        if (at(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (at(t, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), at(t, c).get_mpz_t(), at(t, t).get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) at(r, c) -= q * at(r, t);
        if (at(t, c) != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder appeared in row/column t; move it to the pivot.
        std::size_t br = t, bc = t;
        for (std::size_t r = t; r < rows; ++r)
          if (at(r, t) != 0 && abs(at(r, t)) < abs(at(br, bc))) br = r, bc = t;
        for (std::size_t c = t; c < cols; ++c)
          if (at(t, c) != 0 && abs(at(t, c)) < abs(at(br, bc))) br = t, bc = c;
        swap_rows(t, br);
        swap_cols(t, bc);
        continue;
      }
      // Divisibility: every remaining entry must be a multiple of the pivot.
      bool fixed = false;
      for (std::size_t r = t + 1; r < rows && !fixed; ++r)
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (at(r, c) == 0) continue;
          if (!mpz_divisible_p(at(r, c).get_mpz_t(), at(t, t).get_mpz_t())) {
            for (std::size_t cc = t; cc < cols; ++cc) at(t, cc) += at(r, cc);
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    diag.push_back(abs(at(t, t)));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace macx
