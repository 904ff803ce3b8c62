#pragma once

// Finitely generated abelian groups in prime-power form, integer matrices and
// the Smith normal form used to turn presentations into canonical groups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace susp5 {

namespace detail {

inline long long checked_add(long long a, long long b) {
  long long out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow (add)");
  return out;
}

inline long long checked_sub(long long a, long long b) {
  long long out = 0;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("integer overflow (sub)");
  return out;
}

inline long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow (mul)");
  return out;
}

inline long long ipow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace detail

inline bool is_prime(long long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long long f = 3; f <= n / f; f += 2)
    if (n % f == 0) return false;
  return true;
}

/// A cyclic summand Z/p^e.
struct PrimePower {
  long long p = 2;
  int e = 1;

  long long order() const { return detail::ipow(p, e); }

  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power factorisation of n >= 1, ascending primes.
inline std::vector<PrimePower> factor(long long n) {
  if (n < 1) throw std::invalid_argument("factor: argument must be positive");
  std::vector<PrimePower> out;
  for (long long f = 2; f <= n / f; ++f) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e > 0) out.push_back({f, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

/// Z^r plus a multiset of prime-power cyclic groups.
///
/// Torsion is kept sorted by (p, e), so equality of values is equality of
/// isomorphism classes.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  static FgAbGroup free(int rank) {
    if (rank < 0) throw std::invalid_argument("free rank must be non-negative");
    FgAbGroup g;
    g.free_rank_ = rank;
    return g;
  }

  /// Z/n, with n == 0 meaning Z and n == 1 the trivial group.
  static FgAbGroup cyclic(long long n) {
    if (n < 0) n = -n;
    if (n == 0) return free(1);
    FgAbGroup g;
    g.torsion_ = factor(n);
    return g;
  }

  static FgAbGroup from_parts(int rank, std::vector<PrimePower> torsion) {
    FgAbGroup g = free(rank);
    for (const auto& t : torsion) {
      if (!is_prime(t.p) || t.e < 1)
        throw std::invalid_argument("torsion entry must be a positive power of a prime");
    }
    g.torsion_ = std::move(torsion);
    std::sort(g.torsion_.begin(), g.torsion_.end());
    return g;
  }

  int free_rank() const { return free_rank_; }
  const std::vector<PrimePower>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion() const { return free_rank_ == 0; }

  bool has_torsion_at(long long p) const {
    return std::any_of(torsion_.begin(), torsion_.end(), [p](const PrimePower& t) { return t.p == p; });
  }

  FgAbGroup primary_component(long long p) const {
    if (!is_prime(p)) throw std::invalid_argument("primary_component: " + std::to_string(p) + " is not prime");
    FgAbGroup g;
    for (const auto& t : torsion_)
      if (t.p == p) g.torsion_.push_back(t);
    return g;
  }

  /// Removes the torsion entries at the given positions of torsion().
  FgAbGroup quotient_by_summands(std::span<const std::size_t> drop) const {
    std::vector<bool> gone(torsion_.size(), false);
    for (std::size_t i : drop) {
      if (i >= torsion_.size()) throw std::out_of_range("quotient_by_summands: index out of range");
      if (gone[i]) throw std::invalid_argument("quotient_by_summands: repeated index");
      gone[i] = true;
    }
    FgAbGroup g = free(free_rank_);
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      if (!gone[i]) g.torsion_.push_back(torsion_[i]);
    return g;
  }

  /// Invariant factors d_1 | d_2 | ... of the torsion part.
  std::vector<long long> invariant_factors() const {
    std::vector<std::vector<long long>> by_prime;
    std::vector<long long> primes;
    for (const auto& t : torsion_) {
      if (primes.empty() || primes.back() != t.p) {
        primes.push_back(t.p);
        by_prime.emplace_back();
      }
      by_prime.back().push_back(t.order());
    }
    std::size_t len = 0;
    for (const auto& v : by_prime) len = std::max(len, v.size());
    std::vector<long long> out(len, 1);
    for (const auto& v : by_prime) {
      // ascending within a prime; align to the end of the chain
      for (std::size_t k = 0; k < v.size(); ++k)
        out[len - v.size() + k] = detail::checked_mul(out[len - v.size() + k], v[k]);
    }
    return out;
  }

  /// k-fold direct sum of this group with itself.
  FgAbGroup power(int k) const {
    FgAbGroup g;
    for (int i = 0; i < k; ++i) g = g + *this;
    return g;
  }

  friend FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b) {
    FgAbGroup g = free(a.free_rank_ + b.free_rank_);
    g.torsion_ = a.torsion_;
    g.torsion_.insert(g.torsion_.end(), b.torsion_.begin(), b.torsion_.end());
    std::sort(g.torsion_.begin(), g.torsion_.end());
    return g;
  }

  FgAbGroup& operator+=(const FgAbGroup& other) { return *this = *this + other; }

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    auto append = [&out](const std::string& term) {
      if (!out.empty()) out += " + ";
      out += term;
    };
    if (free_rank_ == 1) append("Z");
    if (free_rank_ > 1) append("Z^" + std::to_string(free_rank_));
    for (const auto& t : torsion_) append("Z/" + std::to_string(t.order()));
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.to_string(); }

 private:
  int free_rank_ = 0;
  std::vector<PrimePower> torsion_;
};

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) { return a + b; }
inline bool has_2_torsion(const FgAbGroup& g) { return g.has_torsion_at(2); }
inline bool has_3_torsion(const FgAbGroup& g) { return g.has_torsion_at(3); }

/// Thrown by parse_group; column is 1-based within the parsed text.
class GroupSyntaxError : public std::runtime_error {
 public:
  GroupSyntaxError(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses `Z^r + Z/n + Z/m + ...`; `0` is the trivial group and Z/n is
/// factored into prime powers.
inline FgAbGroup parse_group(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& msg) -> void { throw GroupSyntaxError(msg, pos + 1); };
  auto read_int = [&]() -> long long {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) fail("expected an integer");
    std::string digits(text.substr(start, pos - start));
    if (digits.size() > 18) {
      pos = start;
      fail("integer too large");
    }
    return std::stoll(digits);
  };

  FgAbGroup g;
  skip_ws();
  if (pos == text.size()) fail("empty group literal");
  while (true) {
    skip_ws();
    if (pos >= text.size()) fail("expected a group term");
    char c = text[pos];
    if (c == '0') {
      ++pos;
    } else if (c == 'Z') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        long long r = read_int();
        if (r > 1000000) fail("free rank too large");
        g += FgAbGroup::free(static_cast<int>(r));
      } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::size_t at = pos;
        long long n = read_int();
        if (n == 0) {
          pos = at;
          fail("Z/0 is not a torsion group; write Z");
        }
        g += FgAbGroup::cyclic(n);
      } else {
        g += FgAbGroup::free(1);
      }
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') fail("expected '+'");
    ++pos;
  }
  return g;
}

/// Arbitrary-precision integer used for matrix entries.
using Integer = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major, with exact entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;

  /// Nonzero diagonal entries of D, in order.
  /// Throws std::overflow_error if an entry does not fit in a long long.
  std::vector<long long> nonzero_diagonal() const {
    std::vector<long long> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
      const Integer& d = D(i, i);
      if (d == 0) continue;
      if (d > std::numeric_limits<long long>::max()) throw std::overflow_error("invariant factor exceeds 64 bits");
      out.push_back(static_cast<long long>(d));
    }
    return out;
  }
};

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
///
/// Pivots on the smallest absolute value in the remaining block. Entries are
/// exact, so the transforms may grow large without wrapping.
inline SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  SmithForm out{A, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& D = out.D;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t pi = m, pj = n;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          Integer v = abs(D(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) return out;  // remaining block is zero

      D.swap_rows(t, pi);
      out.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      out.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        Integer q = D(i, t) / D(t, t);
        if (q != 0) {
          D.add_row(i, t, -q);
          out.U.add_row(i, t, -q);
        }
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q = D(t, j) / D(t, t);
        if (q != 0) {
          D.add_col(j, t, -q);
          out.V.add_col(j, t, -q);
        }
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide the whole remaining block
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad != m) {
        D.add_row(t, bad, 1);
        out.U.add_row(t, bad, 1);
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      out.U.negate_row(t);
    }
  }
  return out;
}

/// Cokernel of A : Z^cols -> Z^rows, i.e. Z^rows / im(A).
inline FgAbGroup from_presentation(const IntMatrix& A) {
  SmithForm snf = smith_normal_form(A);
  auto diag = snf.nonzero_diagonal();
  FgAbGroup g = FgAbGroup::free(static_cast<int>(A.rows() - diag.size()));
  for (long long d : diag) g += FgAbGroup::cyclic(d);
  return g;
}

}  // namespace susp5
