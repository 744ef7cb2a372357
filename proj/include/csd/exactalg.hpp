#pragma once

// Exact integer and rational linear algebra on small dense matrices.
//
// All arithmetic is arbitrary precision (GMP). Nothing here is tuned for
// speed: linking matrices in this library rarely exceed a few dozen rows.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace csd {

using Integer = mpz_class;

/// An exact rational number, always in lowest terms with positive
/// denominator.
class Rational {
  public:
    Rational() = default;
    Rational(long value) : q_(value) {}
    Rational(const Integer &value) : q_(value) {}
    Rational(const Integer &num, const Integer &den);

    static Rational from_mpq(const mpq_class &q);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    const mpq_class &raw() const { return q_; }

    /// "p" when integral, otherwise "p/q".
    std::string to_string() const;
    /// Parses "p" or "p/q" (optional leading sign). Throws
    /// std::invalid_argument on malformed text or zero denominator.
    static Rational parse(const std::string &text);

    friend Rational operator+(const Rational &a, const Rational &b) {
        return from_mpq(a.q_ + b.q_);
    }
    friend Rational operator-(const Rational &a, const Rational &b) {
        return from_mpq(a.q_ - b.q_);
    }
    friend Rational operator*(const Rational &a, const Rational &b) {
        return from_mpq(a.q_ * b.q_);
    }
    friend Rational operator/(const Rational &a, const Rational &b);
    Rational operator-() const { return from_mpq(-q_); }
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }
    Rational &operator/=(const Rational &o) { return *this = *this / o; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.q_ > b.q_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.q_ <= b.q_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.q_ >= b.q_; }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
        return os << r.to_string();
    }

  private:
    mpq_class q_{0};
};

/// Dense integer matrix, row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;

    Integer &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    IntMatrix transpose() const;
    /// Removes row and column `k` of a square matrix.
    IntMatrix without(std::size_t k) const;

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
    friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const IntMatrix &a, const IntMatrix &b) { return !(a == b); }
    friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::vector<Integer> operator*(const IntMatrix &m, const std::vector<Integer> &v);

/// U * M * V = D with U, V unimodular and D diagonal in Smith form:
/// nonnegative diagonal entries, each dividing the next (zeros last).
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    /// The min(rows, cols) diagonal entries of D.
    std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix &m);

/// Number of positive minus number of negative eigenvalues of a symmetric
/// matrix, by exact congruence diagonalization over Q. Throws
/// std::invalid_argument("matrix not symmetric") otherwise.
int signature(const IntMatrix &m);

/// Some x with m * x = b over Q, or nullopt when the system is
/// inconsistent. Free variables are set to zero.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix &m,
                                                    const std::vector<Integer> &b);

/// Exact determinant via Bareiss elimination; det of the 0x0 matrix is 1.
Integer determinant(const IntMatrix &m);

std::string to_string(const std::vector<Integer> &v);

} // namespace csd
