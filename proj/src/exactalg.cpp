#include "csd/exactalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace csd {

// ---- Rational ---------------------------------------------------------------

Rational::Rational(const Integer &num, const Integer &den) {
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class &q) {
    Rational r;
    r.q_ = q;
    r.q_.canonicalize();
    return r;
}

Rational operator/(const Rational &a, const Rational &b) {
    if (b.q_ == 0)
        throw std::domain_error("division by zero");
    return Rational::from_mpq(a.q_ / b.q_);
}

std::string Rational::to_string() const {
    if (is_integer())
        return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

namespace {

Integer parse_integer(const std::string &text) {
    std::string digits = text;
    if (!digits.empty() && digits[0] == '+')
        digits.erase(0, 1);
    std::size_t start = (!digits.empty() && digits[0] == '-') ? 1 : 0;
    if (digits.size() == start)
        throw std::invalid_argument("malformed integer '" + text + "'");
    for (std::size_t i = start; i < digits.size(); ++i)
        if (digits[i] < '0' || digits[i] > '9')
            throw std::invalid_argument("malformed integer '" + text + "'");
    return Integer(digits);
}

} // namespace

Rational Rational::parse(const std::string &text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(parse_integer(text));
    std::string den = text.substr(slash + 1);
    if (!den.empty() && (den[0] == '-' || den[0] == '+'))
        throw std::invalid_argument("malformed rational '" + text + "'");
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(den));
}

// ---- IntMatrix --------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long v : row)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool IntMatrix::is_symmetric() const {
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::without(std::size_t k) const {
    if (!is_square() || k >= rows_)
        throw std::out_of_range("IntMatrix::without: index out of range");
    IntMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
        if (i == k)
            continue;
        for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
            if (j == k)
                continue;
            out(oi, oj++) = (*this)(i, j);
        }
        ++oi;
    }
    return out;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer &aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<Integer> operator*(const IntMatrix &m, const std::vector<Integer> &v) {
    if (m.cols() != v.size())
        throw std::invalid_argument("matrix-vector product: dimension mismatch");
    std::vector<Integer> out(m.rows(), Integer(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i] += m(i, j) * v[j];
    return out;
}

std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

std::string to_string(const std::vector<Integer> &v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

// ---- Smith normal form ------------------------------------------------------

namespace {

void swap_rows(IntMatrix &m, std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix &m, std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

// row[dst] += factor * row[src]
void add_row(IntMatrix &m, std::size_t dst, std::size_t src, const Integer &factor) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(dst, j) += factor * m(src, j);
}

void add_col(IntMatrix &m, std::size_t dst, std::size_t src, const Integer &factor) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, dst) += factor * m(i, src);
}

Integer floor_div(const Integer &a, const Integer &b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        d.push_back(D(i, i));
    return d;
}

SmithDecomposition smith_normal_form(const IntMatrix &m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            bool found = false;
            std::size_t pi = t, pj = t;
            Integer best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
                        found = true;
                        best = abs(a(i, j));
                        pi = i;
                        pj = j;
                    }
            if (!found)
                goto done;
            swap_rows(a, t, pi);
            swap_rows(u, t, pi);
            swap_cols(a, t, pj);
            swap_cols(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q = -floor_div(a(i, t), a(t, t));
                add_row(a, i, t, q);
                add_row(u, i, t, q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q = -floor_div(a(t, j), a(t, t));
                add_col(a, j, t, q);
                add_col(v, j, t, q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // enforce the divisibility chain
            std::size_t bad_row = rows;
            for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == rows)
                break;
            add_row(a, t, bad_row, Integer(1));
            add_row(u, t, bad_row, Integer(1));
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j)
                a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < rows; ++j)
                u(t, j) = -u(t, j);
        }
    }
done:
    return SmithDecomposition{std::move(u), std::move(a), std::move(v)};
}

// ---- signature --------------------------------------------------------------

namespace {

using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix to_rational(const IntMatrix &m) {
    RatMatrix r(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[i][j] = Rational(m(i, j));
    return r;
}

} // namespace

int signature(const IntMatrix &m) {
    if (!m.is_symmetric())
        throw std::invalid_argument("matrix not symmetric");
    RatMatrix a = to_rational(m);
    std::vector<std::size_t> alive(m.rows());
    for (std::size_t i = 0; i < alive.size(); ++i)
        alive[i] = i;

    int sig = 0;
    while (!alive.empty()) {
        auto diag = std::find_if(alive.begin(), alive.end(),
                                 [&](std::size_t i) { return a[i][i] != 0; });
        if (diag != alive.end()) {
            const std::size_t p = *diag;
            const Rational pivot = a[p][p];
            sig += pivot.sign();
            alive.erase(diag);
            for (std::size_t i : alive) {
                if (a[i][p] == 0)
                    continue;
                const Rational f = a[i][p] / pivot;
                for (std::size_t j : alive)
                    a[i][j] -= f * a[p][j];
            }
            continue;
        }
        // Zero diagonal: look for a hyperbolic pair [[0,m],[m,0]], which
        // has signature 0, and eliminate with it as a 2x2 block pivot.
        std::size_t pi = 0, pj = 0;
        bool found = false;
        for (std::size_t x = 0; x < alive.size() && !found; ++x)
            for (std::size_t y = x + 1; y < alive.size(); ++y)
                if (a[alive[x]][alive[y]] != 0) {
                    pi = alive[x];
                    pj = alive[y];
                    found = true;
                    break;
                }
        if (!found)
            break; // remaining block is zero
        const Rational off = a[pi][pj];
        alive.erase(std::find(alive.begin(), alive.end(), pi));
        alive.erase(std::find(alive.begin(), alive.end(), pj));
        // block inverse of [[0,m],[m,0]] is [[0,1/m],[1/m,0]]
        for (std::size_t i : alive) {
            const Rational ci = a[i][pi], cj = a[i][pj];
            if (ci == 0 && cj == 0)
                continue;
            for (std::size_t j : alive)
                a[i][j] -= (ci * a[pj][j] + cj * a[pi][j]) / off;
        }
    }
    return sig;
}

// ---- rational solve ---------------------------------------------------------

std::optional<std::vector<Rational>> solve_rational(const IntMatrix &m,
                                                    const std::vector<Integer> &b) {
    if (b.size() != m.rows())
        throw std::invalid_argument("solve_rational: right-hand side has wrong length");
    const std::size_t rows = m.rows(), cols = m.cols();
    RatMatrix a = to_rational(m);
    std::vector<Rational> rhs(b.begin(), b.end());

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        const Rational inv = Rational(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j)
            a[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0)
            return std::nullopt;

    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        x[pivot_col[i]] = rhs[i];
    return x;
}

// ---- determinant ------------------------------------------------------------

Integer determinant(const IntMatrix &m) {
    if (!m.is_square())
        throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            swap_rows(a, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

} // namespace csd
