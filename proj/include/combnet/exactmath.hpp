#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "combnet/errors.hpp"

namespace combnet {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Reduced a/b.
Rational frac(long a, long b);

/// Parses "a", "-a", "a/b" or a plain decimal such as "0.25" into a reduced rational.
Rational parse_rational(const std::string& text);
/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& q);
/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Rational& q, int digits = 10);
double to_double(const Rational& q);

BigInt binom(long n, long k);
/// Binomial coefficient that must fit in 64 bits; throws ParameterError otherwise.
std::uint64_t binom_u64(int n, int k);

BigInt lcm(const BigInt& a, const BigInt& b);

bool is_prime(std::uint64_t n);
/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);
/// Smallest generator of the multiplicative group of GF(p).
std::uint64_t primitive_root(std::uint64_t p);

/// Arithmetic in GF(p) for a prime p < 2^32 on plain 64-bit residues.
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }
    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    value_type pow(value_type a, std::uint64_t e) const;
    value_type inv(value_type a) const;
    bool is_zero(value_type a) const { return a == 0; }
    /// Maps an integer (possibly negative, possibly big) into the field.
    value_type from_int(long long v) const;
    value_type from_rational(const Rational& q) const;

private:
    std::uint64_t p_;
};

/// Exact arithmetic over Q, with the same interface as PrimeField.
struct RationalField {
    using value_type = Rational;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const { return 1 / a; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const T& fill = T()) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_) throw ParameterError("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(int n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    bool operator==(const Matrix&) const = default;

    std::vector<T> column(int j) const {
        std::vector<T> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> a_;
};

using RationalMatrix = Matrix<Rational>;
using FieldMatrix = Matrix<std::uint64_t>;

// Gauss-Jordan elimination, shared by the rational and prime-field front ends.

template <class F>
int rank(const F& f, Matrix<typename F::value_type> m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!f.is_zero(m(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        auto inv = f.inv(m(r, c));
        for (int i = r + 1; i < m.rows(); ++i) {
            if (f.is_zero(m(i, c))) continue;
            auto factor = f.mul(m(i, c), inv);
            for (int j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    return r;
}

/// Solves m X = rhs for square full-rank m; rhs may have several columns.
template <class F>
Matrix<typename F::value_type> solve(const F& f, Matrix<typename F::value_type> m,
                                     Matrix<typename F::value_type> rhs) {
    const int n = m.rows();
    if (m.cols() != n) throw ParameterError("solve: matrix is not square");
    if (rhs.rows() != n) throw ParameterError("solve: right-hand side has wrong height");
    int r = 0;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (!f.is_zero(m(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < n; ++j) std::swap(m(r, j), m(piv, j));
            for (int j = 0; j < rhs.cols(); ++j) std::swap(rhs(r, j), rhs(piv, j));
        }
        auto inv = f.inv(m(r, c));
        for (int j = 0; j < n; ++j) m(r, j) = f.mul(m(r, j), inv);
        for (int j = 0; j < rhs.cols(); ++j) rhs(r, j) = f.mul(rhs(r, j), inv);
        for (int i = 0; i < n; ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (int j = 0; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
            for (int j = 0; j < rhs.cols(); ++j) rhs(i, j) = f.sub(rhs(i, j), f.mul(factor, rhs(r, j)));
        }
        ++r;
    }
    if (r < n) throw RankDeficiencyError("singular system", r, n);
    return rhs;
}

template <class F>
std::vector<typename F::value_type> solve(const F& f, const Matrix<typename F::value_type>& m,
                                          const std::vector<typename F::value_type>& rhs) {
    Matrix<typename F::value_type> b(static_cast<int>(rhs.size()), 1);
    for (int i = 0; i < b.rows(); ++i) b(i, 0) = rhs[i];
    return solve(f, m, b).column(0);
}

template <class F>
Matrix<typename F::value_type> inverse(const F& f, const Matrix<typename F::value_type>& m) {
    return solve(f, m, Matrix<typename F::value_type>::identity(m.rows(), f.zero(), f.one()));
}

template <class F>
Matrix<typename F::value_type> multiply(const F& f, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
    if (a.cols() != b.rows()) throw ParameterError("multiply: dimension mismatch");
    Matrix<typename F::value_type> c(a.rows(), b.cols(), f.zero());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (f.is_zero(a(i, k))) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
        }
    return c;
}

// Rational conveniences.
inline int rank(const RationalMatrix& m) { return rank(RationalField{}, m); }
inline std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& rhs) {
    return solve(RationalField{}, m, rhs);
}
inline RationalMatrix inverse(const RationalMatrix& m) { return inverse(RationalField{}, m); }

/// Rational matrix from a 0/1 or small-integer literal.
RationalMatrix rational_matrix(const std::vector<std::vector<long>>& rows);

} // namespace combnet
