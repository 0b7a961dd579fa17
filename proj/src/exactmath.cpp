#include "combnet/exactmath.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace combnet {

Rational frac(long a, long b) {
    if (b == 0) throw ParameterError("zero denominator");
    Rational q(a, b);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParameterError("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw ParameterError("bad rational literal: " + text);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        BigInt num;
        if (num.set_str(digits == "-" || digits.empty() ? "0" : digits, 10) != 0)
            throw ParameterError("bad rational literal: " + text);
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParameterError("bad rational literal: " + text);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_decimal(const Rational& q, int digits) {
    if (sgn(q) == 0) return "0";
    mpf_class f(q, 256);
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, digits);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::string out;
    if (exp <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
    } else if (static_cast<std::size_t>(exp) >= mant.size()) {
        out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
    } else {
        out = mant.substr(0, exp) + "." + mant.substr(exp);
    }
    return neg ? "-" + out : out;
}

double to_double(const Rational& q) { return q.get_d(); }

BigInt binom(long n, long k) {
    if (n < 0 || k < 0 || k > n) throw ParameterError("binom: need 0 <= k <= n");
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::uint64_t binom_u64(int n, int k) {
    BigInt b = binom(n, k);
    if (b > BigInt(std::to_string(std::numeric_limits<std::uint64_t>::max())))
        throw ParameterError("binomial coefficient does not fit in 64 bits");
    return std::stoull(b.get_str());
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    if (n < 2) return 2;
    while (!is_prime(n)) ++n;
    return n;
}

std::uint64_t primitive_root(std::uint64_t p) {
    if (!is_prime(p)) throw ParameterError("primitive_root: modulus is not prime");
    if (p == 2) return 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t m = p - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        factors.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) factors.push_back(m);
    PrimeField f(p);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : factors)
            if (f.pow(g, (p - 1) / q) == 1) { ok = false; break; }
        if (ok) return g;
    }
    return 1;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw ParameterError("field modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 32)) throw ParameterError("field modulus too large");
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const {
    value_type r = one();
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

PrimeField::value_type PrimeField::inv(value_type a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p_) + ")");
    return pow(a, p_ - 2);
}

PrimeField::value_type PrimeField::from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<value_type>(m);
}

PrimeField::value_type PrimeField::from_rational(const Rational& q) const {
    BigInt pm(static_cast<unsigned long>(p_));
    BigInt n = q.get_num() % pm;
    if (n < 0) n += pm;
    BigInt d = q.get_den() % pm;
    if (d == 0) throw std::domain_error("denominator vanishes in GF(" + std::to_string(p_) + ")");
    return mul(n.get_ui(), inv(d.get_ui()));
}

RationalMatrix rational_matrix(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return {};
    RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols()) throw ParameterError("ragged matrix literal");
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

} // namespace combnet
