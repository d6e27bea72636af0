#pragma once

// Arbitrary-precision integer helpers on top of GMP: decimal I/O, powers,
// p-adic valuations, primality, Moebius function, and desk-scale
// factorization (trial division followed by Pollard rho).

#include <gmpxx.h>

#include <cctype>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nadescent/errors.hpp"

namespace nadescent {

using BigInt = mpz_class;

inline std::string to_decimal(const BigInt& n) { return n.get_str(10); }

inline BigInt parse_decimal(std::string_view text) {
    std::string s(text);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw DomainError("not a decimal integer: '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw DomainError("not a decimal integer: '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
}

inline BigInt pow_ui(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// v_p(n) for n != 0.
inline long valuation(const BigInt& n, unsigned long p) {
    if (n == 0) throw DomainError("valuation of zero is infinite");
    BigInt q = n;
    long v = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline long valuation(unsigned long n, unsigned long p) {
    long v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Strips every factor of p; returns the p-free part and writes the exponent.
inline BigInt strip_prime(const BigInt& n, unsigned long p, long& exponent) {
    BigInt q = n;
    exponent = 0;
    while (q != 0 && mpz_divisible_ui_p(q.get_mpz_t(), p)) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
        ++exponent;
    }
    return q;
}

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline bool is_prime(unsigned long n) { return is_prime(BigInt(n)); }

// Moebius function by trial division.
inline int mobius(unsigned long n) {
    if (n == 0) throw DomainError("mobius(0) is undefined");
    int sign = 1;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

struct FactorizationOptions {
    unsigned long trial_bound = 100000;
    std::uint64_t max_rho_iterations = 5'000'000;
    std::chrono::milliseconds time_limit{10000};
};

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
inline BigInt rho_factor(const BigInt& n, unsigned long seed, std::uint64_t& budget) {
    BigInt y = seed + 1, c = seed, g = 1, q = 1, x, ys;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto step = [&](BigInt& v) {
        v = v * v + c;
        v %= n;
    };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                step(y);
                BigInt diff = x - y;
                q = (q * abs(diff)) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            if (budget < m) {
                budget = 0;
                return 0;
            }
            budget -= m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            BigInt diff = x - ys;
            BigInt ad = abs(diff);
            mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g == n ? BigInt(0) : g;
}

}  // namespace detail

// Prime factorization of n >= 1 as prime -> exponent. Throws
// FactorizationTimeout when the configured budget is exhausted.
inline std::map<BigInt, unsigned> factorize(const BigInt& n, const FactorizationOptions& opts = {}) {
    if (n < 1) throw DomainError("factorize requires n >= 1, got " + to_decimal(n));
    std::map<BigInt, unsigned> out;
    BigInt m = n;
    for (unsigned long d = 2; d <= opts.trial_bound && BigInt(d) * d <= m; ++d) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
            ++out[BigInt(d)];
        }
    }
    if (m == 1) return out;

    const auto start = std::chrono::steady_clock::now();
    std::uint64_t budget = opts.max_rho_iterations;
    std::vector<BigInt> stack{m};
    while (!stack.empty()) {
        BigInt f = stack.back();
        stack.pop_back();
        if (f == 1) continue;
        if (is_prime(f)) {
            ++out[f];
            continue;
        }
        BigInt d = 0;
        for (unsigned long seed = 1; d == 0; ++seed) {
            if (std::chrono::steady_clock::now() - start > opts.time_limit || budget == 0)
                throw FactorizationTimeout("could not split " + to_decimal(f));
            d = detail::rho_factor(f, seed, budget);
        }
        stack.push_back(d);
        stack.push_back(BigInt(f / d));
    }
    return out;
}

}  // namespace nadescent
