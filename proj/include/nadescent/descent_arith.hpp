#pragma once

// From the separation modulus M to the integers that start classical
// descent: the order N of J(Z/p^M), which annihilates the image of J(Q) so
// that N J(Q) lies in the reduction kernel, and the prime set
// T0 = S u {primes dividing N}.

#include <set>
#include <string>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"

namespace nadescent {

struct JacobianLocalData {
    unsigned long p = 0;
    long g = 1;  // dimension of the Jacobian
    BigInt count_fp = 1;

    void validate() const {
        if (p < 2 || !is_prime(p)) throw DomainError("jacobian.p must be prime, got " + std::to_string(p));
        if (g < 1) throw DomainError("jacobian.g must be >= 1");
        if (count_fp < 1) throw DomainError("jacobian.count_fp must be >= 1");
    }
};

// Checks (sqrt(p) - 1)^(2g) <= #J(F_p) <= (sqrt(p) + 1)^(2g) exactly and
// returns human-readable warnings (empty when the count is plausible).
inline std::vector<std::string> weil_bound_warnings(const JacobianLocalData& d) {
    // (p + 1 + 2 sqrt p)^g = A + B sqrt p with integers A, B >= 0; the lower
    // bound is the conjugate A - B sqrt p.
    BigInt a = 1, b = 0;
    const BigInt c0 = BigInt(d.p) + 1;
    for (long i = 0; i < d.g; ++i) {
        BigInt na = a * c0 + b * 2 * BigInt(d.p);
        BigInt nb = a * 2 + b * c0;
        a = na;
        b = nb;
    }
    const BigInt bb_p = b * b * BigInt(d.p);
    std::vector<std::string> warnings;
    const BigInt above = d.count_fp - a;  // count <= A + B sqrt p
    if (above > 0 && above * above > bb_p)
        warnings.push_back("#J(F_p) = " + to_decimal(d.count_fp) + " exceeds the Weil upper bound (sqrt p + 1)^(2g)");
    const BigInt below = a - d.count_fp;  // count >= A - B sqrt p
    if (below > 0 && below * below > bb_p)
        warnings.push_back("#J(F_p) = " + to_decimal(d.count_fp) + " is below the Weil lower bound (sqrt p - 1)^(2g)");
    return warnings;
}

// #J(F_p) = L(1) for the L-polynomial 1 + a_1 T + ... + p^g T^(2g), given
// as coefficients in increasing degree.
inline BigInt count_from_l_polynomial(const std::vector<BigInt>& coeffs, unsigned long p, long g) {
    if (static_cast<long>(coeffs.size()) != 2 * g + 1)
        throw DomainError("L-polynomial must have degree 2g = " + std::to_string(2 * g) + ", got " +
                          std::to_string(static_cast<long>(coeffs.size()) - 1));
    if (coeffs.front() != 1) throw DomainError("L-polynomial constant term must be 1");
    if (coeffs.back() != pow_ui(p, static_cast<unsigned long>(g)))
        throw DomainError("L-polynomial leading coefficient must be p^g");
    BigInt total = 0;
    for (const auto& c : coeffs) total += c;
    if (total < 1) throw DomainError("L(1) must be positive");
    return total;
}

// #J(Z/p^M) = #J(F_p) * p^(g (M - 1)): the kernel of reduction to F_p is a
// g-dimensional formal group over a length M-1 base.
inline BigInt jacobian_order_mod(const JacobianLocalData& d, long M) {
    d.validate();
    if (M < 1) throw DomainError("M must be >= 1, got " + std::to_string(M));
    return d.count_fp * pow_ui(d.p, static_cast<unsigned long>(d.g * (M - 1)));
}

// N with N J(Q) inside the kernel of J(Q) -> J(Z/p^M); the full group order.
inline BigInt annihilator_N(const JacobianLocalData& d, long M) { return jacobian_order_mod(d, M); }

inline std::set<BigInt> enlarged_prime_set(const std::set<BigInt>& bad_primes, const BigInt& N,
                                           const FactorizationOptions& opts = {}) {
    if (N < 1) throw DomainError("N must be >= 1, got " + to_decimal(N));
    std::set<BigInt> out = bad_primes;
    for (const auto& [q, e] : factorize(N, opts)) out.insert(q);
    return out;
}

}  // namespace nadescent
