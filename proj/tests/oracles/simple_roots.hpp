#pragma once

// Brute-force count of simple roots in pZ_p of an integer polynomial by
// enumerating residues mod p^k. A residue x with e = v(f'(x)) and
// v(f(x)) > 2e lifts to exactly one root a with v(a - x) > e, and e is the
// same for every such x, so roots correspond to classes (e, x mod p^(e+1)).
// Roots with v(f'(a)) >= k are invisible at this depth.

#include <set>
#include <utility>
#include <vector>

#include "nadescent/integer.hpp"

namespace oracle {

using nadescent::BigInt;

inline BigInt eval_poly(const std::vector<BigInt>& c, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline std::vector<BigInt> derivative(const std::vector<BigInt>& c) {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(BigInt(static_cast<long>(i)) * c[i]);
    if (d.empty()) d.push_back(0);
    return d;
}

inline long val_or(const BigInt& n, unsigned long p, long cap) {
    return n == 0 ? cap : std::min(cap, nadescent::valuation(n, p));
}

inline long count_simple_roots_mod(const std::vector<BigInt>& c, unsigned long p, unsigned long k) {
    const std::vector<BigInt> dc = derivative(c);
    const unsigned long modulus = nadescent::pow_ui(p, k).get_ui();
    const long big = 1000;
    std::set<std::pair<long, BigInt>> classes;
    for (unsigned long x = 0; x < modulus; x += p) {
        const long e = val_or(eval_poly(dc, BigInt(x)), p, big);
        if (e >= big) continue;
        const long vf = val_or(eval_poly(c, BigInt(x)), p, big);
        if (vf > 2 * e) {
            const BigInt m = nadescent::pow_ui(p, static_cast<unsigned long>(e + 1));
            classes.emplace(e, BigInt(x) % m);
        }
    }
    return static_cast<long>(classes.size());
}

}  // namespace oracle
