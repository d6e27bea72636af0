#pragma once

// Dimension bookkeeping for the refined Selmer variety versus the de Rham
// quotient U^dr_n / F^0.
//
// Upper bound (Selmer side), built level by level from UB(2) = Mordell-Weil
// rank:
//
//     UB(n+1) = UB(n) + minus(n) + |S| * H2_bad(n) + H2_good(n)
//
// where minus(n) bounds the complex-conjugation minus part of the degree-n
// graded piece, H2_bad(n) = n g^n + n(n-1)/2 (2g-2)^2 g^(n-2) bounds local
// H^2 at a bad prime and H2_good(n) = n g^n bounds it at p. Global Sha^2 of
// the graded piece is taken to vanish for n >= 2 (Bloch-Kato).
//
// Lower bound (de Rham side): F^0 of the degree-n graded piece has
// dimension <= g^n, so LB(2) = r_1 - g and LB(n+1) = LB(n) + max(0, r_n - g^n).
//
// The halting level t is the least n with UB(n) < LB(n).

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"
#include "nadescent/lie_dims.hpp"

namespace nadescent {

// How the minus-part coefficient is chosen per graded degree.
//   kFaithful:      r_n / 2 for odd n (weight argument), r_n for even n.
//   kPaperVerbatim: the two displayed growth inequalities taken literally,
//                   ceil(r_n / 2) on steps landing on an odd level (n even)
//                   and r_n on steps landing on an even level (n odd).
enum class ParityMode { kFaithful, kPaperVerbatim };

inline std::string to_string(ParityMode m) {
    return m == ParityMode::kFaithful ? "faithful" : "paper-verbatim";
}

inline ParityMode parse_parity_mode(const std::string& s) {
    if (s == "faithful") return ParityMode::kFaithful;
    if (s == "paper-verbatim" || s == "verbatim") return ParityMode::kPaperVerbatim;
    throw DomainError("unknown parity mode '" + s + "' (expected faithful or paper-verbatim)");
}

enum class Place { kBadPrime, kGoodP };

struct CurveParams {
    Genus g{2};
    long bad_prime_count = 0;
    std::optional<std::set<BigInt>> bad_primes;
    unsigned long p = 0;
    long mw_rank = 0;

    // Throws DomainError on any violated invariant.
    void validate() const {
        if (bad_prime_count < 0) throw DomainError("bad_prime_count must be >= 0");
        if (mw_rank < 0) throw DomainError("mw_rank must be >= 0");
        if (p < 2 || !is_prime(p)) throw DomainError("p must be a prime, got " + std::to_string(p));
        if (bad_primes) {
            if (static_cast<long>(bad_primes->size()) != bad_prime_count)
                throw DomainError("bad_prime_count " + std::to_string(bad_prime_count) +
                                  " does not match the number of listed bad primes " +
                                  std::to_string(bad_primes->size()));
            for (const auto& q : *bad_primes) {
                if (!is_prime(q)) throw DomainError("bad prime " + to_decimal(q) + " is not prime");
            }
            if (bad_primes->count(BigInt(p)) != 0)
                throw DomainError("p = " + std::to_string(p) + " must be a prime of good reduction (p in S)");
        }
    }
};

struct BoundRow {
    long n = 0;
    BigInt selmer_ub;
    BigInt derham_lb;
};

struct BoundTable {
    CurveParams params;
    ParityMode mode = ParityMode::kFaithful;
    long n_cap = 2;
    std::vector<BoundRow> rows;  // n = 2..n_cap
    std::optional<long> halting_level;
};

// Dimension of the (m,m) Hodge component bound C(2m, m) g^(2m). Exposed for
// a future refinement of the even-degree minus part; enters no bound here.
inline BigInt middle_hodge_dimension(Genus g, long m) {
    if (m < 1) throw DomainError("m must be >= 1");
    return binomial(static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m)) *
           pow_ui(static_cast<unsigned long>(g.value()), static_cast<unsigned long>(2 * m));
}

inline BigInt minus_dim_bound(const GradedDims& dims, long n, ParityMode mode) {
    if (n < 1 || n > dims.n_max())
        throw DomainError("minus_dim_bound: degree " + std::to_string(n) + " outside 1.." + std::to_string(dims.n_max()));
    const BigInt& r = dims.r(n);
    const bool odd_degree = (n % 2) != 0;
    if (mode == ParityMode::kFaithful) {
        if (!odd_degree) return r;
        if (mpz_odd_p(r.get_mpz_t()))
            throw InvariantViolation("parity violation: r_" + std::to_string(n) + " = " + to_decimal(r) +
                                     " is odd at odd degree n = " + std::to_string(n));
        return BigInt(r / 2);
    }
    if (odd_degree) return r;
    BigInt half;
    mpz_cdiv_q_ui(half.get_mpz_t(), r.get_mpz_t(), 2);
    return half;
}

inline BigInt local_h2_bound(Genus genus, long n, Place place) {
    if (n < 1) throw DomainError("local_h2_bound requires n >= 1");
    const auto g = static_cast<unsigned long>(genus.value());
    const auto un = static_cast<unsigned long>(n);
    BigInt bound = BigInt(n) * pow_ui(g, un);
    if (place == Place::kBadPrime && n >= 2) {
        const BigInt pairs = BigInt(n) * (n - 1) / 2;
        bound += pairs * pow_ui(2 * g - 2, 2) * pow_ui(g, un - 2);
    }
    return bound;
}

inline BigInt h1_step_bound(const GradedDims& dims, long n, long s_count, ParityMode mode) {
    if (n < 2) throw DomainError("h1_step_bound requires n >= 2 (Sha vanishing is only used there)");
    if (s_count < 0) throw DomainError("bad prime count must be >= 0");
    return minus_dim_bound(dims, n, mode) + BigInt(s_count) * local_h2_bound(dims.genus(), n, Place::kBadPrime) +
           local_h2_bound(dims.genus(), n, Place::kGoodP);
}

// UB(2..n_cap).
inline std::vector<BigInt> selmer_ub_table(const CurveParams& params, const GradedDims& dims, long n_cap,
                                           ParityMode mode) {
    if (n_cap < 2) throw DomainError("n_cap must be >= 2");
    if (dims.n_max() < n_cap - 1) throw DomainError("graded dims computed only to " + std::to_string(dims.n_max()));
    std::vector<BigInt> ub;
    ub.reserve(static_cast<std::size_t>(n_cap - 1));
    ub.emplace_back(params.mw_rank);
    for (long n = 2; n < n_cap; ++n) ub.emplace_back(ub.back() + h1_step_bound(dims, n, params.bad_prime_count, mode));
    return ub;
}

// LB(2..n_cap).
inline std::vector<BigInt> derham_lb_table(const GradedDims& dims, long n_cap) {
    if (n_cap < 2) throw DomainError("n_cap must be >= 2");
    if (dims.n_max() < n_cap - 1) throw DomainError("graded dims computed only to " + std::to_string(dims.n_max()));
    const auto g = static_cast<unsigned long>(dims.genus().value());
    std::vector<BigInt> lb;
    lb.reserve(static_cast<std::size_t>(n_cap - 1));
    lb.emplace_back(dims.r(1) - BigInt(g));
    for (long n = 2; n < n_cap; ++n) {
        BigInt inc = dims.r(n) - pow_ui(g, static_cast<unsigned long>(n));
        if (inc < 0) inc = 0;
        lb.emplace_back(lb.back() + inc);
    }
    return lb;
}

inline BoundTable bound_table(const CurveParams& params, long n_cap, ParityMode mode) {
    params.validate();
    if (n_cap < 2) throw DomainError("n_cap must be >= 2, got " + std::to_string(n_cap));
    const GradedDims dims = graded_dims(params.g, std::max(1L, n_cap - 1));
    const auto ub = selmer_ub_table(params, dims, n_cap, mode);
    const auto lb = derham_lb_table(dims, n_cap);

    BoundTable table{params, mode, n_cap, {}, std::nullopt};
    table.rows.reserve(ub.size());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        const long n = static_cast<long>(i) + 2;
        table.rows.push_back({n, ub[i], lb[i]});
        if (!table.halting_level && ub[i] < lb[i]) table.halting_level = n;
    }
    return table;
}

// Least n in [2, n_cap] with UB(n) < LB(n); the table's halting_level is
// empty when no such n exists within the cap.
inline BoundTable halting_level(const CurveParams& params, long n_cap, ParityMode mode) {
    return bound_table(params, n_cap, mode);
}

}  // namespace nadescent
