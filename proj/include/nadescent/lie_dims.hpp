#pragma once

// Graded dimensions of the descending-central-series Lie algebra of a
// genus-g surface group.
//
// With L_n = (g + sqrt(g^2-1))^n + (g - sqrt(g^2-1))^n (an integer Lucas
// sequence: L_0 = 2, L_1 = 2g, L_n = 2g L_{n-1} - L_{n-2}) the graded
// pieces satisfy the Witt-type identity
//
//     sum_{d | n} d * r_d = L_n,
//
// so r_n = (1/n) sum_{d | n} mu(n/d) L_d. dim U_n counts the quotient by
// the n-th filtration level: dim U_n = r_1 + ... + r_{n-1}.

#include <string>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"

namespace nadescent {

class Genus {
public:
    explicit Genus(long g) : g_(g) {
        if (g < 2) throw DomainError("genus must satisfy g >= 2 (hyperbolic curve), got " + std::to_string(g));
    }
    long value() const noexcept { return g_; }
    friend bool operator==(Genus, Genus) = default;

private:
    long g_;
};

struct LieDimsOptions {
    long n_max_cap = 10000;
};

class GradedDims {
public:
    Genus genus() const noexcept { return genus_; }
    long n_max() const noexcept { return static_cast<long>(r_.size()) - 1; }

    // r_n for 1 <= n <= n_max.
    const BigInt& r(long n) const {
        if (n < 1 || n > n_max())
            throw DomainError("graded degree " + std::to_string(n) + " outside 1.." + std::to_string(n_max()));
        return r_[static_cast<std::size_t>(n)];
    }
    // L_n for 0 <= n <= n_max.
    const BigInt& lucas(long n) const {
        if (n < 0 || n > n_max())
            throw DomainError("Lucas index " + std::to_string(n) + " outside 0.." + std::to_string(n_max()));
        return lucas_[static_cast<std::size_t>(n)];
    }
    const std::vector<BigInt>& lucas_values() const noexcept { return lucas_; }

private:
    friend GradedDims graded_dims(Genus, long, const LieDimsOptions&);
    GradedDims(Genus g, std::vector<BigInt> r, std::vector<BigInt> lucas)
        : genus_(g), r_(std::move(r)), lucas_(std::move(lucas)) {}

    Genus genus_;
    std::vector<BigInt> r_;      // index 0 unused
    std::vector<BigInt> lucas_;  // 0..n_max
};

inline std::vector<BigInt> lucas_sequence(Genus g, long n_max) {
    if (n_max < 0) throw DomainError("n_max must be >= 0, got " + std::to_string(n_max));
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.emplace_back(2);
    if (n_max >= 1) out.emplace_back(2 * g.value());
    const BigInt two_g = 2 * g.value();
    for (long n = 2; n <= n_max; ++n) {
        const auto k = static_cast<std::size_t>(n);
        out.emplace_back(two_g * out[k - 1] - out[k - 2]);
    }
    return out;
}

inline GradedDims graded_dims(Genus g, long n_max, const LieDimsOptions& opts = {}) {
    if (n_max < 1) throw DomainError("n_max must be >= 1, got " + std::to_string(n_max));
    if (n_max > opts.n_max_cap)
        throw DomainError("n_max " + std::to_string(n_max) + " exceeds configured cap " + std::to_string(opts.n_max_cap));

    std::vector<BigInt> lucas = lucas_sequence(g, n_max);
    std::vector<int> mu(static_cast<std::size_t>(n_max) + 1, 0);
    for (long k = 1; k <= n_max; ++k) mu[static_cast<std::size_t>(k)] = mobius(static_cast<unsigned long>(k));

    std::vector<BigInt> r(static_cast<std::size_t>(n_max) + 1, 0);
    for (long n = 1; n <= n_max; ++n) {
        BigInt sum = 0;
        for (long d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            const int m = mu[static_cast<std::size_t>(n / d)];
            if (m == 1) sum += lucas[static_cast<std::size_t>(d)];
            else if (m == -1) sum -= lucas[static_cast<std::size_t>(d)];
        }
        if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(n)))
            throw InvariantViolation("Moebius sum for r_" + std::to_string(n) + " is not divisible by n");
        mpz_divexact_ui(sum.get_mpz_t(), sum.get_mpz_t(), static_cast<unsigned long>(n));
        if (sum <= 0) throw InvariantViolation("r_" + std::to_string(n) + " is not positive");
        r[static_cast<std::size_t>(n)] = std::move(sum);
    }
    return GradedDims(g, std::move(r), std::move(lucas));
}

// dim U_n = r_1 + ... + r_{n-1}, for 2 <= n <= n_max + 1.
inline BigInt cumulative_dim(const GradedDims& dims, long n) {
    if (n < 2 || n > dims.n_max() + 1)
        throw DomainError("cumulative_dim needs 2 <= n <= " + std::to_string(dims.n_max() + 1) + ", got " +
                          std::to_string(n));
    BigInt total = 0;
    for (long i = 1; i < n; ++i) total += dims.r(i);
    return total;
}

}  // namespace nadescent
