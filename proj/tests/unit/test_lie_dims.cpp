#include <gtest/gtest.h>

#include "nadescent/lie_dims.hpp"

using namespace nadescent;

namespace {

// L_n = alpha^n + beta^n with alpha, beta = g +- sqrt(g^2 - 1): expand
// (g + sqrt D)^n = a + b sqrt D in Z[sqrt D], then L_n = 2a.
std::vector<BigInt> lucas_by_quadratic_ring(long g, long n_max) {
    const BigInt d = BigInt(g) * g - 1;
    std::vector<BigInt> out{2};
    BigInt a = 1, b = 0;
    for (long n = 1; n <= n_max; ++n) {
        BigInt na = a * g + b * d;
        BigInt nb = a + b * g;
        a = na;
        b = nb;
        out.push_back(2 * a);
    }
    return out;
}

// Coefficients of prod_{n<=N} (1 - t^n)^(-r_n) through t^N, from the binomial
// series (1 - x)^(-r) = sum_k C(r+k-1, k) x^k.
std::vector<BigInt> pbw_series(const GradedDims& dims, long N) {
    std::vector<BigInt> acc(N + 1, 0);
    acc[0] = 1;
    for (long n = 1; n <= N; ++n) {
        const unsigned long r = dims.r(n).get_ui();
        std::vector<BigInt> factor(N + 1, 0);
        for (long k = 0; k * n <= N; ++k) factor[k * n] = binomial(r + k - 1, k);
        std::vector<BigInt> next(N + 1, 0);
        for (long i = 0; i <= N; ++i)
            for (long j = 0; i + j <= N; ++j) next[i + j] += acc[i] * factor[j];
        acc = std::move(next);
    }
    return acc;
}

std::vector<BigInt> inverse_quadratic(long g, long N) {
    std::vector<BigInt> c{1, 2 * g};
    while (static_cast<long>(c.size()) <= N) c.push_back(2 * g * c.back() - c[c.size() - 2]);
    c.resize(N + 1);
    return c;
}

}  // namespace

TEST(LieDims, LucasMatchesQuadraticRing) {
    for (long g = 2; g <= 6; ++g) {
        const auto expected = lucas_by_quadratic_ring(g, 40);
        const auto got = lucas_sequence(Genus(g), 40);
        ASSERT_EQ(got.size(), expected.size());
        for (std::size_t n = 0; n < got.size(); ++n) EXPECT_EQ(got[n], expected[n]) << "g=" << g << " n=" << n;
    }
    const auto l = lucas_sequence(Genus(2), 5);
    const std::vector<BigInt> first{2, 4, 14, 52, 194, 724};
    EXPECT_EQ(l, first);
}

TEST(LieDims, GenusTwoGradedPieces) {
    const GradedDims d = graded_dims(Genus(2), 5);
    const std::vector<long> expected{4, 5, 16, 45, 144};
    for (long n = 1; n <= 5; ++n) EXPECT_EQ(d.r(n), expected[n - 1]) << n;
    EXPECT_EQ(graded_dims(Genus(3), 2).r(2), 14);
}

TEST(LieDims, WittIdentityHoldsExactly) {
    for (long g = 2; g <= 6; ++g) {
        const GradedDims d = graded_dims(Genus(g), 64);
        for (long n = 1; n <= 64; ++n) {
            BigInt sum = 0;
            for (long k = 1; k <= n; ++k)
                if (n % k == 0) sum += BigInt(k) * d.r(k);
            EXPECT_EQ(sum, d.lucas(n)) << "g=" << g << " n=" << n;
        }
    }
}

TEST(LieDims, PbwGeneratingFunction) {
    for (long g = 2; g <= 4; ++g) {
        const GradedDims d = graded_dims(Genus(g), 16);
        EXPECT_EQ(pbw_series(d, 16), inverse_quadratic(g, 16)) << "g=" << g;
    }
    const auto c = pbw_series(graded_dims(Genus(2), 4), 4);
    const std::vector<BigInt> expected{1, 4, 15, 56, 209};
    EXPECT_EQ(c, expected);
}

TEST(LieDims, AsymptoticSandwich) {
    // |n r_n - L_n| <= sum of L_d over proper divisors d of n.
    for (long g = 2; g <= 5; ++g) {
        const GradedDims d = graded_dims(Genus(g), 48);
        for (long n = 1; n <= 48; ++n) {
            BigInt proper = 0;
            for (long k = 1; k < n; ++k)
                if (n % k == 0) proper += d.lucas(k);
            BigInt gap = BigInt(n) * d.r(n) - d.lucas(n);
            if (gap < 0) gap = -gap;
            EXPECT_LE(gap, proper) << "g=" << g << " n=" << n;
            EXPECT_GT(d.r(n), 0);
        }
    }
}

TEST(LieDims, OddDegreePiecesAreEven) {
    // The symplectic form pairs the odd-degree pieces, so r_n is even for odd n.
    for (long g = 2; g <= 6; ++g) {
        const GradedDims d = graded_dims(Genus(g), 63);
        for (long n = 1; n <= 63; n += 2) EXPECT_TRUE(mpz_even_p(d.r(n).get_mpz_t())) << "g=" << g << " n=" << n;
    }
}

TEST(LieDims, CumulativeDimension) {
    const GradedDims d = graded_dims(Genus(2), 5);
    EXPECT_EQ(cumulative_dim(d, 2), 4);
    EXPECT_EQ(cumulative_dim(d, 3), 9);
    EXPECT_EQ(cumulative_dim(d, 4), 25);
    EXPECT_EQ(cumulative_dim(d, 6), 4 + 5 + 16 + 45 + 144);
    EXPECT_THROW(cumulative_dim(d, 1), DomainError);
    EXPECT_THROW(cumulative_dim(d, 7), DomainError);
}

TEST(LieDims, Errors) {
    EXPECT_THROW(Genus(1), DomainError);
    EXPECT_THROW(Genus(0), DomainError);
    EXPECT_THROW(graded_dims(Genus(2), 0), DomainError);
    EXPECT_THROW(graded_dims(Genus(2), 20, LieDimsOptions{10}), DomainError);
    const GradedDims d = graded_dims(Genus(2), 3);
    EXPECT_THROW(d.r(0), DomainError);
    EXPECT_THROW(d.r(4), DomainError);
}

TEST(LieDims, Deterministic) {
    const GradedDims a = graded_dims(Genus(4), 50);
    const GradedDims b = graded_dims(Genus(4), 50);
    for (long n = 1; n <= 50; ++n) EXPECT_EQ(a.r(n), b.r(n));
}
