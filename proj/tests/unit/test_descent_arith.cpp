#include <gtest/gtest.h>

#include "nadescent/descent_arith.hpp"

using namespace nadescent;

namespace {

// Projective points of y^2 z = x^3 + a x z^2 + b z^3 over Z/q with q = p^k:
// triples with a unit coordinate, divided by the number of units.
long count_points(long a, long b, long p, int k) {
    long q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    auto md = [q](long v) { return ((v % q) + q) % q; };
    long triples = 0;
    for (long x = 0; x < q; ++x)
        for (long y = 0; y < q; ++y)
            for (long z = 0; z < q; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                const long lhs = md(md(y * y) * z);
                const long rhs = md(md(md(x * x) * x) + md(a * x % q * md(z * z)) + md(b * md(md(z * z) * z)));
                if (lhs == rhs) ++triples;
            }
    const long units = q - q / p;
    EXPECT_EQ(triples % units, 0);
    return triples / units;
}

}  // namespace

TEST(DescentArith, GroupOrders) {
    EXPECT_EQ(jacobian_order_mod({3, 1, 3}, 2), 9);
    EXPECT_EQ(jacobian_order_mod({5, 1, 9}, 2), 45);
    EXPECT_EQ(jacobian_order_mod({7, 2, 57}, 3), 57 * 2401);
    EXPECT_EQ(jacobian_order_mod({3, 2, 13}, 2), 9 * 13);
    EXPECT_EQ(jacobian_order_mod({5, 2, 30}, 1), 30);
    EXPECT_EQ(annihilator_N({5, 2, 30}, 2), 750);
    EXPECT_THROW(jacobian_order_mod({5, 2, 30}, 0), DomainError);
    EXPECT_THROW(jacobian_order_mod({6, 2, 30}, 2), DomainError);
    EXPECT_THROW(jacobian_order_mod({5, 0, 30}, 2), DomainError);
    EXPECT_THROW(jacobian_order_mod({5, 2, 0}, 2), DomainError);
}

TEST(DescentArith, EllipticCurvesModPSquared) {
    struct Curve {
        long a, b;
    };
    for (const Curve c : {Curve{1, 1}, Curve{-1, 0}, Curve{0, 2}}) {
        for (long p : {5L, 7L}) {
            const long fp = count_points(c.a, c.b, p, 1);
            const long fp2 = count_points(c.a, c.b, p, 2);
            EXPECT_EQ(fp2, p * fp) << c.a << " " << c.b << " p=" << p;
            EXPECT_EQ(jacobian_order_mod({static_cast<unsigned long>(p), 1, fp}, 2), fp2);
            EXPECT_TRUE(weil_bound_warnings({static_cast<unsigned long>(p), 1, fp}).empty());
        }
    }
}

TEST(DescentArith, EnlargedPrimeSet) {
    EXPECT_EQ(enlarged_prime_set({11}, 45), (std::set<BigInt>{3, 5, 11}));
    EXPECT_EQ(enlarged_prime_set({}, 1), std::set<BigInt>{});
    EXPECT_EQ(enlarged_prime_set({}, 2), std::set<BigInt>{2});
    EXPECT_EQ(enlarged_prime_set({3}, 750), (std::set<BigInt>{2, 3, 5}));
    const BigInt a = BigInt(1000000007), b = BigInt(1000000009);
    EXPECT_EQ(enlarged_prime_set({}, a * b * 4), (std::set<BigInt>{2, a, b}));
    EXPECT_THROW(enlarged_prime_set({}, 0), DomainError);
}

TEST(DescentArith, FactorizationAgreesWithProduct) {
    for (unsigned long n = 1; n < 3000; ++n) {
        BigInt prod = 1;
        for (const auto& [q, e] : factorize(n)) {
            EXPECT_TRUE(is_prime(q));
            prod *= pow(q, e);
        }
        EXPECT_EQ(prod, n);
    }
}

TEST(DescentArith, FactorizationTimeout) {
    const BigInt a("1000000000000000003"), b("1000000000000000009");
    ASSERT_TRUE(is_prime(a) && is_prime(b));
    FactorizationOptions opts;
    opts.trial_bound = 100;
    opts.max_rho_iterations = 1000;
    EXPECT_THROW(factorize(a * b, opts), FactorizationTimeout);
}

TEST(DescentArith, WeilWarnings) {
    EXPECT_TRUE(weil_bound_warnings({5, 2, 30}).empty());
    EXPECT_EQ(weil_bound_warnings({5, 2, 200}).size(), 1u);
    EXPECT_EQ(weil_bound_warnings({5, 2, 1}).size(), 1u);
    // (sqrt 5 + 1)^4 = 56 + 24 sqrt 5 ~ 109.67, so 109 passes and 110 does not.
    EXPECT_TRUE(weil_bound_warnings({5, 2, 109}).empty());
    EXPECT_EQ(weil_bound_warnings({5, 2, 110}).size(), 1u);
    // (sqrt 5 - 1)^4 = 56 - 24 sqrt 5 ~ 2.33, so 3 passes and 2 does not.
    EXPECT_TRUE(weil_bound_warnings({5, 2, 3}).empty());
    EXPECT_EQ(weil_bound_warnings({5, 2, 2}).size(), 1u);
}

TEST(DescentArith, LPolynomial) {
    EXPECT_EQ(count_from_l_polynomial({1, 0, 4, 0, 25}, 5, 2), 30);
    EXPECT_EQ(count_from_l_polynomial({1, -2, 7}, 7, 1), 6);
    EXPECT_THROW(count_from_l_polynomial({1, 0, 25}, 5, 2), DomainError);
    EXPECT_THROW(count_from_l_polynomial({2, 0, 4, 0, 25}, 5, 2), DomainError);
    EXPECT_THROW(count_from_l_polynomial({1, 0, 4, 0, 24}, 5, 2), DomainError);
}
