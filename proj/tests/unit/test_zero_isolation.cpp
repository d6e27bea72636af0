#include <gtest/gtest.h>

#include <iostream>
#include <map>
#include <random>

#include "../oracles/simple_roots.hpp"
#include "nadescent/zero_isolation.hpp"

using namespace nadescent;

namespace {

PadicSeries poly(unsigned long p, const std::vector<BigInt>& ints, long prec = 40) {
    return PadicSeries::polynomial(p, ints, prec);
}

std::vector<BigInt> from_roots(const std::vector<BigInt>& roots) {
    std::vector<BigInt> c{1};
    for (const auto& r : roots) {
        std::vector<BigInt> next(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

SeparationReport separate_one(const PadicSeries& f, long depth_cap = kDefaultDepthCap) {
    return separation_modulus({Chart{"c", f.prime(), {{"d", f}}}}, depth_cap);
}

std::vector<BigInt> occupied_centers(const SeparationReport& r, unsigned long p) {
    std::vector<BigInt> out;
    for (const auto& d : r.disks)
        if (d.zero_count == 1) out.push_back(d.center(p));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(ZeroIsolation, DistinctResidues) {
    const SeparationReport r = separate_one(poly(5, {0, -1, 1}));
    EXPECT_EQ(r.status, SeparationStatus::kSeparated);
    EXPECT_EQ(r.M, 1);
    EXPECT_EQ(occupied_centers(r, 5), (std::vector<BigInt>{0, 1}));
}

TEST(ZeroIsolation, CloseRootsNeedDepthTwo) {
    const SeparationReport r = separate_one(poly(5, {0, -5, 1}));
    EXPECT_EQ(r.status, SeparationStatus::kSeparated);
    EXPECT_EQ(r.M, 2);
    EXPECT_EQ(occupied_centers(r, 5), (std::vector<BigInt>{0, 5}));
    for (const auto& d : r.disks)
        if (d.zero_count == 1) EXPECT_EQ(d.depth, 2);
}

TEST(ZeroIsolation, DoubleRootIsSuspected) {
    const SeparationReport r = separate_one(poly(5, {0, 0, 1}));
    EXPECT_EQ(r.status, SeparationStatus::kMultipleRootSuspected);
    ASSERT_EQ(r.failures.size(), 1u);
    EXPECT_EQ(r.failures[0].root_count, 2);
    EXPECT_EQ(r.failures[0].depth, kDefaultDepthCap);
}

TEST(ZeroIsolation, NoZeros) {
    const IsolationResult r = isolate_zeros(poly(7, {1}), "c", 5);
    EXPECT_TRUE(r.disks.empty());
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(r.region_count, 0);
    EXPECT_EQ(separate_one(poly(7, {1})).M, 1);
}

TEST(ZeroIsolation, LowPrecisionIsReported) {
    // z(z - 5) with one digit cannot tell 0 from 5.
    std::vector<PadicNumber> cs{PadicNumber::zero_to(5, 1), PadicNumber::from_integer(5, -5, 1),
                                PadicNumber::from_integer(5, 1, 1), PadicNumber::exact_zero(5)};
    const SeparationReport r = separate_one(PadicSeries(5, cs, 3));
    EXPECT_EQ(r.status, SeparationStatus::kPrecisionExhausted);
    EXPECT_FALSE(r.failures.empty());
}

TEST(ZeroIsolation, SplitPolynomialsAreSeparatedSoundly) {
    std::mt19937_64 rng(17);
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::set<BigInt> distinct;
            const std::size_t n = 1 + rng() % 5;
            while (distinct.size() < n) distinct.insert(BigInt(static_cast<unsigned long>(rng() % (p * p * p * p))));
            const std::vector<BigInt> roots(distinct.begin(), distinct.end());
            const std::vector<BigInt> f = from_roots(roots);
            const SeparationReport r = separate_one(poly(p, f), 10);
            ASSERT_EQ(r.status, SeparationStatus::kSeparated);

            long expected_M = 1;
            for (std::size_t i = 0; i < roots.size(); ++i)
                for (std::size_t j = i + 1; j < roots.size(); ++j)
                    expected_M = std::max(expected_M, valuation(roots[i] - roots[j], p) + 1);
            EXPECT_EQ(r.M, expected_M);

            std::set<BigInt> hit;
            long occupied = 0;
            for (const auto& d : r.disks) {
                if (d.zero_count != 1) continue;
                ++occupied;
                ASSERT_TRUE(d.root.has_value());
                EXPECT_FALSE(d.multiplicity_flag);
                const BigInt m = pow_ui(p, d.depth);
                for (const auto& root : roots) {
                    if ((root - d.center(p)) % m == 0) {
                        EXPECT_TRUE(hit.insert(root).second) << "two disks claim one root";
                        // The certified root agrees with the true root to its precision.
                        const long prec = std::min(d.root_precision, 30L);
                        EXPECT_EQ((root - *d.root) % pow_ui(p, prec), 0);
                        // Re-verify: f vanishes at the certified root to that precision.
                        const BigInt fv = oracle::eval_poly(f, *d.root);
                        if (fv != 0) EXPECT_GE(valuation(fv, p), std::min(prec, 1L));
                    }
                }
            }
            EXPECT_EQ(occupied, static_cast<long>(roots.size()));
            EXPECT_EQ(hit.size(), roots.size());
        }
    }
}

TEST(ZeroIsolation, RaisingPrecisionNeverChangesASeparatedAnswer) {
    const std::vector<BigInt> f = from_roots({1, 6, 31, 3});
    const SeparationReport best = separate_one(poly(5, f, 40));
    ASSERT_EQ(best.status, SeparationStatus::kSeparated);
    bool seen_separated = false;
    for (long prec = 1; prec <= 12; ++prec) {
        const SeparationReport r = separate_one(poly(5, f, prec));
        if (r.status == SeparationStatus::kSeparated) {
            seen_separated = true;
            EXPECT_EQ(r.M, best.M) << prec;
            EXPECT_EQ(occupied_centers(r, 5), occupied_centers(best, 5)) << prec;
        } else {
            EXPECT_FALSE(seen_separated) << "separation lost at higher precision " << prec;
        }
    }
    EXPECT_TRUE(seen_separated);
}

TEST(ZeroIsolation, HenselCertificate) {
    // z - 7 over Z_5 in its own coordinate: root 7 exactly.
    const HenselCertificate c = hensel_certify(poly(5, {-7, 1}));
    EXPECT_TRUE(c.verified);
    EXPECT_EQ(c.root % 25, 7);
    // Double root: derivative vanishes at the root, no certificate.
    EXPECT_FALSE(hensel_certify(poly(5, {0, 0, 1})).verified);
    // z^2 - 2 over Z_7 has a root near 3; the iteration converges to it.
    const HenselCertificate s = hensel_certify(poly(7, {-2, 0, 1}).compose_affine(3, 0));
    EXPECT_TRUE(s.verified);
    const BigInt x = 3 + s.root;
    EXPECT_GE(valuation(BigInt(x * x - 2), 7), std::min(s.precision, 40L));
}

TEST(ZeroIsolation, ThreadCountDoesNotChangeTheReport) {
    std::vector<Chart> charts;
    std::mt19937_64 rng(23);
    for (int c = 0; c < 6; ++c) {
        Chart ch{"chart" + std::to_string(5 - c), 3, {}};
        for (int d = 0; d < 4; ++d) {
            std::vector<BigInt> roots;
            for (int k = 0; k < 3; ++k) roots.push_back(BigInt(static_cast<unsigned long>(rng() % 243)) + 243 * k);
            ch.disks.push_back({std::to_string(d), poly(3, from_roots(roots))});
        }
        charts.push_back(std::move(ch));
    }
    const SeparationReport one = separation_modulus(charts, 10, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        const SeparationReport r = separation_modulus(charts, 10, threads);
        EXPECT_EQ(r.M, one.M);
        EXPECT_EQ(r.status, one.status);
        ASSERT_EQ(r.disks.size(), one.disks.size());
        for (std::size_t i = 0; i < r.disks.size(); ++i) {
            EXPECT_EQ(r.disks[i].chart_id, one.disks[i].chart_id);
            EXPECT_EQ(r.disks[i].disk_label, one.disks[i].disk_label);
            EXPECT_EQ(r.disks[i].center_digits, one.disks[i].center_digits);
            EXPECT_EQ(r.disks[i].root, one.disks[i].root);
        }
    }
    EXPECT_EQ(one.disks.front().chart_id, "chart0");
}

TEST(ZeroIsolation, SimpleRootCountMatchesEnumeration) {
    std::mt19937_64 rng(29);
    for (unsigned long p : {3UL, 5UL, 7UL}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<BigInt> f(1 + rng() % 5);
            for (auto& c : f) c = BigInt(static_cast<unsigned long>(rng() % pow_ui(p, 4).get_ui()));
            if (f.back() == 0) f.back() = 1;
            EXPECT_EQ(count_simple_roots_in_pZp(poly(p, f, 60), 40), oracle::count_simple_roots_mod(f, p, 4))
                << "p=" << p << " trial " << trial;
        }
    }
}

TEST(ZeroIsolation, PlantedRootsAreCountedExactly) {
    // f = prod (c_i z - d_i) with p not dividing c_i: every root d_i / c_i is
    // known, so the simple roots in pZ_p are counted directly. Roots are
    // placed in tight clusters and some are doubled.
    EXPECT_EQ(oracle::count_simple_roots_mod({0, -3, 1}, 3, 6), 2);
    EXPECT_EQ(oracle::count_simple_roots_mod({0, 0, 1}, 3, 6), 0);
    std::mt19937_64 rng(37);
    long planted = 0, blind = 0;
    for (unsigned long p : {3UL, 5UL, 7UL}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<std::pair<BigInt, BigInt>> factors;  // (c, d) for c z - d
            const BigInt a = BigInt(static_cast<unsigned long>(rng() % 81));
            factors.emplace_back(1, p * a);
            if (rng() % 2) factors.emplace_back(1, p * (a + pow_ui(p, 1 + rng() % 4)));
            if (rng() % 4 == 0) factors.push_back(factors.front());
            for (unsigned k = 0; k < 1 + rng() % 2; ++k) {
                BigInt c = BigInt(static_cast<unsigned long>(1 + rng() % 40));
                if (c % p == 0) c += 1;
                const BigInt d = BigInt(static_cast<unsigned long>(rng() % 60)) * (rng() % 2 ? p : 1);
                factors.emplace_back(c, d);
            }
            std::vector<BigInt> g{1};
            for (const auto& [c, d] : factors) {
                std::vector<BigInt> next(g.size() + 1, 0);
                for (std::size_t i = 0; i < g.size(); ++i) {
                    next[i + 1] += c * g[i];
                    next[i] -= d * g[i];
                }
                g = std::move(next);
            }
            // Distinct roots as reduced fractions, with multiplicity.
            std::map<std::pair<BigInt, BigInt>, int> mult;
            for (const auto& [c, d] : factors) {
                BigInt q;
                mpz_gcd(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
                mult[{d / q, c / q}] += 1;
            }
            long expected = 0;
            for (const auto& [root, m] : mult)
                if (m == 1 && (root.first == 0 || valuation(root.first, p) >= 1)) ++expected;
            planted += expected;
            const long enumerated = oracle::count_simple_roots_mod(g, p, 6);
            EXPECT_LE(enumerated, expected);
            blind += expected - enumerated;
            EXPECT_EQ(count_simple_roots_in_pZp(poly(p, g, 80), 48), expected) << "p=" << p << " trial " << trial;
        }
    }
    EXPECT_GT(planted, 150);
    std::cout << "planted simple roots " << planted << ", invisible to mod p^6 enumeration " << blind << '\n';
}

TEST(ZeroIsolation, Errors) {
    EXPECT_THROW(isolate_zeros(poly(5, {1, 1}), "c", 0), DomainError);
    EXPECT_THROW(separation_modulus({Chart{"c", 3, {{"d", poly(5, {1, 1})}}}}), PrimeMismatch);
}
