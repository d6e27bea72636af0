#pragma once

// Recursive zero isolation in residue disks and the separation modulus M.
//
// A disk series f(z) is read on the region z in Z_p. Depth-d sub-disks are
// the residue classes of z modulo p^d; each is explored through its own
// coordinate g(z) = f(c + p^d z), so every subproblem again lives on the
// closed unit disk and its root count is read off the Newton polygon.
// Classes holding two or more roots are split again until the count drops
// to at most one or the depth cap is reached. Single-root classes get a
// Hensel (Newton iteration) certificate.

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"
#include "nadescent/newton_polygon.hpp"
#include "nadescent/padic_series.hpp"

namespace nadescent {

inline constexpr long kDefaultDepthCap = 12;

enum class SeparationStatus { kSeparated, kPrecisionExhausted, kMultipleRootSuspected };

inline std::string to_string(SeparationStatus s) {
    switch (s) {
        case SeparationStatus::kSeparated: return "Separated";
        case SeparationStatus::kPrecisionExhausted: return "PrecisionExhausted";
        case SeparationStatus::kMultipleRootSuspected: return "MultipleRootSuspected";
    }
    return "?";
}

struct ZeroDisk {
    std::string chart_id;
    std::string disk_label;
    std::vector<unsigned long> center_digits;  // base-p digits, least significant first
    long depth = 0;
    int zero_count = 0;
    bool multiplicity_flag = false;
    // Hensel-refined root (zero_count == 1 only), known modulo p^root_precision.
    std::optional<BigInt> root;
    long root_precision = 0;

    BigInt center(unsigned long p) const {
        BigInt c = 0, scale = 1;
        for (unsigned long d : center_digits) {
            c += scale * d;
            scale *= p;
        }
        return c;
    }
};

struct FailedClass {
    std::string chart_id;
    std::string disk_label;
    std::vector<unsigned long> center_digits;
    long depth = 0;
    std::optional<long> root_count;
    SeparationStatus reason = SeparationStatus::kPrecisionExhausted;
    std::string detail;
};

struct IsolationResult {
    std::vector<ZeroDisk> disks;
    std::vector<FailedClass> failures;
    std::optional<long> region_count;  // roots in the whole region, if decidable
};

struct SeparationReport {
    std::vector<ZeroDisk> disks;
    std::vector<FailedClass> failures;
    long M = 1;
    SeparationStatus status = SeparationStatus::kSeparated;
};

struct HenselCertificate {
    bool verified = false;
    BigInt root = 0;     // in the series' own coordinate
    long precision = 0;  // root known mod p^precision; kInfinity when exact
    long iterations = 0;
};

// Newton iteration from z = 0 for a series with exactly one root in the
// closed unit disk. Verified when |h'| stays constant, |h(z_k)| strictly
// decreases and h(z_k) reaches zero at the tracked precision.
inline HenselCertificate hensel_certify(const PadicSeries& h, long max_iterations = 256) {
    HenselCertificate cert;
    const unsigned long p = h.prime();
    const PadicSeries dh = h.derivative();
    PadicNumber z = PadicNumber::exact_zero(p);
    const PadicNumber slope = dh.evaluate(z);
    if (slope.is_zero()) return cert;
    long last_val = -PadicNumber::kInfinity;
    for (long k = 0; k <= max_iterations; ++k) {
        const PadicNumber hz = h.evaluate(z);
        if (hz.is_zero()) {
            const long from_value = hz.absolute_precision() == PadicNumber::kInfinity
                                        ? PadicNumber::kInfinity
                                        : hz.absolute_precision() - slope.valuation();
            cert.precision = std::min(z.absolute_precision(), from_value);
            cert.verified = cert.precision > 0;
            if (cert.verified && cert.precision != PadicNumber::kInfinity) {
                const BigInt mod = pow_ui(p, static_cast<unsigned long>(cert.precision));
                BigInt r = z.capped(cert.precision).residue() % mod;
                if (r < 0) r += mod;
                cert.root = r;
            } else {
                cert.root = z.is_zero() ? BigInt(0) : z.residue();
            }
            cert.iterations = k;
            return cert;
        }
        if (hz.valuation() <= last_val) return cert;
        last_val = hz.valuation();
        const PadicNumber dz = dh.evaluate(z);
        if (dz.is_zero() || dz.valuation() != slope.valuation()) return cert;
        z = z - hz / dz;
        if (!z.is_zero() && z.valuation() < 0) return cert;
    }
    return cert;
}

namespace detail {

struct Explorer {
    const std::string& chart_id;
    const std::string& disk_label;
    unsigned long p;
    long depth_cap;
    IsolationResult& out;

    static long count_in_unit_disk(const PadicSeries& g) {
        return newton_polygon(g).roots_with_valuation_at_least(0);
    }

    void fail(const std::vector<unsigned long>& digits, long depth, std::optional<long> count, SeparationStatus why,
              std::string detail) {
        out.failures.push_back({chart_id, disk_label, digits, depth, count, why, std::move(detail)});
    }

    // Splits the class with coordinate series g (holding parent_count roots)
    // into its p children at depth + 1.
    void split(const PadicSeries& g, const std::vector<unsigned long>& digits, long depth, long parent_count) {
        long total = 0;
        bool undecided = false;
        for (unsigned long a = 0; a < p; ++a) {
            std::vector<unsigned long> child_digits = digits;
            child_digits.push_back(a);
            const long child_depth = depth + 1;
            const PadicSeries h =
                g.compose_affine(BigInt(a), 1).with_tail_guarantee(std::min(parent_count + 1, g.truncation()));
            long count = 0;
            try {
                count = count_in_unit_disk(h);
            } catch (const PrecisionError& e) {
                undecided = true;
                fail(child_digits, child_depth, std::nullopt, SeparationStatus::kPrecisionExhausted, e.what());
                continue;
            }
            total += count;
            if (count <= 1) {
                ZeroDisk disk{chart_id, disk_label, child_digits, child_depth, static_cast<int>(count), false,
                              std::nullopt, 0};
                if (count == 1) {
                    const HenselCertificate cert = hensel_certify(h);
                    disk.multiplicity_flag = !cert.verified;
                    if (cert.verified) {
                        const BigInt center = disk.center(p);
                        const BigInt scale = pow_ui(p, static_cast<unsigned long>(child_depth));
                        disk.root = center + scale * cert.root;
                        disk.root_precision = cert.precision == PadicNumber::kInfinity
                                                  ? PadicNumber::kInfinity
                                                  : child_depth + cert.precision;
                    }
                }
                out.disks.push_back(std::move(disk));
            } else if (child_depth >= depth_cap) {
                fail(child_digits, child_depth, count, SeparationStatus::kMultipleRootSuspected,
                     std::to_string(count) + " roots remain in one class at the depth cap");
            } else {
                split(h, child_digits, child_depth, count);
            }
        }
        if (!undecided && total > parent_count)
            throw InvariantViolation("sub-disk root counts " + std::to_string(total) + " exceed parent count " +
                                     std::to_string(parent_count));
    }
};

}  // namespace detail

inline IsolationResult isolate_zeros(const PadicSeries& f, const std::string& chart_id, long depth_cap,
                                     const std::string& disk_label = {}) {
    if (depth_cap < 1) throw DomainError("depth_cap must be >= 1");
    IsolationResult out;
    detail::Explorer ex{chart_id, disk_label, f.prime(), depth_cap, out};
    long count = 0;
    try {
        count = detail::Explorer::count_in_unit_disk(f);
    } catch (const PrecisionError& e) {
        ex.fail({}, 0, std::nullopt, SeparationStatus::kPrecisionExhausted, e.what());
        return out;
    }
    out.region_count = count;
    if (count == 0) return out;
    ex.split(f, {}, 0, count);
    return out;
}

// Counts simple roots of f lying in pZ_p: isolates the zeros of f(p z) and
// counts the Hensel-certified single-root disks.
inline long count_simple_roots_in_pZp(const PadicSeries& f, long depth_cap = kDefaultDepthCap) {
    const PadicSeries g = f.compose_affine(BigInt(0), 1);
    const IsolationResult r = isolate_zeros(g, "pZp", depth_cap);
    return std::count_if(r.disks.begin(), r.disks.end(),
                         [](const ZeroDisk& d) { return d.zero_count == 1 && !d.multiplicity_flag; });
}

struct ChartDisk {
    std::string label;
    PadicSeries series;
};

struct Chart {
    std::string chart_id;
    unsigned long p = 0;
    std::vector<ChartDisk> disks;
};

// Runs isolate_zeros over every disk of every chart. Output is ordered by
// chart_id, then disk index, regardless of the thread count.
inline SeparationReport separation_modulus(const std::vector<Chart>& charts, long depth_cap = kDefaultDepthCap,
                                           unsigned threads = 1) {
    std::vector<const Chart*> order;
    for (const auto& c : charts) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(),
                     [](const Chart* a, const Chart* b) { return a->chart_id < b->chart_id; });

    struct Task {
        const Chart* chart;
        const ChartDisk* disk;
    };
    std::vector<Task> tasks;
    for (const Chart* c : order) {
        for (const auto& d : c->disks) {
            if (d.series.prime() != c->p) throw PrimeMismatch(c->p, d.series.prime());
            tasks.push_back({c, &d});
        }
    }

    std::vector<IsolationResult> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    auto run = [&](std::size_t i) {
        try {
            results[i] = isolate_zeros(tasks[i].disk->series, tasks[i].chart->chart_id, depth_cap, tasks[i].disk->label);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < tasks.size(); i = next++) run(i);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SeparationReport report;
    for (auto& r : results) {
        for (auto& d : r.disks) {
            report.M = std::max(report.M, d.depth);
            report.disks.push_back(std::move(d));
        }
        for (auto& f : r.failures) report.failures.push_back(std::move(f));
    }
    if (!report.failures.empty()) {
        const bool precision = std::any_of(report.failures.begin(), report.failures.end(), [](const FailedClass& f) {
            return f.reason == SeparationStatus::kPrecisionExhausted;
        });
        report.status = precision ? SeparationStatus::kPrecisionExhausted : SeparationStatus::kMultipleRootSuspected;
    }
    return report;
}

}  // namespace nadescent
