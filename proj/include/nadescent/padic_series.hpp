#pragma once

// Truncated power series sum_{i=0}^{D} c_i z^i with capped-precision p-adic
// coefficients.
//
// tail_guarantee d* is the caller's analytic promise that every zero of the
// represented function in the closed unit disk is determined by the
// coefficients of index < d*. It is never inferred from the coefficients.
// Beyond the truncation degree D the series is treated as the polynomial of
// its known coefficients when recentering.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"
#include "nadescent/padic_number.hpp"

namespace nadescent {

class PadicSeries {
public:
    PadicSeries(unsigned long p, std::vector<PadicNumber> coeffs, long tail_guarantee)
        : p_(p), coeffs_(std::move(coeffs)), tail_(tail_guarantee) {
        if (p < 2 || !is_prime(p)) throw DomainError("series prime must be prime, got " + std::to_string(p));
        if (coeffs_.empty()) throw DomainError("series needs at least one coefficient");
        for (auto& c : coeffs_) {
            if (c.prime() == 0) c = PadicNumber::exact_zero(p);
            if (c.prime() != p) throw PrimeMismatch(p, c.prime());
        }
        if (tail_ < 0 || tail_ > truncation())
            throw DomainError("tail guarantee " + std::to_string(tail_) + " must lie in 0.." +
                              std::to_string(truncation()));
    }

    // Polynomial with integer coefficients carried at rel_prec digits. The
    // truncation degree is one past the degree (padded with an exact zero)
    // so that every coefficient lies below the tail guarantee.
    static PadicSeries polynomial(unsigned long p, const std::vector<BigInt>& ints, long rel_prec) {
        std::vector<PadicNumber> cs;
        cs.reserve(ints.size() + 1);
        for (const auto& n : ints) cs.push_back(PadicNumber::from_integer(p, n, rel_prec));
        cs.push_back(PadicNumber::exact_zero(p));
        const long d = static_cast<long>(ints.size());
        return PadicSeries(p, std::move(cs), d);
    }

    static PadicSeries zero(unsigned long p, long trunc) {
        return PadicSeries(p, std::vector<PadicNumber>(static_cast<std::size_t>(trunc) + 1, PadicNumber::exact_zero(p)),
                           0);
    }

    unsigned long prime() const noexcept { return p_; }
    long truncation() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    long tail_guarantee() const noexcept { return tail_; }
    std::span<const PadicNumber> coefficients() const noexcept { return coeffs_; }
    const PadicNumber& operator[](long i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

    PadicSeries with_tail_guarantee(long d) const { return PadicSeries(p_, coeffs_, d); }

    PadicSeries truncated(long degree) const {
        if (degree < 0) throw DomainError("negative truncation degree");
        if (degree >= truncation()) return *this;
        std::vector<PadicNumber> cs(coeffs_.begin(), coeffs_.begin() + degree + 1);
        return PadicSeries(p_, std::move(cs), std::min(tail_, degree));
    }

    // Minimum absolute precision over all coefficients.
    long min_absolute_precision() const {
        long m = PadicNumber::kInfinity;
        for (const auto& c : coeffs_) m = std::min(m, c.absolute_precision());
        return m;
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PadicNumber& c) { return c.is_zero(); });
    }

    PadicNumber evaluate(const PadicNumber& z) const {
        PadicNumber acc = coeffs_.back();
        for (long i = truncation() - 1; i >= 0; --i) acc = acc * z + coeffs_[static_cast<std::size_t>(i)];
        return acc;
    }

    PadicSeries derivative() const {
        std::vector<PadicNumber> cs;
        const long d = truncation();
        cs.reserve(static_cast<std::size_t>(std::max(1L, d)));
        for (long i = 1; i <= d; ++i) cs.push_back(coeffs_[static_cast<std::size_t>(i)].times(BigInt(i)));
        if (cs.empty()) cs.push_back(PadicNumber::exact_zero(p_));
        return PadicSeries(p_, std::move(cs), std::clamp(tail_ - 1, 0L, std::max(0L, d - 1)));
    }

    // g(z) = f(shift + p^scale_exponent * z), by Horner on the known
    // coefficients.
    PadicSeries compose_affine(const BigInt& shift, long scale_exponent) const {
        if (scale_exponent < 0) throw DomainError("negative scale exponent");
        const BigInt scale = pow_ui(p_, static_cast<unsigned long>(scale_exponent));
        const auto len = coeffs_.size();
        std::vector<PadicNumber> acc(len, PadicNumber::exact_zero(p_));
        for (auto i = static_cast<long>(len) - 1; i >= 0; --i) {
            // acc <- acc * (shift + scale z) + c_i, truncated at degree D.
            std::vector<PadicNumber> next(len, PadicNumber::exact_zero(p_));
            for (std::size_t j = 0; j < len; ++j) {
                if (acc[j].is_exact_zero()) continue;
                next[j] += acc[j].times(shift);
                if (j + 1 < len) next[j + 1] += acc[j].times(scale);
            }
            next[0] += coeffs_[static_cast<std::size_t>(i)];
            acc = std::move(next);
        }
        return PadicSeries(p_, std::move(acc), tail_);
    }

    friend PadicSeries operator+(const PadicSeries& a, const PadicSeries& b) { return combine(a, b, false); }
    friend PadicSeries operator-(const PadicSeries& a, const PadicSeries& b) { return combine(a, b, true); }

    friend PadicSeries operator*(const PadicSeries& a, const PadicSeries& b) {
        if (a.p_ != b.p_) throw PrimeMismatch(a.p_, b.p_);
        const long d = std::min(a.truncation(), b.truncation());
        std::vector<PadicNumber> cs(static_cast<std::size_t>(d) + 1, PadicNumber::exact_zero(a.p_));
        for (long i = 0; i <= d; ++i) {
            const auto& ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (ai.is_exact_zero()) continue;
            for (long j = 0; i + j <= d; ++j) {
                const auto& bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (bj.is_exact_zero()) continue;
                cs[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        const long tail = std::min(d, std::max(a.tail_, 1L) + std::max(b.tail_, 1L) - 1);
        return PadicSeries(a.p_, std::move(cs), tail);
    }

    PadicSeries scaled(const PadicNumber& c) const {
        if (c.prime() != 0 && c.prime() != p_) throw PrimeMismatch(p_, c.prime());
        std::vector<PadicNumber> cs;
        cs.reserve(coeffs_.size());
        for (const auto& x : coeffs_) cs.push_back(x * c);
        return PadicSeries(p_, std::move(cs), tail_);
    }

    std::string to_string() const {
        std::string out;
        for (long i = 0; i <= truncation(); ++i) {
            const auto& c = coeffs_[static_cast<std::size_t>(i)];
            if (c.is_exact_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")*z^" + std::to_string(i);
        }
        out += out.empty() ? "O(z^" : " + O(z^";
        return out + std::to_string(truncation() + 1) + ")";
    }

private:
    static PadicSeries combine(const PadicSeries& a, const PadicSeries& b, bool subtract) {
        if (a.p_ != b.p_) throw PrimeMismatch(a.p_, b.p_);
        const long d = std::min(a.truncation(), b.truncation());
        std::vector<PadicNumber> cs;
        cs.reserve(static_cast<std::size_t>(d) + 1);
        for (long i = 0; i <= d; ++i) {
            const auto& x = a.coeffs_[static_cast<std::size_t>(i)];
            const auto& y = b.coeffs_[static_cast<std::size_t>(i)];
            cs.push_back(subtract ? x - y : x + y);
        }
        return PadicSeries(a.p_, std::move(cs), std::min(d, std::max(a.tail_, b.tail_)));
    }

    unsigned long p_;
    std::vector<PadicNumber> coeffs_;
    long tail_;
};

enum class SeriesOp { kAdd, kSub, kMul };

inline PadicSeries series_arith(const PadicSeries& a, const PadicSeries& b, SeriesOp op) {
    switch (op) {
        case SeriesOp::kAdd: return a + b;
        case SeriesOp::kSub: return a - b;
        case SeriesOp::kMul: return a * b;
    }
    throw InvariantViolation("unknown series op");
}

inline PadicSeries series_scale(const PadicSeries& a, const PadicNumber& c) { return a.scaled(c); }

}  // namespace nadescent
