#pragma once

// Capped relative precision p-adic numbers.
//
// A value is one of
//   * an exact zero (infinite valuation),
//   * zero to absolute precision k: known only to lie in p^k Z_p,
//   * p^v * u + O(p^(v + prec)) with u a unit mod p^prec and prec >= 1.
//
// Valuations may be negative (integration divides by integers), and each
// operation propagates precision the usual way: sums keep the minimum
// absolute precision, products the minimum relative precision.

#include <algorithm>
#include <limits>
#include <string>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"

namespace nadescent {

class PadicNumber {
public:
    static constexpr long kInfinity = std::numeric_limits<long>::max() / 4;

    PadicNumber() = default;

    static PadicNumber exact_zero(unsigned long p) {
        PadicNumber x;
        x.p_ = p;
        return x;
    }

    static PadicNumber zero_to(unsigned long p, long abs_prec) {
        PadicNumber x;
        x.p_ = p;
        x.kind_ = Kind::kZeroTo;
        x.val_ = abs_prec;
        return x;
    }

    // p^valuation * unit + O(p^(valuation + rel_prec)); unit must be prime to p.
    static PadicNumber from_unit(unsigned long p, long valuation, const BigInt& unit, long rel_prec) {
        if (rel_prec < 1) throw DomainError("relative precision must be >= 1");
        if (mpz_divisible_ui_p(unit.get_mpz_t(), p))
            throw DomainError("unit part " + to_decimal(unit) + " is divisible by p = " + std::to_string(p));
        PadicNumber x;
        x.p_ = p;
        x.kind_ = Kind::kNonzero;
        x.val_ = valuation;
        x.prec_ = rel_prec;
        x.unit_ = unit;
        x.normalize_unit();
        return x;
    }

    // An integer carried with rel_prec significant digits; 0 is an exact zero.
    static PadicNumber from_integer(unsigned long p, const BigInt& n, long rel_prec) {
        if (n == 0) return exact_zero(p);
        long v = 0;
        BigInt u = strip_prime(n, p, v);
        return from_unit(p, v, u, rel_prec);
    }

    // n known modulo p^abs_prec.
    static PadicNumber from_residue(unsigned long p, const BigInt& n, long abs_prec) {
        if (abs_prec < 0) throw DomainError("absolute precision must be >= 0");
        BigInt m = n % pow_ui(p, static_cast<unsigned long>(abs_prec));
        if (m < 0) m += pow_ui(p, static_cast<unsigned long>(abs_prec));
        if (m == 0) return zero_to(p, abs_prec);
        long v = 0;
        BigInt u = strip_prime(m, p, v);
        return from_unit(p, v, u, abs_prec - v);
    }

    unsigned long prime() const noexcept { return p_; }
    bool is_exact_zero() const noexcept { return kind_ == Kind::kExactZero; }
    // Indistinguishable from zero at the tracked precision.
    bool is_zero() const noexcept { return kind_ != Kind::kNonzero; }

    // Exact valuation for nonzero values, the known lower bound for
    // zero-to-precision values, kInfinity for exact zero.
    long valuation() const noexcept { return kind_ == Kind::kExactZero ? kInfinity : val_; }
    long relative_precision() const noexcept { return kind_ == Kind::kNonzero ? prec_ : 0; }
    long absolute_precision() const noexcept {
        switch (kind_) {
            case Kind::kExactZero: return kInfinity;
            case Kind::kZeroTo: return val_;
            case Kind::kNonzero: return val_ + prec_;
        }
        return kInfinity;
    }
    const BigInt& unit() const noexcept { return unit_; }

    // Integer representative of a value in Z_p, reduced mod p^absolute_precision.
    BigInt residue() const {
        if (kind_ != Kind::kNonzero) return 0;
        if (val_ < 0) throw DomainError("residue of a non-integral p-adic number");
        return unit_ * pow_ui(p_, static_cast<unsigned long>(val_));
    }

    PadicNumber operator-() const {
        PadicNumber x = *this;
        if (kind_ == Kind::kNonzero) {
            x.unit_ = -x.unit_;
            x.normalize_unit();
        }
        return x;
    }

    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        const unsigned long p = common_prime(a, b);
        if (a.is_exact_zero()) return b.with_prime(p);
        if (b.is_exact_zero()) return a.with_prime(p);
        const long abs = std::min(a.absolute_precision(), b.absolute_precision());
        if (a.is_zero() && b.is_zero()) return zero_to(p, abs);

        long v = kInfinity;
        if (!a.is_zero()) v = std::min(v, a.val_);
        if (!b.is_zero()) v = std::min(v, b.val_);
        if (abs <= v) return zero_to(p, abs);

        BigInt sum = 0;
        if (!a.is_zero()) sum += a.unit_ * pow_ui(p, static_cast<unsigned long>(a.val_ - v));
        if (!b.is_zero()) sum += b.unit_ * pow_ui(p, static_cast<unsigned long>(b.val_ - v));
        const BigInt modulus = pow_ui(p, static_cast<unsigned long>(abs - v));
        sum %= modulus;
        if (sum < 0) sum += modulus;
        if (sum == 0) return zero_to(p, abs);
        long e = 0;
        BigInt u = strip_prime(sum, p, e);
        return from_unit(p, v + e, u, abs - v - e);
    }

    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        const unsigned long p = common_prime(a, b);
        if (a.is_exact_zero() || b.is_exact_zero()) return exact_zero(p);
        if (a.is_zero() || b.is_zero()) return zero_to(p, a.valuation() + b.valuation());
        return from_unit(p, a.val_ + b.val_, a.unit_ * b.unit_, std::min(a.prec_, b.prec_));
    }

    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
        const unsigned long p = common_prime(a, b);
        if (b.is_zero()) throw PrecisionError("division by a p-adic number indistinguishable from zero");
        if (a.is_exact_zero()) return exact_zero(p);
        if (a.is_zero()) return zero_to(p, a.val_ - b.val_);
        const long prec = std::min(a.prec_, b.prec_);
        const BigInt modulus = pow_ui(p, static_cast<unsigned long>(prec));
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), b.unit_.get_mpz_t(), modulus.get_mpz_t());
        return from_unit(p, a.val_ - b.val_, a.unit_ * inv, prec);
    }

    PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
    PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
    PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

    // Multiplication by an exact integer.
    PadicNumber times(const BigInt& n) const {
        if (n == 0 || is_exact_zero()) return exact_zero(p_);
        long e = 0;
        BigInt u = strip_prime(n, p_, e);
        if (is_zero()) return zero_to(p_, val_ + e);
        return from_unit(p_, val_ + e, unit_ * u, prec_);
    }

    // Division by an exact nonzero integer; absolute precision drops by v_p(n).
    PadicNumber divided_by(const BigInt& n) const {
        if (n == 0) throw DomainError("division by zero");
        if (is_exact_zero()) return *this;
        long e = 0;
        BigInt u = strip_prime(n, p_, e);
        if (is_zero()) return zero_to(p_, val_ - e);
        const BigInt modulus = pow_ui(p_, static_cast<unsigned long>(prec_));
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
        return from_unit(p_, val_ - e, unit_ * inv, prec_);
    }

    // Forget digits beyond absolute precision cap.
    PadicNumber capped(long abs_cap) const {
        if (absolute_precision() <= abs_cap) return *this;
        if (kind_ != Kind::kNonzero || val_ >= abs_cap) return zero_to(p_, abs_cap);
        return from_unit(p_, val_, unit_, abs_cap - val_);
    }

    // Equal within the smaller of the two precisions.
    bool agrees_with(const PadicNumber& o) const { return (*this - o).is_zero(); }

    // Representation equality (value and precision).
    friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
        return a.p_ == b.p_ && a.kind_ == b.kind_ && a.val_ == b.val_ && a.prec_ == b.prec_ && a.unit_ == b.unit_;
    }

    std::string to_string() const {
        switch (kind_) {
            case Kind::kExactZero: return "0";
            case Kind::kZeroTo: return "O(" + std::to_string(p_) + "^" + std::to_string(val_) + ")";
            case Kind::kNonzero:
                return to_decimal(unit_) + "*" + std::to_string(p_) + "^" + std::to_string(val_) + " + O(" +
                       std::to_string(p_) + "^" + std::to_string(val_ + prec_) + ")";
        }
        return {};
    }

private:
    enum class Kind { kExactZero, kZeroTo, kNonzero };

    static unsigned long common_prime(const PadicNumber& a, const PadicNumber& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
        throw PrimeMismatch(a.p_, b.p_);
    }

    PadicNumber with_prime(unsigned long p) const {
        PadicNumber x = *this;
        x.p_ = p;
        return x;
    }

    void normalize_unit() {
        const BigInt modulus = pow_ui(p_, static_cast<unsigned long>(prec_));
        unit_ %= modulus;
        if (unit_ < 0) unit_ += modulus;
    }

    unsigned long p_ = 0;
    Kind kind_ = Kind::kExactZero;
    long val_ = 0;
    long prec_ = 0;
    BigInt unit_ = 0;
};

}  // namespace nadescent
