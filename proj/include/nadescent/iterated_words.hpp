#pragma once

// Word-indexed coordinates a_w on a residue disk.
//
// For differentials a_i = f_i(z) dz regular on the disk and the base point
// z = 0, a_w(z) = \int_0^z a_{i_1} a_{i_2} ... a_{i_l} is computed by
//
//     a_() = 1,    a_(i, w')(z) = \int_0^z f_i(t) a_{w'}(t) dt,
//
// one termwise antiderivative per letter (c_m z^m -> c_m / (m+1) z^(m+1)).
// Dividing by m+1 costs v_p(m+1) digits of absolute precision, tracked per
// coefficient. The a_w multiply by the shuffle product.

#include <map>
#include <string>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"
#include "nadescent/padic_number.hpp"
#include "nadescent/padic_series.hpp"

namespace nadescent {

struct Word {
    std::vector<unsigned> letters;

    Word() = default;
    Word(std::initializer_list<unsigned> ls) : letters(ls) {}
    explicit Word(std::vector<unsigned> ls) : letters(std::move(ls)) {}

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }
    Word tail() const { return Word(std::vector<unsigned>(letters.begin() + 1, letters.end())); }

    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? "," : "") + std::to_string(letters[i]);
        return s + ")";
    }
};

using ShuffleProduct = std::map<Word, BigInt>;

// Riffle interleavings of u and v with multiplicity; total multiplicity is
// C(|u|+|v|, |u|).
inline ShuffleProduct shuffle(const Word& u, const Word& v) {
    if (u.empty()) return {{v, 1}};
    if (v.empty()) return {{u, 1}};
    ShuffleProduct out;
    for (const auto& [w, m] : shuffle(u.tail(), v)) {
        Word x;
        x.letters.reserve(w.size() + 1);
        x.letters.push_back(u.letters.front());
        x.letters.insert(x.letters.end(), w.letters.begin(), w.letters.end());
        out[x] += m;
    }
    for (const auto& [w, m] : shuffle(u, v.tail())) {
        Word x;
        x.letters.reserve(w.size() + 1);
        x.letters.push_back(v.letters.front());
        x.letters.insert(x.letters.end(), w.letters.begin(), w.letters.end());
        out[x] += m;
    }
    return out;
}

class FormSystem {
public:
    FormSystem(std::vector<PadicSeries> forms) : forms_(std::move(forms)) {
        if (forms_.empty()) throw DomainError("form system needs at least one form");
        for (const auto& f : forms_) {
            if (f.prime() != forms_.front().prime()) throw PrimeMismatch(forms_.front().prime(), f.prime());
            if (f.truncation() != forms_.front().truncation())
                throw DomainError("all forms must share one truncation degree");
        }
    }

    // A form with a pole on the disk (lowest exponent < 0) cannot be integrated
    // without a branch of the logarithm; such systems are rejected.
    static void require_regular(long lowest_exponent, std::size_t form_index) {
        if (lowest_exponent < 0)
            throw DomainError("form " + std::to_string(form_index + 1) + " has a pole of order " +
                              std::to_string(-lowest_exponent) + " on this disk; only regular forms are supported");
    }

    unsigned long prime() const noexcept { return forms_.front().prime(); }
    std::size_t size() const noexcept { return forms_.size(); }
    long truncation() const noexcept { return forms_.front().truncation(); }
    const PadicSeries& form(unsigned letter) const {
        if (letter < 1 || letter > forms_.size())
            throw DomainError("letter " + std::to_string(letter) + " outside alphabet 1.." + std::to_string(forms_.size()));
        return forms_[letter - 1];
    }
    const std::vector<PadicSeries>& forms() const noexcept { return forms_; }

    // Largest relative precision carried by any coefficient; used for the
    // constant 1 = a_().
    long working_precision() const {
        long best = 1;
        for (const auto& f : forms_)
            for (const auto& c : f.coefficients()) best = std::max(best, c.relative_precision());
        return best;
    }

private:
    std::vector<PadicSeries> forms_;
};

// Termwise antiderivative vanishing at 0, keeping truncation degree D.
inline PadicSeries antiderivative(const PadicSeries& f) {
    const long d = f.truncation();
    std::vector<PadicNumber> cs;
    cs.reserve(static_cast<std::size_t>(d) + 1);
    cs.push_back(PadicNumber::exact_zero(f.prime()));
    for (long m = 0; m < d; ++m) cs.push_back(f[m].divided_by(BigInt(m + 1)));
    return PadicSeries(f.prime(), std::move(cs), d);
}

namespace detail {

inline void require_precision(const PadicSeries& s, const Word& w) {
    for (long m = 0; m <= s.truncation(); ++m) {
        if (s[m].absolute_precision() <= 0)
            throw PrecisionExhausted("coefficient of z^" + std::to_string(m) + " in a_" + w.to_string() +
                                     " is not known modulo Z_p");
    }
}

inline PadicSeries unit_series(unsigned long p, long trunc, long prec) {
    std::vector<PadicNumber> cs(static_cast<std::size_t>(trunc) + 1, PadicNumber::exact_zero(p));
    cs[0] = PadicNumber::from_integer(p, 1, prec);
    return PadicSeries(p, std::move(cs), trunc);
}

// Memo of a_w for suffixes, local to one evaluation call.
class IntegralCache {
public:
    IntegralCache(const FormSystem& fs, long trunc) : fs_(fs), trunc_(trunc) {}

    const PadicSeries& get(const Word& w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        if (w.empty()) return memo_.emplace(w, unit_series(fs_.prime(), trunc_, fs_.working_precision())).first->second;
        for (unsigned letter : w.letters) fs_.form(letter);
        const PadicSeries& inner = get(w.tail());
        const PadicSeries& form = fs_.form(w.letters.front());
        PadicSeries integrand = w.size() == 1 ? form.truncated(trunc_) : form.truncated(trunc_) * inner;
        PadicSeries result = antiderivative(integrand);
        require_precision(result, w);
        return memo_.emplace(w, std::move(result)).first->second;
    }

private:
    const FormSystem& fs_;
    long trunc_;
    std::map<Word, PadicSeries> memo_;
};

}  // namespace detail

inline PadicSeries iterated_integral(const FormSystem& fs, const Word& w, long trunc) {
    if (trunc < 0 || trunc > fs.truncation())
        throw DomainError("truncation " + std::to_string(trunc) + " outside 0.." + std::to_string(fs.truncation()));
    detail::IntegralCache cache(fs, trunc);
    return cache.get(w);
}

// Finite linear combination sum_w c_w a_w; zero coefficients are never stored.
class Observable {
public:
    Observable() = default;

    void add(const Word& w, const PadicNumber& c) {
        auto it = terms_.find(w);
        PadicNumber sum = it == terms_.end() ? c : it->second + c;
        if (sum.is_zero()) {
            if (it != terms_.end()) terms_.erase(it);
            return;
        }
        terms_.insert_or_assign(w, std::move(sum));
    }

    const std::map<Word, PadicNumber>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    // Product in the shuffle algebra.
    friend Observable shuffle_product(const Observable& x, const Observable& y) {
        Observable out;
        for (const auto& [u, cu] : x.terms_)
            for (const auto& [v, cv] : y.terms_)
                for (const auto& [w, m] : shuffle(u, v)) out.add(w, (cu * cv).times(m));
        return out;
    }

    friend Observable operator+(Observable a, const Observable& b) {
        for (const auto& [w, c] : b.terms_) a.add(w, c);
        return a;
    }

    friend Observable operator-(Observable a, const Observable& b) {
        for (const auto& [w, c] : b.terms_) a.add(w, -c);
        return a;
    }

private:
    std::map<Word, PadicNumber> terms_;
};

inline PadicSeries evaluate_observable(const Observable& obs, const FormSystem& fs, long trunc) {
    if (trunc < 0 || trunc > fs.truncation())
        throw DomainError("truncation " + std::to_string(trunc) + " outside 0.." + std::to_string(fs.truncation()));
    detail::IntegralCache cache(fs, trunc);
    PadicSeries total = PadicSeries::zero(fs.prime(), trunc);
    for (const auto& [w, c] : obs.terms()) total = total + cache.get(w).scaled(c);
    return total.with_tail_guarantee(trunc);
}

}  // namespace nadescent
