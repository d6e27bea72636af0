#pragma once

// Two-sided search: an increasing enumeration A_0 ⊆ A_1 ⊆ ... (points of
// bounded height) squeezed against a decreasing sieve B_0 ⊇ B_1 ⊇ ...
// (cohomology classes surviving the lifting conditions up to level m).
// Since every A_n sits inside every B_m, the first (n, m) with A_n = B_m
// pins down the full answer set, and the search stops there.

#include <algorithm>
#include <concepts>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nadescent/errors.hpp"

namespace nadescent {

template <class E, class Id>
concept LevelSets = requires(E& e, long level) {
    { e.level(level) } -> std::convertible_to<std::set<Id>>;
};

class ContainmentViolated : public DomainError {
public:
    explicit ContainmentViolated(const std::string& what) : DomainError("containment violated: " + what) {}
};

enum class Advance { kLower, kUpper };

// Cyclic pattern of which side to advance; "nm" alternates starting with
// the enumeration side.
struct Schedule {
    std::vector<Advance> pattern{Advance::kLower, Advance::kUpper};

    static Schedule parse(const std::string& s) {
        Schedule out;
        out.pattern.clear();
        for (char c : s) {
            if (c == 'n') out.pattern.push_back(Advance::kLower);
            else if (c == 'm') out.pattern.push_back(Advance::kUpper);
            else throw DomainError("schedule letters must be 'n' or 'm', got '" + s + "'");
        }
        if (out.pattern.empty()) throw DomainError("empty schedule");
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (auto a : pattern) s += a == Advance::kLower ? 'n' : 'm';
        return s;
    }
};

struct DescentCaps {
    long n_cap = 64;
    long m_cap = 64;
};

template <class Id>
struct Converged {
    std::set<Id> points;
    long n = 0;
    long m = 0;
};

template <class Id>
struct CapExceeded {
    long n_cap = 0;
    long m_cap = 0;
    std::set<Id> lower_last;
    std::set<Id> upper_last;
};

template <class Id>
struct DescentOutcome {
    std::variant<Converged<Id>, CapExceeded<Id>> result;
    std::vector<std::pair<long, long>> path;  // every (n, m) compared, in order

    bool converged() const { return std::holds_alternative<Converged<Id>>(result); }
};

namespace detail {

template <class Id>
bool subset(const std::set<Id>& a, const std::set<Id>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

template <class Id, LevelSets<Id> Lower, LevelSets<Id> Upper>
DescentOutcome<Id> run_descent(Lower& lower, Upper& upper, const Schedule& schedule = {}, const DescentCaps& caps = {}) {
    if (caps.n_cap < 0 || caps.m_cap < 0) throw DomainError("caps must be >= 0");
    if (schedule.pattern.empty()) throw DomainError("empty schedule");

    long n = 0, m = 0;
    std::set<Id> a = lower.level(0);
    std::set<Id> b = upper.level(0);
    DescentOutcome<Id> out;

    auto check_sandwich = [&] {
        if (!detail::subset(a, b))
            throw ContainmentViolated("A_" + std::to_string(n) + " is not contained in B_" + std::to_string(m));
    };

    for (std::size_t step = 0;; ++step) {
        check_sandwich();
        out.path.emplace_back(n, m);
        if (a == b) {
            out.result = Converged<Id>{std::move(a), n, m};
            return out;
        }
        Advance side = schedule.pattern[step % schedule.pattern.size()];
        if (side == Advance::kLower && n >= caps.n_cap) side = Advance::kUpper;
        else if (side == Advance::kUpper && m >= caps.m_cap) side = Advance::kLower;
        if ((side == Advance::kLower && n >= caps.n_cap) || (side == Advance::kUpper && m >= caps.m_cap)) {
            out.result = CapExceeded<Id>{caps.n_cap, caps.m_cap, std::move(a), std::move(b)};
            return out;
        }
        if (side == Advance::kLower) {
            std::set<Id> next = lower.level(++n);
            if (!detail::subset(a, next))
                throw ContainmentViolated("enumeration shrank: A_" + std::to_string(n - 1) + " not inside A_" +
                                          std::to_string(n));
            a = std::move(next);
        } else {
            std::set<Id> next = upper.level(++m);
            if (!detail::subset(next, b))
                throw ContainmentViolated("sieve grew: B_" + std::to_string(m) + " not inside B_" +
                                          std::to_string(m - 1));
            b = std::move(next);
        }
    }
}

// Level sets given as explicit tables; levels past the end repeat the last
// entry.
template <class Id>
class TabulatedLevels {
public:
    explicit TabulatedLevels(std::vector<std::set<Id>> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw DomainError("level table must have at least one level");
    }

    std::set<Id> level(long n) const {
        if (n < 0) throw DomainError("negative level");
        return levels_[std::min<std::size_t>(static_cast<std::size_t>(n), levels_.size() - 1)];
    }

    const std::vector<std::set<Id>>& levels() const noexcept { return levels_; }

private:
    std::vector<std::set<Id>> levels_;
};

}  // namespace nadescent
