#pragma once

// Newton polygon of a truncated p-adic series: the lower convex hull of the
// points (i, v(c_i)) for the coefficients of index below the tail guarantee
// that are known to be nonzero.
//
// A coefficient that is only known to be zero to precision k constrains its
// point to v >= k. Inside the hull's index range such a point must sit on or
// above the hull; to the right of the last vertex it must sit strictly above
// the last vertex. Otherwise the unknown digits could change the roots in the
// closed unit disk and PrecisionTooLowForHull is raised. Unknown
// coefficients to the left of the first vertex are kept as pending bounds and
// checked against each root-count query.

#include <string>
#include <vector>

#include "nadescent/errors.hpp"
#include "nadescent/padic_series.hpp"

namespace nadescent {

struct PolygonPoint {
    long index = 0;
    long valuation = 0;
    friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

// Edge between consecutive vertices; slope = rise / run with run > 0.
struct PolygonSegment {
    PolygonPoint start;
    PolygonPoint end;
    long rise() const { return end.valuation - start.valuation; }
    long run() const { return end.index - start.index; }
};

class NewtonPolygon {
public:
    NewtonPolygon(std::vector<PolygonPoint> vertices, std::vector<PolygonPoint> leading_unknowns)
        : vertices_(std::move(vertices)), leading_unknowns_(std::move(leading_unknowns)) {}

    const std::vector<PolygonPoint>& vertices() const noexcept { return vertices_; }
    const std::vector<PolygonPoint>& leading_unknowns() const noexcept { return leading_unknowns_; }

    std::vector<PolygonSegment> segments() const {
        std::vector<PolygonSegment> out;
        for (std::size_t i = 1; i < vertices_.size(); ++i) out.push_back({vertices_[i - 1], vertices_[i]});
        return out;
    }

    // Number of roots (with multiplicity, over the algebraic closure) of
    // valuation >= num/den, den > 0: the index of the rightmost point where a
    // supporting line of slope -num/den touches the polygon. Roots at the
    // origin (leading exact zeros) are included.
    long roots_with_valuation_at_least(long num, long den = 1) const {
        if (den <= 0) throw DomainError("valuation threshold denominator must be positive");
        auto weight = [&](long index, long val) { return den * val + num * index; };
        long best = weight(vertices_.front().index, vertices_.front().valuation);
        long arg = vertices_.front().index;
        for (const auto& v : vertices_) {
            const long w = weight(v.index, v.valuation);
            if (w <= best) {
                best = w;
                arg = v.index;
            }
        }
        for (const auto& u : leading_unknowns_) {
            if (weight(u.index, u.valuation) < best)
                throw PrecisionTooLowForHull("coefficient " + std::to_string(u.index) + " known only to O(p^" +
                                             std::to_string(u.valuation) + ") may carry roots of valuation >= " +
                                             std::to_string(num) + "/" + std::to_string(den));
        }
        return arg;
    }

private:
    std::vector<PolygonPoint> vertices_;
    std::vector<PolygonPoint> leading_unknowns_;
};

namespace detail {

// (b - a) x (c - a) <= 0 means b is on or above segment a-c: drop it.
inline bool not_below(const PolygonPoint& a, const PolygonPoint& b, const PolygonPoint& c) {
    const long cross = (b.index - a.index) * (c.valuation - a.valuation) - (b.valuation - a.valuation) * (c.index - a.index);
    return cross <= 0;
}

}  // namespace detail

inline NewtonPolygon newton_polygon(const PadicSeries& f) {
    std::vector<PolygonPoint> known;
    std::vector<PolygonPoint> unknown;
    for (long i = 0; i < f.tail_guarantee(); ++i) {
        const auto& c = f[i];
        if (c.is_exact_zero()) continue;
        if (c.is_zero()) unknown.push_back({i, c.valuation()});
        else known.push_back({i, c.valuation()});
    }
    if (known.empty()) throw AllCoefficientsIndistinguishableFromZero();

    std::vector<PolygonPoint> hull;
    for (const auto& pt : known) {
        while (hull.size() >= 2 && detail::not_below(hull[hull.size() - 2], hull.back(), pt)) hull.pop_back();
        hull.push_back(pt);
    }

    const long first = hull.front().index;
    const long last = hull.back().index;
    std::vector<PolygonPoint> leading;
    for (const auto& u : unknown) {
        if (u.index < first) {
            leading.push_back(u);
            continue;
        }
        if (u.index > last) {
            if (u.valuation <= hull.back().valuation)
                throw PrecisionTooLowForHull("coefficient " + std::to_string(u.index) + " known only to O(p^" +
                                             std::to_string(u.valuation) + ") could extend the polygon");
            continue;
        }
        // Locate the edge a..b containing the index and compare heights.
        std::size_t e = 1;
        while (hull[e].index < u.index) ++e;
        const auto& a = hull[e - 1];
        const auto& b = hull[e];
        const long run = b.index - a.index;
        if (u.valuation * run < a.valuation * run + (b.valuation - a.valuation) * (u.index - a.index))
            throw PrecisionTooLowForHull("coefficient " + std::to_string(u.index) + " known only to O(p^" +
                                         std::to_string(u.valuation) + ") could dip below the hull");
    }
    return NewtonPolygon(std::move(hull), std::move(leading));
}

// Roots with valuation >= 1, i.e. candidates in the open residue disk pZ_p.
inline long root_count_positive_valuation(const PadicSeries& f) {
    return newton_polygon(f).roots_with_valuation_at_least(1);
}

}  // namespace nadescent
