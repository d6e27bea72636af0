#pragma once

// JSON schemas shared by the CLI, fixtures and reports. Every integer is
// written as a decimal string and accepted either as a string or as a JSON
// number.
//
// p-adic coefficient:
//   {"val": "inf"}                             exact zero
//   {"val": k, "unit": "0", "prec": 0}         zero to absolute precision k
//   {"val": v, "unit": u, "prec": r}           p^v * u + O(p^(v+r)), p ∤ u
//   {"int": n, "prec": r}                      the integer n with r digits
// disk:   {"center_label", "coeffs": [...], "trunc": D, "weierstrass_bound": d*}
// chart:  {"chart_id", "p", "disks": [...]}

#include <json.hpp>

#include <set>
#include <string>
#include <vector>

#include "nadescent/descent_arith.hpp"
#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"
#include "nadescent/iterated_words.hpp"
#include "nadescent/padic_number.hpp"
#include "nadescent/padic_series.hpp"
#include "nadescent/selmer_bounds.hpp"
#include "nadescent/two_sided_search.hpp"
#include "nadescent/zero_isolation.hpp"

namespace nadescent::json_io {

using Json = nlohmann::ordered_json;

inline std::string path_join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw DomainError("expected an object at '" + (path.empty() ? "<root>" : path) + "'");
    auto it = obj.find(key);
    if (it == obj.end()) throw DomainError("missing field '" + path_join(path, key) + "'");
    return *it;
}

inline BigInt to_bigint(const Json& v, const std::string& path) {
    if (v.is_string()) {
        try {
            return parse_decimal(v.get<std::string>());
        } catch (const DomainError&) {
            throw DomainError("field '" + path + "' is not a decimal integer");
        }
    }
    if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()), 10);
    if (v.is_number_unsigned()) return BigInt(std::to_string(v.get<unsigned long long>()), 10);
    throw DomainError("field '" + path + "' must be an integer (decimal string or number)");
}

inline long to_long(const Json& v, const std::string& path) {
    const BigInt b = to_bigint(v, path);
    if (!b.fits_slong_p()) throw DomainError("field '" + path + "' is out of range");
    return b.get_si();
}

inline unsigned long to_ulong(const Json& v, const std::string& path) {
    const BigInt b = to_bigint(v, path);
    if (b < 0 || !b.fits_ulong_p()) throw DomainError("field '" + path + "' is out of range");
    return b.get_ui();
}

inline long get_long(const Json& obj, const std::string& key, const std::string& path) {
    return to_long(require(obj, key, path), path_join(path, key));
}

inline std::string dec(const BigInt& n) { return to_decimal(n); }
inline std::string dec(long n) { return std::to_string(n); }

// ---- p-adic values -------------------------------------------------------

inline Json to_json(const PadicNumber& x) {
    if (x.is_exact_zero()) return Json{{"val", "inf"}};
    if (x.is_zero()) return Json{{"val", dec(x.valuation())}, {"unit", "0"}, {"prec", "0"}};
    return Json{{"val", dec(x.valuation())}, {"unit", dec(x.unit())}, {"prec", dec(x.relative_precision())}};
}

inline PadicNumber padic_from_json(const Json& j, unsigned long p, const std::string& path) {
    if (!j.is_object()) throw DomainError("coefficient at '" + path + "' must be an object");
    if (j.contains("int")) {
        const BigInt n = to_bigint(j["int"], path_join(path, "int"));
        return PadicNumber::from_integer(p, n, get_long(j, "prec", path));
    }
    const Json& val = require(j, "val", path);
    if (val.is_string() && val.get<std::string>() == "inf") return PadicNumber::exact_zero(p);
    const long v = to_long(val, path_join(path, "val"));
    const BigInt unit = to_bigint(require(j, "unit", path), path_join(path, "unit"));
    const long prec = get_long(j, "prec", path);
    if (unit == 0) {
        if (prec != 0) throw DomainError("zero coefficient at '" + path + "' must have prec 0");
        return PadicNumber::zero_to(p, v);
    }
    if (prec < 1) throw DomainError("coefficient at '" + path + "' needs prec >= 1");
    try {
        return PadicNumber::from_unit(p, v, unit, prec);
    } catch (const DomainError& e) {
        throw DomainError("coefficient at '" + path + "': " + e.what());
    }
}

inline Json series_to_json(const PadicSeries& s, const std::string& label = {}) {
    Json coeffs = Json::array();
    for (const auto& c : s.coefficients()) coeffs.push_back(to_json(c));
    Json out;
    if (!label.empty()) out["center_label"] = label;
    out["coeffs"] = std::move(coeffs);
    out["trunc"] = dec(s.truncation());
    out["weierstrass_bound"] = dec(s.tail_guarantee());
    return out;
}

inline PadicSeries series_from_json(const Json& j, unsigned long p, const std::string& path) {
    const Json& coeffs = require(j, "coeffs", path);
    if (!coeffs.is_array() || coeffs.empty()) throw DomainError("'" + path_join(path, "coeffs") + "' must be a non-empty array");
    const long trunc = j.contains("trunc") ? get_long(j, "trunc", path) : static_cast<long>(coeffs.size()) - 1;
    if (trunc < 0) throw DomainError("'" + path_join(path, "trunc") + "' must be >= 0");
    if (static_cast<long>(coeffs.size()) > trunc + 1)
        throw DomainError("'" + path + "' lists more coefficients than trunc + 1");
    if (j.contains("min_degree")) {
        const long lowest = get_long(j, "min_degree", path);
        if (lowest < 0) throw DomainError("'" + path + "' has a pole (min_degree " + std::to_string(lowest) + ")");
    }
    std::vector<PadicNumber> cs;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        cs.push_back(padic_from_json(coeffs[i], p, path_join(path, "coeffs[" + std::to_string(i) + "]")));
    cs.resize(static_cast<std::size_t>(trunc) + 1, PadicNumber::exact_zero(p));
    const long tail = j.contains("weierstrass_bound") ? get_long(j, "weierstrass_bound", path) : trunc;
    try {
        return PadicSeries(p, std::move(cs), tail);
    } catch (const DomainError& e) {
        throw DomainError("'" + path + "': " + e.what());
    }
}

inline std::vector<Chart> charts_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw DomainError("'" + path + "' must be an array of charts");
    std::vector<Chart> charts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string cp = path + "[" + std::to_string(i) + "]";
        Chart c;
        const Json& id = require(j[i], "chart_id", cp);
        c.chart_id = id.is_string() ? id.get<std::string>() : id.dump();
        c.p = to_ulong(require(j[i], "p", cp), path_join(cp, "p"));
        if (c.p < 2 || !is_prime(c.p)) throw DomainError("'" + path_join(cp, "p") + "' must be prime");
        const Json& disks = require(j[i], "disks", cp);
        if (!disks.is_array()) throw DomainError("'" + path_join(cp, "disks") + "' must be an array");
        for (std::size_t k = 0; k < disks.size(); ++k) {
            const std::string dp = path_join(cp, "disks[" + std::to_string(k) + "]");
            std::string label = disks[k].contains("center_label") ? disks[k]["center_label"].get<std::string>()
                                                                  : std::to_string(k);
            c.disks.push_back({std::move(label), series_from_json(disks[k], c.p, dp)});
        }
        charts.push_back(std::move(c));
    }
    return charts;
}

inline Json charts_to_json(const std::vector<Chart>& charts) {
    Json out = Json::array();
    for (const auto& c : charts) {
        Json disks = Json::array();
        for (const auto& d : c.disks) disks.push_back(series_to_json(d.series, d.label));
        out.push_back(Json{{"chart_id", c.chart_id}, {"p", dec(static_cast<long>(c.p))}, {"disks", std::move(disks)}});
    }
    return out;
}

// ---- separation report ---------------------------------------------------

inline Json to_json(const ZeroDisk& d, unsigned long p) {
    Json digits = Json::array();
    for (auto x : d.center_digits) digits.push_back(dec(static_cast<long>(x)));
    Json out{{"chart_id", d.chart_id},
             {"center_label", d.disk_label},
             {"center_digits", std::move(digits)},
             {"center", dec(d.center(p))},
             {"depth", dec(d.depth)},
             {"zero_count", dec(static_cast<long>(d.zero_count))},
             {"multiplicity_flag", d.multiplicity_flag}};
    if (d.root) {
        out["root"] = dec(*d.root);
        out["root_precision"] = d.root_precision == PadicNumber::kInfinity ? std::string("exact") : dec(d.root_precision);
    }
    return out;
}

inline Json to_json(const SeparationReport& r, const std::vector<Chart>& charts) {
    auto prime_of = [&](const std::string& id) {
        for (const auto& c : charts)
            if (c.chart_id == id) return c.p;
        return 0UL;
    };
    Json disks = Json::array();
    for (const auto& d : r.disks) disks.push_back(to_json(d, prime_of(d.chart_id)));
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json digits = Json::array();
        for (auto x : f.center_digits) digits.push_back(dec(static_cast<long>(x)));
        Json fj{{"chart_id", f.chart_id},
                {"center_label", f.disk_label},
                {"center_digits", std::move(digits)},
                {"depth", dec(f.depth)},
                {"reason", to_string(f.reason)},
                {"detail", f.detail}};
        if (f.root_count) fj["root_count"] = dec(*f.root_count);
        failures.push_back(std::move(fj));
    }
    return Json{{"status", to_string(r.status)},
                {"M", dec(r.M)},
                {"disks", std::move(disks)},
                {"failures", std::move(failures)}};
}

inline SeparationStatus parse_status(const std::string& s) {
    if (s == "Separated") return SeparationStatus::kSeparated;
    if (s == "PrecisionExhausted") return SeparationStatus::kPrecisionExhausted;
    if (s == "MultipleRootSuspected") return SeparationStatus::kMultipleRootSuspected;
    throw DomainError("unknown separation status '" + s + "'");
}

inline SeparationReport separation_report_from_json(const Json& j) {
    SeparationReport r;
    r.status = parse_status(require(j, "status", "separation").get<std::string>());
    r.M = get_long(j, "M", "separation");
    const Json& disks = require(j, "disks", "separation");
    for (std::size_t i = 0; i < disks.size(); ++i) {
        const std::string path = "separation.disks[" + std::to_string(i) + "]";
        const Json& d = disks[i];
        ZeroDisk z;
        z.chart_id = require(d, "chart_id", path).get<std::string>();
        z.disk_label = require(d, "center_label", path).get<std::string>();
        for (const auto& x : require(d, "center_digits", path)) z.center_digits.push_back(to_ulong(x, path));
        z.depth = get_long(d, "depth", path);
        z.zero_count = static_cast<int>(get_long(d, "zero_count", path));
        z.multiplicity_flag = require(d, "multiplicity_flag", path).get<bool>();
        if (d.contains("root")) {
            z.root = to_bigint(d["root"], path_join(path, "root"));
            const Json& rp = require(d, "root_precision", path);
            z.root_precision = rp.is_string() && rp.get<std::string>() == "exact" ? PadicNumber::kInfinity
                                                                                 : to_long(rp, path);
        }
        if (z.zero_count < 0 || z.zero_count > 1) throw DomainError("'" + path + ".zero_count' must be 0 or 1");
        if (z.depth < 1) throw DomainError("'" + path + ".depth' must be >= 1");
        r.disks.push_back(std::move(z));
    }
    for (const auto& f : require(j, "failures", "separation")) {
        FailedClass fc;
        fc.chart_id = require(f, "chart_id", "separation.failures").get<std::string>();
        fc.disk_label = require(f, "center_label", "separation.failures").get<std::string>();
        for (const auto& x : require(f, "center_digits", "separation.failures"))
            fc.center_digits.push_back(to_ulong(x, "separation.failures"));
        fc.depth = get_long(f, "depth", "separation.failures");
        fc.reason = parse_status(require(f, "reason", "separation.failures").get<std::string>());
        fc.detail = require(f, "detail", "separation.failures").get<std::string>();
        if (f.contains("root_count")) fc.root_count = get_long(f, "root_count", "separation.failures");
        r.failures.push_back(std::move(fc));
    }
    return r;
}

// ---- bounds --------------------------------------------------------------

inline Json to_json(const BoundTable& t, std::optional<long> last_row = std::nullopt) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        if (last_row && r.n > *last_row) break;
        rows.push_back(Json{{"n", dec(r.n)}, {"selmer_ub", dec(r.selmer_ub)}, {"derham_lb", dec(r.derham_lb)}});
    }
    Json out{{"mode", to_string(t.mode)}, {"n_cap", dec(t.n_cap)}};
    out["t"] = t.halting_level ? Json(dec(*t.halting_level)) : Json(nullptr);
    out["rows"] = std::move(rows);
    return out;
}

inline std::string to_csv(const BoundTable& t, std::optional<long> last_row = std::nullopt) {
    std::string out = "n,selmer_ub,derham_lb\n";
    for (const auto& r : t.rows) {
        if (last_row && r.n > *last_row) break;
        out += std::to_string(r.n) + "," + to_decimal(r.selmer_ub) + "," + to_decimal(r.derham_lb) + "\n";
    }
    return out;
}

// ---- curve and jacobian --------------------------------------------------

inline Json to_json(const CurveParams& c) {
    Json out{{"g", dec(c.g.value())}, {"p", dec(static_cast<long>(c.p))}, {"mw_rank", dec(c.mw_rank)},
             {"bad_prime_count", dec(c.bad_prime_count)}};
    if (c.bad_primes) {
        Json s = Json::array();
        for (const auto& q : *c.bad_primes) s.push_back(dec(q));
        out["bad_primes"] = std::move(s);
    }
    return out;
}

inline CurveParams curve_from_json(const Json& j, const std::string& path) {
    CurveParams c;
    c.g = Genus(get_long(j, "g", path));
    c.p = to_ulong(require(j, "p", path), path_join(path, "p"));
    c.mw_rank = j.contains("mw_rank") ? get_long(j, "mw_rank", path) : 0;
    if (j.contains("bad_primes")) {
        std::set<BigInt> s;
        for (const auto& q : j["bad_primes"]) s.insert(to_bigint(q, path_join(path, "bad_primes")));
        c.bad_primes = std::move(s);
        c.bad_prime_count = j.contains("bad_prime_count") ? get_long(j, "bad_prime_count", path)
                                                          : static_cast<long>(c.bad_primes->size());
    } else {
        c.bad_prime_count = get_long(j, "bad_prime_count", path);
    }
    c.validate();
    return c;
}

inline Json to_json(const JacobianLocalData& d) {
    return Json{{"p", dec(static_cast<long>(d.p))}, {"g", dec(d.g)}, {"count_fp", dec(d.count_fp)}};
}

inline JacobianLocalData jacobian_from_json(const Json& j, const std::string& path,
                                            std::optional<unsigned long> default_p = std::nullopt,
                                            std::optional<long> default_g = std::nullopt) {
    JacobianLocalData d;
    if (j.contains("p")) d.p = to_ulong(j["p"], path_join(path, "p"));
    else if (default_p) d.p = *default_p;
    else throw DomainError("missing field '" + path_join(path, "p") + "'");
    if (j.contains("g")) d.g = get_long(j, "g", path);
    else if (default_g) d.g = *default_g;
    else throw DomainError("missing field '" + path_join(path, "g") + "'");
    if (j.contains("count_fp")) {
        d.count_fp = to_bigint(j["count_fp"], path_join(path, "count_fp"));
    } else if (j.contains("l_poly")) {
        std::vector<BigInt> coeffs;
        for (const auto& c : j["l_poly"]) coeffs.push_back(to_bigint(c, path_join(path, "l_poly")));
        d.count_fp = count_from_l_polynomial(coeffs, d.p, d.g);
    } else {
        throw DomainError("missing field '" + path_join(path, "count_fp") + "' (or '" + path_join(path, "l_poly") +
                          "')");
    }
    d.validate();
    return d;
}

// ---- iterated integrals --------------------------------------------------

inline Word word_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw DomainError("'" + path + "' must be an array of letters");
    Word w;
    for (const auto& x : j) {
        const long l = to_long(x, path);
        if (l < 1) throw DomainError("'" + path + "' letters must be >= 1");
        w.letters.push_back(static_cast<unsigned>(l));
    }
    return w;
}

inline Json to_json(const Word& w) {
    Json out = Json::array();
    for (auto l : w.letters) out.push_back(l);
    return out;
}

inline FormSystem forms_from_json(const Json& j, unsigned long p, const std::string& path) {
    if (!j.is_array() || j.empty()) throw DomainError("'" + path + "' must be a non-empty array of forms");
    std::vector<PadicSeries> forms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string fp = path + "[" + std::to_string(i) + "]";
        if (j[i].contains("min_degree")) FormSystem::require_regular(get_long(j[i], "min_degree", fp), i);
        forms.push_back(series_from_json(j[i], p, fp));
    }
    return FormSystem(std::move(forms));
}

inline Observable observable_from_json(const Json& j, unsigned long p, const std::string& path) {
    if (!j.is_array()) throw DomainError("'" + path + "' must be an array of terms");
    Observable obs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string tp = path + "[" + std::to_string(i) + "]";
        obs.add(word_from_json(require(j[i], "word", tp), path_join(tp, "word")),
                padic_from_json(require(j[i], "coeff", tp), p, path_join(tp, "coeff")));
    }
    return obs;
}

// ---- two-sided search fixtures -------------------------------------------

struct DescentFixture {
    std::string name;
    std::vector<std::set<std::string>> lower;
    std::vector<std::set<std::string>> upper;
    Schedule schedule;
    DescentCaps caps;
};

inline std::vector<std::set<std::string>> levels_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw DomainError("'" + path + "' must be a non-empty array of level sets");
    std::vector<std::set<std::string>> out;
    for (const auto& level : j) {
        std::set<std::string> s;
        for (const auto& id : level) s.insert(id.is_string() ? id.get<std::string>() : id.dump());
        out.push_back(std::move(s));
    }
    return out;
}

inline DescentFixture descent_fixture_from_json(const Json& j, const std::string& path = "fixture") {
    DescentFixture f;
    f.name = j.contains("name") ? j["name"].get<std::string>() : std::string();
    f.lower = levels_from_json(require(j, "lower", path), path_join(path, "lower"));
    f.upper = levels_from_json(require(j, "upper", path), path_join(path, "upper"));
    if (j.contains("schedule")) f.schedule = Schedule::parse(j["schedule"].get<std::string>());
    if (j.contains("caps")) {
        f.caps.n_cap = get_long(j["caps"], "n", path_join(path, "caps"));
        f.caps.m_cap = get_long(j["caps"], "m", path_join(path, "caps"));
    }
    return f;
}

inline Json to_json(const DescentOutcome<std::string>& o) {
    auto set_json = [](const std::set<std::string>& s) {
        Json a = Json::array();
        for (const auto& x : s) a.push_back(x);
        return a;
    };
    Json path = Json::array();
    for (const auto& [n, m] : o.path) path.push_back(Json::array({dec(n), dec(m)}));
    if (const auto* c = std::get_if<Converged<std::string>>(&o.result)) {
        return Json{{"result", "Converged"}, {"points", set_json(c->points)}, {"n", dec(c->n)}, {"m", dec(c->m)},
                    {"path", std::move(path)}};
    }
    const auto& x = std::get<CapExceeded<std::string>>(o.result);
    return Json{{"result", "CapExceeded"}, {"n_cap", dec(x.n_cap)}, {"m_cap", dec(x.m_cap)},
                {"lower_last", set_json(x.lower_last)}, {"upper_last", set_json(x.upper_last)},
                {"path", std::move(path)}};
}

}  // namespace nadescent::json_io
