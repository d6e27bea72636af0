#pragma once

// End-to-end driver: halting level t -> separation modulus M -> group order
// N -> prime set T0, plus table renderers shared by the CLI subcommands.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nadescent/descent_arith.hpp"
#include "nadescent/errors.hpp"
#include "nadescent/json_io.hpp"
#include "nadescent/selmer_bounds.hpp"
#include "nadescent/zero_isolation.hpp"

namespace nadescent {

enum class OutputFormat { kJson, kCsv, kTable };

inline std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::kJson: return "json";
        case OutputFormat::kCsv: return "csv";
        case OutputFormat::kTable: return "table";
    }
    return "?";
}

inline OutputFormat parse_output_format(const std::string& s) {
    if (s == "json" || s == "JSON") return OutputFormat::kJson;
    if (s == "csv" || s == "CSV") return OutputFormat::kCsv;
    if (s == "table" || s == "PlainTable") return OutputFormat::kTable;
    throw DomainError("unknown output format '" + s + "' (expected json, csv or table)");
}

struct PipelineConfig {
    CurveParams curve;
    ParityMode mode = ParityMode::kFaithful;
    long n_cap = 64;
    std::optional<std::vector<Chart>> charts;
    std::optional<JacobianLocalData> jacobian;
    long depth_cap = kDefaultDepthCap;
    OutputFormat output = OutputFormat::kJson;
};

inline PipelineConfig config_from_json(const json_io::Json& j) {
    using namespace json_io;
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    PipelineConfig c;
    c.curve = curve_from_json(require(j, "curve", ""), "curve");
    if (j.contains("mode")) c.mode = parse_parity_mode(j["mode"].get<std::string>());
    if (j.contains("n_cap")) c.n_cap = get_long(j, "n_cap", "");
    if (j.contains("depth_cap")) c.depth_cap = get_long(j, "depth_cap", "");
    if (j.contains("output")) c.output = parse_output_format(j["output"].get<std::string>());
    if (c.n_cap < 2) throw DomainError("'n_cap' must be >= 2");
    if (c.depth_cap < 1) throw DomainError("'depth_cap' must be >= 1");
    if (j.contains("charts")) c.charts = charts_from_json(j["charts"], "charts");
    if (j.contains("jacobian"))
        c.jacobian = jacobian_from_json(j["jacobian"], "jacobian", c.curve.p, c.curve.g.value());
    return c;
}

// Canonical form: every integer as a decimal string, optional parts only
// when present. Parsing the result gives back the same configuration.
inline json_io::Json config_to_json(const PipelineConfig& c) {
    using json_io::Json;
    Json out{{"curve", json_io::to_json(c.curve)},
             {"mode", to_string(c.mode)},
             {"n_cap", json_io::dec(c.n_cap)},
             {"depth_cap", json_io::dec(c.depth_cap)},
             {"output", to_string(c.output)}};
    if (c.charts) out["charts"] = json_io::charts_to_json(*c.charts);
    if (c.jacobian) out["jacobian"] = json_io::to_json(*c.jacobian);
    return out;
}

struct PipelineReport {
    PipelineConfig config;
    BoundTable halting;
    long t = 0;
    SeparationReport separation;
    BigInt N;
    std::map<BigInt, unsigned> N_factors;
    std::set<BigInt> T0;
    std::vector<std::string> warnings;
};

namespace detail {

template <class F>
auto run_stage(const std::string& stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const Error& e) {
        throw Error(e.exit_code(), "[" + stage + "] " + e.what());
    }
}

}  // namespace detail

inline PipelineReport run_report(const PipelineConfig& cfg, unsigned threads = 1,
                                 const FactorizationOptions& factor_opts = {}) {
    if (!cfg.charts) throw DomainError("[input] missing field 'charts'");
    if (!cfg.jacobian) throw DomainError("[input] missing field 'jacobian'");
    if (!cfg.curve.bad_primes) throw DomainError("[input] missing field 'curve.bad_primes'");
    if (cfg.jacobian->p != cfg.curve.p) throw DomainError("[input] 'jacobian.p' differs from 'curve.p'");
    for (const auto& ch : *cfg.charts) {
        if (ch.p != cfg.curve.p)
            throw DomainError("[input] chart '" + ch.chart_id + "' uses p = " + std::to_string(ch.p) +
                              ", curve has p = " + std::to_string(cfg.curve.p));
    }

    PipelineReport r;
    r.config = cfg;
    r.halting = detail::run_stage("halting", [&] {
        BoundTable t = halting_level(cfg.curve, cfg.n_cap, cfg.mode);
        if (!t.halting_level) throw NotFoundWithin(cfg.n_cap);
        return t;
    });
    r.t = *r.halting.halting_level;
    r.separation = detail::run_stage("separation", [&] {
        SeparationReport s = separation_modulus(*cfg.charts, cfg.depth_cap, threads);
        if (s.status != SeparationStatus::kSeparated)
            throw SeparationFailed(to_string(s.status) + " in " + std::to_string(s.failures.size()) +
                                   " residue class(es)");
        return s;
    });
    r.N = detail::run_stage("order", [&] { return annihilator_N(*cfg.jacobian, r.separation.M); });
    r.warnings = weil_bound_warnings(*cfg.jacobian);
    r.N_factors = detail::run_stage("primes", [&] { return factorize(r.N, factor_opts); });
    r.T0 = *cfg.curve.bad_primes;
    for (const auto& [q, e] : r.N_factors) r.T0.insert(q);
    return r;
}

inline json_io::Json set_to_json(const std::set<BigInt>& s) {
    json_io::Json a = json_io::Json::array();
    for (const auto& x : s) a.push_back(to_decimal(x));
    return a;
}

inline json_io::Json report_to_json(const PipelineReport& r) {
    using json_io::Json;
    using json_io::dec;
    Json factors = Json::array();
    for (const auto& [q, e] : r.N_factors) factors.push_back(Json{{"prime", dec(q)}, {"exponent", dec(long(e))}});
    Json warnings = Json::array();
    for (const auto& w : r.warnings) warnings.push_back(w);
    return Json{{"config", config_to_json(r.config)},
                {"halting", json_io::to_json(r.halting, r.t)},
                {"separation", json_io::to_json(r.separation, *r.config.charts)},
                {"descent", Json{{"M", dec(r.separation.M)},
                                 {"N", dec(r.N)},
                                 {"N_factors", std::move(factors)},
                                 {"T0", set_to_json(r.T0)},
                                 {"warnings", std::move(warnings)}}},
                {"summary", Json{{"t", dec(r.t)}, {"M", dec(r.separation.M)}, {"N", dec(r.N)}, {"T0", set_to_json(r.T0)}}}};
}

// ---- plain renderers -----------------------------------------------------

using TextTable = std::vector<std::vector<std::string>>;  // first row is the header

inline std::string render_csv(const TextTable& t) {
    std::string out;
    for (const auto& row : t) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
        out += '\n';
    }
    return out;
}

inline std::string render_plain(const TextTable& t) {
    std::vector<std::size_t> width;
    for (const auto& row : t) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : t) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += std::string(width[i] - row[i].size(), ' ') + row[i];
        }
        out += line + '\n';
    }
    return out;
}

inline std::string render(const TextTable& t, OutputFormat f) {
    return f == OutputFormat::kCsv ? render_csv(t) : render_plain(t);
}

inline TextTable bounds_text(const BoundTable& b, std::optional<long> last_row = std::nullopt) {
    TextTable t{{"n", "selmer_ub", "derham_lb"}};
    for (const auto& r : b.rows) {
        if (last_row && r.n > *last_row) break;
        t.push_back({std::to_string(r.n), to_decimal(r.selmer_ub), to_decimal(r.derham_lb)});
    }
    return t;
}

inline TextTable separation_text(const SeparationReport& s, const std::vector<Chart>& charts) {
    TextTable t{{"chart_id", "center_label", "center", "depth", "zero_count", "multiplicity_flag", "root"}};
    for (const auto& d : s.disks) {
        unsigned long p = 0;
        for (const auto& c : charts)
            if (c.chart_id == d.chart_id) p = c.p;
        t.push_back({d.chart_id, d.disk_label, to_decimal(d.center(p)), std::to_string(d.depth),
                     std::to_string(d.zero_count), d.multiplicity_flag ? "true" : "false",
                     d.root ? to_decimal(*d.root) : ""});
    }
    for (const auto& f : s.failures) {
        BigInt c = 0, scale = 1;
        unsigned long p = 0;
        for (const auto& ch : charts)
            if (ch.chart_id == f.chart_id) p = ch.p;
        for (auto x : f.center_digits) {
            c += scale * x;
            scale *= p;
        }
        t.push_back({f.chart_id, f.disk_label, to_decimal(c), std::to_string(f.depth),
                     f.root_count ? std::to_string(*f.root_count) : "?", to_string(f.reason), ""});
    }
    return t;
}

inline std::string join(const std::set<BigInt>& s, const std::string& sep) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : sep) + to_decimal(x);
    return out;
}

inline TextTable summary_text(const PipelineReport& r) {
    return {{"key", "value"},
            {"t", std::to_string(r.t)},
            {"M", std::to_string(r.separation.M)},
            {"N", to_decimal(r.N)},
            {"T0", join(r.T0, " ")}};
}

}  // namespace nadescent
