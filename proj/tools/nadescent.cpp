// nadescent: command-line front end.
//
//   dims         graded dimensions L_n, r_n, dim U_n
//   bounds       Selmer upper / de Rham lower bound table
//   halt         halting level t (optionally per mode, or swept over rank)
//   separate     zero isolation over chart data, separation modulus M
//   integrate    iterated integrals and shuffle observables on one disk
//   order        #J(Z/p^M), N and the enlarged prime set
//   descent-sim  two-sided search on tabulated level sets
//   report       t -> M -> N -> T0 in one document
//
// Exit codes: 0 ok, 2 input, 3 search exhausted, 4 separation failure,
// 5 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nadescent/nadescent.hpp"

namespace nd = nadescent;
using nd::json_io::Json;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string format = "json";
    unsigned threads = 1;
    std::optional<long> depth_cap;
    std::optional<long> n_cap;
};

struct CurveFlags {
    std::optional<std::string> g, p, rank, bad_prime_count, bad_primes, mode;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nd::DomainError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw nd::DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

long parse_long_flag(const std::string& s, const std::string& flag) {
    const nd::BigInt v = nd::json_io::to_bigint(Json(s), flag);
    if (!v.fits_slong_p()) throw nd::DomainError(flag + " is out of range");
    return v.get_si();
}

// Config file (if any) with command-line overrides applied on top.
Json merged_config(const CommonFlags& common, const CurveFlags& curve) {
    Json j = common.config_path.empty() ? Json::object() : read_json_file(common.config_path);
    if (!j.is_object()) throw nd::DomainError("config must be a JSON object");
    Json& c = j["curve"];
    if (c.is_null()) c = Json::object();
    if (curve.g) c["g"] = *curve.g;
    if (curve.p) c["p"] = *curve.p;
    if (curve.rank) c["mw_rank"] = *curve.rank;
    if (curve.bad_primes) {
        Json list = Json::array();
        for (const auto& q : split_list(*curve.bad_primes)) list.push_back(q);
        c["bad_primes"] = list;
        c.erase("bad_prime_count");
    }
    if (curve.bad_prime_count) {
        c["bad_prime_count"] = *curve.bad_prime_count;
        if (!curve.bad_primes) c.erase("bad_primes");
    }
    // The bounds do not depend on p; pick the least prime outside S when
    // none is given.
    if (!c.contains("p")) {
        std::set<nd::BigInt> s;
        if (c.contains("bad_primes"))
            for (const auto& q : c["bad_primes"]) s.insert(nd::json_io::to_bigint(q, "curve.bad_primes"));
        unsigned long p = 2;
        while (s.count(nd::BigInt(p)) || !nd::is_prime(p)) ++p;
        c["p"] = std::to_string(p);
    }
    if (curve.mode && *curve.mode != "both") j["mode"] = *curve.mode;
    if (common.n_cap) j["n_cap"] = std::to_string(*common.n_cap);
    if (common.depth_cap) j["depth_cap"] = std::to_string(*common.depth_cap);
    j["output"] = common.format;
    return j;
}

void add_common(CLI::App* app, CommonFlags& f, bool with_config = true) {
    if (with_config) app->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 256u));
    app->add_option("--depth-cap", f.depth_cap, "maximum subdivision depth");
    app->add_option("--n-cap", f.n_cap, "largest level n searched");
}

void add_curve(CLI::App* app, CurveFlags& f) {
    app->add_option("--g", f.g, "genus");
    app->add_option("--p", f.p, "auxiliary prime of good reduction");
    app->add_option("--rank", f.rank, "Mordell-Weil rank");
    app->add_option("-S,--bad-prime-count", f.bad_prime_count, "number of bad primes");
    app->add_option("--bad-primes", f.bad_primes, "comma-separated bad primes");
    app->add_option("--mode", f.mode, "parity mode")->check(CLI::IsMember({"faithful", "paper-verbatim", "verbatim", "both"}));
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_dims(const std::string& g_str, const std::string& n_str, const std::string& format) {
    const long g = parse_long_flag(g_str, "--g");
    const long n = parse_long_flag(n_str, "--n");
    if (n < 0) throw nd::DomainError("--n must be >= 0");
    const nd::Genus genus(g);
    nd::TextTable t{{"n", "L_n", "r_n", "dim_U_n"}};
    Json rows = Json::array();
    if (n >= 1) {
        const nd::GradedDims dims = nd::graded_dims(genus, n);
        nd::BigInt cum = 0;
        for (long k = 1; k <= n; ++k) {
            cum += dims.r(k);
            // dim U_k sums the graded pieces below k; U_{k+1} is the row's total.
            const std::string u = nd::to_decimal(cum - dims.r(k));
            t.push_back({std::to_string(k), nd::to_decimal(dims.lucas(k)), nd::to_decimal(dims.r(k)), u});
            rows.push_back(Json{{"n", std::to_string(k)},
                                {"L_n", nd::to_decimal(dims.lucas(k))},
                                {"r_n", nd::to_decimal(dims.r(k))},
                                {"dim_U_n", u}});
        }
    }
    if (format == "json") emit(Json{{"g", std::to_string(g)}, {"rows", rows}});
    else std::cout << nd::render(t, nd::parse_output_format(format));
    return 0;
}

int cmd_bounds(const CommonFlags& common, const CurveFlags& curve) {
    const nd::PipelineConfig cfg = nd::config_from_json(merged_config(common, curve));
    const nd::BoundTable b = nd::bound_table(cfg.curve, cfg.n_cap, cfg.mode);
    if (cfg.output == nd::OutputFormat::kJson) {
        Json j = nd::json_io::to_json(b);
        j["curve"] = nd::json_io::to_json(cfg.curve);
        emit(j);
    } else {
        std::cout << nd::render(nd::bounds_text(b), cfg.output);
    }
    return 0;
}

int cmd_halt(const CommonFlags& common, const CurveFlags& curve, const std::string& sweep) {
    const Json base = merged_config(common, curve);
    std::vector<nd::ParityMode> modes;
    if (curve.mode && *curve.mode == "both") modes = {nd::ParityMode::kFaithful, nd::ParityMode::kPaperVerbatim};
    else modes = {nd::config_from_json(base).mode};
    const auto format = nd::parse_output_format(common.format);
    bool exhausted = false;

    if (!sweep.empty()) {
        const auto colon = sweep.find(':');
        if (colon == std::string::npos) throw nd::DomainError("--sweep-rank expects A:B");
        const long lo = parse_long_flag(sweep.substr(0, colon), "--sweep-rank");
        const long hi = parse_long_flag(sweep.substr(colon + 1), "--sweep-rank");
        if (lo < 0 || hi < lo) throw nd::DomainError("--sweep-rank needs 0 <= A <= B");
        nd::TextTable t{{"rank"}};
        for (auto m : modes) t[0].push_back("t_" + nd::to_string(m));
        Json rows = Json::array();
        for (long rank = lo; rank <= hi; ++rank) {
            Json cj = base;
            cj["curve"]["mw_rank"] = std::to_string(rank);
            const nd::PipelineConfig cfg = nd::config_from_json(cj);
            std::vector<std::string> row{std::to_string(rank)};
            Json jr{{"rank", std::to_string(rank)}};
            for (auto m : modes) {
                const nd::BoundTable b = nd::halting_level(cfg.curve, cfg.n_cap, m);
                const std::string tv = b.halting_level ? std::to_string(*b.halting_level) : "";
                row.push_back(tv.empty() ? "none" : tv);
                jr["t_" + nd::to_string(m)] = tv.empty() ? Json(nullptr) : Json(tv);
                exhausted = exhausted || !b.halting_level;
            }
            t.push_back(row);
            rows.push_back(jr);
        }
        if (format == nd::OutputFormat::kJson) emit(Json{{"sweep", rows}});
        else std::cout << nd::render(t, format);
    } else {
        const nd::PipelineConfig cfg = nd::config_from_json(base);
        Json out{{"curve", nd::json_io::to_json(cfg.curve)}};
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const nd::BoundTable b = nd::halting_level(cfg.curve, cfg.n_cap, modes[i]);
            exhausted = exhausted || !b.halting_level;
            if (format == nd::OutputFormat::kJson) {
                out[nd::to_string(modes[i])] = nd::json_io::to_json(b, b.halting_level);
            } else {
                if (modes.size() > 1 && format == nd::OutputFormat::kTable) std::cout << (i ? "\n" : "") << "# " << nd::to_string(modes[i]) << '\n';
                std::cout << nd::render(nd::bounds_text(b, b.halting_level), format);
                if (format == nd::OutputFormat::kTable)
                    std::cout << "t = " << (b.halting_level ? std::to_string(*b.halting_level) : "none") << '\n';
            }
        }
        if (format == nd::OutputFormat::kJson) emit(out);
    }
    if (exhausted) {
        std::cerr << "error: " << nd::NotFoundWithin(nd::config_from_json(base).n_cap).what() << '\n';
        return static_cast<int>(nd::ExitCode::kBoundSearchExhausted);
    }
    return 0;
}

int cmd_separate(const CommonFlags& common) {
    Json j = common.config_path.empty() ? Json::object() : read_json_file(common.config_path);
    if (!j.contains("charts")) throw nd::DomainError("missing field 'charts'");
    const auto charts = nd::json_io::charts_from_json(j["charts"], "charts");
    long depth_cap = nd::kDefaultDepthCap;
    if (j.contains("depth_cap")) depth_cap = nd::json_io::get_long(j, "depth_cap", "");
    if (common.depth_cap) depth_cap = *common.depth_cap;
    const nd::SeparationReport r = nd::separation_modulus(charts, depth_cap, common.threads);
    const auto format = nd::parse_output_format(common.format);
    if (format == nd::OutputFormat::kJson) emit(nd::json_io::to_json(r, charts));
    else std::cout << nd::render(nd::separation_text(r, charts), format);
    if (format == nd::OutputFormat::kTable) std::cout << "M = " << r.M << ", status = " << nd::to_string(r.status) << '\n';
    if (r.status != nd::SeparationStatus::kSeparated) {
        std::cerr << "error: separation failed: " << nd::to_string(r.status) << '\n';
        return static_cast<int>(nd::ExitCode::kSeparationFailure);
    }
    return 0;
}

// Input: {"p", "forms": [series...], "trunc"?, "words"?: [[letters]...],
//         "observable"?: [{"word", "coeff"}...]}
int cmd_integrate(const CommonFlags& common) {
    if (common.config_path.empty()) throw nd::DomainError("integrate needs --config");
    const Json j = read_json_file(common.config_path);
    const unsigned long p = nd::json_io::to_ulong(nd::json_io::require(j, "p", ""), "p");
    if (p < 2 || !nd::is_prime(p)) throw nd::DomainError("'p' must be prime");
    const nd::FormSystem fs = nd::json_io::forms_from_json(nd::json_io::require(j, "forms", ""), p, "forms");
    const long trunc = j.contains("trunc") ? nd::json_io::get_long(j, "trunc", "") : fs.truncation();
    Json out{{"p", std::to_string(p)}, {"trunc", std::to_string(trunc)}};
    nd::TextTable t{{"word", "coefficients"}};
    if (j.contains("words")) {
        Json words = Json::array();
        for (std::size_t i = 0; i < j["words"].size(); ++i) {
            const nd::Word w = nd::json_io::word_from_json(j["words"][i], "words[" + std::to_string(i) + "]");
            const nd::PadicSeries s = nd::iterated_integral(fs, w, trunc);
            words.push_back(Json{{"word", nd::json_io::to_json(w)}, {"series", nd::json_io::series_to_json(s)}});
            t.push_back({w.to_string(), s.to_string()});
        }
        out["words"] = words;
    }
    if (j.contains("observable")) {
        const nd::Observable obs = nd::json_io::observable_from_json(j["observable"], p, "observable");
        const nd::PadicSeries s = nd::evaluate_observable(obs, fs, trunc);
        out["observable"] = nd::json_io::series_to_json(s);
        t.push_back({"observable", s.to_string()});
    }
    const auto format = nd::parse_output_format(common.format);
    if (format == nd::OutputFormat::kJson) emit(out);
    else std::cout << nd::render(t, format);
    return 0;
}

struct OrderFlags {
    std::optional<std::string> p, g, count_fp, l_poly, M, bad_primes;
};

int cmd_order(const CommonFlags& common, const OrderFlags& f) {
    Json jac = Json::object();
    long M = 1;
    std::optional<std::set<nd::BigInt>> s;
    if (!common.config_path.empty()) {
        const Json j = read_json_file(common.config_path);
        if (j.contains("jacobian")) jac = j["jacobian"];
        if (j.contains("M")) M = nd::json_io::get_long(j, "M", "");
        if (j.contains("curve") && j["curve"].contains("bad_primes")) {
            s.emplace();
            for (const auto& q : j["curve"]["bad_primes"]) s->insert(nd::json_io::to_bigint(q, "curve.bad_primes"));
        }
    }
    if (f.p) jac["p"] = *f.p;
    if (f.g) jac["g"] = *f.g;
    if (f.count_fp) {
        jac["count_fp"] = *f.count_fp;
        jac.erase("l_poly");
    }
    if (f.l_poly) {
        Json list = Json::array();
        for (const auto& c : split_list(*f.l_poly)) list.push_back(c);
        jac["l_poly"] = list;
        jac.erase("count_fp");
    }
    if (f.M) M = parse_long_flag(*f.M, "--M");
    if (f.bad_primes) {
        s.emplace();
        for (const auto& q : split_list(*f.bad_primes)) s->insert(nd::parse_decimal(q));
    }
    const nd::JacobianLocalData d = nd::json_io::jacobian_from_json(jac, "jacobian");
    const nd::BigInt order = nd::jacobian_order_mod(d, M);
    const auto factors = nd::factorize(order);
    std::set<nd::BigInt> t0 = s.value_or(std::set<nd::BigInt>{});
    for (const auto& [q, e] : factors) t0.insert(q);
    const auto warnings = nd::weil_bound_warnings(d);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    const auto format = nd::parse_output_format(common.format);
    if (format == nd::OutputFormat::kJson) {
        Json fj = Json::array();
        for (const auto& [q, e] : factors)
            fj.push_back(Json{{"prime", nd::to_decimal(q)}, {"exponent", std::to_string(e)}});
        Json w = Json::array();
        for (const auto& x : warnings) w.push_back(x);
        emit(Json{{"jacobian", nd::json_io::to_json(d)},
                  {"M", std::to_string(M)},
                  {"order", nd::to_decimal(order)},
                  {"N", nd::to_decimal(order)},
                  {"N_factors", fj},
                  {"T0", nd::set_to_json(t0)},
                  {"warnings", w}});
    } else {
        std::cout << nd::render({{"key", "value"},
                                 {"M", std::to_string(M)},
                                 {"order", nd::to_decimal(order)},
                                 {"N", nd::to_decimal(order)},
                                 {"T0", nd::join(t0, " ")}},
                                format);
    }
    return 0;
}

int cmd_descent_sim(const CommonFlags& common, const std::string& fixture_path) {
    const Json j = read_json_file(fixture_path);
    std::vector<nd::json_io::DescentFixture> fixtures;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            fixtures.push_back(nd::json_io::descent_fixture_from_json(j[i], "fixture[" + std::to_string(i) + "]"));
    } else {
        fixtures.push_back(nd::json_io::descent_fixture_from_json(j));
    }
    const auto format = nd::parse_output_format(common.format);
    Json out = Json::array();
    nd::TextTable t{{"fixture", "result", "n", "m", "points"}};
    bool capped = false;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        auto& f = fixtures[i];
        nd::TabulatedLevels<std::string> lower(f.lower), upper(f.upper);
        const auto outcome = nd::run_descent<std::string>(lower, upper, f.schedule, f.caps);
        Json oj = nd::json_io::to_json(outcome);
        const std::string name = f.name.empty() ? std::to_string(i) : f.name;
        oj["fixture"] = name;
        out.push_back(oj);
        if (const auto* c = std::get_if<nd::Converged<std::string>>(&outcome.result)) {
            std::string pts;
            for (const auto& x : c->points) pts += (pts.empty() ? "" : " ") + x;
            t.push_back({name, "Converged", std::to_string(c->n), std::to_string(c->m), pts});
        } else {
            capped = true;
            t.push_back({name, "CapExceeded", "", "", ""});
        }
    }
    if (format == nd::OutputFormat::kJson) emit(j.is_array() ? out : out[0]);
    else std::cout << nd::render(t, format);
    return capped ? static_cast<int>(nd::ExitCode::kBoundSearchExhausted) : 0;
}

int cmd_report(const CommonFlags& common, const CurveFlags& curve) {
    const nd::PipelineConfig cfg = nd::config_from_json(merged_config(common, curve));
    const nd::PipelineReport r = nd::run_report(cfg, common.threads);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    if (cfg.output == nd::OutputFormat::kJson) emit(nd::report_to_json(r));
    else std::cout << nd::render(nd::summary_text(r), cfg.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds, zero separation and descent arithmetic for non-abelian Chabauty"};
    app.require_subcommand(1);

    CommonFlags common;
    CurveFlags curve;

    std::string dims_g, dims_n, dims_format = "table";
    auto* dims = app.add_subcommand("dims", "graded dimensions of the free Lie algebra");
    dims->add_option("--g", dims_g, "genus")->required();
    dims->add_option("--n", dims_n, "largest degree")->required();
    dims->add_option("--format", dims_format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));

    auto* bounds = app.add_subcommand("bounds", "bound table for n = 2..n_cap");
    add_common(bounds, common);
    add_curve(bounds, curve);

    std::string sweep;
    auto* halt = app.add_subcommand("halt", "least n with UB(n) < LB(n)");
    add_common(halt, common);
    add_curve(halt, curve);
    halt->add_option("--sweep-rank", sweep, "rank range A:B");

    auto* separate = app.add_subcommand("separate", "isolate zeros over chart data");
    add_common(separate, common);

    auto* integrate = app.add_subcommand("integrate", "iterated integrals on one disk");
    add_common(integrate, common);

    OrderFlags order_flags;
    auto* order = app.add_subcommand("order", "group order of J(Z/p^M) and the prime set T0");
    add_common(order, common);
    order->add_option("--p", order_flags.p, "prime");
    order->add_option("--g", order_flags.g, "dimension of the Jacobian");
    order->add_option("--count-fp", order_flags.count_fp, "#J(F_p)");
    order->add_option("--l-poly", order_flags.l_poly, "L-polynomial coefficients, increasing degree");
    order->add_option("--M", order_flags.M, "separation modulus");
    order->add_option("--bad-primes", order_flags.bad_primes, "comma-separated bad primes");

    std::string fixture;
    auto* descent = app.add_subcommand("descent-sim", "two-sided search on tabulated level sets");
    add_common(descent, common, false);
    descent->add_option("--fixture", fixture, "fixture JSON")->required()->check(CLI::ExistingFile);

    auto* report = app.add_subcommand("report", "end-to-end t, M, N, T0");
    add_common(report, common);
    add_curve(report, curve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(nd::ExitCode::kInput);
    }

    try {
        if (*dims) return cmd_dims(dims_g, dims_n, dims_format);
        if (*bounds) return cmd_bounds(common, curve);
        if (*halt) return cmd_halt(common, curve, sweep);
        if (*separate) return cmd_separate(common);
        if (*integrate) return cmd_integrate(common);
        if (*order) return cmd_order(common, order_flags);
        if (*descent) return cmd_descent_sim(common, fixture);
        if (*report) return cmd_report(common, curve);
    } catch (const nd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return static_cast<int>(nd::ExitCode::kInput);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(nd::ExitCode::kInternal);
    }
    return static_cast<int>(nd::ExitCode::kInternal);
}
