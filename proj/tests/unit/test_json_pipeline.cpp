#include <gtest/gtest.h>

#include <fstream>

#include "nadescent/nadescent.hpp"

using namespace nadescent;
using json_io::Json;

namespace {

Json load(const std::string& name) {
    std::ifstream in(std::string(NADESCENT_FIXTURES) + "/" + name);
    return Json::parse(in);
}

ExitCode exit_code_of(const std::function<void()>& f, std::string* message = nullptr) {
    try {
        f();
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.exit_code();
    }
    return ExitCode::kOk;
}

}  // namespace

TEST(JsonIo, PadicRoundTrip) {
    for (const PadicNumber& x : {PadicNumber::exact_zero(7), PadicNumber::zero_to(7, 3),
                                 PadicNumber::from_unit(7, -2, 12, 5), PadicNumber::from_integer(7, -49, 8)}) {
        EXPECT_EQ(json_io::padic_from_json(json_io::to_json(x), 7, "x"), x);
    }
    EXPECT_EQ(json_io::padic_from_json(Json::parse(R"({"val": 1, "unit": "3", "prec": 4})"), 5, "x"),
              PadicNumber::from_unit(5, 1, 3, 4));
    EXPECT_THROW(json_io::padic_from_json(Json::parse(R"({"val": "0", "unit": "10", "prec": "2"})"), 5, "x"),
                 DomainError);
    EXPECT_THROW(json_io::padic_from_json(Json::parse(R"({"val": "0", "unit": "1.5", "prec": "2"})"), 5, "x"),
                 DomainError);
    EXPECT_THROW(json_io::padic_from_json(Json::parse(R"({"unit": "1", "prec": "2"})"), 5, "x"), DomainError);
}

TEST(JsonIo, SeriesPaddingAndPoles) {
    const Json disk = Json::parse(R"({"coeffs": [{"int": "3", "prec": "5"}], "trunc": "4", "weierstrass_bound": "1"})");
    const PadicSeries s = json_io::series_from_json(disk, 5, "d");
    EXPECT_EQ(s.truncation(), 4);
    EXPECT_TRUE(s[4].is_exact_zero());
    Json pole = disk;
    pole["min_degree"] = "-1";
    EXPECT_THROW(json_io::series_from_json(pole, 5, "d"), DomainError);
    Json too_long = disk;
    too_long["trunc"] = "0";
    too_long["coeffs"].push_back(too_long["coeffs"][0]);
    EXPECT_THROW(json_io::series_from_json(too_long, 5, "d"), DomainError);
}

TEST(Pipeline, SyntheticGenusTwoReport) {
    const PipelineConfig cfg = config_from_json(load("genus2_report.json"));
    const PipelineReport r = run_report(cfg, 1);
    EXPECT_EQ(r.t, 2);
    EXPECT_EQ(r.separation.M, 2);
    EXPECT_EQ(r.N, 30 * 25);
    EXPECT_EQ(r.T0, (std::set<BigInt>{2, 3, 5, 11}));
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Pipeline, ReportRoundTrips) {
    const PipelineConfig cfg = config_from_json(load("genus2_report.json"));
    const Json doc = report_to_json(run_report(cfg, 1));
    // The embedded config re-validates and is already canonical.
    const PipelineConfig again = config_from_json(doc["config"]);
    EXPECT_EQ(config_to_json(again).dump(), doc["config"].dump());
    // The separation section parses back to the same report.
    const SeparationReport sep = json_io::separation_report_from_json(doc["separation"]);
    EXPECT_EQ(json_io::to_json(sep, *again.charts).dump(), doc["separation"].dump());
    // Same inputs, same bytes; thread count does not matter.
    EXPECT_EQ(report_to_json(run_report(again, 4)).dump(), doc.dump());
}

TEST(Pipeline, StageErrors) {
    std::string msg;
    Json j = load("genus2_report.json");
    j.erase("jacobian");
    EXPECT_EQ(exit_code_of([&] { run_report(config_from_json(j)); }, &msg), ExitCode::kInput);
    EXPECT_NE(msg.find("'jacobian'"), std::string::npos);

    j = load("genus2_report.json");
    j["jacobian"].erase("count_fp");
    EXPECT_EQ(exit_code_of([&] { config_from_json(j); }, &msg), ExitCode::kInput);
    EXPECT_NE(msg.find("jacobian.count_fp"), std::string::npos);

    j = load("genus2_report.json");
    j["curve"]["mw_rank"] = "5";
    j["n_cap"] = "6";
    EXPECT_EQ(exit_code_of([&] { run_report(config_from_json(j)); }, &msg), ExitCode::kBoundSearchExhausted);
    EXPECT_EQ(msg.rfind("[halting]", 0), 0u);

    j = load("genus2_report.json");
    j["charts"] = load("separate_double.json")["charts"];
    EXPECT_EQ(exit_code_of([&] { run_report(config_from_json(j)); }, &msg), ExitCode::kSeparationFailure);
    EXPECT_EQ(msg.rfind("[separation]", 0), 0u);

    j = load("genus2_report.json");
    j["curve"]["g"] = "1";
    EXPECT_EQ(exit_code_of([&] { config_from_json(j); }), ExitCode::kInput);
}

TEST(Pipeline, SeparationFixtures) {
    auto run = [](const std::string& name) {
        const Json j = load(name);
        return separation_modulus(json_io::charts_from_json(j["charts"], "charts"));
    };
    const SeparationReport simple = run("separate_simple.json");
    EXPECT_EQ(simple.status, SeparationStatus::kSeparated);
    EXPECT_EQ(simple.M, 1);
    const SeparationReport pair = run("separate_close_pair.json");
    EXPECT_EQ(pair.status, SeparationStatus::kSeparated);
    EXPECT_EQ(pair.M, 2);
    EXPECT_EQ(run("separate_double.json").status, SeparationStatus::kMultipleRootSuspected);
}

TEST(Pipeline, Renderers) {
    const TextTable t{{"a", "bb"}, {"100", "2"}};
    EXPECT_EQ(render_csv(t), "a,bb\n100,2\n");
    EXPECT_EQ(render_plain(t), "  a  bb\n100   2\n");
    EXPECT_EQ(parse_output_format("csv"), OutputFormat::kCsv);
    EXPECT_THROW(parse_output_format("xml"), DomainError);
}
