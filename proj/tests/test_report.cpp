#include <bowl/error.hpp>
#include <bowl/report.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

using bowl::Rational;

namespace {

// Minimal RFC 4180 reader for checking the emitters.
std::vector<std::vector<std::string>> read_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') field += text[++i];
            else if (c == '"') quoted = false;
            else field += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else {
            field += c;
        }
    }
    return rows;
}

bowl::SweepReport sample_report() {
    bowl::SweepReport report;
    report.mode = bowl::UnbalanceMode::Deviation;
    report.rows = {{"inst,1", "BN", "bimodal", 5, "", Rational(97, 100), 812.5, 801.125, 1.5e-7, true},
                   {"b\"2", "", "bottom-peak", 7, "low", Rational(1, 3), 0.1, 0.30000000000000004, 1.0, false}};
    report.aggregates = bowl::aggregate_rows(report.rows);
    report.curves = {{"inst,1", Rational(1), 812.5, 3.25, Rational(44)}, {"inst,1", Rational(97, 100), 801.125, 2.0, Rational(93, 2)}};
    report.failures = {{"bad", "precedence relation has a cycle"}};
    return report;
}

} // namespace

TEST(RowsCsv, EmptyReportIsHeaderOnly) {
    EXPECT_EQ(bowl::emit_report(bowl::SweepReport{}, bowl::ReportFormat::Csv),
              "instance,group_graph,group_timedist,group_stations,best_param,balanced_mean,best_mean,p_value,"
              "bowl_observed\n");
    EXPECT_EQ(bowl::emit_aggregates_csv(bowl::SweepReport{}), "group,instances,bowl_fraction,param_mean\n");
}

TEST(RowsCsv, OneRowRoundTripsThroughParser) {
    bowl::SweepReport report;
    report.rows = {{"x", "CH", "bimodal", 5, "", Rational(98, 100), 10.5, 9.25, 0.0123, true}};
    const auto csv = bowl::emit_rows_csv(report);
    const auto parsed = read_csv(csv);
    ASSERT_EQ(parsed.size(), 2u);
    EXPECT_EQ(parsed[1], (std::vector<std::string>{"x", "CH", "bimodal", "5", "0.98", "10.5", "9.25", "0.0123", "true"}));
}

TEST(RowsCsv, QuotesAwkwardIds) {
    const auto parsed = read_csv(bowl::emit_rows_csv(sample_report()));
    ASSERT_EQ(parsed.size(), 3u);
    EXPECT_EQ(parsed[1][0], "inst,1");
    EXPECT_EQ(parsed[2][0], "b\"2");
    EXPECT_EQ(parsed[2][4], "1/3");
    EXPECT_EQ(std::stod(parsed[2][6]), 0.30000000000000004);
}

TEST(AggregatesCsv, BlankParamMeanWhenNothingObserved) {
    bowl::SweepReport report;
    report.rows = {{"x", "", "", 5, "", Rational(1), 1, 1, 1, false}};
    report.aggregates = bowl::aggregate_rows(report.rows);
    EXPECT_EQ(bowl::emit_aggregates_csv(report), "group,instances,bowl_fraction,param_mean\nall,1,0,\nstations=5,1,0,\n");
}

TEST(ReportJson, RoundTrip) {
    const auto report = sample_report();
    const auto text = bowl::emit_report(report, bowl::ReportFormat::Json);
    EXPECT_EQ(bowl::parse_report_json(text), report);
    EXPECT_EQ(bowl::emit_report_json(bowl::parse_report_json(text)), text);
    EXPECT_EQ(bowl::parse_report_json(bowl::emit_report_json(bowl::SweepReport{})), bowl::SweepReport{});
}

TEST(ReportJson, Malformed) {
    EXPECT_THROW(bowl::parse_report_json("{"), bowl::InputError);
    EXPECT_THROW(bowl::parse_report_json("{\"mode\":\"x\",\"problem\":\"salbp\",\"rows\":[],\"aggregates\":[]}"),
                 bowl::InputError);
    EXPECT_THROW(bowl::parse_report_json("{\"mode\":\"mean-unbalance\"}"), bowl::InputError);
}

TEST(FormatDouble, ShortestRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 812.5, 1e-300, 123456789.125, -0.0, 5e-324})
        EXPECT_EQ(std::strtod(bowl::format_double(v).c_str(), nullptr), v);
    EXPECT_EQ(bowl::format_double(0.5), "0.5");
    EXPECT_EQ(bowl::format_double(13.0), "13");
}

TEST(ConfigurationJson, RoundTrip) {
    bowl::ConfigurationDocument doc;
    doc.configuration.station_tasks = {{1, 2}, {3}, {}};
    doc.configuration.station_worker = std::vector<int>{2, 3, 1};
    doc.configuration.cycle_time = Rational(15, 2);
    doc.configuration.station_loads = {Rational(7), Rational(15, 2), Rational(0)};
    doc.task_times = {{Rational(3), Rational(4)}, {Rational(15, 2)}, {}};
    EXPECT_EQ(bowl::parse_configuration_json(bowl::configuration_to_json(doc)), doc);
}

TEST(ConfigurationJson, MinimalDocumentUsesLoads) {
    const auto doc = bowl::parse_configuration_json(
        R"({"stations": [[1], [2, 3]], "worker": null, "cycle_time": 5, "loads": [2.5, 5]})");
    EXPECT_EQ(doc.configuration.cycle_time, Rational(5));
    EXPECT_EQ(doc.task_times, (std::vector<std::vector<Rational>>{{Rational(5, 2)}, {Rational(5)}}));
    EXPECT_FALSE(doc.configuration.station_worker);
}

TEST(ConfigurationJson, Rejections) {
    EXPECT_THROW(bowl::parse_configuration_json("[]"), bowl::InputError);
    EXPECT_THROW(bowl::parse_configuration_json(R"({"stations": [[1]], "cycle_time": 1, "loads": [1, 2]})"),
                 bowl::InputError);
    EXPECT_THROW(bowl::parse_configuration_json(
                     R"({"stations": [[1]], "cycle_time": 1, "loads": [1], "task_times": [["1", "2"]]})"),
                 bowl::InputError);
    EXPECT_THROW(bowl::parse_configuration_json(
                     R"({"stations": [[1]], "cycle_time": 1, "loads": [1], "task_times": [["-1"]]})"),
                 bowl::InputError);
}

TEST(SummaryJson, ContainsMetrics) {
    bowl::SimulationSummary s;
    s.replications = 2;
    s.metrics = {1.5, 2.5};
    s.mean = 2;
    s.stddev = std::sqrt(0.5);
    const auto text = bowl::summary_to_json(s);
    EXPECT_NE(text.find("\"metrics\""), std::string::npos);
    EXPECT_NE(text.find("\"standard_error\": 0.5"), std::string::npos);
}
