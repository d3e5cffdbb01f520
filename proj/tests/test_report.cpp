#include "fbmono/report.hpp"
#include "fbmono/shapes.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <limits>

using namespace fbmono;
using nlohmann::json;

TEST(Report, DocumentSchema)
{
    JsonReport r("disk.off");
    r.add("scalar", 1.5);
    r.add("label", std::string("x"));
    r.add_verdict({"check", true, 1.0, 1.0, 1e-3});
    const json doc = json::parse(r.dump());
    ASSERT_TRUE(doc.is_object());
    EXPECT_EQ(doc.at("tool_version"), kToolVersion);
    EXPECT_TRUE(doc.at("timestamp").is_string());
    EXPECT_EQ(doc.at("input"), "disk.off");
    EXPECT_EQ(doc.at("results").at("scalar"), 1.5);
    EXPECT_EQ(doc.at("results").at("label"), "x");
    ASSERT_EQ(doc.at("verdicts").size(), 1u);
    EXPECT_EQ(doc.at("verdicts")[0].at("name"), "check");
    EXPECT_TRUE(doc.at("verdicts")[0].at("pass").get<bool>());
    EXPECT_TRUE(r.all_pass());
}

TEST(Report, ReproducibleDumpHasNoTimestamp)
{
    auto build = [] {
        JsonReport r("c.json");
        r.add("energy", curve_energy(make_circle(1.0, 32), {2.0}));
        r.add("third", 1.0 / 3.0);
        return r.dump(false);
    };
    const std::string a = build();
    EXPECT_EQ(a, build());
    const json doc = json::parse(a);
    EXPECT_TRUE(doc.at("timestamp").is_null());
    EXPECT_EQ(doc.at("results").at("third").get<double>(), 1.0 / 3.0);
    EXPECT_TRUE(doc.at("results").at("energy").at("normalized_ep").contains("2"));
}

TEST(Report, NonFiniteBecomesNull)
{
    JsonReport r("x");
    r.add("inf", std::numeric_limits<double>::infinity());
    r.add_verdict({"bad", false, std::nan(""), 0.0, 0.0});
    const json doc = json::parse(r.dump(false));
    EXPECT_TRUE(doc.at("results").at("inf").is_null());
    EXPECT_TRUE(doc.at("verdicts")[0].at("measured").is_null());
    EXPECT_FALSE(r.all_pass());
}

TEST(Report, CsvHeaders)
{
    RadialProfile p;
    p.records.push_back({0.5, 1.0, 2.0, 3.0, 0.0, 0.0});
    const std::string csv = profile_csv(p);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,g,g_hat,sum,lhs_residual,rhs_diff");
    EXPECT_NE(csv.find("0.5,1,2,3,0,0"), std::string::npos);

    OptimizerTrace t;
    t.objective = {7.0, 6.5};
    t.grad_norm = {1.0, 0.5};
    t.length = {6.0, 6.0};
    const std::string tc = trace_csv(t);
    EXPECT_EQ(tc.substr(0, tc.find('\n')), "iter,objective,grad_norm,length");
    EXPECT_EQ(std::count(tc.begin(), tc.end(), '\n'), 3);
}
