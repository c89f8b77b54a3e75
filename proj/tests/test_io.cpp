#include "support.hpp"

#include <gtest/gtest.h>

using namespace refuel;
using namespace refuel::testing;

TEST(InstanceIo, RoundTripIsExact) {
    for (std::size_t rep = 0; rep < 50; ++rep) {
        const Instance inst = generate_instance({1 + rep, 0.05 * static_cast<double>(rep), rep, 1}, 3);
        const std::string text = instance_to_string(inst);
        const Instance back = instance_from_string(text);
        EXPECT_EQ(back, inst);
        for (std::size_t k = 0; k < inst.size(); ++k) EXPECT_EQ(back.jobs()[k].w, inst.jobs()[k].w);
        EXPECT_EQ(instance_to_string(back), text);
        EXPECT_DOUBLE_EQ(back.meta().sigma, inst.meta().sigma);
    }
}

TEST(InstanceIo, Layout) {
    const Instance inst(std::vector<Job>{{0, 2, 12.0}, {1, 9, 162.0}}, {0.25, 9});
    const auto doc = instance_to_json(inst);
    EXPECT_EQ(doc["meta"]["n"], 2);
    EXPECT_EQ(doc["meta"]["seed"], 9);
    EXPECT_EQ(doc["jobs"][1]["p"], 9);
    EXPECT_EQ(doc["jobs"][1]["w"], 162.0);
}

TEST(InstanceIo, RejectsMalformedInput) {
    EXPECT_THROW(instance_from_string("{"), invalid_instance);
    EXPECT_THROW(instance_from_string("{}"), invalid_instance);
    EXPECT_THROW(instance_from_string(R"({"jobs":[{"id":0,"p":1.5,"w":1}]})"), invalid_instance);
    EXPECT_THROW(instance_from_string(R"({"jobs":[{"id":0,"p":0,"w":1}]})"), invalid_instance);
    EXPECT_THROW(instance_from_string(R"({"jobs":[{"id":0,"p":1,"w":-1}]})"), invalid_instance);
    EXPECT_THROW(instance_from_string(R"({"jobs":[{"id":1,"p":1,"w":1}]})"), invalid_instance);
    EXPECT_THROW(instance_from_string(R"({"jobs":[{"id":0,"p":1}]})"), invalid_instance);
    EXPECT_THROW(instance_from_string(R"({"meta":{"n":3},"jobs":[{"id":0,"p":1,"w":1}]})"), invalid_instance);
    EXPECT_NO_THROW(instance_from_string(R"({"jobs":[{"id":0,"p":1,"w":1}]})"));
    EXPECT_THROW(load_instance("/nonexistent/instance.json"), io_error);
}

TEST(ReportIo, TextAndJsonAgree) {
    std::mt19937_64 rng(10);
    for (Algo algo : {Algo::fast, Algo::astar, Algo::brute, Algo::greedy}) {
        for (NumericMode mode : {NumericMode::fast, NumericMode::exact}) {
            const Instance inst = random_instance(rng, 7, 0.6);
            const RunReport r = solve(inst, algo, mode);
            const auto doc = report_to_json(r);
            const std::string text = report_to_text(r);
            EXPECT_EQ(doc["algo"], std::string(to_string(algo)));
            EXPECT_EQ(doc["mode"], std::string(to_string(mode)));
            EXPECT_NE(text.find("payoff " + doc["payoff"].dump() + "\n"), std::string::npos) << text;
            EXPECT_NE(text.find("nodes " + doc["nodes"].dump() + "\n"), std::string::npos) << text;
            EXPECT_EQ(doc["leaves"].is_null(), algo != Algo::fast);
            EXPECT_EQ(doc.contains("payoff_exact"), mode == NumericMode::exact);
            EXPECT_EQ(doc["order"].size(), inst.size());
        }
    }
}

TEST(ReportIo, ExactPayoffString) {
    const Instance inst = Instance::from_pairs({{2, 12.0}, {9, 162.0}});
    const RunReport r = solve(inst, Algo::fast, NumericMode::exact);
    ASSERT_TRUE(r.payoff_exact);
    EXPECT_EQ(*r.payoff_exact, "228/11");
    EXPECT_NEAR(r.payoff, 228.0 / 11.0, 1e-15);
    ASSERT_TRUE(r.leaves);
    EXPECT_EQ(*r.leaves, 1u);
}

TEST(ViolationsIo, Layout) {
    const Instance inst = Instance::from_pairs({{2, 12.0}, {9, 162.0}});
    const auto doc = violations_to_json(is_potential<Q>(inst, std::vector<JobId>{1, 0}));
    EXPECT_FALSE(doc["valid"].get<bool>());
    ASSERT_EQ(doc["violations"].size(), 1u);
    EXPECT_EQ(doc["violations"][0]["reason"], "crossover-early-window");
}

TEST(Csv, SplitKeepsEmptyFields) {
    EXPECT_EQ(split_csv_line("a,b,,c"), (std::vector<std::string>{"a", "b", "", "c"}));
    EXPECT_EQ(split_csv_line("a,"), (std::vector<std::string>{"a", ""}));
}
