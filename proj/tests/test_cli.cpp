#include <gtest/gtest.h>

#include <sstream>

#include "spinor_lab/cli.hpp"

using namespace spinor_lab;

namespace {

struct Captured {
    int code;
    std::string out;
    std::string err;
};

Captured invoke(RunConfig c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config(std::string command, std::string sub = "", std::string gamma = "") {
    RunConfig c;
    c.command = std::move(command);
    c.subcommand = std::move(sub);
    if (!gamma.empty()) c.gamma_path = std::string(SPINOR_LAB_DATA_DIR) + "/" + gamma;
    return c;
}

}  // namespace

TEST(Cli, ValidateAndClassify) {
    EXPECT_EQ(invoke(config("gamma", "validate", "gamma1_example.json")).code, 0);
    const auto cls = invoke(config("gamma", "classify", "gamma_minus1_example.json"));
    EXPECT_EQ(cls.code, 0);
    EXPECT_NE(cls.out.find("GammaMinus1"), std::string::npos);
}

TEST(Cli, MalformedInputExitsTwo) {
    const auto r = invoke(config("gamma", "validate", "malformed_diagonal.json"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE((r.out + r.err).find("[4,4]"), std::string::npos);
    EXPECT_EQ(invoke(config("gamma", "validate", "does_not_exist.json")).code, 2);
    auto bad = config("rep", "verify", "zero.json");
    bad.level = 40;
    EXPECT_EQ(invoke(bad).code, 2);
    auto fmt = config("finite-type");
    fmt.format = "xml";
    EXPECT_EQ(invoke(fmt).code, 2);
}

TEST(Cli, VerificationFailureExitsOne) {
    auto c = config("diffop", "identities", "zero.json");
    c.level = 4;
    EXPECT_EQ(invoke(c).code, 1);
}

TEST(Cli, FiniteType) {
    auto c = config("finite-type");
    c.m = 3;
    const auto r = invoke(c);
    EXPECT_EQ(r.code, 0);
    const auto j = json_io::json::parse(r.out);
    EXPECT_EQ(j.at("type"), "real");
    EXPECT_EQ(j.at("cartan_dirac_sign"), 1);
}

TEST(Cli, SpectrumIsDeterministic) {
    auto c = config("diffop", "spectrum", "gamma1_example.json");
    c.level = 5;
    c.k = 3;
    const auto first = invoke(c);
    const auto second = invoke(c);
    EXPECT_EQ(first.code, 0);
    EXPECT_EQ(first.out, second.out);
    const auto j = json_io::json::parse(first.out);
    EXPECT_TRUE(j.at("spectrum").at("complete") == true);
}

TEST(Cli, AlgebraMultiplication) {
    auto c = config("algebra", "mul", "zero.json");
    c.a = R"({"terms":[{"symbol":"w","m":2}]})";
    c.b = R"({"terms":[{"symbol":"w","m":5}]})";
    const auto r = invoke(c);
    EXPECT_EQ(r.code, 0);
    const auto terms = json_io::json::parse(r.out).at("product").at("terms");
    ASSERT_EQ(terms.size(), 1U);
    EXPECT_EQ(terms[0].at("symbol"), "w");
    EXPECT_EQ(terms[0].at("m"), 4);
}
