/**
 * @file test_cli.cpp
 * @brief Exit codes, CSV schema, and determinism of the quadcurl command-line driver.
 */
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(QUADCURL_CLI_PATH) + " " + args + " --quiet > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text)
{
    return text.substr(0, text.find('\n'));
}

std::string tmp(const std::string& name)
{
    return ::testing::TempDir() + "quadcurl_cli_" + name;
}

TEST(CliUsage, MissingSubcommand)
{
    EXPECT_EQ(run_cli(""), 2);
}

TEST(CliUsage, UnknownOption)
{
    EXPECT_EQ(run_cli("example1 --bogus"), 2);
}

TEST(CliUsage, OddLShapeSize)
{
    EXPECT_EQ(run_cli("example3 --n 3"), 2);
}

TEST(CliUsage, NonPositiveSize)
{
    EXPECT_EQ(run_cli("example1 --n 0"), 2);
}

TEST(CliUsage, BadPrecisionAndBoundaryMode)
{
    EXPECT_EQ(run_cli("example2 --precision half"), 2);
    EXPECT_EQ(run_cli("example2 --bc-mode penalty"), 2);
    EXPECT_EQ(run_cli("example1 --quad-degree 40"), 2);
}

TEST(CliRun, InterpolationStudyCsvSchemaAndDeterminism)
{
    const std::string a = tmp("interp_a.csv");
    const std::string b = tmp("interp_b.csv");
    ASSERT_EQ(run_cli("interp-study --n 1 --out " + a), 0);
    ASSERT_EQ(run_cli("interp-study --n 1 --out " + b), 0);
    const std::string text = slurp(a);
    EXPECT_EQ(first_line(text), "h,err_l2,rate_l2,err_curl,rate_curl,err_curl2,rate_curl2");
    EXPECT_EQ(text, slurp(b));
}

TEST(CliRun, EnergyStudyCsvSchema)
{
    const std::string a = tmp("energy.csv");
    ASSERT_EQ(run_cli("example2 --n 1 --out " + a), 0);
    const std::string text = slurp(a);
    EXPECT_EQ(first_line(text), "h,norm_l2,norm_curl,norm_curl2,energy_err,rate");
    EXPECT_EQ(text.rfind("1.0000000000e+00,", text.find('\n') + 1), text.find('\n') + 1);
}

TEST(CliRun, VerifyElementPassesAndNegativeControlFails)
{
    EXPECT_EQ(run_cli("verify-element"), 0);
    EXPECT_EQ(run_cli("verify-element --perturb-e-row"), 1);
}

}  // namespace
