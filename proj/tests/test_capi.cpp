#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "softqed/softqed.h"

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::string take(sq_buffer* b) {
    std::string s(sq_buffer_data(b), sq_buffer_size(b));
    sq_buffer_free(b);
    return s;
}

}  // namespace

TEST(CApi, StatusNamesAndVersion) {
    EXPECT_STREQ(sq_status_name(SQ_OK), "ok");
    EXPECT_STREQ(sq_status_name(SQ_ERR_CONFIG_PARSE), "config-parse");
    EXPECT_STREQ(sq_status_name(static_cast<sq_status>(77)), "unknown");
    EXPECT_STREQ(sq_version(), "0.1.0");
}

TEST(CApi, NullArgumentsRejected) {
    EXPECT_EQ(sq_config_parse(nullptr, 0, nullptr), SQ_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::string(sq_last_error()), "");
    sq_buffer* b = nullptr;
    EXPECT_EQ(sq_run(nullptr, SQ_CMD_CURRENT, &b, nullptr), SQ_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(sq_loop_current(nullptr, nullptr, nullptr, nullptr), SQ_ERR_INVALID_ARGUMENT);
    sq_config_free(nullptr);
    sq_buffer_free(nullptr);
    sq_loop_free(nullptr);
}

TEST(CApi, ConfigErrorsCarryMessage) {
    const std::string bad = R"({"grid": {"bogus": 1}})";
    sq_config* c = nullptr;
    EXPECT_EQ(sq_config_parse(bad.data(), bad.size(), &c), SQ_ERR_CONFIG_PARSE);
    EXPECT_EQ(c, nullptr);
    EXPECT_NE(std::string(sq_last_error()).find("bogus"), std::string::npos);
    EXPECT_EQ(sq_config_load("/nonexistent/config.json", &c), SQ_ERR_IO);
}

TEST(CApi, RunCurrentAndDecompose) {
    const std::string text = R"({"grid": {"k_min": 0.01, "k_max": 1, "n_radial": 5, "n_angular": 1}})";
    sq_config* c = nullptr;
    ASSERT_EQ(sq_config_parse(text.data(), text.size(), &c), SQ_OK);
    sq_buffer* b = nullptr;
    int passed = 0;
    ASSERT_EQ(sq_run(c, SQ_CMD_CURRENT, &b, &passed), SQ_OK);
    EXPECT_EQ(passed, 1);
    EXPECT_EQ(lines(take(b)).size(), 11u);
    ASSERT_EQ(sq_run(c, SQ_CMD_DECOMPOSE, &b, &passed), SQ_OK);
    EXPECT_NE(take(b).find("\"schema_version\": 1"), std::string::npos);
    EXPECT_EQ(sq_run(c, static_cast<sq_command>(9), &b, &passed), SQ_ERR_INVALID_ARGUMENT);
    sq_config_free(c);
}

TEST(CApi, LoopCurrentAndAction) {
    const double xs[] = {0, 0, 0, 0, 1, 4, 0, 0, 0.5, 0, 3, 0};
    sq_loop* loop = nullptr;
    ASSERT_EQ(sq_loop_create(xs, 3, &loop), SQ_OK);
    const double k[] = {1.0, 0.6, 0.8, 0.0};
    double re[4], im[4];
    ASSERT_EQ(sq_loop_current(loop, k, re, im), SQ_OK);
    // k.J = 0
    const double kre = k[0] * re[0] - k[1] * re[1] - k[2] * re[2] - k[3] * re[3];
    const double kim = k[0] * im[0] - k[1] * im[1] - k[2] * im[2] - k[3] * im[3];
    EXPECT_LT(std::hypot(kre, kim), 1e-13);
    double v1 = 0.0, v2 = 0.0, err = 0.0;
    ASSERT_EQ(sq_loop_action(loop, 1.0, &v1, &err), SQ_OK);
    ASSERT_EQ(sq_loop_action(loop, 2.0, &v2, nullptr), SQ_OK);
    EXPECT_NEAR(v2, 4.0 * v1, 1e-14 * std::abs(v1));
    sq_loop_free(loop);

    const double bad[] = {0, 0, 0, 0, 1, 1, 1, 1};
    EXPECT_EQ(sq_loop_create(bad, 2, &loop), SQ_ERR_INVALID_LOOP);
}

TEST(CApi, CuspedLoopActionIsNonConvergent) {
    const double xs[] = {0, 0, 0, 0, 2, 1, 0, 0, 3, 0, 1, 0.5};
    sq_loop* loop = nullptr;
    ASSERT_EQ(sq_loop_create(xs, 3, &loop), SQ_OK);
    double v = 0.0;
    EXPECT_EQ(sq_loop_action(loop, 1.0, &v, nullptr), SQ_ERR_NON_CONVERGENT);
    EXPECT_NE(std::string(sq_last_error()).find("vertex"), std::string::npos);
    sq_loop_free(loop);
}

// The documented check list and the registry must agree exactly.
TEST(CApi, RegistryMatchesReadme) {
    sq_buffer* b = nullptr;
    ASSERT_EQ(sq_check_names(&b), SQ_OK);
    const auto registry = lines(take(b));

    std::ifstream in(SOFTQED_README);
    ASSERT_TRUE(in) << SOFTQED_README;
    std::vector<std::string> documented;
    bool inside = false;
    const std::regex row(R"(^\|\s*`([a-z0-9_]+)`\s*\|)");
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("<!-- checks:begin -->") != std::string::npos) inside = true;
        if (line.find("<!-- checks:end -->") != std::string::npos) inside = false;
        std::smatch m;
        if (inside && std::regex_search(line, m, row)) documented.push_back(m[1]);
    }
    EXPECT_EQ(documented, registry);
}
