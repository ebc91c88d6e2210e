#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace rspb;

namespace {

struct CliResult {
    int code;
    std::string out;
};

CliResult cli(const std::string& args) {
    std::string cmd = std::string(RSPB_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult r{-1, ""};
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Reproduce, EveryCaseMatches) {
    auto cases = reproduction_cases();
    EXPECT_EQ(cases.size(), 3 + Fixtures::instance().syzygies().size() + Fixtures::instance().systems().size() +
                                Fixtures::instance().solutions().size() + 1 + 3);
    for (const auto& c : cases) {
        ReproductionReport r = run_case(c);
        EXPECT_EQ(r.status, Status::Match) << r.label << ": " << r.computed;
    }
}

TEST(Reproduce, ErrorsAreReportedNotThrown) {
    ReproductionCase broken{"broken", "test", [](ReproductionReport&) { throw std::runtime_error("boom"); }};
    ReproductionReport r = run_case(broken);
    EXPECT_EQ(r.status, Status::Error);
    ASSERT_FALSE(r.notes.empty());
    EXPECT_EQ(r.notes.back(), "boom");
}

TEST(Fixtures, UnknownNamesThrow) {
    EXPECT_THROW(Fixtures::instance().covering("phi9"), std::out_of_range);
    EXPECT_THROW(Fixtures::instance().solution_record("y99"), std::out_of_range);
}

TEST(Records, Parsing) {
    auto recs = parse_records("# comment\n[a]\nk = 1 +\n    2\nname = x\n\n[b]\nz = 3\n");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].get("k"), "1 + 2");
    EXPECT_EQ(recs[1].get("z"), "3");
    EXPECT_THROW(recs[1].get("k"), std::out_of_range);
    EXPECT_THROW(parse_records("k = 1\n"), std::runtime_error);
}

TEST(Cli, VerifyCovering) {
    CliResult r = cli("verify-covering builtin:phi12");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("5+4+1+1+1"), std::string::npos);
}

TEST(Cli, VerifySolutionJson) {
    CliResult r = cli("--format json-lines verify --solution builtin:y32");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["label"], "y32");
    EXPECT_TRUE(j["residual_zero"].get<bool>());
    // printed expressions re-parse to the fixture values
    const Record& rec = Fixtures::instance().solution_record("y32");
    ExprContext ctx = Fixtures::instance().context(rec);
    EXPECT_EQ(parse_elem(j["y"].get<std::string>(), ctx), parse_elem(rec.get("y"), ctx));
    EXPECT_EQ(parse_elem(j["t"].get<std::string>(), ctx), parse_elem(rec.get("t"), ctx));
}

TEST(Cli, SolveMatchesFixture) {
    CliResult r = cli("--format json-lines solve --covering builtin:phi12 --exponents 1/3,1/2,2/5 --delta 0 --row lower");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    const Record& rec = Fixtures::instance().solution_record("y32");
    ExprContext ctx = Fixtures::instance().context(rec);
    EXPECT_EQ(parse_elem(j["y"].get<std::string>(), ctx), parse_elem(rec.get("y"), ctx));
}

TEST(Cli, SyzygyAndPullback) {
    CliResult s = cli("--format json-lines syzygy --triple builtin:phi12-FGH --exponents 1/3,1/2,2/5 --delta 0");
    ASSERT_EQ(s.code, 0);
    auto j = nlohmann::json::parse(s.out);
    ExprContext ctx = Fixtures::instance().covering("phi12").context();
    Triple t{parse_poly(j["F"].get<std::string>(), ctx), parse_poly(j["G"].get<std::string>(), ctx),
             parse_poly(j["H"].get<std::string>(), ctx)};
    EXPECT_EQ(t.G.monic(), ctx.bindings.at("P12").poly().monic());
    Syzygy z{parse_poly(j["U"].get<std::string>(), ctx), parse_poly(j["V"].get<std::string>(), ctx),
             parse_poly(j["W"].get<std::string>(), ctx)};
    EXPECT_TRUE(is_syzygy(z, t));
    EXPECT_EQ(z.V.degree(), 0);
    CliResult p = cli("--format json-lines pullback --covering builtin:phi8 --exponents 1/5,1/2,1/3");
    ASSERT_EQ(p.code, 0);
    auto q = nlohmann::json::parse(p.out);
    int essential = 0;
    for (const auto& sp : q["singularities"]) essential += !sp["apparent"].get<bool>();
    EXPECT_GE(essential, 2);
}

TEST(Cli, ReproduceSubset) {
    CliResult r = cli("--format json-lines reproduce --only covering,syzygy --jobs 2");
    EXPECT_EQ(r.code, 0);
    int lines = 0;
    size_t pos = 0;
    while (pos < r.out.size()) {
        size_t end = r.out.find('\n', pos);
        auto j = nlohmann::json::parse(r.out.substr(pos, end - pos));
        EXPECT_EQ(j["status"], "match");
        ++lines;
        pos = end + 1;
    }
    EXPECT_EQ(lines, 3 + static_cast<int>(Fixtures::instance().syzygies().size()));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("verify-covering builtin:nonexistent").code, 2);
    EXPECT_EQ(cli("solve --covering builtin:phi12 --exponents 1/3,1/2").code, 2);
    EXPECT_EQ(cli("reproduce --only nothing-matches").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, MismatchExitsOne) {
    // a solution record whose y is not a PVI solution
    std::string path = ::testing::TempDir() + "bad_solution.txt";
    FILE* f = std::fopen(path.c_str(), "w");
    ASSERT_TRUE(f);
    std::fputs("[bad]\nparam = u\nt = u\ny = 2u^2\ntheta = 1/2, 1/2, 1/2, 1/2\n", f);
    std::fclose(f);
    EXPECT_EQ(cli("verify --solution " + path).code, 1);
}
