#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct run_result {
    int code = -1;
    std::string out;
};

run_result run(const std::string& args) {
    std::string cmd = std::string(SPEDGE_CLI) + " " + args + " 2>/dev/null";
    run_result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(SPEDGE_SAMPLES) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "spedge_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, DecideTriangle) {
    auto yes = run("decide -k 4 " + sample("triangle211.spm"));
    EXPECT_EQ(yes.code, 0);
    EXPECT_EQ(yes.out, "YES\n");

    auto no = run("decide -k 3 " + sample("triangle211.spm"));
    EXPECT_EQ(no.code, 1);
    EXPECT_EQ(no.out, "NO local-check 2|E({u,v,w})| = 8 > 3*2\n");
}

TEST(Cli, NotSeriesParallel) {
    auto r = run("decide -k 3 " + sample("k4.spm"));
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.out, "NOT-SERIES-PARALLEL\n");
}

TEST(Cli, UsageAndParseErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("decide " + sample("triangle211.spm")).code, 2);
    auto bad = scratch("bad.spm");
    std::ofstream(bad) << "p spm 2 1\ne 1 1 1\n";
    EXPECT_EQ(run("decide -k 3 " + bad.string()).code, 2);
    EXPECT_EQ(run("decide -k 3 /nonexistent/graph.spm").code, 2);
}

TEST(Cli, ColorThenVerify) {
    auto out = scratch("c5.col");
    auto r = run("color -k 8 -o " + out.string() + " " + sample("cycle5x3.spm"));
    ASSERT_EQ(r.code, 0);
    auto v = run("verify " + sample("cycle5x3.spm") + " " + out.string());
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "VALID k=8\n");

    auto no = run("color -k 7 -o " + scratch("none.col").string() + " " + sample("cycle5x3.spm"));
    EXPECT_EQ(no.code, 1);
}

TEST(Cli, VerifyTampered) {
    auto r = run("verify " + sample("triangle211.spm") + " " + sample("triangle211_bad.col"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("vertex 1"), std::string::npos);
}

TEST(Cli, Chi) {
    EXPECT_EQ(run("chi " + sample("triangle211.spm")).out, "4\n");
    EXPECT_EQ(run("chi " + sample("cycle5x3.spm")).out, "8\n");
    EXPECT_EQ(run("chi " + sample("petersen.spm")).out, "4\n");
}

TEST(Cli, Gamma) {
    EXPECT_EQ(run("gamma " + sample("cycle5x3.spm")).out, "15/2 U={1,2,3,4,5}\n");
    EXPECT_EQ(run("gamma --pruned " + sample("triangle211.spm")).out, "4/1 U={1,2,3}\n");
}

TEST(Cli, GenIsDeterministic) {
    auto a = run("gen -n 30 --max-mult 5 --seed 9");
    auto b = run("gen -n 30 --max-mult 5 --seed 9");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto file = scratch("g.spm");
    ASSERT_EQ(run("gen -n 30 --max-mult 5 --seed 9 -o " + file.string()).code, 0);
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text, a.out);
    EXPECT_EQ(run("decide -k 100 " + file.string()).code, 0);
}

TEST(Cli, Selftest) {
    auto r = run("selftest --instances 40 --max-vertices 6 --seed 3");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Bench) {
    auto r = run("bench --sizes 100,200");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("n=200"), std::string::npos);
    EXPECT_NE(r.out.find("iterations="), std::string::npos);
}
