#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cliquesched/io.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("cliquesched-cli-" + std::to_string(::getpid()) + "-" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args, const std::string& out = "out.txt") const {
        const std::string cmd = std::string(CLIQUESCHED_CLI) + " " + args + " > " + path(out) + " 2> " + path("err.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, SolveWritesAValidSchedule) {
    write("inst.json", R"({"machines": 2, "kind": "identical", "cliques": 2,
      "jobs": [{"id": 1, "clique": 1, "times": 3}, {"id": 2, "clique": 1, "times": 2}, {"id": 3, "clique": 2, "times": 1}]})");
    ASSERT_EQ(run("solve -i " + path("inst.json") + " -o " + path("sched.json")), 0);
    EXPECT_NE(read("err.txt").find("algorithm identical objective 7"), std::string::npos);
    ASSERT_EQ(run("verify -i " + path("inst.json") + " -s " + path("sched.json")), 0);
    EXPECT_EQ(read("out.txt"), "valid, objective 7\n");
    ASSERT_EQ(run("solve -i " + path("inst.json") + " -a ip"), 0);
    EXPECT_NE(read("out.txt").find("\"objective\": 7"), std::string::npos);
}

TEST_F(Cli, VerifyRejectsBadSchedule) {
    write("inst.json", R"({"machines": 2, "kind": "identical", "cliques": 1,
      "jobs": [{"id": 1, "clique": 1, "times": 3}, {"id": 2, "clique": 1, "times": 2}]})");
    write("bad.json", R"({"assignment": {"1": 1, "2": 1}, "objective": 8})");
    EXPECT_EQ(run("verify -i " + path("inst.json") + " -s " + path("bad.json")), 5);
    EXPECT_NE(read("out.txt").find("same-clique"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    write("stuck.json", R"({"machines": 2, "kind": "unrelated", "cliques": 1,
      "jobs": [{"id": 1, "clique": 1, "times": [1, null]}, {"id": 2, "clique": 1, "times": [1, null]}]})");
    EXPECT_EQ(run("solve -i " + path("stuck.json")), 2);
    EXPECT_EQ(run("solve -i " + path("missing.json")), 1);
    EXPECT_EQ(run("solve"), 1);
    EXPECT_EQ(run("solve -i " + path("stuck.json") + " -a identical"), 4);
    ASSERT_EQ(run("generate --family sat-star-2clique --seed 3 --size 3 -o " + path("sat.json")), 0);
    EXPECT_EQ(run("solve -i " + path("sat.json") + " --budget 1000"), 3);
}

TEST_F(Cli, GenerateIsDeterministic) {
    ASSERT_EQ(run("generate --class weighted --seed 11 -o " + path("a.json")), 0);
    ASSERT_EQ(run("generate --class weighted --seed 11 -o " + path("b.json")), 0);
    EXPECT_EQ(read("a.json"), read("b.json"));
    EXPECT_FALSE(read("a.json").empty());
    ASSERT_EQ(run("generate --class weighted --seed 12 -o " + path("c.json")), 0);
    EXPECT_NE(read("a.json"), read("c.json"));
}

TEST_F(Cli, CertifiedReductionScheduleVerifies) {
    ASSERT_EQ(run("generate --family max3sat6 --seed 4 --size 3 -o " + path("i.json") + " --certificate " + path("c.json") +
                  " --schedule " + path("s.json")),
              0);
    auto cert = cliquesched::io::json::parse(read("c.json"));
    ASSERT_EQ(run("verify -i " + path("i.json") + " -s " + path("s.json")), 0);
    EXPECT_EQ(read("out.txt"), "valid, objective " + std::to_string(cert["expected_objective"].get<long long>()) + "\n");

    ASSERT_EQ(run("generate --family sat-star-eligibility --seed 2 --size 6 -o " + path("e.json") + " --schedule " + path("es.json")), 0);
    EXPECT_EQ(run("verify -i " + path("e.json") + " -s " + path("es.json")), 0);
}

TEST_F(Cli, IpDumpModelsAgree) {
    ASSERT_EQ(run("generate --class weighted --seed 1 -o " + path("w.json")), 0);
    ASSERT_EQ(run("oracle -i " + path("w.json")), 0);
    const std::string oracle = read("err.txt");
    ASSERT_EQ(run("ip-dump -i " + path("w.json") + " --model wct-machines --solve", "m.txt"), 0);
    ASSERT_EQ(run("ip-dump -i " + path("w.json") + " --model wct-cliques --solve", "c.txt"), 0);
    auto optimum = [](const std::string& text) {
        auto at = text.rfind("optimum ");
        return at == std::string::npos ? std::string() : text.substr(at + 8, text.find('\n', at) - at - 8);
    };
    const std::string a = optimum(read("m.txt"));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, optimum(read("c.txt")));
    EXPECT_EQ("objective " + a + "\n", oracle);
    EXPECT_NE(read("m.txt").find("nfold n="), std::string::npos);
}

TEST_F(Cli, BenchListsEveryInstance) {
    fs::create_directories(path("set"));
    ASSERT_EQ(run("generate --class identical --seed 1 -o " + path("set/a.json")), 0);
    ASSERT_EQ(run("generate --class unit --seed 2 -o " + path("set/b.json")), 0);
    ASSERT_EQ(run("bench -d " + path("set") + " --algorithms auto,oracle,dp"), 0);
    const std::string out = read("out.txt");
    EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 7);
    EXPECT_EQ(out.rfind("instance\talgorithm", 0), 0u);
}

TEST_F(Cli, SamplesSolveToTheOracleOptimum) {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(CLIQUESCHED_SAMPLES)) {
        const std::string name = entry.path().filename().string();
        if (entry.path().extension() != ".json") continue;
        ASSERT_EQ(run("solve -i " + entry.path().string()), 0) << name;
        const std::string solved = read("err.txt");
        ASSERT_EQ(run("oracle -i " + entry.path().string() + " --budget 2000000"), 0) << name;
        const std::string oracle = read("err.txt");
        EXPECT_EQ(solved.substr(solved.find("objective")), oracle) << name;
        ++seen;
    }
    EXPECT_GE(seen, 4);
}

TEST_F(Cli, SampleCertificatesVerify) {
    for (std::string base : {"sat_star_2clique", "max3sat6"}) {
        const std::string dir = std::string(CLIQUESCHED_SAMPLES) + "/reductions";
        ASSERT_EQ(run("verify -i " + dir + "/" + base + ".json -s " + dir + "/" + base + ".schedule.json"), 0) << base;
        auto cert = cliquesched::io::json::parse(std::ifstream(dir + "/" + base + ".cert.json"));
        EXPECT_EQ(read("out.txt"), "valid, objective " + std::to_string(cert["expected_objective"].get<long long>()) + "\n");
    }
}
