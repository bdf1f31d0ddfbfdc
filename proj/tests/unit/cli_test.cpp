#include <gtest/gtest.h>
#include <sys/wait.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "httplib.h"
#include "qlc/question_json.hpp"
#include "random_project.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fx;
using nlohmann::json;

struct Result {
    int status;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(QLC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qlc_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_ / "corpus");
        std::ofstream(dir_ / "catch_game.sb3", std::ios::binary) << catch_game().sb3();
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            std::ofstream(dir_ / "corpus" / ("r" + std::to_string(seed) + ".sb3"), std::ios::binary)
                << random_project(seed).sb3();
        }
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

TEST_F(Cli, GenerateWritesQuestionSet) {
    const Result r = run("generate " + path("catch_game.sb3"));
    ASSERT_EQ(r.status, 0);
    const qlc::QuestionSet set = qlc::parse_question_set(r.out);
    EXPECT_EQ(set.project_id, "catch_game");
    EXPECT_EQ(set.master_seed, 0U);
    const bool has_loop_question = std::any_of(set.questions.begin(), set.questions.end(), [](const auto& q) {
        return q.kind == qlc::QuestionKind::BlockControllingLoop;
    });
    EXPECT_TRUE(has_loop_question);

    ASSERT_EQ(run("generate " + path("catch_game.sb3") + " -o " + path("q.json")).status, 0);
    EXPECT_EQ(slurp(dir_ / "q.json"), r.out);
}

TEST_F(Cli, NoKeys) {
    const Result r = run("generate --no-keys " + path("catch_game.sb3"));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.find("\"key\""), std::string::npos);
}

TEST_F(Cli, SeedFromFlagOrEnvironment) {
    const Result flag = run("generate --seed 7 " + path("catch_game.sb3"));
    const Result unseeded = run("generate " + path("catch_game.sb3"));
    ASSERT_EQ(flag.status, 0);
    const std::string cli = QLC_CLI_PATH;
    FILE* pipe = ::popen(("SCRATCH_QLC_SEED=7 " + cli + " generate " + path("catch_game.sb3")).c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
    EXPECT_EQ(::pclose(pipe), 0);
    EXPECT_EQ(out, flag.out);
    EXPECT_NE(unseeded.out, flag.out);
    EXPECT_EQ(qlc::parse_question_set(flag.out).master_seed, 7U);
}

TEST_F(Cli, KindFilterByNameOrNumber) {
    const Result by_name = run("generate --kinds BlockControllingLoop,PurposeOfProgram " + path("catch_game.sb3"));
    const Result by_number = run("generate --kinds 1,30 " + path("catch_game.sb3"));
    ASSERT_EQ(by_name.status, 0);
    EXPECT_EQ(by_name.out, by_number.out);
    EXPECT_EQ(qlc::parse_question_set(by_name.out).questions.size(), 2U);
}

TEST_F(Cli, InputErrorsExitWithOne) {
    EXPECT_EQ(run("generate " + path("missing.sb3")).status, 1);
    EXPECT_EQ(run("generate --kinds Bogus " + path("catch_game.sb3")).status, 1);
    EXPECT_EQ(run("generate --max-choices 1 " + path("catch_game.sb3")).status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
    EXPECT_EQ(run("").status, 1);
    std::ofstream(dir_ / "bad.json") << "{";
    EXPECT_EQ(run("generate " + path("bad.json")).status, 1);
    EXPECT_EQ(run("grade " + path("bad.json") + " " + path("bad.json")).status, 1);
    EXPECT_EQ(run("analyze " + path("nowhere")).status, 1);
}

TEST_F(Cli, AnalyzeCsvJsonAndCells) {
    const Result csv = run("analyze -j 2 " + path("corpus"));
    ASSERT_EQ(csv.status, 0);
    EXPECT_EQ(csv.out.rfind("kind,total,avg,projects,pct\n", 0), 0U);
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 31);
    EXPECT_EQ(run("analyze -j 1 " + path("corpus")).out, csv.out);

    ASSERT_EQ(run("analyze " + path("corpus") + " -o " + path("stats.json") + " --cells " + path("cells.csv")).status,
              0);
    const json stats = json::parse(slurp(dir_ / "stats.json"));
    EXPECT_EQ(stats["projectsTotal"], 5);
    EXPECT_EQ(stats["perKind"].size(), 30U);
    EXPECT_EQ(slurp(dir_ / "cells.csv").rfind("scope,dimension,pct\n", 0), 0U);
}

TEST_F(Cli, GradeScoresResponseSheet) {
    ASSERT_EQ(run("generate " + path("catch_game.sb3") + " -o " + path("q.json")).status, 0);
    const qlc::QuestionSet set = qlc::parse_question_set(slurp(dir_ / "q.json"));
    json responses = json::array();
    for (const auto& q : set.questions) {
        if (const auto* k = q.key ? std::get_if<qlc::ChoiceAnswer>(&*q.key) : nullptr) {
            responses.push_back({{"questionId", q.id}, {"answer", k->correct}});
        }
    }
    std::ofstream(dir_ / "r.json") << json{{"questionSetId", set.id()}, {"responses", responses}}.dump();
    const Result r = run("grade " + path("q.json") + " " + path("r.json"));
    ASSERT_EQ(r.status, 0);
    const json report = json::parse(r.out);
    EXPECT_DOUBLE_EQ(report["total"].get<double>(), static_cast<double>(responses.size()));

    std::ofstream(dir_ / "wrong.json") << json{{"questionSetId", "x@1"}, {"responses", json::array()}}.dump();
    EXPECT_EQ(run("grade " + path("q.json") + " " + path("wrong.json")).status, 1);
}

TEST_F(Cli, ServeAnswersHttpAndStopsOnSignal) {
    ASSERT_EQ(run("generate " + path("catch_game.sb3") + " -o " + path("q.json")).status, 0);
    const std::string cmd = "sh -c 'echo $$; exec " + std::string(QLC_CLI_PATH) + " serve --port 0 " + path("q.json") +
                            "'";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::array<char, 256> line{};
    ASSERT_NE(std::fgets(line.data(), line.size(), pipe), nullptr);
    const pid_t pid = std::stoi(line.data());
    ASSERT_NE(std::fgets(line.data(), line.size(), pipe), nullptr);
    const std::string listening = line.data();
    ASSERT_EQ(listening.rfind("listening on http://127.0.0.1:", 0), 0U) << listening;
    const int port = std::stoi(listening.substr(listening.rfind(':') + 1));

    httplib::Client client("127.0.0.1", port);
    const auto health = client.Get("/healthz");
    ASSERT_TRUE(health);
    EXPECT_EQ(health->status, 200);
    const auto qs = client.Get("/api/questionset");
    ASSERT_TRUE(qs);
    EXPECT_EQ(qs->body.find("\"key\""), std::string::npos);

    ::kill(pid, SIGTERM);
    const int raw = ::pclose(pipe);
    EXPECT_TRUE(WIFEXITED(raw));
    EXPECT_EQ(WEXITSTATUS(raw), 0);
}

}  // namespace
