// scratch-qlc: generate, analyze, grade and serve questions about Scratch code.
//
// Exit status: 0 success, 1 input error, 2 internal error.

#include <charconv>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qlc/corpus.hpp"
#include "qlc/finders.hpp"
#include "qlc/grading.hpp"
#include "qlc/parse.hpp"
#include "qlc/question_json.hpp"
#include "qlc/render.hpp"
#include "qlc/serve.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kInternalError = 2;

/// Bad user input; reported without a stack of context.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot write file");
    out << text;
}

std::set<qlc::QuestionKind> parse_kinds(const std::string& list) {
    std::set<qlc::QuestionKind> kinds;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::optional<qlc::QuestionKind> kind = qlc::kind_from_name(item);
        if (!kind && item.find_first_not_of("0123456789") == std::string::npos && item.size() < 4) {
            kind = qlc::kind_from_number(std::stoi(item));
        }
        if (!kind) throw InputError("unknown question kind '" + item + "'");
        kinds.insert(*kind);
    }
    return kinds;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("SCRATCH_QLC_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw InputError(std::string("SCRATCH_QLC_SEED is not an unsigned integer: '") + env + "'");
    }
    return value;
}

struct FinderOptions {
    std::optional<std::uint64_t> seed;
    std::string kinds;
    std::size_t max_choices = qlc::kDefaultMaxChoices;
    std::optional<std::size_t> max_per_kind;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--seed", seed, "Master seed (default: $SCRATCH_QLC_SEED or 0)");
        cmd.add_option("--kinds", kinds, "Comma-separated kind names or numbers to enable (default: all)");
        cmd.add_option("--max-choices", max_choices, "Maximum choices per multiple-choice question (2-8)");
        cmd.add_option("--max-per-kind", max_per_kind, "Cap on instances of each kind per project");
    }

    [[nodiscard]] qlc::FinderConfig config() const {
        qlc::FinderConfig cfg;
        cfg.master_seed = seed ? *seed : default_seed();
        if (!kinds.empty()) cfg.enabled_kinds = parse_kinds(kinds);
        cfg.max_choices = max_choices;
        cfg.max_instances_per_kind = max_per_kind;
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        return cfg;
    }
};

int cmd_generate(const std::string& input, const std::string& output, const FinderOptions& opts, bool no_keys) {
    const qlc::Project project = qlc::load_project(input);
    const qlc::QuestionSet set = qlc::generate_questions(project, opts.config());
    write_output(output, qlc::dump_question_set(set, !no_keys));
    return 0;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& output, const std::string& cells,
                const FinderOptions& opts, std::size_t jobs) {
    std::vector<std::filesystem::path> paths;
    for (const std::string& in : inputs) {
        if (std::filesystem::is_directory(in)) {
            for (auto& p : qlc::list_project_files(in)) paths.push_back(std::move(p));
        } else if (std::filesystem::exists(in)) {
            paths.emplace_back(in);
        } else {
            throw InputError(in + ": no such file or directory");
        }
    }
    const qlc::CorpusStats stats = qlc::analyze_corpus(paths, opts.config(), jobs);
    for (const qlc::ProjectFailure& f : stats.failures) {
        std::cerr << "warning: skipped " << f.path << ": " << f.message << '\n';
    }
    const bool json = output.ends_with(".json");
    write_output(output, json ? qlc::corpus_stats_to_json(stats).dump(2) + "\n" : qlc::kind_stats_csv(stats));
    if (!cells.empty()) write_output(cells, qlc::cell_coverage_csv(stats));
    return 0;
}

qlc::QuestionSet load_question_set(const std::string& path) {
    try {
        return qlc::parse_question_set(read_file(path));
    } catch (const qlc::FormatError& e) {
        throw InputError(path + ": " + e.what());
    }
}

int cmd_grade(const std::string& questions, const std::string& responses, const std::string& output) {
    const qlc::QuestionSet set = load_question_set(questions);
    nlohmann::json sheet;
    try {
        sheet = nlohmann::json::parse(read_file(responses));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(responses + ": invalid JSON: " + e.what());
    }
    try {
        const qlc::GradeReport report = qlc::grade(set, qlc::response_sheet_from_json(sheet, set));
        write_output(output, qlc::grade_report_to_json(report).dump(2) + "\n");
    } catch (const qlc::GradingError& e) {
        throw InputError(responses + ": " + e.what());
    }
    return 0;
}

qlc::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const std::string& questions, const std::string& host, int port, const std::string& log) {
    qlc::ServeApp app(load_question_set(questions),
                      log.empty() ? std::nullopt : std::optional<std::filesystem::path>(log));
    qlc::HttpServer server(app);
    int bound = 0;
    try {
        bound = server.bind(host, port);
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    server.listen();
    g_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate and grade questions about learners' Scratch code"};
    app.require_subcommand(1);

    FinderOptions finder;
    std::string output;

    auto* generate = app.add_subcommand("generate", "Write the question set for one project");
    std::string project_path;
    bool no_keys = false;
    generate->add_option("project", project_path, "Project file (.sb3 or project.json)")->required();
    generate->add_option("-o,--output", output, "Output file (default: stdout)");
    generate->add_flag("--no-keys", no_keys, "Omit answer keys");
    finder.add_to(*generate);

    auto* analyze = app.add_subcommand("analyze", "Question statistics over a corpus");
    std::vector<std::string> corpus;
    std::string cells;
    std::size_t jobs = 0;
    analyze->add_option("inputs", corpus, "Directories or project files")->required();
    analyze->add_option("-o,--output", output, "Statistics file, CSV or .json (default: stdout)");
    analyze->add_option("--cells", cells, "Also write Block Model cell coverage CSV here");
    analyze->add_option("-j,--jobs", jobs, "Worker threads (default: hardware concurrency)");
    finder.add_to(*analyze);

    auto* grade = app.add_subcommand("grade", "Score a response sheet");
    std::string questions;
    std::string responses;
    grade->add_option("questions", questions, "Question set JSON with keys")->required();
    grade->add_option("responses", responses, "Response sheet JSON")->required();
    grade->add_option("-o,--output", output, "Report file (default: stdout)");

    auto* serve = app.add_subcommand("serve", "Serve a question set over HTTP");
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string log;
    serve->add_option("questions", questions, "Question set JSON with keys")->required();
    serve->add_option("--host", host, "Address to bind");
    serve->add_option("-p,--port", port, "Port, 0 picks a free one")->check(CLI::Range(0, 65535));
    serve->add_option("--log", log, "Append graded submissions to this JSON-lines file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (generate->parsed()) return cmd_generate(project_path, output, finder, no_keys);
        if (analyze->parsed()) return cmd_analyze(corpus, output, cells, finder, jobs);
        if (grade->parsed()) return cmd_grade(questions, responses, output);
        if (serve->parsed()) return cmd_serve(questions, host, port, log);
    } catch (const qlc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const qlc::EmptyCorpus& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}
