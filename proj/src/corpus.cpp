#include "qlc/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <thread>

#include "qlc/parse.hpp"

namespace qlc {

namespace {

std::string fixed(double value, int digits) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, value);
    return buf.data();
}

double percent(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double average_per_containing_project(std::size_t total, std::size_t projects_with) noexcept {
    return projects_with == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(projects_with);
}

CorpusStats::CorpusStats() {
    for (const QuestionKind k : all_question_kinds()) per_kind[k] = {};
    for (const BlockModelCell& c : all_cells()) per_cell[c] = 0;
}

CorpusStats CorpusStats::of(const QuestionSet& set) {
    CorpusStats s;
    s.projects_total = 1;
    std::set<BlockModelCell> cells;
    for (const Question& q : set.questions) {
        ++s.per_kind[q.kind].total;
        cells.insert(q.cell);
    }
    for (auto& [kind, k] : s.per_kind) k.projects_with = k.total > 0 ? 1 : 0;
    for (const BlockModelCell& c : cells) s.per_cell[c] = 1;
    return s;
}

CorpusStats CorpusStats::failure(std::string path, std::string message) {
    CorpusStats s;
    s.projects_failed = 1;
    s.failures.push_back({std::move(path), std::move(message)});
    return s;
}

void CorpusStats::merge(const CorpusStats& other) {
    projects_total += other.projects_total;
    projects_failed += other.projects_failed;
    for (const auto& [kind, k] : other.per_kind) {
        per_kind[kind].total += k.total;
        per_kind[kind].projects_with += k.projects_with;
    }
    for (const auto& [cell, n] : other.per_cell) per_cell[cell] += n;
    std::vector<ProjectFailure> merged;
    std::merge(failures.begin(), failures.end(), other.failures.begin(), other.failures.end(),
               std::back_inserter(merged), [](const ProjectFailure& a, const ProjectFailure& b) {
                   return std::tie(a.path, a.message) < std::tie(b.path, b.message);
               });
    failures = std::move(merged);
}

CorpusStats analyze_corpus(const std::vector<std::filesystem::path>& paths, const FinderConfig& config,
                           std::size_t jobs) {
    config.validate();
    std::vector<CorpusStats> results(paths.size());
    auto work = [&](std::size_t i) {
        try {
            const Project project = load_project(paths[i].string());
            results[i] = CorpusStats::of(generate_questions(project, config));
        } catch (const std::exception& e) {
            results[i] = CorpusStats::failure(paths[i].string(), e.what());
        }
    };
    if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(paths.size(), 1));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < paths.size(); i = next++) work(i);
            });
        }
    }
    CorpusStats total;
    for (const CorpusStats& r : results) total.merge(r);
    return total;
}

std::vector<std::filesystem::path> list_project_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".sb3" || ext == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::array<CellCoverage, 12> cell_coverage(const CorpusStats& stats) {
    if (stats.projects_total == 0) throw EmptyCorpus("no project in the corpus could be analyzed");
    std::array<CellCoverage, 12> out{};
    const auto& cells = all_cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out[i] = {cells[i], percent(stats.per_cell.at(cells[i]), stats.projects_total)};
    }
    return out;
}

std::string kind_stats_csv(const CorpusStats& stats) {
    std::string out = "kind,total,avg,projects,pct\n";
    for (const auto& [kind, k] : stats.per_kind) {
        out += std::string(kind_name(kind)) + "," + std::to_string(k.total) + "," + fixed(k.avg(), 2) + "," +
               std::to_string(k.projects_with) + "," + fixed(percent(k.projects_with, stats.projects_total), 1) +
               "\n";
    }
    return out;
}

std::string cell_coverage_csv(const CorpusStats& stats) {
    std::string out = "scope,dimension,pct\n";
    for (const CellCoverage& c : cell_coverage(stats)) {
        out += std::string(scope_name(c.cell.scope)) + "," + std::string(dimension_name(c.cell.dimension)) + "," +
               fixed(c.percent, 1) + "\n";
    }
    return out;
}

nlohmann::json corpus_stats_to_json(const CorpusStats& stats) {
    nlohmann::json kinds = nlohmann::json::array();
    for (const auto& [kind, k] : stats.per_kind) {
        kinds.push_back({{"kind", kind_name(kind)},
                         {"kindNumber", kind_number(kind)},
                         {"total", k.total},
                         {"projectsWith", k.projects_with},
                         {"avg", k.avg()}});
    }
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [cell, n] : stats.per_cell) {
        cells.push_back({{"scope", scope_name(cell.scope)},
                         {"dimension", dimension_name(cell.dimension)},
                         {"projectsWithAny", n},
                         {"pct", percent(n, stats.projects_total)}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const ProjectFailure& f : stats.failures) failures.push_back({{"path", f.path}, {"message", f.message}});
    return {{"projectsTotal", stats.projects_total},
            {"projectsFailed", stats.projects_failed},
            {"perKind", std::move(kinds)},
            {"perCell", std::move(cells)},
            {"failures", std::move(failures)}};
}

}  // namespace qlc
