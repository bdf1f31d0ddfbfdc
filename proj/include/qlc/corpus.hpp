/// @file corpus.hpp
/// @brief Question statistics over a collection of projects.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlc/finders.hpp"
#include "qlc/question.hpp"

namespace qlc {

class EmptyCorpus : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mean instances per project that has at least one instance; 0 when none.
double average_per_containing_project(std::size_t total, std::size_t projects_with) noexcept;

struct KindStats {
    std::size_t total = 0;
    std::size_t projects_with = 0;

    [[nodiscard]] double avg() const noexcept { return average_per_containing_project(total, projects_with); }
    bool operator==(const KindStats&) const = default;
};

struct ProjectFailure {
    std::string path;
    std::string message;
    bool operator==(const ProjectFailure&) const = default;
};

struct CorpusStats {
    std::size_t projects_total = 0;   // parsed successfully, empty ones included
    std::size_t projects_failed = 0;
    std::map<QuestionKind, KindStats> per_kind;      // all 30 kinds present
    std::map<BlockModelCell, std::size_t> per_cell;  // projects with any question in the cell
    std::vector<ProjectFailure> failures;            // sorted by path

    CorpusStats();
    bool operator==(const CorpusStats&) const = default;

    /// Statistics of a single project's questions.
    static CorpusStats of(const QuestionSet& set);
    static CorpusStats failure(std::string path, std::string message);
    /// Associative, commutative combination.
    void merge(const CorpusStats& other);
};

/// Parse and analyze each file on up to `jobs` worker threads (0 = hardware
/// concurrency). Unreadable or malformed files are recorded as failures.
CorpusStats analyze_corpus(const std::vector<std::filesystem::path>& paths, const FinderConfig& config,
                           std::size_t jobs = 0);

/// `*.sb3` and `*.json` files under `dir` (recursive), sorted.
std::vector<std::filesystem::path> list_project_files(const std::filesystem::path& dir);

struct CellCoverage {
    BlockModelCell cell;
    double percent = 0;
};

/// Percentage of projects with at least one question per cell, row-major.
/// Throws EmptyCorpus when no project was parsed.
std::array<CellCoverage, 12> cell_coverage(const CorpusStats& stats);

/// `kind,total,avg,projects,pct`, one row per kind in number order.
std::string kind_stats_csv(const CorpusStats& stats);
/// `scope,dimension,pct`, one row per cell.
std::string cell_coverage_csv(const CorpusStats& stats);
nlohmann::json corpus_stats_to_json(const CorpusStats& stats);

}  // namespace qlc
