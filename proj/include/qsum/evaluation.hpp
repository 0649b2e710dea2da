#pragma once

#include "qsum/metrics.hpp"
#include "qsum/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qsum {

struct LabeledQuery {
    std::string id;
    std::string text;
    std::string category;
    bool expected_relevant = false;
    std::vector<double> opinion_scores;
};

/// Tab-separated `query_id query_text category expected_relevant opinion_scores`.
/// A header line starting with `query_id` and `#` comments are skipped.
/// Throws ConfigError on unreadable or malformed files.
std::vector<LabeledQuery> load_labels(const std::filesystem::path& path);

struct MetricsReport {
    std::string category;
    std::string path; // "keyword" or "concept"
    std::size_t queries = 0;
    std::size_t relevant = 0;
    std::optional<double> mos;
    double summarization_ratio = 0.0;
    double precision = 0.0;
    std::optional<MeanRates> rates;
    std::size_t fault_count = 0;
    // concept-wise table columns
    double components_per_document = 0.0;
    double documents_per_concept = 0.0;
    double lines_per_concept = 0.0;
};

struct Evaluation {
    std::vector<RunRecord> records;        // labels-file order
    std::vector<MetricsReport> reports;    // first-appearance order of (path, category)
    std::vector<std::string> warnings;
};

/// Runs every labelled query; a failing query becomes a fault record.
Evaluation evaluate(const std::vector<LabeledQuery>& queries, const Pipeline& pipeline,
                    const std::optional<std::string>& only_category = std::nullopt);

/// Builds the per-category report from already collected records.
std::vector<MetricsReport> summarize(const std::vector<RunRecord>& records);

/// Tab-separated tables: keyword-search rows, concept-wise rows, per-query
/// records and per-document latencies.
std::string render_tsv(const Evaluation& evaluation);

} // namespace qsum
