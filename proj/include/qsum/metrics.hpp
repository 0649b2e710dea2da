#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qsum {

/// Everything the evaluation harness records about one query run.
struct RunRecord {
    std::string query_id;
    std::string category;
    std::string path; // "keyword" or "concept"
    std::vector<double> doc_extraction_latency; // seconds, per document
    std::vector<double> info_retrieval_latency; // seconds, per document
    std::size_t summary_lines = 0;
    std::size_t original_lines = 0;
    double summarization_ratio = 0.0; // mean of per-document ratios
    bool answered = false;
    bool relevant = false;
    std::size_t fault_docs = 0;
    std::vector<double> opinion_scores;
    // concept-wise extras
    std::size_t concept_queries = 0;
    std::size_t documents_used = 0;
    std::size_t documents_segmented = 0;
    std::size_t components_segmented = 0;
    std::string outcome; // "answered", "no_answer", ...
};

/// Mean opinion score. Throws EmptyScores on an empty list, DomainError outside [0, 10].
double mos(const std::vector<double>& scores);

/// Summary lines over original lines. Throws DomainError unless original >= 1 and summary <= original.
double summarization_ratio(std::size_t summary_lines, std::size_t original_lines);

/// Mean of per-document ratios.
double effective_summarization_ratio(const std::vector<double>& per_document);

/// Relevant over total retrieved. Throws DomainError unless 0 <= relevant <= total and total >= 1.
double precision(std::size_t relevant_retrieved, std::size_t total_retrieved);

struct MeanRates {
    double doc_extraction_rate = 0.0;  // documents per second
    double info_retrieval_rate = 0.0;  // per second
    double retrieval_latency_minutes = 0.0;
    std::size_t excluded_zero_latencies = 0;
};

/// Eqs. 6-8 over every document of every record. Zero latencies are left out
/// of the reciprocal means and counted. Throws NoUsableLatencies when a rate
/// has no positive latency to work with.
MeanRates mean_rates(const std::vector<RunRecord>& records);

/// Fixed four-decimal rendering used in reports.
std::string format_fixed(double value, int decimals = 4);

} // namespace qsum
