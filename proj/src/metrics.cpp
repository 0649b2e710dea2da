#include "qsum/metrics.hpp"

#include "qsum/error.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace qsum {

double mos(const std::vector<double>& scores)
{
    if (scores.empty()) {
        throw EmptyScores("MOS needs at least one opinion score");
    }
    double sum = 0.0;
    for (double s : scores) {
        if (!(s >= 0.0 && s <= 10.0)) {
            throw DomainError("opinion scores must lie in [0, 10]");
        }
        sum += s;
    }
    return sum / static_cast<double>(scores.size());
}

double summarization_ratio(std::size_t summary_lines, std::size_t original_lines)
{
    if (original_lines == 0 || summary_lines > original_lines) {
        throw DomainError("summarization ratio needs 0 <= summary <= original and original >= 1");
    }
    return static_cast<double>(summary_lines) / static_cast<double>(original_lines);
}

double effective_summarization_ratio(const std::vector<double>& per_document)
{
    if (per_document.empty()) {
        throw DomainError("effective summarization ratio needs at least one document");
    }
    return std::accumulate(per_document.begin(), per_document.end(), 0.0) / static_cast<double>(per_document.size());
}

double precision(std::size_t relevant_retrieved, std::size_t total_retrieved)
{
    if (total_retrieved == 0 || relevant_retrieved > total_retrieved) {
        throw DomainError("precision needs 0 <= relevant <= total and total >= 1");
    }
    return static_cast<double>(relevant_retrieved) / static_cast<double>(total_retrieved);
}

MeanRates mean_rates(const std::vector<RunRecord>& records)
{
    MeanRates out;
    double doc_rate_sum = 0.0;
    double info_rate_sum = 0.0;
    double latency_sum = 0.0;
    std::size_t doc_n = 0;
    std::size_t info_n = 0;
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.doc_extraction_latency.size() != r.info_retrieval_latency.size()) {
            throw DomainError("latency lists of record " + r.query_id + " differ in length");
        }
        for (std::size_t i = 0; i < r.doc_extraction_latency.size(); ++i) {
            const double doc = r.doc_extraction_latency[i];
            const double info = r.info_retrieval_latency[i];
            if (!(doc >= 0.0) || !(info >= 0.0) || !std::isfinite(doc) || !std::isfinite(info)) {
                throw DomainError("latencies must be finite and nonnegative");
            }
            if (doc > 0.0) {
                doc_rate_sum += 1.0 / doc;
                ++doc_n;
            } else {
                ++out.excluded_zero_latencies;
            }
            if (info > 0.0) {
                info_rate_sum += 1.0 / info;
                ++info_n;
            } else {
                ++out.excluded_zero_latencies;
            }
            latency_sum += doc + info;
            ++n;
        }
    }
    if (doc_n == 0 || info_n == 0) {
        throw NoUsableLatencies("no positive latency available for the rate formulas");
    }
    out.doc_extraction_rate = doc_rate_sum / static_cast<double>(doc_n);
    out.info_retrieval_rate = info_rate_sum / static_cast<double>(info_n);
    out.retrieval_latency_minutes = latency_sum / static_cast<double>(n) / 60.0;
    return out;
}

std::string format_fixed(double value, int decimals)
{
    if (!std::isfinite(value)) {
        return "NA";
    }
    // avoid rendering -0.0000
    if (std::fabs(value) < 0.5 * std::pow(10.0, -decimals)) {
        value = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

} // namespace qsum
