#include "qsum/evaluation.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qsum {

namespace {

RunRecord record_from_run(const LabeledQuery& q, const PipelineRun& run)
{
    RunRecord r;
    r.query_id = q.id;
    r.category = q.category;
    r.path = run.category == QueryCategory::KeywordSearch ? "keyword" : "concept";
    r.opinion_scores = q.opinion_scores;
    r.answered = run.status == RunStatus::Answered;
    r.relevant = r.answered && q.expected_relevant;
    r.outcome = r.answered ? "answered" : "no_answer";
    r.fault_docs = run.fault_count();

    const std::vector<Document>* docs = nullptr;
    if (run.keyword_path) {
        docs = &run.keyword_path->documents;
        r.summary_lines = r.answered ? 1 : 0;
    } else if (run.concept_path) {
        docs = &run.concept_path->documents;
        r.summary_lines = run.concept_path->summary.size();
        r.concept_queries = run.concept_path->expansion.concept_queries.size();
        r.documents_segmented = run.concept_path->extraction.segment_counts.size();
        for (auto n : run.concept_path->extraction.segment_counts) {
            r.components_segmented += n;
        }
    }
    if (docs != nullptr) {
        for (const auto& d : *docs) {
            r.doc_extraction_latency.push_back(d.fetch_latency);
            r.info_retrieval_latency.push_back(d.convert_latency);
            if (!d.fault) {
                r.original_lines += d.sentences.size();
                ++r.documents_used;
            }
        }
    }
    if (run.concept_path) {
        r.summarization_ratio = run.effective_summarization_ratio().value_or(0.0);
    } else if (r.original_lines > 0) {
        r.summarization_ratio = summarization_ratio(r.summary_lines, r.original_lines);
    }
    return r;
}

double safe_div(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

std::string opt(const std::optional<double>& v) { return v ? format_fixed(*v) : "NA"; }

std::string fmt_latency(double seconds) { return format_fixed(seconds, 9); }

} // namespace

std::vector<LabeledQuery> load_labels(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read labels file: " + path.string());
    }
    std::vector<LabeledQuery> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (text::trim(line).empty() || line.front() == '#' || line.rfind("query_id\t", 0) == 0) {
            continue;
        }
        const auto where = path.string() + ":" + std::to_string(line_no);
        const auto cols = text::split(line, '\t');
        if (cols.size() < 4 || cols.size() > 5) {
            throw ConfigError(where + ": expected 4 or 5 tab-separated columns");
        }
        LabeledQuery q;
        q.id = text::trim(cols[0]);
        q.text = text::trim(cols[1]);
        q.category = text::to_lower(text::trim(cols[2]));
        const auto rel = text::trim(cols[3]);
        if (rel != "0" && rel != "1") {
            throw ConfigError(where + ": expected_relevant must be 0 or 1");
        }
        q.expected_relevant = rel == "1";
        if (cols.size() == 5) {
            for (const auto& s : text::split(cols[4], ',')) {
                const auto t = text::trim(s);
                if (t.empty()) {
                    continue;
                }
                try {
                    std::size_t used = 0;
                    const double v = std::stod(t, &used);
                    if (used != t.size() || v < 0.0 || v > 10.0) {
                        throw std::invalid_argument("score");
                    }
                    q.opinion_scores.push_back(v);
                } catch (const std::exception&) {
                    throw ConfigError(where + ": opinion scores must be numbers in [0, 10]");
                }
            }
        }
        if (q.id.empty() || q.category.empty()) {
            throw ConfigError(where + ": empty query id or category");
        }
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<MetricsReport> summarize(const std::vector<RunRecord>& records)
{
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& r : records) {
        const std::pair<std::string, std::string> key{r.path, r.category};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
        }
    }
    std::vector<MetricsReport> out;
    for (const auto& [path, category] : keys) {
        std::vector<RunRecord> group;
        for (const auto& r : records) {
            if (r.path == path && r.category == category) {
                group.push_back(r);
            }
        }
        MetricsReport m;
        m.category = category;
        m.path = path;
        m.queries = group.size();
        std::vector<double> scores;
        double ratio_sum = 0.0;
        std::size_t ratio_count = 0;
        std::size_t concept_queries = 0;
        std::size_t docs_used = 0;
        std::size_t docs_segmented = 0;
        std::size_t components = 0;
        std::size_t lines = 0;
        for (const auto& r : group) {
            m.relevant += r.relevant ? 1 : 0;
            m.fault_count += r.fault_docs;
            scores.insert(scores.end(), r.opinion_scores.begin(), r.opinion_scores.end());
            // A query with no summary has no ratio to contribute.
            if (r.answered) {
                ratio_sum += r.summarization_ratio;
                ++ratio_count;
            }
            concept_queries += r.concept_queries;
            docs_used += r.documents_used;
            docs_segmented += r.documents_segmented;
            components += r.components_segmented;
            lines += r.summary_lines;
        }
        if (!scores.empty()) {
            m.mos = mos(scores);
        }
        m.summarization_ratio = safe_div(ratio_sum, static_cast<double>(ratio_count));
        m.precision = precision(m.relevant, m.queries);
        try {
            m.rates = mean_rates(group);
        } catch (const NoUsableLatencies&) {
            m.rates.reset();
        }
        m.components_per_document = safe_div(static_cast<double>(components), static_cast<double>(docs_segmented));
        m.documents_per_concept = safe_div(static_cast<double>(docs_used), static_cast<double>(concept_queries));
        m.lines_per_concept = safe_div(static_cast<double>(lines), static_cast<double>(concept_queries));
        out.push_back(std::move(m));
    }
    return out;
}

Evaluation evaluate(const std::vector<LabeledQuery>& queries, const Pipeline& pipeline,
                    const std::optional<std::string>& only_category)
{
    Evaluation ev;
    for (const auto& q : queries) {
        if (only_category && q.category != text::to_lower(*only_category)) {
            continue;
        }
        RunRecord record;
        try {
            record = record_from_run(q, pipeline.run(q.text));
            if (!record.answered) {
                ev.warnings.push_back(q.id + ": no answer");
            }
        } catch (const std::exception& e) {
            record.query_id = q.id;
            record.category = q.category;
            record.path = "concept";
            record.opinion_scores = q.opinion_scores;
            record.fault_docs = 1;
            record.outcome = "error";
            ev.warnings.push_back(q.id + ": " + e.what());
        }
        ev.records.push_back(std::move(record));
    }
    ev.reports = summarize(ev.records);
    for (const auto& m : ev.reports) {
        if (m.rates && m.rates->excluded_zero_latencies > 0) {
            ev.warnings.push_back(m.category + ": " + std::to_string(m.rates->excluded_zero_latencies) +
                                  " zero latencies excluded from rate means");
        }
    }
    return ev;
}

std::string render_tsv(const Evaluation& ev)
{
    std::ostringstream out;
    out << "# Keyword search results by query category\n";
    out << "Query Category\tNo. of Queries in Category\tMean Doc. Extraction Rate (1/s)\t"
           "Mean Info. Retrieval Rate (1/s)\tMean Latency Time(Min)\tFault Count\tMean Opinion Score(10)\n";
    for (const auto& m : ev.reports) {
        if (m.path != "keyword") {
            continue;
        }
        out << m.category << '\t' << m.queries << '\t'
            << (m.rates ? format_fixed(m.rates->doc_extraction_rate) : "NA") << '\t'
            << (m.rates ? format_fixed(m.rates->info_retrieval_rate) : "NA") << '\t'
            << (m.rates ? format_fixed(m.rates->retrieval_latency_minutes) : "NA") << '\t' << m.fault_count << '\t'
            << opt(m.mos) << '\n';
    }
    out << "\n# Concept-wise search results by query category\n";
    out << "Query Category\tNo. of queries\tResults obtained queries\tprecision\t"
           "Avg. no. of components per document\tAverage number of documents used in information retrieval\t"
           "Avg. no. lines in the resultant document per concept\tSummarization ratio\tFault Count\t"
           "Mean Opinion Score(10)\n";
    for (const auto& m : ev.reports) {
        if (m.path != "concept") {
            continue;
        }
        out << m.category << '\t' << m.queries << '\t' << m.relevant << '\t' << format_fixed(m.precision) << '\t'
            << format_fixed(m.components_per_document) << '\t' << format_fixed(m.documents_per_concept) << '\t'
            << format_fixed(m.lines_per_concept) << '\t' << format_fixed(m.summarization_ratio) << '\t'
            << m.fault_count << '\t' << opt(m.mos) << '\n';
    }
    out << "\n# Per-query records\n";
    out << "query_id\tcategory\tpath\toutcome\trelevant\tdocuments\tfault_docs\tconcept_queries\t"
           "documents_used\tdocuments_segmented\tcomponents_segmented\tsummary_lines\toriginal_lines\t"
           "summarization_ratio\topinion_scores\n";
    for (const auto& r : ev.records) {
        std::vector<std::string> scores;
        for (double s : r.opinion_scores) {
            std::ostringstream v;
            v << s;
            scores.push_back(v.str());
        }
        out << r.query_id << '\t' << r.category << '\t' << r.path << '\t' << r.outcome << '\t' << (r.relevant ? 1 : 0)
            << '\t' << r.doc_extraction_latency.size() << '\t' << r.fault_docs << '\t' << r.concept_queries << '\t'
            << r.documents_used << '\t' << r.documents_segmented << '\t' << r.components_segmented << '\t'
            << r.summary_lines << '\t' << r.original_lines << '\t' << format_fixed(r.summarization_ratio, 9) << '\t'
            << text::join(scores, ",") << '\n';
    }
    out << "\n# Per-document latencies (seconds)\n";
    out << "query_id\tdocument\tdoc_extraction_latency\tinfo_retrieval_latency\n";
    for (const auto& r : ev.records) {
        for (std::size_t i = 0; i < r.doc_extraction_latency.size(); ++i) {
            out << r.query_id << '\t' << i << '\t' << fmt_latency(r.doc_extraction_latency[i]) << '\t'
                << fmt_latency(r.info_retrieval_latency[i]) << '\n';
        }
    }
    return out.str();
}

} // namespace qsum
