#pragma once

#include "qsum/aggregation.hpp"
#include "qsum/concept_tree.hpp"
#include "qsum/config.hpp"
#include "qsum/extraction.hpp"
#include "qsum/keyword_search.hpp"
#include "qsum/query_frontend.hpp"
#include "qsum/retrieval.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsum {

enum class RunStatus {
    Answered,
    NoAnswer, // no keywords, no results, no matching sentence, all faults, empty summary
};

struct KeywordPath {
    std::string search_string;
    std::vector<Document> documents; // zero or one
    std::optional<ScoredSentence> answer;
};

struct ConceptPath {
    std::vector<std::string> concepts;
    ExpandedQuery expansion;
    std::vector<Document> documents;        // ordered by (concept, rank)
    std::vector<std::string> doc_concepts;  // concept word per document
    std::size_t searches_without_results = 0;
    ExtractionResult extraction;
    std::vector<SummaryLine> summary;
};

/// Everything one query run produced, including partial state on NoAnswer.
struct PipelineRun {
    std::string raw_query;
    std::vector<TaggedToken> tokens;
    QueryCategory category = QueryCategory::ConceptWise;
    KeywordSet keywords;
    RunStatus status = RunStatus::NoAnswer;
    std::string message; // why there is no answer
    std::optional<KeywordPath> keyword_path;
    std::optional<ConceptPath> concept_path;
    std::string output; // rendered answer or summary, newline-terminated

    /// Documents that failed to load or to yield an answer.
    std::size_t fault_count() const;
    /// Mean over non-fault documents of (summary lines from it / its sentences).
    std::optional<double> effective_summarization_ratio() const;
};

class Pipeline {
public:
    /// Loads lexicon, concept tree and backend named by the config.
    explicit Pipeline(PipelineConfig config);
    Pipeline(PipelineConfig config, Lexicon lexicon, ConceptTree tree, std::unique_ptr<SearchBackend> backend);

    /// Throws only for configuration or backend failures; unanswerable
    /// queries come back with status NoAnswer.
    PipelineRun run(std::string_view query_text) const;

    const PipelineConfig& config() const { return config_; }
    const Lexicon& lexicon() const { return lexicon_; }

private:
    void run_keyword(PipelineRun& run) const;
    void run_concept(PipelineRun& run) const;

    PipelineConfig config_;
    Lexicon lexicon_;
    ConceptTree tree_;
    std::unique_ptr<SearchBackend> backend_;
};

std::unique_ptr<SearchBackend> make_backend(const PipelineConfig& config);

} // namespace qsum
