#include "qsum/pipeline.hpp"

#include "qsum/error.hpp"
#include "qsum/metrics.hpp"
#include "qsum/text.hpp"

#include <map>

namespace qsum {

namespace {

PipelineConfig validated(PipelineConfig cfg)
{
    cfg.validate();
    return cfg;
}

Lexicon load_lexicon(const PipelineConfig& cfg)
{
    auto lex = Lexicon::load(cfg.lexicon_path);
    lex.add_wh_words(cfg.extra_wh_words);
    return lex;
}

} // namespace

std::unique_ptr<SearchBackend> make_backend(const PipelineConfig& config)
{
    if (config.backend == PipelineConfig::Backend::Fixture) {
        return std::make_unique<FixtureBackend>(config.fixture_path);
    }
    return std::make_unique<LiveBackend>(config.live);
}

std::size_t PipelineRun::fault_count() const
{
    std::size_t n = 0;
    if (keyword_path) {
        if (keyword_path->documents.empty() || keyword_path->documents.front().fault || !keyword_path->answer) {
            n = 1;
        }
    }
    if (concept_path) {
        n += concept_path->searches_without_results;
        for (const auto& d : concept_path->documents) {
            n += d.fault ? 1 : 0;
        }
    }
    return n;
}

std::optional<double> PipelineRun::effective_summarization_ratio() const
{
    if (!concept_path) {
        return std::nullopt;
    }
    std::map<std::size_t, std::size_t> kept;
    for (const auto& line : concept_path->summary) {
        ++kept[line.doc_ref];
    }
    std::vector<double> ratios;
    for (std::size_t d = 0; d < concept_path->documents.size(); ++d) {
        const auto& doc = concept_path->documents[d];
        if (doc.fault) {
            continue;
        }
        ratios.push_back(summarization_ratio(kept[d], doc.sentences.size()));
    }
    if (ratios.empty()) {
        return std::nullopt;
    }
    return qsum::effective_summarization_ratio(ratios);
}

Pipeline::Pipeline(PipelineConfig config)
    : config_(validated(std::move(config))), lexicon_(load_lexicon(config_)),
      tree_(ConceptTree::load(config_.tree_path)), backend_(make_backend(config_))
{
}

Pipeline::Pipeline(PipelineConfig config, Lexicon lexicon, ConceptTree tree, std::unique_ptr<SearchBackend> backend)
    : config_(std::move(config)), lexicon_(std::move(lexicon)), tree_(std::move(tree)), backend_(std::move(backend))
{
}

PipelineRun Pipeline::run(std::string_view query_text) const
{
    PipelineRun run;
    run.raw_query = std::string(query_text);
    run.tokens = tag(tokenize(query_text), lexicon_);
    run.category = categorize(run.tokens);
    try {
        run.keywords = extract_keywords(run.tokens);
    } catch (const EmptyKeywords& e) {
        run.message = e.what();
        return run;
    }
    if (run.category == QueryCategory::KeywordSearch) {
        run_keyword(run);
    } else {
        run_concept(run);
    }
    return run;
}

void Pipeline::run_keyword(PipelineRun& run) const
{
    auto& path = run.keyword_path.emplace();
    path.search_string = text::join(run.keywords.all(), " ");
    std::vector<SearchResult> results;
    try {
        results = backend_->search(path.search_string, 1);
    } catch (const NoResults& e) {
        run.message = e.what();
        return;
    }
    path.documents = fetch_documents(results, *backend_, config_.effective_latency_model());
    const auto& doc = path.documents.front();
    if (doc.fault) {
        run.message = "top document is unusable: " + doc.fault_reason;
        return;
    }
    try {
        path.answer = best_answer(doc, run.keywords);
    } catch (const NoAnswer& e) {
        run.message = e.what();
        return;
    }
    run.output = answer_with_context(doc, *path.answer, config_.answer_context) + "\n";
    run.status = RunStatus::Answered;
}

void Pipeline::run_concept(PipelineRun& run) const
{
    auto& path = run.concept_path.emplace();
    path.concepts = lookup(run.keywords, tree_, config_.default_concepts);
    path.expansion = expand(run.keywords, path.concepts);

    std::vector<SearchResult> results;
    for (const auto& [concept_word, search_string] : path.expansion.concept_queries) {
        try {
            for (auto& r : backend_->search(search_string, config_.results_per_query)) {
                results.push_back(std::move(r));
                path.doc_concepts.push_back(concept_word);
            }
        } catch (const NoResults&) {
            ++path.searches_without_results;
        }
    }
    if (results.empty()) {
        run.message = "no search results for any concept of the query";
        return;
    }
    path.documents = fetch_documents(results, *backend_, config_.effective_latency_model());
    try {
        path.extraction = extract_all(path.documents, path.expansion.keywords, config_.policy, config_.component_size);
        path.summary = aggregate(path.extraction.components, config_.dedup, lexicon_);
    } catch (const NoAnswerError& e) {
        run.message = e.what();
        return;
    }

    std::string out;
    std::string current;
    for (const auto& line : path.summary) {
        const auto& concept_word = path.doc_concepts[line.doc_ref];
        if (out.empty() || concept_word != current) {
            if (!out.empty()) {
                out += '\n';
            }
            out += "[" + concept_word + "]\n";
            current = concept_word;
        }
        out += line.text + "\n";
    }
    run.output = std::move(out);
    run.status = RunStatus::Answered;
}

} // namespace qsum
