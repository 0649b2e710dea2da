#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsum {

struct SearchResult {
    std::string query_string;
    int rank = 1; // 1 = top
    std::string location;
    std::optional<std::string> title;

    friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

struct Document {
    SearchResult source;
    std::vector<std::string> sentences;
    double fetch_latency = 0.0;   // seconds
    double convert_latency = 0.0; // seconds
    bool fault = false;
    std::string fault_reason;
};

/// Where search strings are resolved and pages come from.
class SearchBackend {
public:
    virtual ~SearchBackend() = default;

    /// At most k results ranked from 1. Throws NoResults or BackendUnavailable.
    virtual std::vector<SearchResult> search(std::string_view query_string, int k) const = 0;

    /// Raw page bytes. Throws BackendUnavailable.
    virtual std::string fetch(const SearchResult& result) const = 0;
};

/// Offline corpus: a directory holding `manifest.tsv` (columns query_string,
/// rank, relative_path, title) and the pages it references.
class FixtureBackend : public SearchBackend {
public:
    /// Throws CorpusError when the manifest is unreadable or malformed.
    explicit FixtureBackend(std::filesystem::path root);

    std::vector<SearchResult> search(std::string_view query_string, int k) const override;
    std::string fetch(const SearchResult& result) const override;

    const std::filesystem::path& root() const { return root_; }

    /// Lowercased, punctuation-free, single-spaced form used as the manifest key.
    static std::string normalize_query(std::string_view query_string);

private:
    std::filesystem::path root_;
    std::map<std::string, std::vector<SearchResult>> entries_;
};

struct LiveBackendConfig {
    /// `{query}` is replaced by the URL-encoded search string; without the
    /// placeholder a `q=` parameter is appended.
    std::string endpoint_url;
    /// `tag`, `.class` or `tag.class`; matching elements must carry an href.
    std::string result_selector = "a";
    double timeout_seconds = 10.0;
};

/// Thin HTTP client over a search endpoint that returns an HTML result page.
class LiveBackend : public SearchBackend {
public:
    explicit LiveBackend(LiveBackendConfig config);

    std::vector<SearchResult> search(std::string_view query_string, int k) const override;
    std::string fetch(const SearchResult& result) const override;

private:
    std::string get(const std::string& url) const;

    LiveBackendConfig config_;
};

/// Links selected from an HTML page, in document order, as (href, anchor text).
std::vector<std::pair<std::string, std::string>> select_links(std::string_view html, std::string_view selector);

/// Strips markup: drops script/style/head/title content and comments, decodes
/// entities, turns block-level boundaries into blank lines and collapses other
/// whitespace. Never throws; malformed markup degrades to best-effort stripping.
std::string html_to_text(std::string_view html);

/// Sentence split on . ! ? followed by whitespace or end of text, and on blank
/// lines. Known abbreviations ("mr.", "vs.", ...) do not end a sentence.
std::vector<std::string> segment_sentences(std::string_view text);

enum class LatencyModel {
    Measured,  // steady_clock
    Simulated, // derived from page size; deterministic
};

/// fetch + html_to_text + segment_sentences. Failures and empty pages become
/// fault documents instead of exceptions.
Document fetch_document(const SearchResult& result, const SearchBackend& backend,
                        LatencyModel latency = LatencyModel::Measured);

/// Fetches concurrently; output order equals input order.
std::vector<Document> fetch_documents(const std::vector<SearchResult>& results, const SearchBackend& backend,
                                      LatencyModel latency = LatencyModel::Measured);

} // namespace qsum
