#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qsum {

enum class Tag { Noun, Pronoun, WhWord, Other };

std::string_view to_string(Tag tag);

struct TaggedToken {
    std::string surface;
    std::string normalized;
    Tag tag = Tag::Other;

    friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// Noun and pronoun keywords in first-seen order, each deduplicated.
class KeywordSet {
public:
    KeywordSet() = default;

    /// Appends a noun unless already present in either list. Empty strings are ignored.
    bool add_noun(std::string word);
    bool add_pronoun(std::string word);

    const std::vector<std::string>& nouns() const { return nouns_; }
    const std::vector<std::string>& pronouns() const { return pronouns_; }

    bool contains(std::string_view word) const;
    bool is_noun(std::string_view word) const;
    bool is_pronoun(std::string_view word) const;
    bool empty() const { return nouns_.empty() && pronouns_.empty(); }
    std::size_t size() const { return nouns_.size() + pronouns_.size(); }

    /// Nouns followed by pronouns.
    std::vector<std::string> all() const;

    friend bool operator==(const KeywordSet&, const KeywordSet&) = default;

private:
    std::vector<std::string> nouns_;
    std::vector<std::string> pronouns_;
};

enum class QueryCategory { KeywordSearch, ConceptWise };

std::string_view to_string(QueryCategory category);

struct Query {
    std::string raw;
    std::vector<TaggedToken> tokens;
    KeywordSet keywords;
    QueryCategory category = QueryCategory::ConceptWise;
};

/// Closed-class word lists used for tagging.
///
/// File format: one `<token> <tag>` entry per line, tag one of WH, PRON, NOUN
/// or STOP; `#` starts a comment line. A token may carry several tags, the
/// strongest wins (WH > PRON > NOUN > STOP).
class Lexicon {
public:
    static Lexicon load(const std::filesystem::path& path);
    static Lexicon parse(std::string_view contents, std::string_view origin = "<memory>");

    /// Registers extra wh-words (e.g. "how") on top of the file contents.
    void add_wh_words(const std::vector<std::string>& words);

    bool is_wh(std::string_view normalized) const;
    bool is_pronoun(std::string_view normalized) const;
    bool is_noun(std::string_view normalized) const;
    bool is_stop(std::string_view normalized) const;

    std::size_t size() const { return entries_.size(); }

private:
    enum Flags : unsigned { kWh = 1, kPron = 2, kNoun = 4, kStop = 8 };
    bool has(std::string_view normalized, unsigned flag) const;

    std::unordered_map<std::string, unsigned> entries_;
};

std::vector<std::string> tokenize(std::string_view raw);

/// Tags each token: lexicon classes first, then the fallback that capitalized
/// or numeric out-of-lexicon words are nouns and everything else is Other.
std::vector<TaggedToken> tag(const std::vector<std::string>& tokens, const Lexicon& lexicon);

QueryCategory categorize(const std::vector<TaggedToken>& tokens);

/// Throws EmptyKeywords when no noun or pronoun is present.
KeywordSet extract_keywords(const std::vector<TaggedToken>& tokens);

/// Same as extract_keywords but returns an empty set instead of throwing.
KeywordSet collect_keywords(const std::vector<TaggedToken>& tokens);

/// tokenize + tag + categorize + extract_keywords.
Query parse_query(std::string_view raw, const Lexicon& lexicon);

} // namespace qsum
