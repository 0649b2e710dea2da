#include "qsum/query_frontend.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace qsum {

std::string_view to_string(Tag tag)
{
    switch (tag) {
    case Tag::Noun:
        return "Noun";
    case Tag::Pronoun:
        return "Pronoun";
    case Tag::WhWord:
        return "WhWord";
    case Tag::Other:
        return "Other";
    }
    return "Other";
}

std::string_view to_string(QueryCategory category)
{
    return category == QueryCategory::KeywordSearch ? "KeywordSearch" : "ConceptWise";
}

bool KeywordSet::add_noun(std::string word)
{
    if (word.empty() || contains(word)) {
        return false;
    }
    nouns_.push_back(std::move(word));
    return true;
}

bool KeywordSet::add_pronoun(std::string word)
{
    if (word.empty() || contains(word)) {
        return false;
    }
    pronouns_.push_back(std::move(word));
    return true;
}

bool KeywordSet::is_noun(std::string_view word) const
{
    return std::find(nouns_.begin(), nouns_.end(), word) != nouns_.end();
}

bool KeywordSet::is_pronoun(std::string_view word) const
{
    return std::find(pronouns_.begin(), pronouns_.end(), word) != pronouns_.end();
}

bool KeywordSet::contains(std::string_view word) const { return is_noun(word) || is_pronoun(word); }

std::vector<std::string> KeywordSet::all() const
{
    std::vector<std::string> out = nouns_;
    out.insert(out.end(), pronouns_.begin(), pronouns_.end());
    return out;
}

Lexicon Lexicon::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LexiconMissing("cannot read lexicon file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

Lexicon Lexicon::parse(std::string_view contents, std::string_view origin)
{
    Lexicon lex;
    std::size_t line_no = 0;
    for (const auto& raw_line : text::split(contents, '\n')) {
        ++line_no;
        const auto line = text::trim(raw_line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string token;
        std::string tag_name;
        std::string extra;
        fields >> token >> tag_name;
        if (token.empty() || tag_name.empty() || (fields >> extra)) {
            throw LexiconMissing(std::string(origin) + ":" + std::to_string(line_no) +
                                 ": expected `<token> <tag>`");
        }
        unsigned flag = 0;
        if (tag_name == "WH") {
            flag = kWh;
        } else if (tag_name == "PRON") {
            flag = kPron;
        } else if (tag_name == "NOUN") {
            flag = kNoun;
        } else if (tag_name == "STOP") {
            flag = kStop;
        } else {
            throw LexiconMissing(std::string(origin) + ":" + std::to_string(line_no) + ": unknown tag `" +
                                 tag_name + "`");
        }
        lex.entries_[text::to_lower(token)] |= flag;
    }
    return lex;
}

void Lexicon::add_wh_words(const std::vector<std::string>& words)
{
    for (const auto& w : words) {
        auto norm = text::to_lower(text::trim(w));
        if (!norm.empty()) {
            entries_[norm] |= kWh;
        }
    }
}

bool Lexicon::has(std::string_view normalized, unsigned flag) const
{
    const auto it = entries_.find(std::string(normalized));
    return it != entries_.end() && (it->second & flag) != 0;
}

bool Lexicon::is_wh(std::string_view normalized) const { return has(normalized, kWh); }
bool Lexicon::is_pronoun(std::string_view normalized) const { return has(normalized, kPron); }
bool Lexicon::is_noun(std::string_view normalized) const { return has(normalized, kNoun); }
bool Lexicon::is_stop(std::string_view normalized) const { return has(normalized, kStop); }

std::vector<std::string> tokenize(std::string_view raw) { return text::tokenize(raw); }

namespace {

bool looks_like_noun(std::string_view surface)
{
    const auto first = static_cast<unsigned char>(surface.front());
    if (std::isupper(first) != 0) {
        return true;
    }
    return std::all_of(surface.begin(), surface.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

} // namespace

std::vector<TaggedToken> tag(const std::vector<std::string>& tokens, const Lexicon& lexicon)
{
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (const auto& surface : tokens) {
        TaggedToken t{surface, text::to_lower(surface), Tag::Other};
        if (t.normalized.empty()) {
            out.push_back(std::move(t));
            continue;
        }
        if (lexicon.is_wh(t.normalized)) {
            t.tag = Tag::WhWord;
        } else if (lexicon.is_pronoun(t.normalized)) {
            t.tag = Tag::Pronoun;
        } else if (lexicon.is_noun(t.normalized)) {
            t.tag = Tag::Noun;
        } else if (lexicon.is_stop(t.normalized)) {
            t.tag = Tag::Other;
        } else {
            t.tag = looks_like_noun(surface) ? Tag::Noun : Tag::Other;
        }
        out.push_back(std::move(t));
    }
    return out;
}

QueryCategory categorize(const std::vector<TaggedToken>& tokens)
{
    const bool has_wh =
        std::any_of(tokens.begin(), tokens.end(), [](const TaggedToken& t) { return t.tag == Tag::WhWord; });
    return has_wh ? QueryCategory::KeywordSearch : QueryCategory::ConceptWise;
}

KeywordSet collect_keywords(const std::vector<TaggedToken>& tokens)
{
    KeywordSet set;
    for (const auto& t : tokens) {
        if (t.tag == Tag::Noun) {
            set.add_noun(t.normalized);
        } else if (t.tag == Tag::Pronoun) {
            set.add_pronoun(t.normalized);
        }
    }
    return set;
}

KeywordSet extract_keywords(const std::vector<TaggedToken>& tokens)
{
    auto set = collect_keywords(tokens);
    if (set.empty()) {
        throw EmptyKeywords("query contains no noun or pronoun keywords");
    }
    return set;
}

Query parse_query(std::string_view raw, const Lexicon& lexicon)
{
    Query q;
    q.raw = std::string(raw);
    q.tokens = tag(tokenize(raw), lexicon);
    q.category = categorize(q.tokens);
    q.keywords = extract_keywords(q.tokens);
    return q;
}

} // namespace qsum
