#include "qsum/keyword_search.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <algorithm>
#include <set>

namespace qsum {

std::size_t score_sentence(std::string_view sentence, const KeywordSet& keywords)
{
    std::set<std::string> tokens;
    for (const auto& t : text::tokenize(sentence)) {
        tokens.insert(text::to_lower(t));
    }
    std::size_t count = 0;
    for (const auto& kw : keywords.all()) {
        count += tokens.count(kw);
    }
    return count;
}

ScoredSentence best_answer(const Document& doc, const KeywordSet& keywords)
{
    ScoredSentence best;
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
        const auto score = score_sentence(doc.sentences[i], keywords);
        if (score > best.match_count) {
            best = {i, doc.sentences[i], score};
        }
    }
    if (best.match_count == 0) {
        throw NoAnswer("no sentence in " + doc.source.location + " matches the query keywords");
    }
    return best;
}

std::string answer_with_context(const Document& doc, const ScoredSentence& answer, std::size_t context)
{
    const auto first = answer.index >= context ? answer.index - context : 0;
    const auto last = std::min(doc.sentences.size(), answer.index + context + 1);
    std::vector<std::string> parts(doc.sentences.begin() + static_cast<std::ptrdiff_t>(first),
                                   doc.sentences.begin() + static_cast<std::ptrdiff_t>(last));
    return text::join(parts, " ");
}

} // namespace qsum
