#pragma once

#include "qsum/query_frontend.hpp"
#include "qsum/retrieval.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace qsum {

struct ScoredSentence {
    std::size_t index = 0;
    std::string text;
    std::size_t match_count = 0;
};

/// Number of distinct keywords occurring as whole tokens in the sentence.
std::size_t score_sentence(std::string_view sentence, const KeywordSet& keywords);

/// Highest-scoring sentence, earliest on ties. Throws NoAnswer when nothing matches.
ScoredSentence best_answer(const Document& doc, const KeywordSet& keywords);

/// The answer sentence with up to `context` neighbours on each side, space-joined.
std::string answer_with_context(const Document& doc, const ScoredSentence& answer, std::size_t context);

} // namespace qsum
