#pragma once

#include "qsum/query_frontend.hpp"
#include "qsum/retrieval.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qsum {

/// A run of consecutive sentences from one document, weighed as a unit.
struct Component {
    std::size_t doc_ref = 0;     // index into the document list
    std::size_t start_index = 0; // first sentence, zero-based
    std::vector<std::string> sentences;
    std::int64_t noun_matches = 0;
    std::int64_t pronoun_matches = 0;
    std::int64_t weight = 0; // 2 * noun_matches + pronoun_matches

    friend bool operator==(const Component&, const Component&) = default;
};

struct SelectionPolicy {
    enum class Mode { TopK, AboveAverage };
    Mode mode = Mode::TopK;
    std::size_t k = 3;
};

inline constexpr std::size_t kDefaultComponentSize = 10;

/// Consecutive blocks of `component_size` sentences; the last block keeps the
/// remainder. Throws EmptyDocument for a document without sentences.
std::vector<Component> segment(const Document& doc, std::size_t doc_ref,
                               std::size_t component_size = kDefaultComponentSize);

/// Each sentence adds the number of distinct noun (pronoun) keywords it contains.
Component weigh(Component component, const KeywordSet& keywords);

/// TopK: the k heaviest, ordered by weight descending then position.
/// AboveAverage: every component strictly heavier than the mean, in position order.
std::vector<Component> select(const std::vector<Component>& components, const SelectionPolicy& policy);

/// Linear weight with arbitrary coefficients; the default pair is the one stored in Component::weight.
struct WeightScheme {
    double noun = 2.0;
    double pronoun = 1.0;

    double operator()(const Component& c) const
    {
        return noun * static_cast<double>(c.noun_matches) + pronoun * static_cast<double>(c.pronoun_matches);
    }
};

/// Indices of `components` sorted by scheme weight descending, ties by position.
std::vector<std::size_t> rank_order(const std::vector<Component>& components, const WeightScheme& scheme);

struct ExtractionResult {
    std::vector<Component> components; // grouped by document, document order
    std::size_t faulty_documents = 0;
    /// Components produced by segmentation per non-fault document.
    std::vector<std::size_t> segment_counts;
};

/// segment -> weigh -> select over every non-fault document.
/// Throws AllDocumentsFaulty when no document is usable.
ExtractionResult extract_all(const std::vector<Document>& docs, const KeywordSet& keywords,
                             const SelectionPolicy& policy, std::size_t component_size = kDefaultComponentSize);

} // namespace qsum
