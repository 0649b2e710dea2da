#pragma once

#include "qsum/query_frontend.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsum {

struct ConceptNode {
    std::string label;
    std::vector<std::string> aliases;
    std::vector<std::string> concepts;
    std::vector<ConceptNode> children;

    friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

/// Domain hierarchy mapping entities (players, grounds, series) to the concept
/// words used for concept-wise expansion. Immutable once built.
class ConceptTree {
public:
    /// Validates and normalizes (lowercases) labels, aliases and concepts.
    /// Throws TreeValidationError on empty labels, duplicate sibling labels or
    /// duplicate concepts at one node.
    explicit ConceptTree(ConceptNode root);

    static ConceptTree load(const std::filesystem::path& path);
    static ConceptTree parse(std::string_view contents);

    const ConceptNode& root() const { return root_; }

    /// Compact structured-text form readable by parse().
    std::string serialize() const;

    /// Indented human-readable rendering, one node per line.
    std::string render() const;

    friend bool operator==(const ConceptTree&, const ConceptTree&) = default;

private:
    ConceptNode root_;
};

/// Concepts of the deepest node whose label or an alias matches the noun
/// keywords. Multi-word labels match when all of their words are keywords.
/// Equal depth resolves to the first node in pre-order. A matched node with no
/// concepts of its own inherits the nearest ancestor's list; no match at all
/// yields `defaults`.
std::vector<std::string> lookup(const KeywordSet& keywords, const ConceptTree& tree,
                                const std::vector<std::string>& defaults);

struct ExpandedQuery {
    KeywordSet base_keywords;
    /// (concept word, search string) in concept order.
    std::vector<std::pair<std::string, std::string>> concept_queries;
    /// Base nouns and concept words as nouns, base pronouns as pronouns.
    KeywordSet keywords;
};

ExpandedQuery expand(const KeywordSet& keywords, const std::vector<std::string>& concepts);

} // namespace qsum
