#pragma once

#include "qsum/extraction.hpp"
#include "qsum/query_frontend.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qsum {

struct LineKeywords {
    std::size_t line_index = 0;
    std::string text;
    std::vector<std::string> keywords; // nouns then pronouns, no duplicates

    friend bool operator==(const LineKeywords&, const LineKeywords&) = default;
};

struct DedupConfig {
    enum class ThresholdMode { Fixed, DocumentAverage };

    double overlap_fraction = 0.75;
    ThresholdMode threshold_mode = ThresholdMode::Fixed;
    double fixed_threshold = 0.5;

    /// Throws DomainError when a field is out of (0, 1].
    void validate() const;
};

std::vector<LineKeywords> line_keywords(const std::vector<std::string>& sentences, const Lexicon& lexicon);

/// Pairwise pre-pass. Each surviving earlier line is a reference for later
/// lines; a later line is dropped when both keyword sets have the same size
/// and share at least `overlap_fraction` of them, or when the sizes differ and
/// the smaller set is contained in the larger. Lines without keywords are left
/// alone.
std::vector<LineKeywords> overlap_dedup(const std::vector<LineKeywords>& lines, const DedupConfig& cfg);

/// Redundancy score of a reference line that matched P of C compared lines:
/// (1/C) * (P/C)^P * (1 - P/C)^(C-P), with 0^0 = 1.
/// Throws DomainError unless 0 <= P <= C and C >= 1.
double pro_score(std::size_t successes, std::size_t comparisons);

/// Scores every surviving line against the others and removes the reference
/// line when its score exceeds the threshold and it matched at least once.
/// Scans repeat until nothing changes.
std::vector<LineKeywords> probabilistic_dedup(const std::vector<LineKeywords>& lines, const DedupConfig& cfg);

struct SummaryLine {
    std::size_t doc_ref = 0;
    std::size_t sentence_index = 0; // position in the source document
    std::string text;
};

/// Flattens the components, then runs both dedup passes. Throws EmptySummary
/// when nothing survives.
std::vector<SummaryLine> aggregate(const std::vector<Component>& components, const DedupConfig& cfg,
                                   const Lexicon& lexicon);

} // namespace qsum
