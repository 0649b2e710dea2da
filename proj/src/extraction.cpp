#include "qsum/extraction.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qsum {

std::vector<Component> segment(const Document& doc, std::size_t doc_ref, std::size_t component_size)
{
    if (component_size == 0) {
        throw DomainError("component size must be at least 1");
    }
    if (doc.sentences.empty()) {
        throw EmptyDocument("document " + doc.source.location + " has no sentences");
    }
    std::vector<Component> out;
    for (std::size_t start = 0; start < doc.sentences.size(); start += component_size) {
        const auto end = std::min(doc.sentences.size(), start + component_size);
        Component c;
        c.doc_ref = doc_ref;
        c.start_index = start;
        c.sentences.assign(doc.sentences.begin() + static_cast<std::ptrdiff_t>(start),
                           doc.sentences.begin() + static_cast<std::ptrdiff_t>(end));
        out.push_back(std::move(c));
    }
    return out;
}

Component weigh(Component component, const KeywordSet& keywords)
{
    component.noun_matches = 0;
    component.pronoun_matches = 0;
    for (const auto& sentence : component.sentences) {
        std::set<std::string> tokens;
        for (const auto& t : text::tokenize(sentence)) {
            tokens.insert(text::to_lower(t));
        }
        for (const auto& n : keywords.nouns()) {
            component.noun_matches += static_cast<std::int64_t>(tokens.count(n));
        }
        for (const auto& p : keywords.pronouns()) {
            component.pronoun_matches += static_cast<std::int64_t>(tokens.count(p));
        }
    }
    component.weight = 2 * component.noun_matches + component.pronoun_matches;
    return component;
}

std::vector<std::size_t> rank_order(const std::vector<Component>& components, const WeightScheme& scheme)
{
    std::vector<std::size_t> idx(components.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto wa = scheme(components[a]);
        const auto wb = scheme(components[b]);
        if (wa != wb) {
            return wa > wb;
        }
        return components[a].start_index < components[b].start_index;
    });
    return idx;
}

std::vector<Component> select(const std::vector<Component>& components, const SelectionPolicy& policy)
{
    std::vector<Component> out;
    if (components.empty()) {
        return out;
    }
    if (policy.mode == SelectionPolicy::Mode::TopK) {
        if (policy.k == 0) {
            throw DomainError("TopK selection needs k >= 1");
        }
        const auto order = rank_order(components, WeightScheme{});
        const auto n = std::min(policy.k, order.size());
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(components[order[i]]);
        }
        return out;
    }
    // W > sum / n, compared as W * n > sum to stay in integers.
    const auto n = static_cast<std::int64_t>(components.size());
    const auto sum = std::accumulate(components.begin(), components.end(), std::int64_t{0},
                                     [](std::int64_t acc, const Component& c) { return acc + c.weight; });
    for (const auto& c : components) {
        if (c.weight * n > sum) {
            out.push_back(c);
        }
    }
    return out;
}

ExtractionResult extract_all(const std::vector<Document>& docs, const KeywordSet& keywords,
                             const SelectionPolicy& policy, std::size_t component_size)
{
    ExtractionResult result;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (docs[d].fault) {
            ++result.faulty_documents;
            continue;
        }
        auto components = segment(docs[d], d, component_size);
        result.segment_counts.push_back(components.size());
        for (auto& c : components) {
            c = weigh(std::move(c), keywords);
        }
        for (auto& c : select(components, policy)) {
            result.components.push_back(std::move(c));
        }
    }
    if (result.faulty_documents == docs.size()) {
        throw AllDocumentsFaulty("every retrieved document is a fault");
    }
    return result;
}

} // namespace qsum
