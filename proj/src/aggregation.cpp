#include "qsum/aggregation.hpp"

#include "qsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qsum {

namespace {

std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::size_t n = 0;
    for (const auto& x : a) {
        n += std::find(b.begin(), b.end(), x) != b.end() ? 1 : 0;
    }
    return n;
}

bool overlap_rule_fires(const LineKeywords& ref, const LineKeywords& later, double fraction)
{
    const auto n1 = ref.keywords.size();
    const auto n2 = later.keywords.size();
    if (n1 == 0 || n2 == 0) {
        return false;
    }
    const auto common = intersection_size(ref.keywords, later.keywords);
    if (n1 == n2) {
        return static_cast<double>(common) >= fraction * static_cast<double>(n1);
    }
    return common == std::min(n1, n2);
}

bool lines_match(const LineKeywords& a, const LineKeywords& b, double fraction)
{
    if (a.keywords.empty() || b.keywords.empty()) {
        return false;
    }
    const auto smaller = std::min(a.keywords.size(), b.keywords.size());
    return static_cast<double>(intersection_size(a.keywords, b.keywords)) >= fraction * static_cast<double>(smaller);
}

double pow_zero_one(double base, std::size_t exponent)
{
    return exponent == 0 ? 1.0 : std::pow(base, static_cast<double>(exponent));
}

struct LineScore {
    std::size_t successes = 0;
    std::size_t comparisons = 0;
};

LineScore score_against(std::size_t r, const std::vector<LineKeywords>& lines, const std::vector<bool>& alive,
                        double fraction)
{
    LineScore s;
    for (std::size_t j = 0; j < lines.size(); ++j) {
        if (j == r || !alive[j]) {
            continue;
        }
        ++s.comparisons;
        s.successes += lines_match(lines[r], lines[j], fraction) ? 1 : 0;
    }
    return s;
}

// Mean score over every live line that has something to compare against.
double average_threshold(const std::vector<LineKeywords>& lines, const std::vector<bool>& alive, double fraction)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (!alive[r]) {
            continue;
        }
        const auto s = score_against(r, lines, alive, fraction);
        if (s.comparisons == 0) {
            continue;
        }
        sum += pro_score(s.successes, s.comparisons);
        ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

} // namespace

void DedupConfig::validate() const
{
    if (!(overlap_fraction > 0.0 && overlap_fraction <= 1.0)) {
        throw DomainError("dedup.overlap_fraction must be in (0, 1]");
    }
    if (!(fixed_threshold > 0.0 && fixed_threshold <= 1.0)) {
        throw DomainError("dedup.fixed_threshold must be in (0, 1]");
    }
}

std::vector<LineKeywords> line_keywords(const std::vector<std::string>& sentences, const Lexicon& lexicon)
{
    std::vector<LineKeywords> out;
    out.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        const auto keywords = collect_keywords(tag(tokenize(sentences[i]), lexicon));
        out.push_back({i, sentences[i], keywords.all()});
    }
    return out;
}

std::vector<LineKeywords> overlap_dedup(const std::vector<LineKeywords>& lines, const DedupConfig& cfg)
{
    std::vector<LineKeywords> kept;
    for (const auto& line : lines) {
        const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const LineKeywords& ref) {
            return overlap_rule_fires(ref, line, cfg.overlap_fraction);
        });
        if (!redundant) {
            kept.push_back(line);
        }
    }
    return kept;
}

double pro_score(std::size_t successes, std::size_t comparisons)
{
    if (comparisons == 0 || successes > comparisons) {
        throw DomainError("pro_score needs 0 <= P <= C and C >= 1");
    }
    const double c = static_cast<double>(comparisons);
    const double p = static_cast<double>(successes) / c;
    return (1.0 / c) * pow_zero_one(p, successes) * pow_zero_one(1.0 - p, comparisons - successes);
}

std::vector<LineKeywords> probabilistic_dedup(const std::vector<LineKeywords>& lines, const DedupConfig& cfg)
{
    std::vector<bool> alive(lines.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        const double threshold = cfg.threshold_mode == DedupConfig::ThresholdMode::Fixed
                                     ? cfg.fixed_threshold
                                     : average_threshold(lines, alive, cfg.overlap_fraction);
        for (std::size_t r = 0; r < lines.size(); ++r) {
            if (!alive[r]) {
                continue;
            }
            const auto s = score_against(r, lines, alive, cfg.overlap_fraction);
            if (s.comparisons == 0 || s.successes == 0) {
                continue;
            }
            if (pro_score(s.successes, s.comparisons) > threshold) {
                alive[r] = false;
                changed = true;
            }
        }
    }
    std::vector<LineKeywords> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (alive[i]) {
            out.push_back(lines[i]);
        }
    }
    return out;
}

std::vector<SummaryLine> aggregate(const std::vector<Component>& components, const DedupConfig& cfg,
                                   const Lexicon& lexicon)
{
    cfg.validate();
    std::vector<SummaryLine> flat;
    for (const auto& c : components) {
        for (std::size_t i = 0; i < c.sentences.size(); ++i) {
            flat.push_back({c.doc_ref, c.start_index + i, c.sentences[i]});
        }
    }
    std::vector<std::string> texts;
    texts.reserve(flat.size());
    for (const auto& l : flat) {
        texts.push_back(l.text);
    }
    const auto survivors = probabilistic_dedup(overlap_dedup(line_keywords(texts, lexicon), cfg), cfg);
    if (survivors.empty()) {
        throw EmptySummary("every line was eliminated as redundant");
    }
    std::vector<SummaryLine> out;
    out.reserve(survivors.size());
    for (const auto& s : survivors) {
        out.push_back(flat[s.line_index]);
    }
    return out;
}

} // namespace qsum
