#include "qsum/aggregation.hpp"
#include "qsum/error.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace qsum;
using Keys = std::vector<std::string>;

namespace {

const Lexicon& bundled()
{
    static const Lexicon lex = Lexicon::load(test::data_dir() / "lexicon.txt");
    return lex;
}

std::vector<LineKeywords> lines_of(std::vector<Keys> sets)
{
    std::vector<LineKeywords> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        out.push_back({i, "line " + std::to_string(i), std::move(sets[i])});
    }
    return out;
}

std::vector<std::size_t> indices(const std::vector<LineKeywords>& lines)
{
    std::vector<std::size_t> out;
    for (const auto& l : lines) {
        out.push_back(l.line_index);
    }
    return out;
}

using Idx = std::vector<std::size_t>;

} // namespace

TEST_CASE("line_keywords tags each sentence with the bundled lexicon")
{
    const auto lk = line_keywords({"Dhyan Chand scored.", "He scored.", "It was the one."}, bundled());
    REQUIRE(lk.size() == 3);
    CHECK(lk[0].keywords == Keys{"dhyan", "chand"});
    CHECK(lk[1].keywords == Keys{"he"});
    CHECK(lk[2].keywords == Keys{"it"});
    CHECK(line_keywords({"of the and"}, bundled())[0].keywords.empty());
    CHECK(line_keywords({}, bundled()).empty());
}

TEST_CASE("overlap_dedup applies the equal-size and subset rules")
{
    const DedupConfig cfg;
    CHECK(indices(overlap_dedup(lines_of({{"sachin", "tendulkar", "mumbai"}, {"sachin", "tendulkar", "mumbai"}}),
                                cfg)) == Idx{0});
    CHECK(indices(overlap_dedup(lines_of({{"a", "b", "c", "d"}, {"a", "b"}}), cfg)) == Idx{0});
    CHECK(indices(overlap_dedup(lines_of({{"a", "b"}, {"a", "b", "c", "d"}}), cfg)) == Idx{0});
    CHECK(indices(overlap_dedup(lines_of({{"a", "b"}, {"c", "d"}}), cfg)) == Idx{0, 1});
    // Three of four shared meets the three-quarter bar; two of four does not.
    CHECK(indices(overlap_dedup(lines_of({{"a", "b", "c", "d"}, {"a", "b", "c", "x"}}), cfg)) == Idx{0});
    CHECK(indices(overlap_dedup(lines_of({{"a", "b", "c", "d"}, {"a", "b", "x", "y"}}), cfg)) == Idx{0, 1});
    // Different sizes need full containment.
    CHECK(indices(overlap_dedup(lines_of({{"a", "b", "c"}, {"a", "x"}}), cfg)) == Idx{0, 1});
    // Lines without keywords are never compared.
    CHECK(indices(overlap_dedup(lines_of({{}, {}, {"a"}}), cfg)) == Idx{0, 1, 2});
}

TEST_CASE("discarded lines stop serving as references")
{
    // Line 1 falls to line 0; line 2 would only have matched line 1.
    const auto out = overlap_dedup(lines_of({{"a", "b", "c"}, {"a", "b"}, {"b", "z"}}), DedupConfig{});
    CHECK(indices(out) == Idx{0, 2});
}

TEST_CASE("pro_score matches hand evaluation")
{
    CHECK(pro_score(0, 4) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pro_score(1, 2) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(pro_score(1, 1) == 1.0);
    CHECK(pro_score(0, 1) == 1.0);
    CHECK(pro_score(2, 4) == doctest::Approx(0.25 * 0.25 * 0.25).epsilon(1e-15));
    CHECK_THROWS_AS(pro_score(0, 0), DomainError);
    CHECK_THROWS_AS(pro_score(3, 2), DomainError);
}

TEST_CASE("pro_score is bounded by 1/C")
{
    for (std::size_t c = 1; c <= 64; ++c) {
        CHECK(pro_score(0, c) == doctest::Approx(1.0 / static_cast<double>(c)).epsilon(1e-12));
        CHECK(pro_score(c, c) == doctest::Approx(1.0 / static_cast<double>(c)).epsilon(1e-12));
        for (std::size_t p = 0; p <= c; ++p) {
            CHECK(pro_score(p, c) <= 1.0 / static_cast<double>(c) + 1e-12);
        }
    }
}

TEST_CASE("probabilistic_dedup discards the reference line")
{
    const DedupConfig cfg;
    const auto two = probabilistic_dedup(lines_of({{"a", "b"}, {"a", "b"}}), cfg);
    CHECK(indices(two) == Idx{1});
    CHECK(indices(probabilistic_dedup(lines_of({{"a"}, {"b"}, {"c"}}), cfg)) == Idx{0, 1, 2});
    // Two disjoint lines score pro_score(0, 1) = 1 but have no match to act on.
    CHECK(indices(probabilistic_dedup(lines_of({{"a"}, {"b"}}), cfg)) == Idx{0, 1});
    CHECK(probabilistic_dedup({}, cfg).empty());
}

TEST_CASE("document-average threshold removes lines scoring above the mean")
{
    DedupConfig cfg;
    cfg.threshold_mode = DedupConfig::ThresholdMode::DocumentAverage;
    // Line 0 matches both others: PRO = 0.5. Lines 1 and 2 match only line 0:
    // PRO = 0.125 each. The mean is 0.25, so only line 0 goes.
    const auto lines = lines_of({{"a", "b", "c"}, {"a", "b"}, {"a", "c"}});
    const auto out = probabilistic_dedup(lines, cfg);
    CHECK(indices(out) == Idx{1, 2});
    cfg.threshold_mode = DedupConfig::ThresholdMode::Fixed;
    CHECK(indices(probabilistic_dedup(lines, cfg)) == Idx{0, 1, 2});
    cfg.threshold_mode = DedupConfig::ThresholdMode::DocumentAverage;
    CHECK(probabilistic_dedup(out, cfg) == out);
}

TEST_CASE("both passes are idempotent subsequences on random input")
{
    std::mt19937 rng(11);
    const Keys vocab{"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Keys> sets(rng() % 12);
        for (auto& s : sets) {
            for (const auto& w : vocab) {
                if (rng() % 3 == 0) {
                    s.push_back(w);
                }
            }
        }
        const auto lines = lines_of(sets);
        for (auto mode : {DedupConfig::ThresholdMode::Fixed, DedupConfig::ThresholdMode::DocumentAverage}) {
            DedupConfig cfg;
            cfg.threshold_mode = mode;
            const auto o = overlap_dedup(lines, cfg);
            const auto p = probabilistic_dedup(lines, cfg);
            CHECK(overlap_dedup(o, cfg) == o);
            CHECK(probabilistic_dedup(p, cfg) == p);
            for (const auto* out : {&o, &p}) {
                const auto idx = indices(*out);
                CHECK(std::is_sorted(idx.begin(), idx.end()));
                CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
            }
        }
    }
}

TEST_CASE("aggregate keeps one copy of a shared sentence")
{
    Component a;
    a.doc_ref = 0;
    a.start_index = 4;
    a.sentences = {"Dhyan Chand won three Olympic gold medals.", "Jhansi was his home town."};
    Component b;
    b.doc_ref = 1;
    b.sentences = {"Roop Singh played alongside.", "Dhyan Chand won three Olympic gold medals."};
    const auto out = aggregate({a, b}, DedupConfig{}, bundled());
    REQUIRE(out.size() == 3);
    CHECK(out[0].doc_ref == 0);
    CHECK(out[0].sentence_index == 4);
    CHECK(out[1].sentence_index == 5);
    CHECK(out[2].doc_ref == 1);
    CHECK(out[2].text == "Roop Singh played alongside.");
}

TEST_CASE("aggregate of keyword-disjoint lines is the identity")
{
    Component c;
    c.sentences = {"Kolkata hosts.", "Mumbai waits.", "Chennai sleeps."};
    const auto out = aggregate({c}, DedupConfig{}, bundled());
    REQUIRE(out.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(out[i].text == c.sentences[i]);
    }
}

TEST_CASE("aggregate rejects empty results and bad settings")
{
    CHECK_THROWS_AS(aggregate({}, DedupConfig{}, bundled()), EmptySummary);
    DedupConfig bad;
    bad.overlap_fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.overlap_fraction = 0.75;
    bad.fixed_threshold = 1.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
