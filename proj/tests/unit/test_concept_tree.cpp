#include "qsum/concept_tree.hpp"
#include "qsum/error.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace qsum;

namespace {

const ConceptTree& bundled()
{
    static const ConceptTree tree = ConceptTree::load(test::data_dir() / "cricket_hockey.tree");
    return tree;
}

KeywordSet nouns(std::initializer_list<const char*> words)
{
    KeywordSet k;
    for (const char* w : words) {
        k.add_noun(w);
    }
    return k;
}

const std::vector<std::string> kDefaults{"overview"};

} // namespace

TEST_CASE("bundled tree carries player and ground concepts")
{
    const std::vector<std::string> player{"personal", "career", "achievements"};
    const std::vector<std::string> ground{"demography", "matches"};
    CHECK(lookup(nouns({"dhyan", "chand"}), bundled(), kDefaults) == player);
    CHECK(lookup(nouns({"sachin", "tendulkar"}), bundled(), kDefaults) == player);
    CHECK(lookup(nouns({"dhanraj", "pillai"}), bundled(), kDefaults) == player);
    CHECK(lookup(nouns({"eden", "gardens"}), bundled(), kDefaults) == ground);
    CHECK(lookup(nouns({"wankhede", "stadium"}), bundled(), kDefaults) == ground);
}

TEST_CASE("lookup falls back to defaults and needs every word of a label")
{
    CHECK(lookup(nouns({"zzz"}), bundled(), kDefaults) == kDefaults);
    CHECK(lookup(KeywordSet{}, bundled(), kDefaults) == kDefaults);
    // "dhyan" alone does not match the two-word label.
    CHECK(lookup(nouns({"dhyan"}), bundled(), kDefaults) == std::vector<std::string>{"overview"});
}

TEST_CASE("aliases match like labels")
{
    CHECK(lookup(nouns({"wizard"}), bundled(), kDefaults) ==
          std::vector<std::string>{"personal", "career", "achievements"});
}

TEST_CASE("equal-depth matches resolve to the first node in tree order")
{
    const auto tree = ConceptTree::parse(R"({"label": "root", "children": [
        {"label": "players", "children": [{"label": "ajit", "concepts": ["personal"]}]},
        {"label": "grounds", "children": [{"label": "kolkata", "concepts": ["demography"]}]}
    ]})");
    CHECK(lookup(nouns({"ajit", "kolkata"}), tree, kDefaults) == std::vector<std::string>{"personal"});
    CHECK(lookup(nouns({"kolkata", "ajit"}), tree, kDefaults) == std::vector<std::string>{"personal"});
}

TEST_CASE("deeper matches win and concept-less nodes inherit")
{
    const auto tree = ConceptTree::parse(R"({"label": "sports", "concepts": ["overview"], "children": [
        {"label": "hockey", "concepts": ["history"], "children": [
            {"label": "players", "children": [{"label": "roop singh"}]}
        ]}
    ]})");
    CHECK(lookup(nouns({"hockey"}), tree, kDefaults) == std::vector<std::string>{"history"});
    CHECK(lookup(nouns({"hockey", "roop", "singh"}), tree, {"x"}) == std::vector<std::string>{"history"});
    CHECK(lookup(nouns({"sports"}), tree, {"x"}) == std::vector<std::string>{"overview"});
}

TEST_CASE("parse rejects empty, malformed and invalid trees")
{
    CHECK_THROWS_AS(ConceptTree::parse(""), TreeParseError);
    CHECK_THROWS_AS(ConceptTree::parse("   \n"), TreeParseError);
    CHECK_THROWS_AS(ConceptTree::parse("{\"label\": "), TreeParseError);
    CHECK_THROWS_AS(ConceptTree::parse(R"({"label": "a", "colour": "red"})"), TreeParseError);
    CHECK_THROWS_AS(ConceptTree::parse(R"({"label": ""})"), TreeValidationError);
    CHECK_THROWS_AS(ConceptTree::parse(R"({"label": "a", "concepts": ["x", "X"]})"), TreeValidationError);
    CHECK_THROWS_AS(ConceptTree::load("/nonexistent/x.tree"), ConfigError);

    try {
        ConceptTree::parse(R"({"label": "root", "children": [
            {"label": "players", "children": [{"label": "Kapil Dev"}, {"label": "kapil dev"}]}]})");
        FAIL("expected TreeValidationError");
    } catch (const TreeValidationError& e) {
        CHECK(std::string(e.what()).find("kapil dev") != std::string::npos);
        CHECK(std::string(e.what()).find("players") != std::string::npos);
    }
}

TEST_CASE("serialize round-trips")
{
    const auto again = ConceptTree::parse(bundled().serialize());
    CHECK(again == bundled());
    CHECK(again.serialize() == bundled().serialize());
}

TEST_CASE("labels are normalized to lower case")
{
    const auto tree = ConceptTree::parse(R"({"label": "Eden Gardens", "aliases": ["EDEN"], "concepts": ["Matches"]})");
    CHECK(tree.root().label == "eden gardens");
    CHECK(tree.root().aliases == std::vector<std::string>{"eden"});
    CHECK(tree.root().concepts == std::vector<std::string>{"matches"});
}

TEST_CASE("render indents children and lists concepts")
{
    const auto tree = ConceptTree::parse(R"({"label": "a", "concepts": ["x"], "children": [
        {"label": "b", "aliases": ["bee"], "children": [{"label": "c", "concepts": ["y", "z"]}]}]})");
    CHECK(tree.render() == "a [x]\n  b (aka bee)\n    c [y, z]\n");
}

TEST_CASE("expand builds one search string per concept")
{
    const auto e = expand(nouns({"dhyan", "chand"}), {"career"});
    REQUIRE(e.concept_queries.size() == 1);
    CHECK(e.concept_queries[0] == std::pair<std::string, std::string>{"career", "dhyan chand career"});

    const auto three = expand(nouns({"x"}), {"a", "b", "c"});
    REQUIRE(three.concept_queries.size() == 3);
    CHECK(three.concept_queries[0].first == "a");
    CHECK(three.concept_queries[1].first == "b");
    CHECK(three.concept_queries[2].first == "c");

    auto base = nouns({"dhyan", "chand"});
    base.add_pronoun("he");
    const auto k = expand(base, {"career"}).keywords;
    CHECK(k.nouns() == std::vector<std::string>{"dhyan", "chand", "career"});
    CHECK(k.pronouns() == std::vector<std::string>{"he"});
}

TEST_CASE("expand does not repeat a concept that is already a keyword")
{
    const auto e = expand(nouns({"sachin", "tendulkar", "career"}), {"career", "personal"});
    CHECK(e.keywords.nouns() == std::vector<std::string>{"sachin", "tendulkar", "career", "personal"});
    CHECK(e.concept_queries[0].second == "sachin tendulkar career career");
}
