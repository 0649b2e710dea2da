#include "qsum/text.hpp"

#include <doctest.h>

using qsum::text::tokenize;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize keeps word-internal apostrophes only")
{
    CHECK(tokenize("Dhanraj pillai") == Tokens{"Dhanraj", "pillai"});
    CHECK(tokenize("") == Tokens{});
    CHECK(tokenize("world cup 2007?") == Tokens{"world", "cup", "2007"});
    CHECK(tokenize("Tendulkar's 'best' innings") == Tokens{"Tendulkar's", "best", "innings"});
    CHECK(tokenize("don't  stop--now") == Tokens{"don't", "stop", "now"});
    CHECK(tokenize("India\xE2\x80\x99s team") == Tokens{"India\xE2\x80\x99s", "team"});
    CHECK(tokenize("rock\xE2\x80\x99 n") == Tokens{"rock", "n"});
}

TEST_CASE("tokenize treats multi-byte UTF-8 as word characters")
{
    CHECK(tokenize("Zürich, 1936") == Tokens{"Zürich", "1936"});
}

TEST_CASE("tokens never contain separators")
{
    // Rejoining and re-tokenizing is stable.
    const std::string s = "  A. B! C? (d) e-f g'h 'i' 9.5 ";
    const auto once = tokenize(s);
    CHECK(tokenize(qsum::text::join(once, " ")) == once);
    for (const auto& t : once) {
        CHECK_FALSE(t.empty());
        CHECK(t.find(' ') == std::string::npos);
    }
}

TEST_CASE("to_lower and trim")
{
    CHECK(qsum::text::to_lower("Who WHEN 2007") == "who when 2007");
    CHECK(qsum::text::trim("  x y \n") == "x y");
    CHECK(qsum::text::trim(" \t ") == "");
    CHECK(qsum::text::split("a\tb\t", '\t') == Tokens{"a", "b", ""});
}
