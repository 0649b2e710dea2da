#include "qsum/text.hpp"

#include <cctype>

namespace qsum::text {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

// Length of an apostrophe at s[i], or 0.
std::size_t apostrophe_at(std::string_view s, std::size_t i)
{
    if (s[i] == '\'') {
        return 1;
    }
    if (s.substr(i, 3) == "\xE2\x80\x99") {
        return 3;
    }
    return 0;
}

bool is_curly_apostrophe_start(std::string_view s, std::size_t i) { return s.substr(i, 3) == "\xE2\x80\x99"; }

} // namespace

std::string to_lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

std::string trim(std::string_view s)
{
    const auto ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokenize(std::string_view raw)
{
    std::vector<std::string> tokens;
    std::string cur;
    std::size_t i = 0;
    while (i < raw.size()) {
        const auto c = static_cast<unsigned char>(raw[i]);
        if (is_curly_apostrophe_start(raw, i) || c == '\'') {
            const auto len = apostrophe_at(raw, i);
            const bool inner = !cur.empty() && i + len < raw.size() &&
                               is_word_byte(static_cast<unsigned char>(raw[i + len])) &&
                               !is_curly_apostrophe_start(raw, i + len);
            if (inner) {
                cur.append(raw.substr(i, len));
            } else if (!cur.empty()) {
                tokens.push_back(std::move(cur));
                cur.clear();
            }
            i += len;
            continue;
        }
        if (is_word_byte(c)) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
        ++i;
    }
    if (!cur.empty()) {
        tokens.push_back(std::move(cur));
    }
    return tokens;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) {
            out.append(sep);
        }
        out.append(parts[i]);
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char delim)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace qsum::text
