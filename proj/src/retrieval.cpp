#include "qsum/retrieval.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <httplib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace qsum {

namespace {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw BackendUnavailable("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix)
{
    if (pos + prefix.size() > s.size()) {
        return false;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Minimal tag scanner shared by html_to_text and select_links.

struct Tag {
    std::string name; // lowercase
    bool closing = false;
    bool self_closing = false;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::size_t end = 0; // one past '>'
};

bool tag_can_start(std::string_view html, std::size_t i)
{
    if (i + 1 >= html.size()) {
        return false;
    }
    const auto c = static_cast<unsigned char>(html[i + 1]);
    return std::isalpha(c) != 0 || c == '/' || c == '!' || c == '?';
}

// Parses the tag starting at html[i] == '<'. Returns nullopt when no closing '>' exists.
std::optional<Tag> parse_tag(std::string_view html, std::size_t i)
{
    Tag tag;
    std::size_t p = i + 1;
    if (p < html.size() && html[p] == '/') {
        tag.closing = true;
        ++p;
    }
    while (p < html.size() && !is_space(html[p]) && html[p] != '>' && html[p] != '/') {
        tag.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[p]))));
        ++p;
    }
    while (p < html.size()) {
        while (p < html.size() && is_space(html[p])) {
            ++p;
        }
        if (p >= html.size()) {
            break;
        }
        if (html[p] == '>') {
            tag.end = p + 1;
            return tag;
        }
        if (html[p] == '/') {
            tag.self_closing = true;
            ++p;
            continue;
        }
        std::string name;
        while (p < html.size() && !is_space(html[p]) && html[p] != '=' && html[p] != '>' && html[p] != '/') {
            name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[p]))));
            ++p;
        }
        if (name.empty()) {
            ++p; // stray character such as a lone quote
            continue;
        }
        std::string value;
        while (p < html.size() && is_space(html[p])) {
            ++p;
        }
        if (p < html.size() && html[p] == '=') {
            ++p;
            while (p < html.size() && is_space(html[p])) {
                ++p;
            }
            if (p < html.size() && (html[p] == '"' || html[p] == '\'')) {
                const char quote = html[p++];
                const auto close = html.find(quote, p);
                if (close == std::string_view::npos) {
                    return std::nullopt;
                }
                value = std::string(html.substr(p, close - p));
                p = close + 1;
            } else {
                while (p < html.size() && !is_space(html[p]) && html[p] != '>') {
                    value.push_back(html[p]);
                    ++p;
                }
            }
        }
        tag.attributes.emplace_back(std::move(name), std::move(value));
    }
    return std::nullopt;
}

void append_utf8(std::string& out, unsigned long cp)
{
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        cp = 0xFFFD;
    }
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes the entity at html[i] == '&'. Returns the number of bytes consumed,
// or 0 when the text is not a recognised entity.
std::size_t decode_entity(std::string_view html, std::size_t i, std::string& out)
{
    const auto semi = html.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
        return 0;
    }
    const auto body = html.substr(i + 1, semi - i - 1);
    if (body.empty()) {
        return 0;
    }
    if (body.front() == '#') {
        unsigned long cp = 0;
        const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
        const auto digits = body.substr(hex ? 2 : 1);
        if (digits.empty()) {
            return 0;
        }
        for (char c : digits) {
            const auto u = static_cast<unsigned char>(c);
            if (hex ? std::isxdigit(u) == 0 : std::isdigit(u) == 0) {
                return 0;
            }
            cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(std::isdigit(u) != 0 ? u - '0' : std::tolower(u) - 'a' + 10);
            if (cp > 0x10FFFF) {
                cp = 0x110000;
            }
        }
        append_utf8(out, cp);
        return semi - i + 1;
    }
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 12> named{{
        {"amp", "&"},
        {"lt", "<"},
        {"gt", ">"},
        {"quot", "\""},
        {"apos", "'"},
        {"nbsp", " "},
        {"ndash", "\xE2\x80\x93"},
        {"mdash", "\xE2\x80\x94"},
        {"rsquo", "\xE2\x80\x99"},
        {"lsquo", "\xE2\x80\x98"},
        {"hellip", "..."},
        {"copy", "\xC2\xA9"},
    }};
    for (const auto& [name, value] : named) {
        if (body == name) {
            out.append(value);
            return semi - i + 1;
        }
    }
    return 0;
}

bool is_block_tag(std::string_view name)
{
    static const std::set<std::string, std::less<>> blocks{
        "address", "article", "aside", "blockquote", "body", "br", "caption", "dd", "div", "dl", "dt",
        "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6",
        "header", "hr", "html", "li", "main", "nav", "ol", "option", "p", "pre", "section", "table",
        "tbody", "td", "tfoot", "th", "thead", "tr", "ul"};
    return blocks.count(name) != 0;
}

bool is_skipped_tag(std::string_view name)
{
    return name == "script" || name == "style" || name == "head" || name == "title" || name == "noscript" ||
           name == "template";
}

// Splits raw text on whitespace runs holding two or more newlines, collapses
// remaining whitespace and appends the nonempty pieces to `blocks`.
void flush_text(std::string& raw, std::vector<std::string>& blocks)
{
    std::string cur;
    bool pending_space = false;
    std::size_t i = 0;
    auto emit = [&] {
        if (!cur.empty()) {
            blocks.push_back(std::move(cur));
            cur.clear();
        }
        pending_space = false;
    };
    while (i < raw.size()) {
        if (is_space(raw[i])) {
            int newlines = 0;
            while (i < raw.size() && is_space(raw[i])) {
                newlines += raw[i] == '\n' ? 1 : 0;
                ++i;
            }
            if (newlines >= 2) {
                emit();
            } else {
                pending_space = !cur.empty();
            }
            continue;
        }
        if (pending_space) {
            cur.push_back(' ');
            pending_space = false;
        }
        cur.push_back(raw[i]);
        ++i;
    }
    emit();
    raw.clear();
}

const std::set<std::string, std::less<>>& abbreviations()
{
    static const std::set<std::string, std::less<>> abbrevs{
        "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "jr.", "sr.", "vs.", "v.", "no.", "nos.", "etc.",
        "e.g.", "i.e.", "lt.", "col.", "gen.", "capt.", "sgt.", "mt.", "approx.", "inc.", "ltd.", "co.",
        "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec."};
    return abbrevs;
}

bool ends_with_abbreviation(std::string_view para, std::size_t dot)
{
    std::size_t b = dot;
    while (b > 0 && !is_space(para[b - 1])) {
        --b;
    }
    std::string word(para.substr(b, dot - b + 1));
    while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) {
        word.erase(word.begin());
    }
    // A lone capital is an initial when a name follows ("S. K. Wankhede").
    if (word.size() == 2 && std::isupper(static_cast<unsigned char>(word[0])) != 0) {
        std::size_t n = dot + 1;
        while (n < para.size() && is_space(para[n])) {
            ++n;
        }
        std::size_t e = n;
        while (e < para.size() && std::isalpha(static_cast<unsigned char>(para[e])) != 0) {
            ++e;
        }
        const bool capital = n < para.size() && std::isupper(static_cast<unsigned char>(para[n])) != 0;
        const bool next_initial = e == n + 1 && e < para.size() && para[e] == '.';
        if (capital && (e - n >= 2 || next_initial)) {
            return true;
        }
    }
    return abbreviations().count(text::to_lower(word)) != 0;
}

bool is_closing_punct(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

void split_paragraph(const std::string& para, std::vector<std::string>& out)
{
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < para.size()) {
        const char c = para[i];
        if (c != '.' && c != '!' && c != '?') {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < para.size() && (para[j] == '.' || para[j] == '!' || para[j] == '?')) {
            ++j;
        }
        while (j < para.size() && is_closing_punct(para[j])) {
            ++j;
        }
        const bool boundary = j == para.size() || is_space(para[j]);
        if (boundary && !(c == '.' && j == i + 1 && ends_with_abbreviation(para, i))) {
            auto s = text::trim(std::string_view(para).substr(start, j - start));
            if (!s.empty()) {
                out.push_back(std::move(s));
            }
            start = j;
        }
        i = j;
    }
    auto rest = text::trim(std::string_view(para).substr(start));
    if (!rest.empty()) {
        out.push_back(std::move(rest));
    }
}

struct Url {
    std::string scheme_host_port; // "http://host:port"
    std::string path;             // "/..." including query
};

std::optional<Url> split_url(std::string_view url)
{
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        return std::nullopt;
    }
    const auto path_start = url.find('/', scheme_end + 3);
    Url u;
    if (path_start == std::string_view::npos) {
        u.scheme_host_port = std::string(url);
        u.path = "/";
    } else {
        u.scheme_host_port = std::string(url.substr(0, path_start));
        u.path = std::string(url.substr(path_start));
    }
    return u;
}

std::string url_encode(std::string_view s)
{
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c) != 0 || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(ch);
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

std::string resolve_href(const std::string& base_url, const std::string& href)
{
    if (href.find("://") != std::string::npos) {
        return href;
    }
    const auto base = split_url(base_url);
    if (!base) {
        return href;
    }
    if (!href.empty() && href.front() == '/') {
        return base->scheme_host_port + href;
    }
    auto dir = base->path.substr(0, base->path.find('?'));
    dir = dir.substr(0, dir.rfind('/') + 1);
    return base->scheme_host_port + dir + href;
}

} // namespace

// ---------------------------------------------------------------------------

std::string html_to_text(std::string_view html)
{
    std::vector<std::string> blocks;
    std::string raw;
    std::size_t i = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (c == '<' && html.substr(i, 4) == "<!--") {
            const auto end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        if (c == '<' && tag_can_start(html, i)) {
            const auto tag = parse_tag(html, i);
            if (!tag) {
                break; // unterminated tag swallows the rest of the input
            }
            i = tag->end;
            if (!tag->closing && !tag->self_closing && is_skipped_tag(tag->name)) {
                const std::string close = "</" + tag->name;
                std::size_t p = i;
                while (p < html.size() && !starts_with_ci(html, p, close)) {
                    ++p;
                }
                const auto gt = html.find('>', p);
                i = gt == std::string_view::npos ? html.size() : gt + 1;
                if (tag->name == "head" || tag->name == "title") {
                    flush_text(raw, blocks);
                }
                continue;
            }
            if (is_block_tag(tag->name)) {
                flush_text(raw, blocks);
            }
            continue;
        }
        if (c == '&') {
            const auto used = decode_entity(html, i, raw);
            if (used != 0) {
                i += used;
                continue;
            }
        }
        raw.push_back(c);
        ++i;
    }
    flush_text(raw, blocks);
    return text::join(blocks, "\n\n");
}

std::vector<std::string> segment_sentences(std::string_view input)
{
    std::vector<std::string> out;
    std::string para;
    auto flush = [&] {
        if (!para.empty()) {
            split_paragraph(para, out);
            para.clear();
        }
    };
    for (const auto& line : text::split(input, '\n')) {
        const auto trimmed = text::trim(line);
        if (trimmed.empty()) {
            flush();
            continue;
        }
        if (!para.empty()) {
            para.push_back(' ');
        }
        // collapse inner whitespace runs
        bool space = false;
        for (char ch : trimmed) {
            if (is_space(ch)) {
                space = true;
                continue;
            }
            if (space) {
                para.push_back(' ');
                space = false;
            }
            para.push_back(ch);
        }
    }
    flush();
    return out;
}

std::vector<std::pair<std::string, std::string>> select_links(std::string_view html, std::string_view selector)
{
    std::string want_tag;
    std::string want_class;
    const auto dot = selector.find('.');
    if (dot == std::string_view::npos) {
        want_tag = text::to_lower(text::trim(selector));
    } else {
        want_tag = text::to_lower(text::trim(selector.substr(0, dot)));
        want_class = text::trim(selector.substr(dot + 1));
    }

    std::vector<std::pair<std::string, std::string>> links;
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<' || !tag_can_start(html, i)) {
            ++i;
            continue;
        }
        const auto tag = parse_tag(html, i);
        if (!tag) {
            break;
        }
        i = tag->end;
        if (tag->closing || (!want_tag.empty() && tag->name != want_tag)) {
            continue;
        }
        std::string href;
        bool class_ok = want_class.empty();
        for (const auto& [name, value] : tag->attributes) {
            if (name == "href") {
                href = value;
            } else if (name == "class" && !want_class.empty()) {
                std::istringstream classes(value);
                std::string cls;
                while (classes >> cls) {
                    class_ok = class_ok || cls == want_class;
                }
            }
        }
        if (!class_ok || href.empty()) {
            continue;
        }
        std::string anchor;
        const auto close = html.find("</" + tag->name, i);
        if (close != std::string_view::npos) {
            anchor = text::trim(html_to_text(html.substr(i, close - i)));
        }
        links.emplace_back(std::move(href), std::move(anchor));
    }
    return links;
}

// ---------------------------------------------------------------------------

FixtureBackend::FixtureBackend(std::filesystem::path root) : root_(std::move(root))
{
    const auto manifest = root_ / "manifest.tsv";
    std::ifstream in(manifest, std::ios::binary);
    if (!in) {
        throw CorpusError("cannot read corpus manifest: " + manifest.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (text::trim(line).empty() || line.front() == '#') {
            continue;
        }
        const auto cols = text::split(line, '\t');
        const auto where = manifest.string() + ":" + std::to_string(line_no);
        if (cols.size() < 3 || cols.size() > 4) {
            throw CorpusError(where + ": expected 4 tab-separated columns");
        }
        SearchResult r;
        r.query_string = text::trim(cols[0]);
        try {
            std::size_t used = 0;
            r.rank = std::stoi(cols[1], &used);
            if (used != cols[1].size() || r.rank < 1) {
                throw std::invalid_argument("rank");
            }
        } catch (const std::exception&) {
            throw CorpusError(where + ": rank must be a positive integer");
        }
        r.location = text::trim(cols[2]);
        if (r.query_string.empty() || r.location.empty()) {
            throw CorpusError(where + ": empty query string or path");
        }
        if (cols.size() == 4 && !text::trim(cols[3]).empty()) {
            r.title = text::trim(cols[3]);
        }
        entries_[normalize_query(r.query_string)].push_back(std::move(r));
    }
    for (auto& [key, list] : entries_) {
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i].rank != static_cast<int>(i) + 1) {
                throw CorpusError("manifest ranks for `" + key + "` are not contiguous from 1");
            }
        }
    }
}

std::string FixtureBackend::normalize_query(std::string_view query_string)
{
    return text::join(text::tokenize(text::to_lower(query_string)), " ");
}

std::vector<SearchResult> FixtureBackend::search(std::string_view query_string, int k) const
{
    if (k < 1) {
        throw DomainError("results per query must be at least 1");
    }
    const auto it = entries_.find(normalize_query(query_string));
    if (it == entries_.end() || it->second.empty()) {
        throw NoResults("no results for `" + std::string(query_string) + "`");
    }
    const auto n = std::min<std::size_t>(it->second.size(), static_cast<std::size_t>(k));
    return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::string FixtureBackend::fetch(const SearchResult& result) const { return read_file(root_ / result.location); }

LiveBackend::LiveBackend(LiveBackendConfig config) : config_(std::move(config))
{
    if (config_.endpoint_url.empty()) {
        throw ConfigError("search.endpoint_url is required for the live backend");
    }
    if (config_.timeout_seconds <= 0) {
        throw ConfigError("search.timeout_seconds must be positive");
    }
}

std::string LiveBackend::get(const std::string& url) const
{
    const auto parts = split_url(url);
    if (!parts) {
        throw BackendUnavailable("unsupported URL: " + url);
    }
    try {
        httplib::Client client(parts->scheme_host_port);
        if (!client.is_valid()) {
            throw BackendUnavailable("unsupported URL scheme: " + url);
        }
        const auto secs = static_cast<time_t>(config_.timeout_seconds);
        const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
        client.set_connection_timeout(secs, usecs);
        client.set_read_timeout(secs, usecs);
        client.set_follow_location(true);
        auto res = client.Get(parts->path);
        if (!res) {
            throw BackendUnavailable("request failed for " + url + ": " + httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            throw BackendUnavailable("HTTP " + std::to_string(res->status) + " for " + url);
        }
        return res->body;
    } catch (const BackendUnavailable&) {
        throw;
    } catch (const std::exception& e) {
        throw BackendUnavailable("request failed for " + url + ": " + e.what());
    }
}

std::vector<SearchResult> LiveBackend::search(std::string_view query_string, int k) const
{
    if (k < 1) {
        throw DomainError("results per query must be at least 1");
    }
    std::string url = config_.endpoint_url;
    const auto encoded = url_encode(query_string);
    if (const auto pos = url.find("{query}"); pos != std::string::npos) {
        url.replace(pos, 7, encoded);
    } else {
        url += (url.find('?') == std::string::npos ? "?q=" : "&q=") + encoded;
    }
    const auto page = get(url);
    std::vector<SearchResult> results;
    for (auto& [href, anchor] : select_links(page, config_.result_selector)) {
        if (static_cast<int>(results.size()) == k) {
            break;
        }
        SearchResult r;
        r.query_string = std::string(query_string);
        r.rank = static_cast<int>(results.size()) + 1;
        r.location = resolve_href(url, href);
        if (!anchor.empty()) {
            r.title = anchor;
        }
        results.push_back(std::move(r));
    }
    if (results.empty()) {
        throw NoResults("no results for `" + std::string(query_string) + "`");
    }
    return results;
}

std::string LiveBackend::fetch(const SearchResult& result) const { return get(result.location); }

// ---------------------------------------------------------------------------

Document fetch_document(const SearchResult& result, const SearchBackend& backend, LatencyModel latency)
{
    using clock = std::chrono::steady_clock;
    Document doc;
    doc.source = result;

    const auto t0 = clock::now();
    std::string page;
    bool fetched = false;
    try {
        page = backend.fetch(result);
        fetched = true;
    } catch (const std::exception& e) {
        doc.fault = true;
        doc.fault_reason = e.what();
    }
    const auto t1 = clock::now();
    if (fetched) {
        doc.sentences = segment_sentences(html_to_text(page));
        if (doc.sentences.empty()) {
            doc.fault = true;
            doc.fault_reason = "no text after conversion";
        }
    }
    const auto t2 = clock::now();

    if (latency == LatencyModel::Measured) {
        doc.fetch_latency = std::chrono::duration<double>(t1 - t0).count();
        doc.convert_latency = std::chrono::duration<double>(t2 - t1).count();
    } else {
        // 50 ms round trip plus 500 kB/s transfer; conversion at 10 MB/s plus 2 ms.
        const auto bytes = static_cast<double>(page.size());
        doc.fetch_latency = 0.05 + bytes / 500000.0;
        doc.convert_latency = fetched ? 0.002 + bytes / 10000000.0 : 0.0;
    }
    return doc;
}

std::vector<Document> fetch_documents(const std::vector<SearchResult>& results, const SearchBackend& backend,
                                      LatencyModel latency)
{
    std::vector<std::future<Document>> pending;
    pending.reserve(results.size());
    for (const auto& r : results) {
        pending.push_back(std::async(std::launch::async, [&backend, &r, latency] {
            return fetch_document(r, backend, latency);
        }));
    }
    std::vector<Document> docs;
    docs.reserve(results.size());
    for (auto& f : pending) {
        docs.push_back(f.get());
    }
    return docs;
}

} // namespace qsum
