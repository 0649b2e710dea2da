#include "qsum/error.hpp"
#include "qsum/retrieval.hpp"

#include "test_support.hpp"

#include <doctest.h>
#include <httplib.h>

#include <cmath>
#include <random>
#include <thread>

using namespace qsum;
using Sentences = std::vector<std::string>;

namespace {

const FixtureBackend& corpus()
{
    static const FixtureBackend backend(test::data_dir() / "corpus");
    return backend;
}

bool markup_free(const std::string& s) { return s.find('<') == std::string::npos && s.find('>') == std::string::npos; }

} // namespace

TEST_CASE("html_to_text strips tags and non-content elements")
{
    CHECK(html_to_text("<p>Hello <b>world</b></p>") == "Hello world");
    CHECK(html_to_text("<script>x()</script>Visible") == "Visible");
    CHECK(html_to_text("<style>p{}</style><noscript>on</noscript>a<!-- b -->c") == "ac");
    CHECK(html_to_text("<head><title>T</title></head><body>B</body>") == "B");
    CHECK(html_to_text("plain  text\n passes") == "plain text passes");
}

TEST_CASE("html_to_text decodes entities")
{
    CHECK(html_to_text("a &amp; b &lt;c&gt; &quot;d&quot; &apos;e&apos;") == "a & b <c> \"d\" 'e'");
    // A non-breaking space is treated as ordinary whitespace.
    CHECK(html_to_text("&#65;&#x42;&#8212;&nbsp;x") == "AB\xE2\x80\x94 x");
    CHECK(html_to_text("&copy; &bogus; &amp") == "\xC2\xA9 &bogus; &amp");
}

TEST_CASE("block boundaries become blank lines")
{
    CHECK(html_to_text("<p>One.</p><p>Two.</p>") == "One.\n\nTwo.");
    CHECK(html_to_text("<div>a<br>b</div><li>c</li>") == "a\n\nb\n\nc");
}

TEST_CASE("malformed markup degrades without throwing")
{
    CHECK(html_to_text("a < b and c") == "a < b and c");
    CHECK(html_to_text("<p>open <b>bold") == "open bold");
    CHECK(html_to_text("text <unterminated tag") == "text");
    CHECK(html_to_text("<script>never closed") == "");
    CHECK(html_to_text("") == "");
}

TEST_CASE("html_to_text matches the reviewed golden for a fixture page")
{
    const auto html = test::read_file(test::data_dir() / "corpus" / "pages" / "dhyanchand_career_01.html");
    const auto golden = test::read_file(test::golden_dir() / "dhyanchand_career_01.txt");
    REQUIRE(!golden.empty());
    CHECK(html_to_text(html) == golden);
}

TEST_CASE("html_to_text is idempotent on its own output")
{
    for (const auto& entry : std::filesystem::directory_iterator(test::data_dir() / "corpus" / "pages")) {
        const auto once = html_to_text(test::read_file(entry.path()));
        CHECK_MESSAGE(html_to_text(once) == once, entry.path().filename().string());
    }
    std::mt19937 rng(7);
    const std::vector<std::string> parts{"<p>", "</p>", "<b>", "</b>", "word", " ", "\n", "&amp;", "&#233;",
                                         "<br/>", "<script>s</script>", "<!-- c -->", ".", "A"};
    for (int i = 0; i < 500; ++i) {
        std::string html;
        for (int j = 0; j < 20; ++j) {
            html += parts[rng() % parts.size()];
        }
        const auto once = html_to_text(html);
        CHECK(html_to_text(once) == once);
    }
}

TEST_CASE("segment_sentences splits on terminators and blank lines")
{
    CHECK(segment_sentences("A. B! C?") == Sentences{"A.", "B!", "C?"});
    CHECK(segment_sentences("") == Sentences{});
    CHECK(segment_sentences("He scored 100 vs. Australia. Next match.") ==
          Sentences{"He scored 100 vs. Australia.", "Next match."});
    CHECK(segment_sentences("Dr. Rao met Mr. Singh. Done") == Sentences{"Dr. Rao met Mr. Singh.", "Done"});
    CHECK(segment_sentences("Heading\n\nBody text. More") == Sentences{"Heading", "Body text.", "More"});
    CHECK(segment_sentences("Score 3.5 today. Version 2.0") == Sentences{"Score 3.5 today.", "Version 2.0"});
    CHECK(segment_sentences("  \n\n  ") == Sentences{});
    CHECK(segment_sentences("Named after S. K. Wankhede. V. V. S. Laxman batted.") ==
          Sentences{"Named after S. K. Wankhede.", "V. V. S. Laxman batted."});
}

TEST_CASE("fixture search follows the manifest")
{
    const auto r = corpus().search("dhyan chand career", 10);
    REQUIRE(r.size() == 10);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r[i].rank == static_cast<int>(i) + 1);
        char expected[64];
        std::snprintf(expected, sizeof expected, "pages/dhyanchand_career_%02zu.html", i + 1);
        CHECK(r[i].location == expected);
    }
    CHECK(corpus().search("Dhyan  Chand, career!", 1).size() == 1);
    CHECK(corpus().search("dhyan chand career", 1)[0].location == r[0].location);
    CHECK_THROWS_AS(corpus().search("no such query", 10), NoResults);
    CHECK_THROWS_AS(corpus().search("dhyan chand career", 0), DomainError);
    CHECK(corpus().search("dhyan chand career", 10) == r);
}

TEST_CASE("fixture manifest is validated")
{
    test::TempDir dir;
    CHECK_THROWS_AS(FixtureBackend(dir.path()), CorpusError);
    test::write_file(dir.path() / "manifest.tsv", "q\t1\ta.html\nq\t3\tb.html\n");
    CHECK_THROWS_AS(FixtureBackend(dir.path()), CorpusError);
    test::write_file(dir.path() / "manifest.tsv", "q\tone\ta.html\n");
    CHECK_THROWS_AS(FixtureBackend(dir.path()), CorpusError);
    test::write_file(dir.path() / "manifest.tsv", "# header\nq\t2\tb.html\nq\t1\ta.html\n");
    const FixtureBackend ok(dir.path());
    const auto r = ok.search("q", 5);
    REQUIRE(r.size() == 2);
    CHECK(r[0].location == "a.html");
    CHECK_THROWS_AS(ok.fetch(r[0]), BackendUnavailable);
}

TEST_CASE("fetch_document turns failures into fault documents")
{
    const auto good = fetch_document(corpus().search("dhyan chand career", 1)[0], corpus());
    CHECK_FALSE(good.fault);
    REQUIRE(!good.sentences.empty());
    CHECK(good.fetch_latency >= 0.0);
    CHECK(good.convert_latency >= 0.0);
    for (const auto& s : good.sentences) {
        CHECK(markup_free(s));
        CHECK(!s.empty());
    }

    const auto matches = corpus().search("wankhede stadium matches", 10);
    REQUIRE(matches.size() == 5);
    const auto docs = fetch_documents(matches, corpus(), LatencyModel::Simulated);
    REQUIRE(docs.size() == 5);
    std::size_t faults = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        CHECK(docs[i].source == matches[i]);
        faults += docs[i].fault ? 1 : 0;
        CHECK(std::isfinite(docs[i].fetch_latency));
        CHECK(docs[i].fetch_latency >= 0.0);
        if (!docs[i].fault) {
            CHECK(!docs[i].sentences.empty());
        } else {
            CHECK(!docs[i].fault_reason.empty());
        }
    }
    // Malformed page still yields text; the empty and the missing page do not.
    CHECK_FALSE(docs[2].fault);
    CHECK(docs[3].fault);
    CHECK(docs[4].fault);
    CHECK(faults == 2);
}

TEST_CASE("simulated latency is a function of page size")
{
    const auto r = corpus().search("eden gardens", 1)[0];
    const auto bytes = static_cast<double>(corpus().fetch(r).size());
    const auto a = fetch_document(r, corpus(), LatencyModel::Simulated);
    const auto b = fetch_document(r, corpus(), LatencyModel::Simulated);
    CHECK(a.fetch_latency == doctest::Approx(0.05 + bytes / 500000.0).epsilon(1e-12));
    CHECK(a.convert_latency == doctest::Approx(0.002 + bytes / 1e7).epsilon(1e-12));
    CHECK(a.fetch_latency == b.fetch_latency);

    SearchResult missing{"x", 1, "pages/does_not_exist.html", std::nullopt};
    const auto m = fetch_document(missing, corpus(), LatencyModel::Simulated);
    // A failed fetch still costs the request overhead; nothing is converted.
    CHECK(m.fault);
    CHECK(m.fetch_latency == doctest::Approx(0.05));
    CHECK(m.convert_latency == 0.0);
}

TEST_CASE("select_links honours tag, class and tag.class selectors")
{
    const std::string page = R"(<a href="/1">One</a><a class="r x" href="/2">Two</a>
        <div class="r"><a href="/3">Three</a></div><span class="r" href="/4">Four</span><a class="r">no href</a>)";
    using Links = std::vector<std::pair<std::string, std::string>>;
    CHECK(select_links(page, "a") == Links{{"/1", "One"}, {"/2", "Two"}, {"/3", "Three"}});
    CHECK(select_links(page, "a.r") == Links{{"/2", "Two"}});
    CHECK(select_links(page, ".r") == Links{{"/2", "Two"}, {"/4", "Four"}});
}

TEST_CASE("live backend queries an HTTP endpoint and fetches result pages")
{
    httplib::Server server;
    std::string seen_query;
    server.Get("/search", [&](const httplib::Request& req, httplib::Response& res) {
        seen_query = req.get_param_value("q");
        res.set_content(R"(<html><body><a href="/about">About</a>
            <a class="hit" href="/page/1">First</a><a class="hit" href="/page/2">Second</a>
            <a class="hit" href="/page/3">Third</a></body></html>)",
                        "text/html");
    });
    server.Get(R"(/page/(\d+))", [](const httplib::Request& req, httplib::Response& res) {
        res.set_content("<p>Page " + req.matches[1].str() + " text. Second sentence.</p>", "text/html");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const auto base = "http://127.0.0.1:" + std::to_string(port);
    LiveBackend live({base + "/search?q={query}", "a.hit", 5.0});
    const auto results = live.search("dhyan chand career", 2);
    CHECK(seen_query == "dhyan chand career");
    REQUIRE(results.size() == 2);
    CHECK(results[0].rank == 1);
    CHECK(results[0].location == base + "/page/1");
    CHECK(results[0].title == std::optional<std::string>("First"));
    CHECK(results[1].location == base + "/page/2");

    const auto doc = fetch_document(results[1], live);
    CHECK_FALSE(doc.fault);
    CHECK(doc.sentences == Sentences{"Page 2 text.", "Second sentence."});

    LiveBackend no_hits({base + "/search", "a.none", 5.0});
    CHECK_THROWS_AS(no_hits.search("x", 3), NoResults);
    const auto missing = fetch_document({"x", 1, base + "/nothing", std::nullopt}, live);
    CHECK(missing.fault);

    server.stop();
    worker.join();

    LiveBackend down({base + "/search?q={query}", "a", 0.5});
    CHECK_THROWS_AS(down.search("x", 1), BackendUnavailable);
    CHECK_THROWS_AS(LiveBackend({"", "a", 1.0}), ConfigError);
}
