#include "qsum/config.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <charconv>
#include <fstream>

namespace qsum {

namespace {

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir)
{
    std::filesystem::path p{std::string(value)};
    if (p.is_relative() && !base_dir.empty()) {
        p = base_dir / p;
    }
    return p.lexically_normal();
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value)
{
    Int out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("`" + std::string(key) + "` expects an integer, got `" + std::string(value) + "`");
    }
    return out;
}

double parse_double(std::string_view key, std::string_view value)
{
    try {
        std::size_t used = 0;
        const std::string s(value);
        const double d = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("trailing");
        }
        return d;
    } catch (const std::exception&) {
        throw ConfigError("`" + std::string(key) + "` expects a number, got `" + std::string(value) + "`");
    }
}

std::vector<std::string> parse_list(std::string_view value)
{
    std::vector<std::string> out;
    for (const auto& item : text::split(value, ',')) {
        auto t = text::trim(item);
        if (!t.empty()) {
            out.push_back(text::to_lower(t));
        }
    }
    return out;
}

} // namespace

LatencyModel PipelineConfig::effective_latency_model() const
{
    if (latency_model) {
        return *latency_model;
    }
    return backend == Backend::Fixture ? LatencyModel::Simulated : LatencyModel::Measured;
}

void PipelineConfig::validate() const
{
    if (results_per_query < 1) {
        throw ConfigError("search.results_per_query must be >= 1");
    }
    if (component_size < 1) {
        throw ConfigError("extraction.component_size must be >= 1");
    }
    if (policy.mode == SelectionPolicy::Mode::TopK && policy.k < 1) {
        throw ConfigError("extraction.k must be >= 1");
    }
    try {
        dedup.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (backend == Backend::Fixture && !std::filesystem::is_directory(fixture_path)) {
        throw ConfigError("fixture corpus directory does not exist: " + fixture_path.string());
    }
    if (default_concepts.empty()) {
        throw ConfigError("tree.default_concepts must not be empty");
    }
}

void apply_backend_spec(PipelineConfig& cfg, std::string_view spec, const std::filesystem::path& base_dir)
{
    const auto s = text::trim(spec);
    if (s == "live") {
        cfg.backend = PipelineConfig::Backend::Live;
        return;
    }
    constexpr std::string_view prefix = "fixture:";
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size()) {
        cfg.backend = PipelineConfig::Backend::Fixture;
        cfg.fixture_path = resolve(std::string_view(s).substr(prefix.size()), base_dir);
        return;
    }
    throw ConfigError("backend must be `fixture:PATH` or `live`, got `" + s + "`");
}

void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view raw_value,
                   const std::filesystem::path& base_dir)
{
    const auto value = text::trim(raw_value);
    if (key == "search.backend") {
        apply_backend_spec(cfg, value, base_dir);
    } else if (key == "search.endpoint_url") {
        cfg.live.endpoint_url = value;
    } else if (key == "search.result_selector") {
        cfg.live.result_selector = value;
    } else if (key == "search.timeout_seconds") {
        cfg.live.timeout_seconds = parse_double(key, value);
    } else if (key == "search.results_per_query") {
        cfg.results_per_query = parse_int<int>(key, value);
    } else if (key == "extraction.component_size") {
        cfg.component_size = parse_int<std::size_t>(key, value);
    } else if (key == "extraction.policy") {
        if (value == "topk") {
            cfg.policy.mode = SelectionPolicy::Mode::TopK;
        } else if (value == "above_average") {
            cfg.policy.mode = SelectionPolicy::Mode::AboveAverage;
        } else {
            throw ConfigError("extraction.policy must be `topk` or `above_average`");
        }
    } else if (key == "extraction.k") {
        cfg.policy.k = parse_int<std::size_t>(key, value);
    } else if (key == "dedup.overlap_fraction") {
        cfg.dedup.overlap_fraction = parse_double(key, value);
    } else if (key == "dedup.threshold_mode") {
        if (value == "fixed") {
            cfg.dedup.threshold_mode = DedupConfig::ThresholdMode::Fixed;
        } else if (value == "doc_average") {
            cfg.dedup.threshold_mode = DedupConfig::ThresholdMode::DocumentAverage;
        } else {
            throw ConfigError("dedup.threshold_mode must be `fixed` or `doc_average`");
        }
    } else if (key == "dedup.fixed_threshold") {
        cfg.dedup.fixed_threshold = parse_double(key, value);
    } else if (key == "query.lexicon") {
        cfg.lexicon_path = resolve(value, base_dir);
    } else if (key == "query.extra_wh_words") {
        cfg.extra_wh_words = parse_list(value);
    } else if (key == "tree.path") {
        cfg.tree_path = resolve(value, base_dir);
    } else if (key == "tree.default_concepts") {
        cfg.default_concepts = parse_list(value);
    } else if (key == "answer.context_sentences") {
        cfg.answer_context = parse_int<std::size_t>(key, value);
    } else if (key == "retrieval.latency_model") {
        if (value == "measured") {
            cfg.latency_model = LatencyModel::Measured;
        } else if (value == "simulated") {
            cfg.latency_model = LatencyModel::Simulated;
        } else {
            throw ConfigError("retrieval.latency_model must be `measured` or `simulated`");
        }
    } else if (key == "output.speak_command") {
        if (value.empty()) {
            cfg.speak_command.reset();
        } else {
            cfg.speak_command = value;
        }
    } else {
        throw ConfigError("unknown configuration key `" + std::string(key) + "`");
    }
}

void load_config_file(PipelineConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path.string());
    }
    const auto base_dir = path.parent_path();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto trimmed = text::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected `key = value`");
        }
        try {
            apply_setting(cfg, text::trim(std::string_view(trimmed).substr(0, eq)),
                          std::string_view(trimmed).substr(eq + 1), base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

} // namespace qsum
