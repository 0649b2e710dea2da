#pragma once

#include "qsum/aggregation.hpp"
#include "qsum/extraction.hpp"
#include "qsum/retrieval.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsum {

struct PipelineConfig {
    enum class Backend { Fixture, Live };

    Backend backend = Backend::Fixture;
    std::filesystem::path fixture_path = "data/corpus";
    LiveBackendConfig live;
    int results_per_query = 10;

    std::size_t component_size = kDefaultComponentSize;
    SelectionPolicy policy;
    DedupConfig dedup;

    std::filesystem::path lexicon_path = "data/lexicon.txt";
    std::vector<std::string> extra_wh_words;
    std::filesystem::path tree_path = "data/cricket_hockey.tree";
    std::vector<std::string> default_concepts{"overview"};

    std::size_t answer_context = 0;
    /// Unset: simulated for the fixture backend, measured for the live one.
    std::optional<LatencyModel> latency_model;
    std::optional<std::string> speak_command;

    LatencyModel effective_latency_model() const;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Applies one `key = value` setting. Relative paths resolve against `base_dir`.
/// Throws ConfigError on unknown keys or unparsable values.
void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir);

/// Reads `key = value` lines (`#` comments) on top of `cfg`.
void load_config_file(PipelineConfig& cfg, const std::filesystem::path& path);

/// `fixture:PATH` or `live`.
void apply_backend_spec(PipelineConfig& cfg, std::string_view spec, const std::filesystem::path& base_dir);

} // namespace qsum
