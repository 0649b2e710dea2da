#include "qsum/cli.hpp"

#include "qsum/error.hpp"
#include "qsum/evaluation.hpp"
#include "qsum/pipeline.hpp"
#include "qsum/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace qsum::cli {

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string backend;
    int k = 0;
    std::string policy;
    std::string threshold_mode;
    std::string speak;
    std::string transcript_file;
};

PipelineConfig build_config(const GlobalOptions& opts)
{
    PipelineConfig cfg;
    if (!opts.config_path.empty()) {
        load_config_file(cfg, opts.config_path);
    }
    const std::filesystem::path cwd; // flag paths stay relative to the working directory
    if (!opts.backend.empty()) {
        apply_backend_spec(cfg, opts.backend, cwd);
    }
    if (opts.k != 0) {
        if (opts.k < 0) {
            throw ConfigError("--k must be >= 1");
        }
        cfg.results_per_query = opts.k;
    }
    if (!opts.policy.empty()) {
        apply_setting(cfg, "extraction.policy", opts.policy, cwd);
    }
    if (!opts.threshold_mode.empty()) {
        apply_setting(cfg, "dedup.threshold_mode", opts.threshold_mode, cwd);
    }
    if (!opts.speak.empty()) {
        cfg.speak_command = opts.speak;
    }
    return cfg;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string shell_quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    return out + "'";
}

// Writes `text` to a temporary file and runs the command template with `{}`
// replaced by the file path.
void speak(const std::string& command_template, const std::string& text, std::ostream& err)
{
    auto path = std::filesystem::temp_directory_path() / "qsum-speak-XXXXXX";
    std::string buf = path.string();
    const int fd = ::mkstemp(buf.data());
    if (fd < 0) {
        err << "qsum: warning: cannot create temporary file for speech output\n";
        return;
    }
    ::close(fd);
    {
        std::ofstream f(buf, std::ios::binary);
        f << text;
    }
    std::string command = command_template;
    const auto quoted = shell_quote(buf);
    if (command.find("{}") == std::string::npos) {
        command += " " + quoted;
    }
    for (auto pos = command.find("{}"); pos != std::string::npos; pos = command.find("{}", pos + quoted.size())) {
        command.replace(pos, 2, quoted);
    }
    const int rc = std::system(command.c_str());
    if (rc != 0) {
        err << "qsum: warning: speech command exited with status " << rc << "\n";
    }
    std::filesystem::remove(buf);
}

int cmd_ask(const GlobalOptions& opts, const std::string& query_arg, std::ostream& out, std::ostream& err)
{
    std::string query = query_arg;
    if (!opts.transcript_file.empty()) {
        if (!query.empty()) {
            err << "qsum: give either a query or --transcript-file, not both\n";
            return kExitError;
        }
        query = read_text_file(opts.transcript_file);
    }
    if (text::trim(query).empty()) {
        err << "qsum: empty query\nusage: qsum ask \"QUERY\" [--config PATH] [--backend fixture:PATH|live]\n";
        return kExitError;
    }
    const Pipeline pipeline(build_config(opts));
    const auto result = pipeline.run(text::trim(query));
    if (result.status != RunStatus::Answered) {
        err << "qsum: no answer: " << result.message << "\n";
        return kExitNoAnswer;
    }
    out << result.output;
    if (pipeline.config().speak_command) {
        speak(*pipeline.config().speak_command, result.output, err);
    }
    return kExitOk;
}

int cmd_eval(const GlobalOptions& opts, const std::string& labels, const std::string& category,
             const std::string& output, std::ostream& out, std::ostream& err)
{
    const auto queries = load_labels(labels);
    const Pipeline pipeline(build_config(opts));
    std::optional<std::string> only;
    if (!category.empty()) {
        only = category;
    }
    const auto ev = evaluate(queries, pipeline, only);
    if (ev.records.empty()) {
        err << "qsum: no queries to evaluate\n";
        return kExitError;
    }
    for (const auto& w : ev.warnings) {
        err << "qsum: warning: " << w << "\n";
    }
    const auto tsv = render_tsv(ev);
    if (output.empty() || output == "-") {
        out << tsv;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            throw ConfigError("cannot write " + output);
        }
        f << tsv;
    }
    return kExitOk;
}

int cmd_tree(const GlobalOptions& opts, const std::string& action, const std::string& path_arg, std::ostream& out)
{
    std::filesystem::path path = path_arg;
    if (path.empty()) {
        PipelineConfig cfg;
        if (!opts.config_path.empty()) {
            load_config_file(cfg, opts.config_path);
        }
        path = cfg.tree_path;
    }
    const auto tree = ConceptTree::load(path);
    if (action == "show") {
        out << tree.render();
    } else {
        out << path.string() << ": ok\n";
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Query-driven multi-document extractive summarizer", "qsum"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    app.add_option("--config", opts.config_path, "Configuration file (key = value lines)");
    app.add_option("--backend", opts.backend, "fixture:PATH or live");
    app.add_option("--k", opts.k, "Search results per query");
    app.add_option("--policy", opts.policy, "Component selection: topk or above_average")
        ->check(CLI::IsMember({"topk", "above_average"}));
    app.add_option("--threshold-mode", opts.threshold_mode, "Redundancy threshold: fixed or doc_average")
        ->check(CLI::IsMember({"fixed", "doc_average"}));
    app.add_option("--speak", opts.speak, "Command run with the answer file path substituted for {}");
    app.add_option("--transcript-file", opts.transcript_file, "Read the query from a speech transcript file");

    std::string query;
    auto* ask = app.add_subcommand("ask", "Answer a query");
    ask->add_option("query", query, "Query text");

    std::string labels;
    std::string category;
    std::string output;
    std::string format = "tsv";
    auto* eval = app.add_subcommand("eval", "Evaluate a labelled query set");
    eval->add_option("labels", labels, "Labels file")->required();
    eval->add_option("--category", category, "Only evaluate one query category");
    eval->add_option("--output", output, "Write the report here instead of stdout");
    eval->add_option("--format", format, "Report format")->check(CLI::IsMember({"tsv"}));

    std::string action;
    std::string tree_path;
    auto* tree = app.add_subcommand("tree", "Validate or print a concept tree");
    tree->add_option("action", action, "validate or show")->required()->check(CLI::IsMember({"validate", "show"}));
    tree->add_option("path", tree_path, "Tree file (defaults to the configured tree)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back(); // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "qsum: " << e.what() << "\n" << app.help();
        return kExitError;
    }

    try {
        if (*ask) {
            return cmd_ask(opts, query, out, err);
        }
        if (*eval) {
            return cmd_eval(opts, labels, category, output, out, err);
        }
        return cmd_tree(opts, action, tree_path, out);
    } catch (const NoAnswerError& e) {
        err << "qsum: no answer: " << e.what() << "\n";
        return kExitNoAnswer;
    } catch (const std::exception& e) {
        err << "qsum: error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace qsum::cli
