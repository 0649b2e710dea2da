#include "qsum/concept_tree.hpp"

#include "qsum/error.hpp"
#include "qsum/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace qsum {

namespace {

using json = nlohmann::ordered_json;

std::string normalize_label(std::string_view s) { return text::to_lower(text::trim(s)); }

std::vector<std::string> string_list(const json& j, std::string_view field, const std::string& where)
{
    if (!j.is_array()) {
        throw TreeParseError(where + ": `" + std::string(field) + "` must be a list of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw TreeParseError(where + ": `" + std::string(field) + "` must be a list of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

ConceptNode node_from_json(const json& j, const std::string& where)
{
    if (!j.is_object()) {
        throw TreeParseError(where + ": expected an object");
    }
    ConceptNode node;
    bool have_label = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "label") {
            if (!value.is_string()) {
                throw TreeParseError(where + ": `label` must be a string");
            }
            node.label = value.get<std::string>();
            have_label = true;
        } else if (key == "aliases") {
            node.aliases = string_list(value, key, where);
        } else if (key == "concepts") {
            node.concepts = string_list(value, key, where);
        } else if (key == "children") {
            if (!value.is_array()) {
                throw TreeParseError(where + ": `children` must be a list of nodes");
            }
            std::size_t i = 0;
            for (const auto& child : value) {
                node.children.push_back(node_from_json(child, where + "/children[" + std::to_string(i++) + "]"));
            }
        } else {
            throw TreeParseError(where + ": unknown field `" + key + "`");
        }
    }
    if (!have_label) {
        throw TreeParseError(where + ": missing `label`");
    }
    return node;
}

json node_to_json(const ConceptNode& node)
{
    json j = json::object();
    j["label"] = node.label;
    if (!node.aliases.empty()) {
        j["aliases"] = node.aliases;
    }
    if (!node.concepts.empty()) {
        j["concepts"] = node.concepts;
    }
    if (!node.children.empty()) {
        json kids = json::array();
        for (const auto& c : node.children) {
            kids.push_back(node_to_json(c));
        }
        j["children"] = std::move(kids);
    }
    return j;
}

void normalize_and_validate(ConceptNode& node, const std::string& path)
{
    node.label = normalize_label(node.label);
    if (node.label.empty()) {
        throw TreeValidationError("empty label under `" + path + "`");
    }
    const auto here = path.empty() ? node.label : path + "/" + node.label;
    for (auto& a : node.aliases) {
        a = normalize_label(a);
        if (a.empty()) {
            throw TreeValidationError("empty alias at node `" + here + "`");
        }
    }
    std::set<std::string> seen_concepts;
    for (auto& c : node.concepts) {
        c = normalize_label(c);
        if (c.empty()) {
            throw TreeValidationError("empty concept word at node `" + here + "`");
        }
        if (!seen_concepts.insert(c).second) {
            throw TreeValidationError("duplicate concept `" + c + "` at node `" + here + "`");
        }
    }
    std::set<std::string> seen_children;
    for (auto& child : node.children) {
        normalize_and_validate(child, here);
        if (!seen_children.insert(child.label).second) {
            throw TreeValidationError("duplicate sibling label `" + child.label + "` under node `" + here + "`");
        }
    }
}

void render_node(const ConceptNode& node, int depth, std::string& out)
{
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += node.label;
    if (!node.aliases.empty()) {
        out += " (aka " + text::join(node.aliases, ", ") + ")";
    }
    if (!node.concepts.empty()) {
        out += " [" + text::join(node.concepts, ", ") + "]";
    }
    out += '\n';
    for (const auto& c : node.children) {
        render_node(c, depth + 1, out);
    }
}

bool name_matches(std::string_view name, const std::set<std::string>& nouns)
{
    const auto words = text::tokenize(name);
    if (words.empty()) {
        return false;
    }
    return std::all_of(words.begin(), words.end(), [&](const std::string& w) { return nouns.count(text::to_lower(w)) != 0; });
}

bool node_matches(const ConceptNode& node, const std::set<std::string>& nouns)
{
    if (name_matches(node.label, nouns)) {
        return true;
    }
    return std::any_of(node.aliases.begin(), node.aliases.end(),
                       [&](const std::string& a) { return name_matches(a, nouns); });
}

struct Match {
    int depth = -1;
    std::vector<std::string> concepts;
};

// `inherited` is the nearest nonempty concept list on the path from the root.
void search(const ConceptNode& node, int depth, const std::vector<std::string>& inherited,
            const std::set<std::string>& nouns, Match& best)
{
    const auto& effective = node.concepts.empty() ? inherited : node.concepts;
    if (depth > best.depth && node_matches(node, nouns)) {
        best.depth = depth;
        best.concepts = effective;
    }
    for (const auto& child : node.children) {
        search(child, depth + 1, effective, nouns, best);
    }
}

} // namespace

ConceptTree::ConceptTree(ConceptNode root) : root_(std::move(root)) { normalize_and_validate(root_, ""); }

ConceptTree ConceptTree::parse(std::string_view contents)
{
    if (text::trim(contents).empty()) {
        throw TreeParseError("concept tree file is empty");
    }
    json j;
    try {
        j = json::parse(contents);
    } catch (const json::parse_error& e) {
        throw TreeParseError(std::string("malformed concept tree: ") + e.what());
    }
    return ConceptTree(node_from_json(j, "root"));
}

ConceptTree ConceptTree::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw TreeParseError("cannot read concept tree file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ConceptTree::serialize() const { return node_to_json(root_).dump(); }

std::string ConceptTree::render() const
{
    std::string out;
    render_node(root_, 0, out);
    return out;
}

std::vector<std::string> lookup(const KeywordSet& keywords, const ConceptTree& tree,
                                const std::vector<std::string>& defaults)
{
    const std::set<std::string> nouns(keywords.nouns().begin(), keywords.nouns().end());
    Match best;
    search(tree.root(), 0, {}, nouns, best);
    if (best.depth < 0 || best.concepts.empty()) {
        return defaults;
    }
    return best.concepts;
}

ExpandedQuery expand(const KeywordSet& keywords, const std::vector<std::string>& concepts)
{
    ExpandedQuery out;
    out.base_keywords = keywords;
    const auto base = text::join(keywords.nouns(), " ");
    for (const auto& c : concepts) {
        out.concept_queries.emplace_back(c, base.empty() ? c : base + " " + c);
    }
    for (const auto& n : keywords.nouns()) {
        out.keywords.add_noun(n);
    }
    for (const auto& c : concepts) {
        out.keywords.add_noun(c);
    }
    for (const auto& p : keywords.pronouns()) {
        out.keywords.add_pronoun(p);
    }
    return out;
}

} // namespace qsum
