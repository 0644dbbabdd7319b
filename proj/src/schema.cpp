#include "motamot/schema.hpp"

#include <json.hpp>

#include "motamot/utf8.hpp"

namespace motamot::schema {

const std::vector<ElementRule>& elements() {
    static const std::vector<ElementRule> kRules = {
        {"m:entry", "", "LexicalEntry", true, false, false},
        {"m:head", "m:entry", "Form", true, false, false},
        {"m:headword", "m:head", "Lemma", true, false, true},
        {"m:writing", "m:head", "FormRepresentation", false, false, true},
        {"m:pronunciation", "m:head", "FormRepresentation", false, false, true},
        {"m:pos", "m:head", "feat:partOfSpeech", false, false, true},
        {"m:fem_form", "m:head", "WordForm", false, false, true},
        {"m:fem_pron", "m:head", "FormRepresentation", false, false, true},
        {"m:sense", "m:entry", "Sense", false, true, false},
        {"m:gloss", "m:sense", "Definition", false, false, true},
        {"m:semantic_formula", "m:sense", "Definition", false, false, true},
        {"m:domain", "m:sense", "feat:domain", false, false, true},
        {"m:translations", "m:sense", "Equivalent", false, false, false},
        {"m:translation", "m:translations", "Equivalent", false, true, true},
        {"m:refaxie", "m:sense", "Equivalent", false, true, true},
        {"m:reflexie", "m:sense", "Equivalent", false, true, true},
        {"m:examples", "m:sense", "SenseExample", false, false, false},
        {"m:example", "m:examples", "SenseExample", false, true, true},
        {"m:idioms", "m:sense", "feat:idiom", false, false, false},
        {"m:idiom", "m:idioms", "feat:idiom", false, true, true},
        {"m:misc", "m:sense", "feat:note", false, false, true},
        {"m:vocable_link", "m:entry", "Equivalent", false, true, true},
        {"m:axie", "", "SenseAxis", true, false, false},
        {"m:reflexie", "m:axie", "SenseAxisRelation", false, true, true},
    };
    return kRules;
}

const ElementRule* find(std::string_view name, std::string_view parent) {
    for (const auto& r : elements())
        if (r.name == name && r.parent == parent) return &r;
    return nullptr;
}

bool path_exists(std::string_view root, std::string_view path) {
    if (!find(root, "")) return false;
    std::string parent(root);
    auto steps = utf8::split(path, "/");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& step = steps[i];
        if (step.empty()) return false;
        if (step[0] == '@') return i + 1 == steps.size() && step.size() > 1;
        if (!find(step, parent)) return false;
        parent = step;
    }
    return !steps.empty();
}

namespace {

nlohmann::json describe(std::string_view parent) {
    auto fields = nlohmann::json::array();
    for (const auto& r : elements()) {
        if (r.parent != parent) continue;
        nlohmann::json f = {
            {"element", r.name},
            {"lmf", r.lmf},
            {"required", r.required},
            {"repeatable", r.repeatable},
        };
        // Semantic formulas are for experienced contributors; novices get the gloss.
        if (r.name == "m:semantic_formula") f["min_skill"] = 3;
        if (!r.leaf) f["fields"] = describe(r.name);
        fields.push_back(std::move(f));
    }
    return fields;
}

}  // namespace

std::string form_description(std::string_view root) {
    nlohmann::json out = {{"root", root}, {"fields", describe(root)}};
    return out.dump(2);
}

}  // namespace motamot::schema
