#include "motamot/restructure.hpp"

#include <charconv>

#include "motamot/codec.hpp"
#include "motamot/ids.hpp"
#include "motamot/ingest.hpp"
#include "motamot/schema.hpp"
#include "motamot/utf8.hpp"

namespace motamot::restructure {

std::string strip_particles(std::string_view ipa) {
    auto s = utf8::trim(ipa);
    std::string_view rest = s;
    while (!rest.empty() && rest.front() == '(') {
        auto close = rest.find(')');
        if (close == std::string_view::npos) break;
        rest.remove_prefix(close + 1);
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    }
    return utf8::squeeze_spaces(rest);
}

Vocable to_motamot_entry(const xml::Element& article, long ordinal) {
    auto violations = ingest::tagged_schema_violations(article);
    if (!violations.empty()) throw InvalidArticle("invalid article: " + violations.front());

    Vocable v;
    v.headword = utf8::trim(article.child("vedette")->text);
    v.id = make_entry_id("fra", v.headword, ordinal);
    for (const auto* sens : article.children_named("sens")) {
        Lexie lexie;
        lexie.sense_id = v.next_sense_id();
        lexie.gloss = sens->child("glose")->text;
        for (const auto* t : sens->children_named("traduction"))
            lexie.translations.push_back(strip_particles(t->child("api")->text));
        v.senses.push_back(std::move(lexie));
    }
    v.pos = ingest::extract_pos_hint(v.senses.front().gloss);
    return v;
}

Volume restructure_volume(const xml::Document& tagged) {
    Volume out;
    out.lang = "fra";
    long ordinal = 0;
    for (const auto& article : tagged.root.children) {
        if (article.name != "article") continue;
        out.entries.push_back(to_motamot_entry(article, ++ordinal));
    }
    return out;
}

namespace {

void walk(const xml::Element& e, std::vector<std::string>& out) {
    for (const auto& c : e.children) {
        if (!schema::find(c.name, e.name)) {
            out.push_back("element <" + c.name + "> under <" + e.name + "> is outside the LMF mapping");
            continue;
        }
        walk(c, out);
    }
    for (const auto& rule : schema::elements()) {
        if (rule.parent != e.name || !rule.required) continue;
        const auto* c = e.child(rule.name);
        if (c && (!rule.leaf || !utf8::trim(c->text).empty())) continue;
        out.push_back(std::string(rule.lmf) + " missing (<" + std::string(rule.name) + "> under <" +
                      e.name + ">)");
    }
}

}  // namespace

std::vector<std::string> validate_lmf_shape(const xml::Element& entry) {
    std::vector<std::string> out;
    const auto* root = schema::find(entry.name, "");
    if (!root) {
        out.push_back("root <" + entry.name + "> is not a LexicalEntry");
        return out;
    }
    walk(entry, out);
    return out;
}

std::vector<std::string> validate_lmf_shape(const Vocable& entry) {
    return validate_lmf_shape(codec::to_xml(entry));
}

SupplementLexicon parse_supplement(std::string_view tsv) {
    SupplementLexicon out;
    std::size_t line_no = 0;
    for (const auto& raw : ingest::read_lines(tsv)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (utf8::trim(line).empty() || line.front() == '#') continue;
        auto cols = utf8::split(line, "\t");
        auto where = "supplement line " + std::to_string(line_no);
        if (cols.size() < 4 || cols.size() > 5) throw InvalidInput(where + ": expected 4 or 5 columns");
        SupplementEntry e;
        e.pronunciation = utf8::trim(cols[1]);
        e.pos = utf8::trim(cols[2]);
        auto count = utf8::trim(cols[3]);
        auto [p, ec] = std::from_chars(count.data(), count.data() + count.size(), e.homonym_count);
        if (ec != std::errc() || p != count.data() + count.size() || e.homonym_count < 1)
            throw InvalidInput(where + ": homonym count must be a positive integer");
        if (cols.size() == 5) e.fem_pron = utf8::trim(cols[4]);
        auto head = utf8::trim(cols[0]);
        if (head.empty()) throw InvalidInput(where + ": empty headword");
        if (!out.emplace(head, std::move(e)).second) throw InvalidInput(where + ": duplicate headword " + head);
    }
    return out;
}

EnrichStats enrich_from_supplement(Volume& volume, const SupplementLexicon& supplement) {
    EnrichStats stats;
    for (auto& v : volume.entries) {
        if (v.fem_form.empty() && !v.senses.empty()) {
            std::string_view original = v.senses.front().gloss;
            auto head = utf8::trim(original.substr(0, original.find('(')));
            auto split = ingest::split_feminine(head);
            if (split.feminine && split.masculine == v.headword) {
                v.fem_form = *split.feminine;
                ++stats.fem_forms;
            }
        }

        auto it = supplement.find(v.headword);
        if (it == supplement.end()) continue;
        ++stats.matched;
        const auto& s = it->second;
        if (!s.pronunciation.empty()) v.pronunciation = s.pronunciation;
        if (!s.fem_pron.empty() && !v.fem_form.empty()) v.fem_pron = s.fem_pron;
        if (s.homonym_count == 1) {
            if (!s.pos.empty()) {
                v.pos = s.pos;
                ++stats.pos_set;
            }
        } else {
            stats.homonyms.push_back(v.headword);
        }
    }
    return stats;
}

}  // namespace motamot::restructure
