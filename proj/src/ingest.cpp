#include "motamot/ingest.hpp"

#include <array>

#include "motamot/utf8.hpp"

namespace motamot::ingest {

namespace {

constexpr std::array<std::string_view, 14> kPosAbbreviations = {
    "adj.", "adv.", "n.", "nm.", "nf.", "v.", "vt.", "vi.", "prép.", "conj.", "interj.", "pron.", "art.", "loc."};

}  // namespace

FeminineSplit split_feminine(std::string_view raw_headword) {
    auto raw = utf8::trim(raw_headword);
    auto comma = raw.find(", ");
    if (comma == std::string::npos) return {raw, std::nullopt};
    auto masc = utf8::trim(std::string_view(raw).substr(0, comma));
    auto suffix = utf8::trim(std::string_view(raw).substr(comma + 2));
    if (suffix.empty() || masc.empty()) return {raw, std::nullopt};

    auto m = utf8::decode(masc);
    auto s = utf8::decode(suffix);
    if (s.size() == 1) return {masc, masc + suffix};

    char32_t anchor = utf8::fold_accent(s.front());
    for (std::size_t i = m.size(); i-- > 0;) {
        if (utf8::fold_accent(m[i]) == anchor)
            return {masc, utf8::encode(std::u32string_view(m).substr(0, i)) + suffix};
    }
    return {masc, masc + suffix};
}

std::string extract_pos_hint(std::string_view gloss) {
    std::size_t pos = 0;
    while ((pos = gloss.find('(', pos)) != std::string_view::npos) {
        auto close = gloss.find(')', pos);
        if (close == std::string_view::npos) break;
        auto inner = utf8::trim(gloss.substr(pos + 1, close - pos - 1));
        for (auto abbr : kPosAbbreviations)
            if (inner == abbr) return inner;
        pos = close + 1;
    }
    return {};
}

RawEntry parse_source_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw MalformedLine("missing TAB between columns");
    if (line.find('\t', tab + 1) != std::string_view::npos)
        throw MalformedLine("more than two columns");

    auto french = utf8::split(line.substr(0, tab), kSenseDelimiter);
    auto khmer = utf8::split(line.substr(tab + 1), kSenseDelimiter);
    if (french.size() != khmer.size()) throw AlignmentError(french.size(), khmer.size());

    RawEntry entry;
    for (std::size_t i = 0; i < french.size(); ++i) {
        RawSense sense;
        sense.gloss = utf8::trim(french[i]);
        if (sense.gloss.empty()) throw MalformedLine("empty French sense " + std::to_string(i + 1));
        for (const auto& alt : utf8::split(khmer[i], kAlternativeDelimiter)) {
            auto t = utf8::trim(alt);
            if (t.empty()) throw MalformedLine("empty Khmer translation in sense " + std::to_string(i + 1));
            sense.translations_ipa.push_back(std::move(t));
        }
        entry.senses.push_back(std::move(sense));
    }

    // The headword block is the first sense's text up to its first gloss group.
    std::string_view first = entry.senses.front().gloss;
    auto head = utf8::trim(first.substr(0, first.find('(')));
    while (!head.empty() && head.back() == ',') head = utf8::trim(head.substr(0, head.size() - 1));
    if (head.empty()) throw MalformedLine("no headword before the first gloss");

    auto split = split_feminine(head);
    entry.headword = split.masculine;
    if (split.feminine) {
        entry.fem_form = *split.feminine;
        entry.fem_suffix = utf8::trim(std::string_view(head).substr(head.find(", ") + 2));
    }
    entry.pos_hint = extract_pos_hint(first);
    return entry;
}

std::vector<std::string> read_lines(std::string_view text) {
    auto lines = utf8::split(text, "\n");
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

TaggedVolume tag_volume(std::span<const std::string> lines) {
    TaggedVolume out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        auto trimmed = utf8::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        try {
            out.articles.push_back(parse_source_line(line));
        } catch (const InvalidInput& e) {
            out.errors.push_back(LineError{i + 1, e.what(), line});
        }
    }
    return out;
}

std::string write_article(const RawEntry& entry) {
    std::string out = "<article>\n<vedette>" + xml::escape_text(entry.headword) + "</vedette>\n";
    for (const auto& s : entry.senses) {
        out += "<sens>\n<glose>" + xml::escape_text(s.gloss) + "</glose>\n";
        for (std::size_t i = 0; i < s.translations_ipa.size(); ++i) {
            out += "<traduction><api>" + xml::escape_text(s.translations_ipa[i]) + "</api>\n</traduction>";
            if (i + 1 < s.translations_ipa.size()) out += "\n";
        }
        out += "</sens>\n";
    }
    out += "</article>\n";
    return out;
}

std::string TaggedVolume::xml() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<volume>\n";
    for (const auto& a : articles) out += write_article(a);
    out += "</volume>\n";
    return out;
}

std::vector<std::string> tagged_schema_violations(const xml::Element& article) {
    std::vector<std::string> v;
    if (article.name != "article") {
        v.push_back("root element is <" + article.name + ">, expected <article>");
        return v;
    }
    auto vedettes = article.children_named("vedette");
    if (vedettes.size() != 1) v.push_back("expected exactly one <vedette>");
    else if (utf8::trim(vedettes[0]->text).empty()) v.push_back("empty <vedette>");
    auto senses = article.children_named("sens");
    if (senses.empty()) v.push_back("no <sens>");
    for (const auto& c : article.children)
        if (c.name != "vedette" && c.name != "sens") v.push_back("unexpected <" + c.name + "> in <article>");
    for (std::size_t i = 0; i < senses.size(); ++i) {
        const auto& s = *senses[i];
        auto where = " in <sens> " + std::to_string(i + 1);
        if (s.children_named("glose").size() != 1) v.push_back("expected one <glose>" + where);
        auto trads = s.children_named("traduction");
        if (trads.empty()) v.push_back("no <traduction>" + where);
        for (const auto& c : s.children)
            if (c.name != "glose" && c.name != "traduction") v.push_back("unexpected <" + c.name + ">" + where);
        for (const auto* t : trads) {
            auto apis = t->children_named("api");
            if (apis.size() != 1 || t->children.size() != 1) v.push_back("<traduction> must hold one <api>" + where);
            else if (utf8::trim(apis[0]->text).empty()) v.push_back("empty <api>" + where);
        }
    }
    return v;
}

}  // namespace motamot::ingest
