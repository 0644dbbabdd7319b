#include "motamot/codec.hpp"

#include <fstream>
#include <sstream>

#include "motamot/errors.hpp"
#include "motamot/ids.hpp"

namespace motamot::codec {

namespace {

void add_if(xml::Element& parent, const char* name, const std::string& text) {
    if (!text.empty()) parent.add(name, text);
}

void add_list(xml::Element& parent, const char* list_name, const char* item_name,
              const std::vector<std::string>& items) {
    if (items.empty()) return;
    auto& list = parent.add(xml::Element(list_name));
    for (const auto& i : items) list.add(item_name, i);
}

std::string text_of(const xml::Element& e, std::string_view child) {
    const auto* c = e.child(child);
    return c ? c->text : std::string();
}

std::vector<std::string> list_of(const xml::Element& e, std::string_view list_name,
                                 std::string_view item_name) {
    std::vector<std::string> out;
    if (const auto* list = e.child(list_name))
        for (const auto* item : list->children_named(item_name)) out.push_back(item->text);
    return out;
}

const std::string& required_attr(const xml::Element& e, std::string_view key) {
    const auto* v = e.attr(key);
    if (!v || v->empty())
        throw InvalidInput("<" + e.name + "> lacks attribute " + std::string(key));
    return *v;
}

}  // namespace

xml::Element to_xml(const Vocable& v) {
    xml::Element entry("m:entry");
    entry.set_attr("id", v.id);
    entry.set_attr("level", level_to_string(v.level));

    auto& head = entry.add(xml::Element("m:head"));
    head.add("m:headword", v.headword);
    add_if(head, "m:writing", v.writing);
    add_if(head, "m:pronunciation", v.pronunciation);
    head.add("m:pos", v.pos);
    add_if(head, "m:fem_form", v.fem_form);
    add_if(head, "m:fem_pron", v.fem_pron);

    for (const auto& s : v.senses) {
        auto& sense = entry.add(xml::Element("m:sense"));
        sense.set_attr("id", s.sense_id);
        sense.set_attr("level", level_to_string(s.level));
        if (s.refine != RefineFlag::none) sense.set_attr("refine", std::string(refine_to_string(s.refine)));
        add_if(sense, "m:gloss", s.gloss);
        add_if(sense, "m:semantic_formula", s.semantic_formula);
        add_if(sense, "m:domain", s.domain);
        add_list(sense, "m:translations", "m:translation", s.translations);
        for (const auto& ref : s.axie_refs) {
            xml::Element r("m:refaxie");
            r.set_attr("idrefaxie", ref);
            sense.add(std::move(r));
        }
        add_list(sense, "m:examples", "m:example", s.examples);
        add_list(sense, "m:idioms", "m:idiom", s.idioms);
        add_if(sense, "m:misc", s.misc);
    }

    for (const auto& note : v.pending_notes) {
        xml::Element n("m:vocable_link");
        n.set_attr("idref", note.target);
        if (!note.target_sense.empty()) n.set_attr("sense", note.target_sense);
        n.set_attr("refine", std::string(refine_to_string(note.refine)));
        entry.add(std::move(n));
    }
    return entry;
}

Vocable vocable_from_xml(const xml::Element& e) {
    if (e.name != "m:entry") throw InvalidInput("expected <m:entry>, got <" + e.name + ">");
    Vocable v;
    v.id = required_attr(e, "id");
    v.level = level_from_string(e.attr_or("level"));
    if (const auto* head = e.child("m:head")) {
        v.headword = text_of(*head, "m:headword");
        v.writing = text_of(*head, "m:writing");
        v.pronunciation = text_of(*head, "m:pronunciation");
        v.pos = text_of(*head, "m:pos");
        v.fem_form = text_of(*head, "m:fem_form");
        v.fem_pron = text_of(*head, "m:fem_pron");
    }
    for (const auto& c : e.children) {
        if (c.name == "m:sense") {
            Lexie s;
            s.sense_id = required_attr(c, "id");
            s.level = level_from_string(c.attr_or("level"));
            s.refine = refine_from_string(c.attr_or("refine"));
            s.gloss = text_of(c, "m:gloss");
            s.semantic_formula = text_of(c, "m:semantic_formula");
            s.domain = text_of(c, "m:domain");
            s.translations = list_of(c, "m:translations", "m:translation");
            for (const auto& r : c.children) {
                if (r.name == "m:refaxie" || r.name == "m:reflexie") {
                    const auto* id = r.attr("idrefaxie");
                    if (!id) id = r.attr("idref");
                    if (!id || id->empty())
                        throw InvalidInput("<" + r.name + "> without target in " + v.id);
                    s.axie_refs.push_back(*id);
                }
            }
            s.examples = list_of(c, "m:examples", "m:example");
            s.idioms = list_of(c, "m:idioms", "m:idiom");
            s.misc = text_of(c, "m:misc");
            v.senses.push_back(std::move(s));
        } else if (c.name == "m:vocable_link") {
            VocableLevelLink note;
            note.target = required_attr(c, "idref");
            note.target_sense = c.attr_or("sense");
            note.refine = refine_from_string(c.attr_or("refine", "urgent"));
            v.pending_notes.push_back(std::move(note));
        }
    }
    return v;
}

xml::Element to_xml(const Axie& a) {
    xml::Element axie("m:axie");
    axie.set_attr("id", a.id);
    axie.set_attr("level", level_to_string(a.level));
    if (a.refine != RefineFlag::none) axie.set_attr("refine", std::string(refine_to_string(a.refine)));
    for (const auto& r : a.refs) {
        xml::Element ref("m:reflexie");
        ref.set_attr("idref", r.entry);
        if (!r.sense.empty()) ref.set_attr("sense", r.sense);
        axie.add(std::move(ref));
    }
    return axie;
}

Axie axie_from_xml(const xml::Element& e) {
    if (e.name != "m:axie") throw InvalidInput("expected <m:axie>, got <" + e.name + ">");
    Axie a;
    a.id = required_attr(e, "id");
    a.level = level_from_string(e.attr_or("level"));
    a.refine = refine_from_string(e.attr_or("refine"));
    for (const auto* r : e.children_named("m:reflexie")) {
        AxieRef ref;
        ref.entry = required_attr(*r, "idref");
        ref.volume = lang_of(ref.entry);
        ref.sense = r->attr_or("sense");
        a.refs.push_back(std::move(ref));
    }
    return a;
}

xml::Document volume_document(const VolumeHeader& header, std::vector<xml::Element> entries) {
    xml::Document doc;
    doc.root.name = "m:volume";
    doc.root.set_attr("xmlns:m", std::string(kNamespace));
    doc.root.set_attr("dictionary", header.dictionary);
    doc.root.set_attr("lang", header.lang);
    doc.root.children = std::move(entries);
    return doc;
}

xml::Document to_document(const VolumeHeader& header, const Volume& volume) {
    std::vector<xml::Element> entries;
    entries.reserve(volume.entries.size());
    for (const auto& v : volume.entries) entries.push_back(to_xml(v));
    return volume_document(header, std::move(entries));
}

xml::Document to_document(const VolumeHeader& header, const AxieVolume& volume) {
    std::vector<xml::Element> entries;
    entries.reserve(volume.axies.size());
    for (const auto& a : volume.axies) entries.push_back(to_xml(a));
    return volume_document(header, std::move(entries));
}

VolumeHeader header_of(const xml::Document& doc) {
    return VolumeHeader{doc.root.attr_or("dictionary"), doc.root.attr_or("lang")};
}

Volume volume_from_document(const xml::Document& doc) {
    Volume v;
    v.lang = doc.root.attr_or("lang");
    for (const auto& c : doc.root.children) v.entries.push_back(vocable_from_xml(c));
    return v;
}

AxieVolume axie_volume_from_document(const xml::Document& doc) {
    AxieVolume v;
    for (const auto& c : doc.root.children) v.axies.push_back(axie_from_xml(c));
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFound("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + path);
}

}  // namespace motamot::codec
