#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <latch>
#include <random>
#include <set>
#include <thread>

#include "motamot/codec.hpp"
#include "motamot/ids.hpp"
#include "motamot/store.hpp"
#include "support.hpp"

using namespace motamot;
using namespace motamot::store;
namespace fs = std::filesystem;

namespace {

const std::string& sample_fra() { return support::sample_artifacts().fra; }

std::string empty_volume(const std::string& dict = "sample", const std::string& lang = "fra") {
    return xml::write(codec::volume_document({dict, lang}, {}));
}

// Values a criteria names, read from the decoded entry rather than by path.
std::vector<std::string> field_values(const Vocable& v, const std::string& criteria) {
    std::vector<std::string> out;
    auto each_sense = [&](auto member) {
        for (const auto& s : v.senses) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s.*member)>, std::string>)
                out.push_back(s.*member);
            else
                out.insert(out.end(), (s.*member).begin(), (s.*member).end());
        }
    };
    if (criteria == "cdm-headword") out.push_back(v.headword);
    else if (criteria == "cdm-writing") out.push_back(v.writing);
    else if (criteria == "cdm-pronunciation") out.push_back(v.pronunciation);
    else if (criteria == "cdm-pos") out.push_back(v.pos);
    else if (criteria == "cdm-domain") each_sense(&Lexie::domain);
    else if (criteria == "cdm-example") each_sense(&Lexie::examples);
    else if (criteria == "cdm-idiom") each_sense(&Lexie::idioms);
    else if (criteria == "cdm-translation") each_sense(&Lexie::translations);
    else if (criteria == "cdm-refaxie") each_sense(&Lexie::axie_refs);
    std::erase(out, std::string());
    return out;
}

QueryResult scan(const Store& s, const std::string& handle, const std::string& criteria, const std::string& value,
                 Strategy strategy, std::size_t count, std::size_t start) {
    std::vector<std::pair<std::string, std::string>> hits;  // sort key, id
    for (const auto& [id, stored] : s.entries(handle)) {
        auto v = codec::vocable_from_xml(stored.element);
        bool match = false;
        for (const auto& f : field_values(v, criteria))
            match |= strategy == Strategy::exact ? f == value : f.starts_with(value);
        if (match) hits.emplace_back(v.writing.empty() ? v.headword : v.writing, id);
    }
    std::sort(hits.begin(), hits.end());
    QueryResult r;
    r.total = hits.size();
    for (std::size_t i = start; i < hits.size() && i < start + count; ++i) r.ids.push_back(hits[i].second);
    return r;
}

xml::Element edited(const Store& s, const std::string& handle, const std::string& id, const std::string& gloss) {
    auto v = codec::vocable_from_xml(s.get(handle, id)->element);
    v.senses.at(0).gloss = gloss;
    return codec::to_xml(v);
}

}  // namespace

TEST_CASE("import the sample volume") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    CHECK(h == "sample_fra");
    // Full scan recount: 50 entries, "abonner" twice.
    std::set<std::string> headwords;
    std::size_t reachable = 0;
    for (const auto& [id, e] : s->entries(h)) {
        auto head = xml::select(e.element, "m:head/m:headword").at(0);
        headwords.insert(head);
        auto hits = s->query(h, "cdm-headword", head, Strategy::exact, 10).ids;
        reachable += std::count(hits.begin(), hits.end(), id);
    }
    CHECK(s->entries(h).size() == 50);
    CHECK(reachable == 50);
    CHECK(headwords.size() == 49);
    CHECK(s->index_key_count(h, "cdm-headword") == headwords.size());
    CHECK(s->find_volume("sample", "fra") == h);
    CHECK(s->descriptor(h)->indexed_fields == default_fields("fra"));
    CHECK_THROWS_AS(s->index_key_count(h, "cdm-colour"), UnknownCriteria);
}

TEST_CASE("import sets empty levels to drafts") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    auto e = s->get(h, "fra.abondant.27.e");
    REQUIRE(e);
    CHECK(e->revision == 1);
    CHECK(e->element.attr_or("level") == "1");
    for (const auto* sense : e->element.children_named("m:sense")) CHECK(sense->attr_or("level") == "1");
}

TEST_CASE("empty volume") {
    auto s = Store::in_memory();
    auto h = s->import_volume(empty_volume());
    CHECK(s->index_key_count(h, "cdm-headword") == 0);
    CHECK(s->query(h, "cdm-headword", "*").total == 0);
    auto doc = xml::parse(s->export_volume(h));
    CHECK(doc.root.name == "m:volume");
    CHECK(doc.root.children.empty());
}

TEST_CASE("import errors") {
    auto s = Store::in_memory();
    auto fra = xml::parse(sample_fra());
    fra.root.children.push_back(fra.root.children[3]);
    const auto dup_id = fra.root.children[3].attr_or("id");
    try {
        s->import_volume(xml::write(fra));
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()) == "duplicate id " + dup_id);
    }
    CHECK(s->volumes().empty());

    try {
        s->import_volume("<m:volume xmlns:m=\"x\" dictionary=\"d\" lang=\"fra\">\n<m:entry>\n</m:volume>");
        FAIL("expected XmlError");
    } catch (const XmlError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(s->import_volume("<other/>"), InvalidInput);
    CHECK_THROWS_AS(s->import_volume(empty_volume("", "fra")), InvalidInput);
    CHECK_THROWS_AS(s->import_volume(empty_volume(), {"", "", "", {{"cdm-x", "m:head/m:colour"}}}), InvalidInput);
    CHECK_THROWS_AS(s->import_volume(empty_volume(), {"", "", "", {{"handle", "m:head/m:pos"}}}), InvalidInput);
    CHECK_THROWS_AS(s->import_volume(empty_volume(), {"../x", "", "", {}}), InvalidInput);
}

TEST_CASE("query examples") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    CHECK(s->query(h, "cdm-headword", "abondant").ids == std::vector<std::string>{"fra.abondant.27.e"});

    auto abon = s->query(h, "cdm-headword", "abon", Strategy::prefix, 50);
    std::vector<std::string> heads;
    for (const auto& id : abon.ids) heads.push_back(EntryId::parse(id)->headword);
    CHECK(heads == std::vector<std::string>{"abondamment", "abondance", "abondant", "abonnement", "abonner",
                                            "abonner"});
    CHECK(s->query(h, "cdm-headword", "zzz").ids.empty());
    CHECK(s->query(h, "cdm-headword", "zzz").total == 0);
    CHECK_THROWS_AS(s->query(h, "cdm-colour", "x"), UnknownCriteria);
    CHECK_THROWS_AS(s->query("nope", "cdm-headword", "x"), NotFound);

    CHECK(s->query(h, "handle", "fra.abondant.27.e").ids == std::vector<std::string>{"fra.abondant.27.e"});
    CHECK(s->query(h, "cdm-pos", "adj.", Strategy::exact, 50).ids.size() >= 1);
    auto all = s->query(h, "cdm-headword", "*", Strategy::exact, 1000);
    CHECK(all.total == 50);
    CHECK(all.ids.size() == 50);

    auto page = s->query(h, "cdm-headword", "*", Strategy::exact, 10, 45);
    CHECK(page.total == 50);
    CHECK(page.ids.size() == 5);
    CHECK(s->query(h, "cdm-headword", "*", Strategy::exact, 10, 60).ids.empty());
}

TEST_CASE("query results follow the native script when present") {
    auto s = Store::in_memory();
    auto h = s->import_volume(support::sample_artifacts().khm);
    auto all = s->query(h, "cdm-headword", "*", Strategy::exact, 1000);
    std::string prev;
    for (const auto& id : all.ids) {
        auto writing = xml::select(s->get(h, id)->element, "m:head/m:writing").at(0);
        CHECK(prev <= writing);
        prev = writing;
    }
}

TEST_CASE("strategy names") {
    CHECK(strategy_from_string("exact") == Strategy::exact);
    CHECK(strategy_from_string("prefix") == Strategy::prefix);
    CHECK_THROWS_AS(strategy_from_string("fuzzy"), InvalidInput);
}

TEST_CASE("projection") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    CHECK(s->project(h, "fra.abondant.27.e", "cdm-pos") == std::vector<std::string>{"adj."});
    CHECK(s->project(h, "fra.abondant.27.e", "cdm-refaxie") ==
          std::vector<std::string>{"axi.[fra:abondant,khm:sambō].27.1.e", "axi.[fra:abondant,khm:cōk-coam].27.2.e"});
    CHECK(s->project(h, "fra.abondant.27.e", "handle") == std::vector<std::string>{"fra.abondant.27.e"});
    CHECK_THROWS_AS(s->project(h, "fra.nothing.1.e", "cdm-pos"), NotFound);
}

TEST_CASE("index and scan agree on random queries") {
    auto s = Store::in_memory();
    std::vector<std::string> handles = {s->import_volume(sample_fra()),
                                        s->import_volume(support::sample_artifacts().khm)};
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<std::size_t> window(0, 20);
    for (const auto& h : handles) {
        auto fields = s->descriptor(h)->indexed_fields;
        std::vector<std::string> values;
        for (const auto& [id, e] : s->entries(h))
            for (const auto& f : fields)
                for (auto& v : field_values(codec::vocable_from_xml(e.element), f.criteria)) values.push_back(v);
        REQUIRE_FALSE(values.empty());
        std::uniform_int_distribution<std::size_t> pick_field(0, fields.size() - 1), pick_value(0, values.size() - 1);
        for (int q = 0; q < 100; ++q) {
            const auto& criteria = fields[pick_field(rng)].criteria;
            std::string value = values[pick_value(rng)];
            auto strategy = coin(rng) < 2 ? Strategy::exact : Strategy::prefix;
            if (strategy == Strategy::prefix) value = value.substr(0, std::min<std::size_t>(value.size(), 1 + coin(rng)));
            if (coin(rng) == 0) value += "q";
            auto count = window(rng) + 1, start = window(rng) / 4;
            auto got = s->query(h, criteria, value, strategy, count, start);
            auto want = scan(*s, h, criteria, value, strategy, count, start);
            CHECK_MESSAGE(got.total == want.total, criteria << "=" << value);
            CHECK_MESSAGE(got.ids == want.ids, criteria << "=" << value);
        }
    }
}

TEST_CASE("sequential edits") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    const std::string id = "fra.abondant.27.e";
    CHECK(s->update_entry(h, id, edited(*s, h, id, "g1"), {"ann", 1, 0}, 1) == 2);
    CHECK(s->update_entry(h, id, edited(*s, h, id, "g2"), {"ann", 1, 0}, 2) == 3);
    CHECK(s->get(h, id)->revision == 3);
    CHECK(xml::select(s->get(h, id)->element, "m:sense/m:gloss").at(0) == "g2");
    try {
        s->update_entry(h, id, edited(*s, h, id, "g3"), {"ann", 1, 0}, 2);
        FAIL("expected Conflict");
    } catch (const Conflict& c) {
        CHECK(c.expected() == 2);
        CHECK(c.actual() == 3);
    }
    CHECK_THROWS_AS(s->update_entry(h, "fra.nothing.1.e", edited(*s, h, id, "x"), {"ann", 1, 0}, 1), NotFound);
}

TEST_CASE("edits index the new values") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    const std::string id = "fra.abondant.27.e";
    auto v = codec::vocable_from_xml(s->get(h, id)->element);
    v.headword = "abondantissime";
    s->update_entry(h, id, codec::to_xml(v), {"ann", 1, 0}, 1);
    CHECK(s->query(h, "cdm-headword", "abondant").ids.empty());
    CHECK(s->query(h, "cdm-headword", "abondantissime").ids == std::vector<std::string>{id});
}

TEST_CASE("invalid edits") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    const std::string id = "fra.abondant.27.e";
    auto bad = edited(*s, h, id, "g");
    bad.children.erase(bad.children.begin());
    CHECK_THROWS_AS(s->update_entry(h, id, bad, {"ann", 1, 0}, 1), InvalidInput);
    auto other = edited(*s, h, id, "g");
    other.set_attr("id", "fra.abord.31.e");
    CHECK_THROWS_AS(s->update_entry(h, id, other, {"ann", 1, 0}, 1), InvalidInput);
    CHECK(s->get(h, id)->revision == 1);

    auto axi = s->import_volume(support::sample_artifacts().axi);
    auto first = s->entries(axi).at(0);
    CHECK_THROWS_AS(s->update_entry(axi, first.first, first.second.element, {"ann", 5, 0}, 1), InvalidInput);
}

TEST_CASE("edit levels follow the editor's skill") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    const std::string id = "fra.abondant.27.e";
    s->update_entry(h, id, edited(*s, h, id, "a"), {"ann", 2, 0}, 1);
    CHECK(s->get(h, id)->element.attr_or("level") == "2");
    s->update_entry(h, id, edited(*s, h, id, "b"), {"bob", 3, 0}, 2);
    CHECK(s->get(h, id)->element.attr_or("level") == "3");
    s->update_entry(h, id, edited(*s, h, id, "c"), {"cat", 1, 0}, 3);
    CHECK(s->get(h, id)->element.attr_or("level") == "3");

    // A level sent by the client is not taken.
    auto forged = edited(*s, h, id, "d");
    forged.set_attr("level", "5");
    s->update_entry(h, id, forged, {"cat", 1, 0}, 4);
    CHECK(s->get(h, id)->element.attr_or("level") == "3");
}

TEST_CASE("two writers with the same revision") {
    support::TempDir dir;
    auto s = Store::open_directory(dir.path());
    auto h = s->import_volume(sample_fra());
    const std::string id = "fra.abondant.27.e";
    for (int trial = 0; trial < 100; ++trial) {
        const long rev = s->get(h, id)->revision;
        std::atomic<int> ok{0}, conflicts{0};
        std::latch start(2);
        auto writer = [&](const std::string& gloss) {
            auto body = edited(*s, h, id, gloss);
            start.arrive_and_wait();
            try {
                s->update_entry(h, id, body, {gloss, 2, 0}, rev);
                ++ok;
            } catch (const Conflict&) {
                ++conflicts;
            }
        };
        std::thread a(writer, "a"), b(writer, "b");
        a.join();
        b.join();
        CHECK(ok == 1);
        CHECK(conflicts == 1);
        CHECK(s->get(h, id)->revision == rev + 1);
    }
}

TEST_CASE("readers never see half an edit") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    const std::string id = "fra.abondant.27.e";
    std::atomic<bool> done{false};
    std::atomic<int> torn{0};
    std::thread reader([&] {
        while (!done) {
            auto e = s->get(h, id);
            auto glosses = xml::select(e->element, "m:sense/m:gloss");
            // Writers keep both glosses equal.
            if (glosses.size() == 2 && glosses[0] != glosses[1] && e->revision > 1) ++torn;
            auto q = s->query(h, "cdm-headword", "abondant");
            if (q.ids.size() != 1) ++torn;
        }
    });
    for (long rev = 1; rev <= 200; ++rev) {
        auto v = codec::vocable_from_xml(s->get(h, id)->element);
        for (auto& sense : v.senses) sense.gloss = "g" + std::to_string(rev);
        s->update_entry(h, id, codec::to_xml(v), {"w", 1, 0}, rev);
    }
    done = true;
    reader.join();
    CHECK(torn == 0);
}

TEST_CASE("export round trip") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    auto first = s->export_volume(h);
    CHECK(first.find("CC BY 4.0") != std::string::npos);
    auto s2 = Store::in_memory();
    auto h2 = s2->import_volume(first);
    CHECK(s2->export_volume(h2) == first);
}

TEST_CASE("export after an edit contains it") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    s->update_entry(h, "fra.abondant.27.e", edited(*s, h, "fra.abondant.27.e", "riche en fruits"), {"a", 1, 0}, 1);
    CHECK(s->export_volume(h).find("riche en fruits") != std::string::npos);
}

TEST_CASE("reimport replaces a volume") {
    auto s = Store::in_memory();
    auto h = s->import_volume(sample_fra());
    CHECK(s->import_volume(empty_volume()) == h);
    CHECK(s->volumes().size() == 1);
    CHECK(s->query(h, "cdm-headword", "*").total == 0);
}

TEST_CASE("directory store survives a restart") {
    support::TempDir dir;
    std::string exported;
    {
        auto s = Store::open_directory(dir.path());
        auto h = s->import_volume(sample_fra());
        s->update_entry(h, "fra.abondant.27.e", edited(*s, h, "fra.abondant.27.e", "x"), {"a", 4, 0}, 1);
        exported = s->export_volume(h);
    }
    CHECK(fs::exists(dir.path() / "sample_fra.xml"));
    CHECK(fs::exists(dir.path() / "sample_fra.meta.json"));
    auto s = Store::open_directory(dir.path());
    CHECK(s->export_volume("sample_fra") == exported);
    CHECK(s->get("sample_fra", "fra.abondant.27.e")->revision == 2);
    CHECK(s->get("sample_fra", "fra.abord.31.e")->revision == 1);
    CHECK(s->get("sample_fra", "fra.abondant.27.e")->element.attr_or("level") == "4");
}

TEST_CASE("files edited outside the store invalidate outstanding revisions") {
    support::TempDir dir;
    {
        auto s = Store::open_directory(dir.path());
        s->import_volume(sample_fra());
    }
    auto path = dir.path() / "sample_fra.xml";
    auto text = support::read(path);
    text.replace(text.find("(pluie)"), 7, "(orage)");
    codec::write_file(path.string(), text);
    auto s = Store::open_directory(dir.path());
    CHECK(s->get("sample_fra", "fra.abondant.27.e")->revision == 2);
    CHECK(s->export_volume("sample_fra").find("(orage)") != std::string::npos);
}

TEST_CASE("links through the store") {
    auto s = Store::in_memory();
    auto fra = s->import_volume(sample_fra());
    auto khm = s->import_volume(support::sample_artifacts().khm);
    LinkRequest req{{"fra.abord.31.e", "s1"}, {"khm.sambō.29.e", ""}, {"ann", 3, 0}};
    auto out = s->create_link("sample", req, 1);
    CHECK(out.result.kind == LinkCase::sense_to_vocable);
    REQUIRE(out.result.axie);
    CHECK(AxieId::parse(out.result.axie->id));
    CHECK(out.revisions.at("fra.abord.31.e") == 2);
    CHECK(out.revisions.at("khm.sambō.29.e") == 2);
    CHECK(out.revisions.at(out.result.axie->id) == 1);
    auto axi = s->find_volume("sample", "axi");
    REQUIRE(axi);
    CHECK(s->query(*axi, "handle", out.result.axie->id).total == 1);
    CHECK(s->project(fra, "fra.abord.31.e", "cdm-refaxie").back() == out.result.axie->id);
    CHECK(s->project(khm, "khm.sambō.29.e", "cdm-refaxie").back() == out.result.axie->id);

    CHECK_THROWS_AS(s->create_link("sample", req, 1), Conflict);
    CHECK_THROWS_AS(s->create_link("other", req), NotFound);
    LinkRequest same{{"fra.abord.31.e", "s1"}, {"fra.abondant.27.e", "s1"}, {"ann", 3, 0}};
    CHECK_THROWS_AS(s->create_link("sample", same), InvalidInput);
}
