#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "motamot/codec.hpp"
#include "motamot/ingest.hpp"
#include "motamot/restructure.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace motamot;
using namespace motamot::restructure;

namespace {

Volume sample_volume() {
    auto tagged = ingest::tag_volume(ingest::read_lines(support::sample_source()));
    return restructure_volume(xml::parse(tagged.xml()));
}

xml::Element lmf_entry() { return xml::parse_element(support::golden("lmf_abondant.xml")); }

}  // namespace

TEST_CASE("strip particles") {
    CHECK(strip_particles("(dā'el) sambō") == "sambō");
    CHECK(strip_particles("  (a) (b)  cōk   coam ") == "cōk coam");
    CHECK(strip_particles("sambō (x)") == "sambō (x)");
    CHECK(strip_particles("(dā'el)") == "");
    CHECK(strip_particles("(open") == "(open");
}

TEST_CASE("abondant article restructures into the LMF entry") {
    auto article = xml::parse_element(support::golden("tagged_abondant.xml"));
    auto entry = to_motamot_entry(article, 27);
    CHECK(entry.id == "fra.abondant.27.e");
    REQUIRE(entry.senses.size() == 2);
    CHECK(entry.senses[0].sense_id == "s1");
    CHECK(entry.senses[1].sense_id == "s2");
    CHECK(entry.senses[0].translations == std::vector<std::string>{"sambō"});
    CHECK(entry.senses[1].translations == std::vector<std::string>{"cōk-coam"});
    auto diff = support::structural_diff(lmf_entry(), codec::to_xml(entry));
    CHECK_MESSAGE(diff.empty(), diff);
}

TEST_CASE("single sense article") {
    auto article = xml::parse_element(ingest::write_article(ingest::parse_source_line("x\ty")));
    auto entry = to_motamot_entry(article, 1);
    REQUIRE(entry.senses.size() == 1);
    CHECK(entry.senses[0].sense_id == "s1");
    CHECK(entry.senses[0].gloss == "x");
}

TEST_CASE("invalid article") {
    CHECK_THROWS_AS(to_motamot_entry(xml::parse_element("<article><vedette>a</vedette></article>"), 1),
                    InvalidArticle);
}

TEST_CASE("sample volume ordinals follow input order") {
    auto vol = sample_volume();
    REQUIRE(vol.entries.size() == 50);
    std::set<std::string> ids;
    for (std::size_t i = 0; i < vol.entries.size(); ++i) {
        auto parsed = EntryId::parse(vol.entries[i].id);
        REQUIRE(parsed);
        CHECK(parsed->ordinal == static_cast<long>(i + 1));
        ids.insert(vol.entries[i].id);
    }
    CHECK(ids.size() == 50);
    CHECK(vol.entries[26].id == "fra.abondant.27.e");
}

TEST_CASE("restructure preserves senses and glosses byte for byte") {
    auto tagged = ingest::tag_volume(ingest::read_lines(support::sample_source()));
    auto vol = restructure_volume(xml::parse(tagged.xml()));
    REQUIRE(vol.entries.size() == tagged.articles.size());
    for (std::size_t i = 0; i < vol.entries.size(); ++i) {
        REQUIRE(vol.entries[i].senses.size() == tagged.articles[i].senses.size());
        for (std::size_t s = 0; s < vol.entries[i].senses.size(); ++s)
            CHECK(vol.entries[i].senses[s].gloss == tagged.articles[i].senses[s].gloss);
    }
}

TEST_CASE("LMF shape") {
    CHECK(validate_lmf_shape(lmf_entry()).empty());

    auto no_head = lmf_entry();
    no_head.children.erase(no_head.children.begin());
    auto v = validate_lmf_shape(no_head);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("Form missing") != std::string::npos);

    auto extra = lmf_entry();
    extra.children[1].add("m:colour", "red");
    v = validate_lmf_shape(extra);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("m:colour") != std::string::npos);

    auto no_lemma = lmf_entry();
    no_lemma.children[0].children.erase(no_lemma.children[0].children.begin());
    v = validate_lmf_shape(no_lemma);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("Lemma missing") != std::string::npos);

    CHECK_FALSE(validate_lmf_shape(xml::parse_element("<m:volume/>")).empty());
}

TEST_CASE("supplement parsing") {
    auto s = parse_supplement(support::sample_supplement());
    CHECK(s.size() == 8);
    CHECK(s.at("abondant").pronunciation == "ABON-DAN");
    CHECK(s.at("abondant").pos == "adj.");
    CHECK(s.at("abondant").fem_pron == "ABON-DAN-T");
    CHECK(s.at("abonner").homonym_count == 2);

    CHECK_THROWS_AS(parse_supplement("a\tb\tc\n"), InvalidInput);
    CHECK_THROWS_AS(parse_supplement("a\tb\tc\t0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_supplement("a\tb\tc\tx\n"), InvalidInput);
    CHECK_THROWS_AS(parse_supplement("a\tb\tc\t1\na\tb\tc\t1\n"), InvalidInput);
    CHECK(parse_supplement("").empty());
}

TEST_CASE("enrichment examples") {
    Volume vol;
    vol.lang = "fra";
    auto article = xml::parse_element(support::golden("tagged_abondant.xml"));
    vol.entries.push_back(to_motamot_entry(article, 27));
    vol.entries.push_back(to_motamot_entry(xml::parse_element(ingest::write_article(
                                               ingest::parse_source_line("abonner (journal)\tci'əw-prū cam"))),
                                           28));
    vol.entries.push_back(to_motamot_entry(
        xml::parse_element(ingest::write_article(ingest::parse_source_line("zèbre (animal)\tsa-seh-bāy"))), 29));
    const auto untouched = vol.entries[2];

    SupplementLexicon supp;
    supp["abondant"] = {"ABON-DAN", "adj.", 1, "ABON-DAN-T"};
    supp["abonner"] = {"ABO-NÉ", "v.", 2, ""};
    auto stats = enrich_from_supplement(vol, supp);

    const auto& a = vol.entries[0];
    CHECK(a.pronunciation == "ABON-DAN");
    CHECK(a.pos == "adj.");
    CHECK(a.fem_form == "abondante");
    CHECK(a.fem_pron == "ABON-DAN-T");

    const auto& b = vol.entries[1];
    CHECK(b.pronunciation == "ABO-NÉ");
    CHECK(b.pos == "");
    CHECK(stats.homonyms == std::vector<std::string>{"abonner"});

    CHECK(vol.entries[2] == untouched);
    CHECK(stats.matched == 2);
    CHECK(stats.pos_set == 1);
    CHECK(stats.fem_forms == 1);
}

TEST_CASE("abondant head block after enrichment") {
    auto vol = sample_volume();
    enrich_from_supplement(vol, parse_supplement(support::sample_supplement()));
    const auto* e = vol.find("fra.abondant.27.e");
    REQUIRE(e);
    auto head = codec::to_xml(*e).children[0];
    auto want = xml::parse_element(support::golden("linked_abondant.xml")).children[0];
    auto diff = support::structural_diff(want, head);
    CHECK_MESSAGE(diff.empty(), diff);
}

TEST_CASE("enrichment touches only head blocks") {
    std::mt19937 rng(17);
    for (int i = 0; i < 20; ++i) {
        auto corpus = oracle::random_corpus(rng, 80);
        auto vol = restructure_volume(xml::parse(ingest::tag_volume(ingest::read_lines(corpus.text)).xml()));
        SupplementLexicon supp;
        std::uniform_int_distribution<int> coin(0, 2);
        for (const auto& e : vol.entries)
            if (coin(rng) == 0) supp[e.headword] = {"P", "n.", coin(rng) + 1, "PF"};
        auto before = vol;
        enrich_from_supplement(vol, supp);
        REQUIRE(vol.entries.size() == before.entries.size());
        for (std::size_t k = 0; k < vol.entries.size(); ++k) {
            CHECK(vol.entries[k].id == before.entries[k].id);
            CHECK(vol.entries[k].headword == before.entries[k].headword);
            CHECK(vol.entries[k].senses == before.entries[k].senses);
            CHECK(validate_lmf_shape(vol.entries[k]).empty());
        }
    }
}
