#include "motamot/pipeline.hpp"

#include "motamot/codec.hpp"
#include "motamot/ingest.hpp"
#include "motamot/reify.hpp"
#include "motamot/xml.hpp"

namespace motamot::pipeline {

std::vector<Issue> transliterate_volume(Volume& khmer, const translit::RuleSet& rules) {
    std::vector<Issue> issues;
    for (auto& e : khmer.entries) {
        try {
            e.writing = translit::transliterate(e.headword, rules).khmer;
        } catch (const translit::UntranslatableGrapheme& err) {
            e.writing.clear();
            issues.push_back({"translit", e.id + ": " + err.what(), 0});
        }
    }
    reify::sort_volume(khmer);
    return issues;
}

std::vector<std::string> check(const Volume& french, const AxieVolume& axies, const Volume& khmer) {
    auto report = reify::check_integrity(french, axies, khmer);
    for (const auto* volume : {&french, &khmer})
        for (const auto& e : volume->entries)
            for (auto& v : restructure::validate_lmf_shape(e)) report.push_back(e.id + ": " + v);
    return report;
}

Artifacts run(std::string_view source, std::string_view supplement, const translit::RuleSet& rules,
              std::string_view dictionary) {
    Artifacts out;
    const std::string dict(dictionary);

    auto lines = ingest::read_lines(source);
    auto tagged = ingest::tag_volume(lines);
    for (const auto& e : tagged.errors) out.issues.push_back({"ingest", e.message, e.line});
    out.tagged = tagged.xml();

    auto french = restructure::restructure_volume(xml::parse(out.tagged));
    out.restructured = xml::write(codec::to_document({dict, "fra"}, french));

    out.enrich = restructure::enrich_from_supplement(french, restructure::parse_supplement(supplement));
    out.enriched = xml::write(codec::to_document({dict, "fra"}, french));

    auto linked = reify::reify_links(french);
    for (const auto& r : linked.report) out.issues.push_back({"reify", r, 0});
    for (auto& issue : transliterate_volume(linked.khmer, rules)) out.issues.push_back(std::move(issue));
    for (auto& v : check(linked.french, linked.axies, linked.khmer)) out.issues.push_back({"check", v, 0});

    out.fra = xml::write(codec::to_document({dict, "fra"}, linked.french));
    out.axi = xml::write(codec::to_document({dict, "axi"}, linked.axies));
    out.khm = xml::write(codec::to_document({dict, "khm"}, linked.khmer));
    return out;
}

}  // namespace motamot::pipeline
