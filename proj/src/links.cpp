#include "motamot/links.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "motamot/errors.hpp"
#include "motamot/ids.hpp"

namespace motamot {

namespace {

EntryId parse_entry(std::string_view id) {
    auto parsed = EntryId::parse(id);
    if (!parsed) throw NotFound("unresolvable entry id '" + std::string(id) + "'");
    return *parsed;
}

void add_ref(Lexie& lexie, const std::string& axie_id) {
    if (std::find(lexie.axie_refs.begin(), lexie.axie_refs.end(), axie_id) == lexie.axie_refs.end())
        lexie.axie_refs.push_back(axie_id);
}

}  // namespace

std::string next_axie_id(const AxieVolume& axies, std::string_view first_entry,
                         std::string_view second_entry) {
    auto a = parse_entry(first_entry);
    auto b = parse_entry(second_entry);
    // The French side leads the label when present.
    if (b.lang == "fra" && a.lang != "fra") std::swap(a, b);
    AxieId id;
    id.labels = {AxieId::Label{a.lang, a.headword}, AxieId::Label{b.lang, b.headword}};
    id.ordinal = a.ordinal;
    for (long k = 1;; ++k) {
        id.sense_index = k;
        auto rendered = id.render();
        if (!axies.contains(rendered)) return rendered;
    }
}

LinkResult add_translation_link(const LinkRequest& req, VolumeSet& volumes) {
    auto src_id = parse_entry(req.source.entry);
    auto tgt_id = parse_entry(req.target.entry);
    if (src_id.lang == tgt_id.lang)
        throw InvalidInput("translation link inside one volume (" + src_id.lang + ")");

    Vocable* source = volumes.find_entry(req.source.entry);
    if (!source) throw NotFound("no entry " + req.source.entry);
    Vocable* target = volumes.find_entry(req.target.entry);
    if (!target) throw NotFound("no entry " + req.target.entry);

    if (req.source.sense.empty()) {
        if (!req.target.sense.empty() && !target->find_sense(req.target.sense))
            throw NotFound("no sense " + req.target.sense + " in " + req.target.entry);
        source->pending_notes.push_back(
            VocableLevelLink{req.target.entry, req.target.sense, RefineFlag::urgent});
        return LinkResult{LinkCase::vocable_level, std::nullopt, {*source}};
    }

    Lexie* src_sense = source->find_sense(req.source.sense);
    if (!src_sense) throw NotFound("no sense " + req.source.sense + " in " + req.source.entry);

    LinkCase kind = LinkCase::sense_to_sense;
    Lexie* tgt_sense = nullptr;
    if (req.target.sense.empty()) {
        kind = LinkCase::sense_to_vocable;
        Lexie draft;
        draft.sense_id = target->next_sense_id();
        draft.level = QualityLevel::draft();
        draft.refine = RefineFlag::refine;
        target->senses.push_back(std::move(draft));
        tgt_sense = &target->senses.back();
    } else {
        tgt_sense = target->find_sense(req.target.sense);
        if (!tgt_sense) throw NotFound("no sense " + req.target.sense + " in " + req.target.entry);
    }

    Axie axie;
    axie.id = next_axie_id(volumes.axies, req.source.entry, req.target.entry);
    axie.refs = {AxieRef{src_id.lang, req.source.entry, src_sense->sense_id},
                 AxieRef{tgt_id.lang, req.target.entry, tgt_sense->sense_id}};
    if (kind == LinkCase::sense_to_vocable) {
        axie.level = QualityLevel::draft();
        axie.refine = RefineFlag::refine;
    } else {
        axie.level = QualityLevel(std::clamp(req.creator.skill, QualityLevel::kMin, QualityLevel::kMax));
    }

    add_ref(*src_sense, axie.id);
    add_ref(*tgt_sense, axie.id);
    volumes.axies.axies.push_back(axie);
    return LinkResult{kind, axie, {*source, *target}};
}

std::vector<Axie> infer_transitive_links(VolumeSet& volumes, std::string_view from,
                                         std::string_view via, std::string_view to) {
    std::vector<Axie> created;
    if (from == via || via == to || from == to) return created;

    using Pair = std::pair<AxieRef, AxieRef>;
    std::map<AxieRef, std::vector<std::size_t>> by_via;  // via-sense -> axies touching it
    std::set<Pair> existing;

    const auto& axies = volumes.axies.axies;
    for (std::size_t i = 0; i < axies.size(); ++i) {
        for (const auto& r : axies[i].refs)
            if (r.volume == via && !r.sense.empty()) by_via[r].push_back(i);
        for (const auto& ra : axies[i].refs) {
            if (ra.volume != from) continue;
            for (const auto& rc : axies[i].refs)
                if (rc.volume == to) existing.insert({ra, rc});
        }
    }

    std::vector<Pair> found;
    std::set<Pair> seen;
    for (const auto& [via_ref, members] : by_via) {
        for (auto x : members) {
            for (const auto& ra : axies[x].refs) {
                if (ra.volume != from) continue;
                for (auto y : members) {
                    for (const auto& rc : axies[y].refs) {
                        if (rc.volume != to) continue;
                        Pair p{ra, rc};
                        if (existing.count(p) || !seen.insert(p).second) continue;
                        found.push_back(p);
                    }
                }
            }
        }
    }

    for (const auto& [ra, rc] : found) {
        Axie axie;
        axie.id = next_axie_id(volumes.axies, ra.entry, rc.entry);
        axie.refs = {ra, rc};
        axie.level = QualityLevel::draft();
        axie.refine = RefineFlag::refine;
        for (const auto& r : axie.refs) {
            if (r.sense.empty()) continue;
            if (auto* entry = volumes.find_entry(r.entry))
                if (auto* lexie = entry->find_sense(r.sense)) add_ref(*lexie, axie.id);
        }
        volumes.axies.axies.push_back(axie);
        created.push_back(std::move(axie));
    }
    return created;
}

}  // namespace motamot
