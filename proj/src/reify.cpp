#include "motamot/reify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "motamot/errors.hpp"
#include "motamot/ids.hpp"
#include "motamot/restructure.hpp"

namespace motamot::reify {

ReifyResult reify_links(const Volume& french) {
    ReifyResult out;
    out.french.lang = french.lang.empty() ? "fra" : french.lang;
    out.khmer.lang = "khm";
    std::unordered_map<std::string, std::size_t> khmer_index;

    for (const auto& src : french.entries) {
        auto id = EntryId::parse(src.id);
        if (!id) throw InvalidInput("unparseable entry id " + src.id);
        Vocable fr = src;
        long k = 0;
        for (auto& sense : fr.senses) {
            if (!sense.axie_refs.empty())
                throw InvalidInput("volume already reified: " + src.id + "/" + sense.sense_id);
            auto translations = std::move(sense.translations);
            sense.translations.clear();
            if (translations.empty())
                out.report.push_back(src.id + "/" + sense.sense_id + ": no translation");
            for (const auto& t : translations) {
                ++k;
                auto key = restructure::strip_particles(t);
                if (key.empty()) {
                    out.report.push_back(src.id + "/" + sense.sense_id + ": empty translation skipped");
                    continue;
                }
                auto it = khmer_index.find(key);
                if (it == khmer_index.end()) {
                    Vocable km;
                    km.headword = key;
                    km.id = make_entry_id("khm", key, static_cast<long>(out.khmer.entries.size() + 1));
                    out.khmer.entries.push_back(std::move(km));
                    it = khmer_index.emplace(key, out.khmer.entries.size() - 1).first;
                }
                auto& km = out.khmer.entries[it->second];

                Axie axie;
                axie.id = make_axie_id(src.headword, key, id->ordinal, k);
                Lexie km_sense;
                km_sense.sense_id = km.next_sense_id();
                km_sense.axie_refs.push_back(axie.id);
                axie.refs = {AxieRef{"fra", fr.id, sense.sense_id}, AxieRef{"khm", km.id, km_sense.sense_id}};
                km.senses.push_back(std::move(km_sense));
                sense.axie_refs.push_back(axie.id);
                out.axies.axies.push_back(std::move(axie));
            }
        }
        out.french.entries.push_back(std::move(fr));
    }
    return out;
}

const std::string& sort_key(const Vocable& v) { return v.writing.empty() ? v.headword : v.writing; }

void sort_volume(Volume& volume) {
    // UTF-8 byte order coincides with code-point order.
    std::stable_sort(volume.entries.begin(), volume.entries.end(),
                     [](const Vocable& a, const Vocable& b) { return sort_key(a) < sort_key(b); });
}

namespace {

void check_refs(const Volume& volume, const std::unordered_set<std::string>& axie_ids,
                std::vector<std::string>& report) {
    for (const auto& e : volume.entries)
        for (const auto& s : e.senses)
            for (const auto& ref : s.axie_refs)
                if (!axie_ids.count(ref))
                    report.push_back("dangling refaxie " + ref + " in " + e.id + "/" + s.sense_id);
}

std::unordered_map<std::string, const Vocable*> index_of(const Volume& volume) {
    std::unordered_map<std::string, const Vocable*> out;
    for (const auto& e : volume.entries) out.emplace(e.id, &e);
    return out;
}

}  // namespace

std::vector<std::string> check_integrity(const Volume& french, const AxieVolume& axies,
                                         const Volume& khmer) {
    std::vector<std::string> report;

    std::unordered_set<std::string> axie_ids;
    for (const auto& a : axies.axies)
        if (!axie_ids.insert(a.id).second) report.push_back("duplicate axie id " + a.id);

    // (a) sense -> axie references resolve.
    check_refs(french, axie_ids, report);
    check_refs(khmer, axie_ids, report);

    const auto french_index = index_of(french);
    const auto khmer_index = index_of(khmer);

    // (b) every axie reaches exactly one French sense and one Khmer entry,
    // and those point back to it.
    std::set<std::string> referenced_khmer;
    for (const auto& a : axies.axies) {
        std::size_t n_fr = 0, n_km = 0;
        for (const auto& r : a.refs) {
            const auto* index = r.volume == "fra" ? &french_index : r.volume == "khm" ? &khmer_index : nullptr;
            if (!index) {
                report.push_back("axie " + a.id + " references unknown volume of " + r.entry);
                continue;
            }
            auto found = index->find(r.entry);
            if (found == index->end()) {
                report.push_back("axie " + a.id + " references missing entry " + r.entry);
                continue;
            }
            const Vocable* entry = found->second;
            const Lexie* sense = r.sense.empty() ? nullptr : entry->find_sense(r.sense);
            if (!r.sense.empty() && !sense) {
                report.push_back("axie " + a.id + " references missing sense " + r.entry + "/" + r.sense);
                continue;
            }
            if (sense && std::find(sense->axie_refs.begin(), sense->axie_refs.end(), a.id) ==
                             sense->axie_refs.end())
                report.push_back("sense " + r.entry + "/" + r.sense + " does not point back to " + a.id);
            if (index == &french_index) {
                if (!sense) report.push_back("axie " + a.id + " references French entry without sense");
                else ++n_fr;
            } else {
                ++n_km;
                referenced_khmer.insert(r.entry);
            }
        }
        if (n_fr != 1)
            report.push_back("axie " + a.id + ": expected exactly one French sense, found " + std::to_string(n_fr));
        if (n_km != 1)
            report.push_back("axie " + a.id + ": expected exactly one Khmer entry, found " + std::to_string(n_km));
    }

    // (c) one axie per French (sense, translation) link.
    std::size_t links = 0;
    for (const auto& e : french.entries)
        for (const auto& s : e.senses) links += s.axie_refs.size();
    if (links != axies.axies.size())
        report.push_back("axie count " + std::to_string(axies.axies.size()) + " != French links " +
                         std::to_string(links));

    // (d) one Khmer entry per distinct translation string, each one used.
    std::set<std::string> headwords;
    for (const auto& e : khmer.entries) {
        if (!headwords.insert(e.headword).second) report.push_back("Khmer headword " + e.headword + " not merged");
        if (!referenced_khmer.count(e.id)) report.push_back("Khmer entry " + e.id + " not linked by any axie");
    }
    return report;
}

}  // namespace motamot::reify
