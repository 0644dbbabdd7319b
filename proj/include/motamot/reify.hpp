#pragma once

#include <string>
#include <vector>

#include "motamot/model.hpp"

namespace motamot::reify {

struct ReifyResult {
    Volume french;
    AxieVolume axies;
    Volume khmer;
    // One line per skipped translation.
    std::vector<std::string> report;
};

// Turns every embedded French->Khmer translation into a French->axie and an
// axie->Khmer link. The k-th (sense, translation) pair of the entry with
// ordinal n becomes axie `axi.[fra:<headword>,khm:<ipa>].n.k.e`. Khmer
// entries are merged on the particle-stripped IPA string, one sense per
// linked axie, numbered in order of first appearance.
//
// Throws InvalidInput if the volume already carries axie references.
ReifyResult reify_links(const Volume& french);

// Native-script headword when present, else the headword.
const std::string& sort_key(const Vocable& v);

// Stable code-point order on sort_key.
void sort_volume(Volume& volume);

// Empty when the three volumes are mutually consistent.
std::vector<std::string> check_integrity(const Volume& french, const AxieVolume& axies,
                                         const Volume& khmer);

}  // namespace motamot::reify
