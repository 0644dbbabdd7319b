#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "motamot/model.hpp"

namespace motamot {

enum class LinkCase {
    sense_to_sense,    // both lexies gain the axie reference
    sense_to_vocable,  // a draft lexie is created on the target first
    vocable_level,     // note on the source vocable only
};

struct LinkResult {
    LinkCase kind;
    std::optional<Axie> axie;
    // Copies of every entry changed, in the state now held by `volumes`.
    std::vector<Vocable> modified;
};

// Records a translation link through the pivot volume.
//
// Throws InvalidInput when both ends live in the same volume, NotFound when
// an entry or sense does not resolve.
LinkResult add_translation_link(const LinkRequest& req, VolumeSet& volumes);

// One step of relational composition through volume `via`: every pair of
// axies sharing a `via` sense yields a draft `from`-`to` axie unless such a
// link already exists. Appends the new axies to `volumes.axies`, updates the
// referenced lexies when present, and returns the new axies.
std::vector<Axie> infer_transitive_links(VolumeSet& volumes, std::string_view from,
                                         std::string_view via, std::string_view to);

// First free sense index for an axie labelled by the two entry ids.
std::string next_axie_id(const AxieVolume& axies, std::string_view first_entry,
                         std::string_view second_entry);

}  // namespace motamot
