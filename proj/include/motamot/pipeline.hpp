#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "motamot/model.hpp"
#include "motamot/restructure.hpp"
#include "motamot/translit.hpp"

// Source file to the three linked volumes, every intermediate kept as text.
namespace motamot::pipeline {

inline constexpr std::string_view kDictionary = "Motamot";

struct Issue {
    std::string stage;
    std::string message;
    std::size_t line = 0;  // source line, ingest only
};

struct Artifacts {
    std::string tagged;
    std::string restructured;
    std::string enriched;
    std::string fra;
    std::string axi;
    std::string khm;
    restructure::EnrichStats enrich;
    std::vector<Issue> issues;

    bool ok() const { return issues.empty(); }
};

// Sets `writing` on every entry from its IPA headword and sorts the volume.
// Entries the rules cannot render keep an empty writing and yield an issue.
std::vector<Issue> transliterate_volume(Volume& khmer, const translit::RuleSet& rules);

// Integrity of the linked volumes plus LMF shape of every entry.
std::vector<std::string> check(const Volume& french, const AxieVolume& axies, const Volume& khmer);

Artifacts run(std::string_view source, std::string_view supplement, const translit::RuleSet& rules,
              std::string_view dictionary = kDictionary);

}  // namespace motamot::pipeline
