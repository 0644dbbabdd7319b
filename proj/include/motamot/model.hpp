#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace motamot {

// Star rating 1 (recovered draft, quality unknown) .. 5 (expert-certified).
class QualityLevel {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 5;

    constexpr QualityLevel() = default;
    // Throws InvalidInput outside 1..5.
    explicit QualityLevel(int stars);

    constexpr int stars() const { return stars_; }
    static QualityLevel draft() { return QualityLevel(kMin); }

    auto operator<=>(const QualityLevel&) const = default;

private:
    int stars_ = kMin;
};

std::string level_to_string(const std::optional<QualityLevel>& level);
std::optional<QualityLevel> level_from_string(std::string_view s);

enum class RefineFlag { none, refine, urgent };

std::string_view refine_to_string(RefineFlag f);
RefineFlag refine_from_string(std::string_view s);

// Word sense.
struct Lexie {
    std::string sense_id;
    std::string gloss;
    std::string semantic_formula;
    std::string domain;
    // Embedded bilingual translations; only present before reification.
    std::vector<std::string> translations;
    std::vector<std::string> axie_refs;
    std::vector<std::string> examples;
    std::vector<std::string> idioms;
    std::string misc;
    std::optional<QualityLevel> level;
    RefineFlag refine = RefineFlag::none;

    bool operator==(const Lexie&) const = default;
};

// Link recorded on a source vocable when no sense could be chosen on
// either side. Never mirrored on the target.
struct VocableLevelLink {
    std::string target;
    std::string target_sense;
    RefineFlag refine = RefineFlag::urgent;

    bool operator==(const VocableLevelLink&) const = default;
};

// Dictionary entry: headword block plus ordered senses.
struct Vocable {
    std::string id;
    std::string headword;
    std::string writing;  // native script form, Khmer volume only
    std::string pronunciation;
    std::string pos;
    std::string fem_form;
    std::string fem_pron;
    std::vector<Lexie> senses;
    std::vector<VocableLevelLink> pending_notes;
    std::optional<QualityLevel> level;
    long revision = 0;

    Lexie* find_sense(std::string_view sense_id);
    const Lexie* find_sense(std::string_view sense_id) const;
    // "s<n+1>" for a vocable with n senses.
    std::string next_sense_id() const;

    bool operator==(const Vocable&) const = default;
};

struct AxieRef {
    std::string volume;  // language code of the referenced volume
    std::string entry;
    std::string sense;   // empty for a vocable-level reference

    bool operator==(const AxieRef&) const = default;
    auto operator<=>(const AxieRef&) const = default;
};

struct Axie {
    std::string id;
    std::vector<AxieRef> refs;
    std::optional<QualityLevel> level;
    RefineFlag refine = RefineFlag::none;

    bool operator==(const Axie&) const = default;
};

struct Contributor {
    std::string name;
    int skill = 1;
    int validated_streak = 0;

    bool operator==(const Contributor&) const = default;
};

// Monolingual volume keyed by language code.
struct Volume {
    std::string lang;
    std::vector<Vocable> entries;

    Vocable* find(std::string_view id);
    const Vocable* find(std::string_view id) const;
};

struct AxieVolume {
    std::vector<Axie> axies;

    Axie* find(std::string_view id);
    const Axie* find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }
};

// Monolingual volumes plus the pivot volume.
struct VolumeSet {
    std::map<std::string, Volume, std::less<>> volumes;
    AxieVolume axies;

    Volume& volume(std::string_view lang);
    Vocable* find_entry(std::string_view id);
};

struct LinkEnd {
    std::string entry;
    std::string sense;  // empty: vocable level
};

struct LinkRequest {
    LinkEnd source;
    LinkEnd target;
    Contributor creator;
};

}  // namespace motamot
