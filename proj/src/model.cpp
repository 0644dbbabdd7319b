#include "motamot/model.hpp"

#include "motamot/errors.hpp"
#include "motamot/ids.hpp"

namespace motamot {

QualityLevel::QualityLevel(int stars) : stars_(stars) {
    if (stars < kMin || stars > kMax)
        throw InvalidInput("quality level must be in 1..5, got " + std::to_string(stars));
}

std::string level_to_string(const std::optional<QualityLevel>& level) {
    return level ? std::to_string(level->stars()) : std::string();
}

std::optional<QualityLevel> level_from_string(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.size() != 1 || s[0] < '1' || s[0] > '5')
        throw InvalidInput("bad level attribute '" + std::string(s) + "'");
    return QualityLevel(s[0] - '0');
}

std::string_view refine_to_string(RefineFlag f) {
    switch (f) {
        case RefineFlag::refine: return "true";
        case RefineFlag::urgent: return "urgent";
        case RefineFlag::none: break;
    }
    return "";
}

RefineFlag refine_from_string(std::string_view s) {
    if (s == "true") return RefineFlag::refine;
    if (s == "urgent") return RefineFlag::urgent;
    return RefineFlag::none;
}

Lexie* Vocable::find_sense(std::string_view sense_id) {
    for (auto& s : senses)
        if (s.sense_id == sense_id) return &s;
    return nullptr;
}

const Lexie* Vocable::find_sense(std::string_view sense_id) const {
    for (const auto& s : senses)
        if (s.sense_id == sense_id) return &s;
    return nullptr;
}

std::string Vocable::next_sense_id() const { return "s" + std::to_string(senses.size() + 1); }

Vocable* Volume::find(std::string_view id) {
    for (auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

const Vocable* Volume::find(std::string_view id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

Axie* AxieVolume::find(std::string_view id) {
    for (auto& a : axies)
        if (a.id == id) return &a;
    return nullptr;
}

const Axie* AxieVolume::find(std::string_view id) const {
    for (const auto& a : axies)
        if (a.id == id) return &a;
    return nullptr;
}

Volume& VolumeSet::volume(std::string_view lang) {
    auto it = volumes.find(lang);
    if (it == volumes.end()) {
        it = volumes.emplace(std::string(lang), Volume{}).first;
        it->second.lang = std::string(lang);
    }
    return it->second;
}

Vocable* VolumeSet::find_entry(std::string_view id) {
    auto lang = lang_of(id);
    auto it = volumes.find(lang);
    if (it == volumes.end()) return nullptr;
    return it->second.find(id);
}

}  // namespace motamot
