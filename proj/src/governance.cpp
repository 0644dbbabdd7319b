#include "motamot/governance.hpp"

#include <algorithm>

namespace motamot {

Vocable revise_entry(Vocable entry, const Contributor& reviser) {
    int current = entry.level ? entry.level->stars() : QualityLevel::kMin;
    int skill = std::clamp(reviser.skill, QualityLevel::kMin, QualityLevel::kMax);
    entry.level = QualityLevel(std::max(current, skill));
    ++entry.revision;
    return entry;
}

Contributor update_contributor_streak(Contributor contributor, ReviewOutcome outcome, int threshold) {
    if (outcome == ReviewOutcome::corrected) {
        contributor.validated_streak = 0;
        return contributor;
    }
    ++contributor.validated_streak;
    if (contributor.validated_streak >= threshold && contributor.skill < QualityLevel::kMax) {
        ++contributor.skill;
        contributor.validated_streak = 0;
    }
    return contributor;
}

bool review_counts(const Contributor& author, const Contributor& reviewer) {
    return reviewer.skill > author.skill;
}

}  // namespace motamot
