#pragma once

#include "motamot/model.hpp"

namespace motamot {

enum class ReviewOutcome { validated, corrected };

inline constexpr int kDefaultPromotionThreshold = 10;

// Raises the entry to the reviser's skill if that is higher; never lowers it.
// A missing level counts as a draft. The revision counter always advances.
Vocable revise_entry(Vocable entry, const Contributor& reviser);

// A validated contribution extends the streak; reaching `threshold` promotes
// by one star (capped at 5) and restarts the streak. A correction resets it.
// At skill 5 the streak keeps counting without further promotion.
Contributor update_contributor_streak(Contributor contributor, ReviewOutcome outcome,
                                      int threshold = kDefaultPromotionThreshold);

// Only reviews by a strictly more skilled contributor count toward promotion.
bool review_counts(const Contributor& author, const Contributor& reviewer);

}  // namespace motamot
