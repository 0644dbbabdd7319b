#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "motamot/errors.hpp"
#include "motamot/model.hpp"
#include "motamot/xml.hpp"

namespace motamot::restructure {

class InvalidArticle : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Drops leading parenthesized particles and squeezes whitespace:
// "(dā'el) sambō" -> "sambō".
std::string strip_particles(std::string_view ipa);

// Builds the French vocable for one tagged <article>. Senses are numbered
// s1..sn in document order; translations keep their IPA minus leading
// particles; levels stay unset until import.
Vocable to_motamot_entry(const xml::Element& article, long ordinal);

// Every <article> of a tagged volume, ordinals 1..n in input order.
Volume restructure_volume(const xml::Document& tagged);

// Elements of an entry that fall outside the LMF mapping, plus missing
// Form/Lemma. Empty when the entry is well shaped.
std::vector<std::string> validate_lmf_shape(const xml::Element& entry);
std::vector<std::string> validate_lmf_shape(const Vocable& entry);

struct SupplementEntry {
    std::string pronunciation;
    std::string pos;
    int homonym_count = 1;
    std::string fem_pron;
};

using SupplementLexicon = std::map<std::string, SupplementEntry, std::less<>>;

// TSV rows: headword, pronunciation, pos, homonym_count[, fem_pron].
SupplementLexicon parse_supplement(std::string_view tsv);

struct EnrichStats {
    std::size_t matched = 0;
    std::size_t pos_set = 0;
    std::size_t fem_forms = 0;
    // Headwords whose supplement entry is homonymous: pronunciation copied,
    // part of speech withheld.
    std::vector<std::string> homonyms;
};

// Fills head blocks only. The feminine form is recovered from the original
// headword form kept in the first gloss; pronunciation (and feminine
// pronunciation) come from the supplement, part of speech only for
// non-homonymous supplement entries.
EnrichStats enrich_from_supplement(Volume& volume, const SupplementLexicon& supplement);

}  // namespace motamot::restructure
