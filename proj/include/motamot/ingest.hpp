#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motamot/errors.hpp"
#include "motamot/xml.hpp"

// Reads the two-column source dictionary (French TAB Khmer-in-IPA, one entry
// per line) and produces the tagged `<article>` XML.
//
// Source line grammar:
//   line    := french TAB khmer
//   french  := segment (" — " segment)*
//   khmer   := alts (" — " alts)*        same number of segments as french
//   alts    := ipa (" / " ipa)*
// Lines starting with '#' and blank lines are skipped by tag_volume.
namespace motamot::ingest {

inline constexpr std::string_view kSenseDelimiter = " — ";
inline constexpr std::string_view kAlternativeDelimiter = " / ";

struct RawSense {
    std::string gloss;
    std::vector<std::string> translations_ipa;

    bool operator==(const RawSense&) const = default;
};

struct RawEntry {
    std::string headword;
    std::string fem_suffix;
    std::string fem_form;
    std::string pos_hint;
    std::vector<RawSense> senses;

    bool operator==(const RawEntry&) const = default;
};

class MalformedLine : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class AlignmentError : public InvalidInput {
public:
    AlignmentError(std::size_t french_senses, std::size_t khmer_senses)
        : InvalidInput("sense count mismatch: " + std::to_string(french_senses) + " French vs " +
                       std::to_string(khmer_senses) + " Khmer"),
          french_(french_senses), khmer_(khmer_senses) {}

    std::size_t french_senses() const { return french_; }
    std::size_t khmer_senses() const { return khmer_; }

private:
    std::size_t french_;
    std::size_t khmer_;
};

// Throws MalformedLine or AlignmentError.
RawEntry parse_source_line(std::string_view line);

struct FeminineSplit {
    std::string masculine;
    std::optional<std::string> feminine;

    bool operator==(const FeminineSplit&) const = default;
};

// "abondant, e" -> ("abondant", "abondante"). A one-letter suffix is
// appended; a longer suffix replaces the masculine from the last letter
// matching its first letter (accents ignored), or is appended when no such
// letter exists: "actif, ive" -> "active", "beau, belle" -> "belle".
FeminineSplit split_feminine(std::string_view raw_headword);

// First parenthesized group that is a part-of-speech abbreviation such as
// "(adv.)"; empty when there is none.
std::string extract_pos_hint(std::string_view gloss);

struct LineError {
    std::size_t line = 0;
    std::string message;
    std::string text;
};

struct TaggedVolume {
    std::vector<RawEntry> articles;
    std::vector<LineError> errors;

    std::string xml() const;
};

TaggedVolume tag_volume(std::span<const std::string> lines);
std::vector<std::string> read_lines(std::string_view text);

// Writes one article in the tagged layout.
std::string write_article(const RawEntry& entry);

// Violations of the tagged-article schema: one non-empty <vedette>, at
// least one <sens>, each with one <glose> and one or more <traduction>
// holding exactly one non-empty <api>.
std::vector<std::string> tagged_schema_violations(const xml::Element& article);

}  // namespace motamot::ingest
