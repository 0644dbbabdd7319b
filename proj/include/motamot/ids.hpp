#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace motamot {

// Entry identifier `<lang>.<headword>.<ordinal>.e`.
//
// The characters `.` `,` `[` `]` `:` and `%` are percent-escaped inside the
// headword so that the rendered form always splits back into its parts.
struct EntryId {
    std::string lang;
    std::string headword;
    long ordinal = 1;

    std::string render() const;
    static std::optional<EntryId> parse(std::string_view text);

    bool operator==(const EntryId&) const = default;
};

// Pivot identifier `axi.[<lang>:<headword>,<lang>:<headword>].<ordinal>.<sense>.e`.
// Reified French/Khmer links always label as `fra:` then `khm:`.
struct AxieId {
    struct Label {
        std::string lang;
        std::string headword;
        bool operator==(const Label&) const = default;
    };

    std::array<Label, 2> labels;
    long ordinal = 1;
    long sense_index = 1;

    std::string render() const;
    static std::optional<AxieId> parse(std::string_view text);

    bool operator==(const AxieId&) const = default;
};

std::string escape_id_component(std::string_view s);
std::string unescape_id_component(std::string_view s);

// Throws InvalidInput on empty headword or non-positive ordinal.
std::string make_entry_id(std::string_view lang, std::string_view headword, long ordinal);

std::string make_axie_id(std::string_view fr_headword, std::string_view khm_translit, long ordinal,
                         long sense_index);

// Language part of an EntryId string, or empty if unparseable.
std::string lang_of(std::string_view entry_id);

}  // namespace motamot
