#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "motamot/errors.hpp"

// IPA -> Khmer script in three stages, each a sequence of leftmost-longest
// rewrite passes compiled from TSV rule tables:
//
//   normalize     code-point level corrections and composition
//   intermediate  grouping into Khmer-letter units and A/B series tagging
//   generate      typed units -> Khmer code points
//
// Rule file rows: `stage TAB pattern TAB replacement TAB context [TAB note]`.
// `stage` is normalize, intermediate or generate, optionally suffixed with a
// pass number (`intermediate.3`); passes run in ascending order. In the
// normalize stage patterns are plain text matched per code point; in the
// other stages they are space-separated symbols. `context` is any, initial
// or final; an empty context disables the row. `\uXXXX` escapes are
// accepted. A note starting with "provisional" marks a doubtful row.
namespace motamot::translit {

enum class Stage { normalize, intermediate, generate };
enum class Context { any, word_initial, word_final, disabled };

struct Rule {
    std::vector<std::string> pattern;
    std::vector<std::string> replacement;
    Context context = Context::any;
    bool provisional = false;
    std::string note;
    int line = 0;
};

// One leftmost-longest pass. Among rules matching at a position the longest
// pattern wins; equal lengths go to the earlier rule. Output of a rule is not
// rescanned. Symbols without a matching rule are copied.
class RewritePass {
public:
    RewritePass() = default;
    explicit RewritePass(std::vector<Rule> rules);

    std::vector<std::string> apply(const std::vector<std::string>& input) const;
    // The rule that fires at position i, or null.
    const Rule* match(const std::vector<std::string>& input, std::size_t i) const;
    const std::vector<Rule>& rules() const { return rules_; }

private:
    std::vector<Rule> rules_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_first_;
};

struct RuleTable {
    Stage stage = Stage::normalize;
    std::vector<int> pass_numbers;
    std::vector<RewritePass> passes;
    // intermediate: graphemes that are consonants (carry an A/B series).
    std::set<std::string, std::less<>> consonants;
    // generate: series used for consonants no heuristic reached.
    std::string default_series = "A";

    std::vector<std::string> apply(std::vector<std::string> symbols) const;
};

struct RuleSet {
    RuleTable normalize{Stage::normalize, {}, {}, {}, "A"};
    RuleTable intermediate{Stage::intermediate, {}, {}, {}, "A"};
    RuleTable generate{Stage::generate, {}, {}, {}, "A"};
};

// Throws InvalidInput with the file and line on malformed rows.
RuleSet parse_rules(std::string_view tsv, std::string_view origin = "<rules>");
RuleSet load_rules(const std::filesystem::path& path);  // a .tsv file or a directory of them
RuleTable parse_table(std::string_view tsv, Stage stage);

enum class Series { untyped, A, B };
enum class Kind { consonant, vowel, separator };

struct TypedToken {
    std::string grapheme;
    Series series = Series::untyped;
    Kind kind = Kind::vowel;

    bool operator==(const TypedToken&) const = default;
};

std::string_view series_name(Series s);

class UntranslatableGrapheme : public Error {
public:
    UntranslatableGrapheme(std::string grapheme, std::size_t offset)
        : Error("untranslatable grapheme '" + grapheme + "' at token " + std::to_string(offset)),
          grapheme_(std::move(grapheme)), offset_(offset) {}

    const std::string& grapheme() const { return grapheme_; }
    std::size_t offset() const { return offset_; }

private:
    std::string grapheme_;
    std::size_t offset_;
};

struct NormalizeResult {
    std::string text;
    // Characters outside the IPA/Latin repertoire, copied unchanged.
    std::vector<std::string> pass_through;
};

NormalizeResult normalize_ipa(std::string_view s, const RuleTable& table);

struct IntermediateResult {
    std::vector<TypedToken> tokens;
    std::vector<std::size_t> untyped;       // indices of consonants left untyped
    std::vector<std::string> diagnostics;   // dangling or conflicting series tags
};

// Whitespace only separates symbols here; '-' marks word boundaries.
IntermediateResult to_intermediate(std::string_view normalized, const RuleTable& table);

// Space-separated notation, series after the consonant: "b A ūə".
std::string render_intermediate(const std::vector<TypedToken>& tokens);

struct GenerateResult {
    std::string khmer;
    std::vector<std::size_t> low_confidence;  // untyped consonants mapped via the default series
};

// Consumes every non-separator token through the generate table (all rows
// act as one pass). Throws UntranslatableGrapheme for an uncovered token.
GenerateResult generate_khmer(const std::vector<TypedToken>& tokens, const RuleTable& table);

struct Report {
    std::vector<std::string> pass_through;
    std::vector<std::string> untyped_consonants;
    std::size_t low_confidence = 0;
    std::vector<std::string> diagnostics;

    bool clean() const {
        return pass_through.empty() && untyped_consonants.empty() && low_confidence == 0 && diagnostics.empty();
    }
};

struct Transliteration {
    std::string normalized;
    std::string intermediate;
    std::string khmer;
    Report report;
};

Transliteration transliterate(std::string_view ipa, const RuleSet& rules);

}  // namespace motamot::translit
