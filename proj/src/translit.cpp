#include "motamot/translit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "motamot/utf8.hpp"

namespace motamot::translit {

namespace {

bool is_boundary(const std::string& s) {
    return s == "-" || s.empty() || s.find_first_not_of(" \t\r\n") == std::string::npos;
}

bool is_series_tag(std::string_view s) { return s == "A" || s == "B"; }

}  // namespace

RewritePass::RewritePass(std::vector<Rule> rules) : rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        if (r.context == Context::disabled || r.pattern.empty()) continue;
        by_first_[r.pattern.front()].push_back(i);
    }
}

const Rule* RewritePass::match(const std::vector<std::string>& in, std::size_t i) const {
    auto candidates = by_first_.find(in[i]);
    if (candidates == by_first_.end()) return nullptr;
    const Rule* best = nullptr;
    for (auto idx : candidates->second) {
        const auto& r = rules_[idx];
        const auto n = r.pattern.size();
        if (best && n <= best->pattern.size()) continue;
        if (i + n > in.size()) continue;
        if (!std::equal(r.pattern.begin(), r.pattern.end(), in.begin() + static_cast<std::ptrdiff_t>(i))) continue;
        if (r.context == Context::word_initial && i > 0 && !is_boundary(in[i - 1])) continue;
        if (r.context == Context::word_final && i + n < in.size() && !is_boundary(in[i + n])) continue;
        best = &r;
    }
    return best;
}

std::vector<std::string> RewritePass::apply(const std::vector<std::string>& in) const {
    std::vector<std::string> out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        const Rule* r = match(in, i);
        if (!r) {
            out.push_back(in[i++]);
            continue;
        }
        out.insert(out.end(), r->replacement.begin(), r->replacement.end());
        i += r->pattern.size();
    }
    return out;
}

std::vector<std::string> RuleTable::apply(std::vector<std::string> symbols) const {
    for (const auto& pass : passes) symbols = pass.apply(symbols);
    return symbols;
}

// --- rule files ---------------------------------------------------------

namespace {

struct Builder {
    std::map<int, std::vector<Rule>> passes[3];
    std::set<std::string, std::less<>> consonants;
    std::string default_series = "A";
};

std::string unescape(std::string_view s, const std::string& where) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (i + 5 < s.size() && s[i + 1] == 'u') {
            unsigned cp = 0;
            for (std::size_t k = i + 2; k < i + 6; ++k) {
                char c = s[k];
                int v = (c >= '0' && c <= '9') ? c - '0'
                        : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                        : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                                 : -1;
                if (v < 0) throw InvalidInput(where + ": bad \\u escape");
                cp = cp * 16 + static_cast<unsigned>(v);
            }
            out += utf8::encode(static_cast<char32_t>(cp));
            i += 5;
            continue;
        }
        if (i + 1 < s.size() && s[i + 1] == '\\') {
            out += '\\';
            ++i;
            continue;
        }
        throw InvalidInput(where + ": bad escape");
    }
    return out;
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

// "kh A b" -> {"kh A", "b"}: a series tag belongs to the symbol before it.
std::vector<std::string> token_keys(const std::vector<std::string>& symbols) {
    std::vector<std::string> out;
    for (const auto& s : symbols) {
        if (is_series_tag(s) && !out.empty() && !is_series_tag(out.back()) && out.back().find(' ') == std::string::npos)
            out.back() += " " + s;
        else
            out.push_back(s);
    }
    return out;
}

void parse_into(Builder& b, std::string_view tsv, std::string_view origin) {
    std::istringstream in{std::string(tsv)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (utf8::trim(raw).empty() || raw.front() == '#') continue;
        const auto where = std::string(origin) + ":" + std::to_string(line_no);
        auto cols = utf8::split(raw, "\t");
        if (cols.size() < 4 || cols.size() > 5)
            throw InvalidInput(where + ": expected stage, pattern, replacement, context[, note]");

        std::string_view stage_col = cols[0];
        int pass = 0;
        if (auto dot = stage_col.find('.'); dot != std::string_view::npos) {
            auto num = stage_col.substr(dot + 1);
            if (num.empty() || num.find_first_not_of("0123456789") != std::string_view::npos)
                throw InvalidInput(where + ": bad pass number");
            pass = std::stoi(std::string(num));
            stage_col = stage_col.substr(0, dot);
        }
        Stage stage;
        if (stage_col == "normalize") stage = Stage::normalize;
        else if (stage_col == "intermediate") stage = Stage::intermediate;
        else if (stage_col == "generate") stage = Stage::generate;
        else throw InvalidInput(where + ": unknown stage '" + std::string(stage_col) + "'");

        auto pattern = unescape(cols[1], where);
        auto replacement = unescape(cols[2], where);

        if (!pattern.empty() && pattern.front() == '@') {
            if (pattern == "@consonants" && stage == Stage::intermediate) {
                for (auto& w : words(replacement)) b.consonants.insert(w);
            } else if (pattern == "@default-series" && stage == Stage::generate) {
                auto s = utf8::trim(replacement);
                if (!is_series_tag(s)) throw InvalidInput(where + ": default series must be A or B");
                b.default_series = s;
            } else {
                throw InvalidInput(where + ": unknown directive " + pattern);
            }
            continue;
        }

        Rule r;
        r.line = line_no;
        const auto& ctx = cols[3];
        if (ctx == "any") r.context = Context::any;
        else if (ctx == "initial") r.context = Context::word_initial;
        else if (ctx == "final") r.context = Context::word_final;
        else if (utf8::trim(ctx).empty()) r.context = Context::disabled;
        else throw InvalidInput(where + ": unknown context '" + ctx + "'");
        if (cols.size() == 5) {
            r.note = cols[4];
            r.provisional = r.note.rfind("provisional", 0) == 0;
        }

        switch (stage) {
            case Stage::normalize:
                r.pattern = utf8::code_points(pattern);
                r.replacement = utf8::code_points(replacement);
                break;
            case Stage::intermediate:
                r.pattern = words(pattern);
                r.replacement = words(replacement);
                break;
            case Stage::generate:
                r.pattern = token_keys(words(pattern));
                if (!replacement.empty()) r.replacement = {replacement};
                break;
        }
        if (r.pattern.empty()) throw InvalidInput(where + ": empty pattern");
        b.passes[static_cast<int>(stage)][pass].push_back(std::move(r));
    }
}

RuleTable build(const Builder& b, Stage stage) {
    RuleTable t;
    t.stage = stage;
    std::vector<Rule> merged;
    for (const auto& [n, rules] : b.passes[static_cast<int>(stage)]) {
        t.pass_numbers.push_back(n);
        if (stage == Stage::generate) merged.insert(merged.end(), rules.begin(), rules.end());
        else t.passes.emplace_back(rules);
    }
    // Generation is a single covering pass; numbered rows only fix file order.
    if (stage == Stage::generate) t.passes.emplace_back(std::move(merged));
    if (stage == Stage::intermediate) t.consonants = b.consonants;
    t.default_series = b.default_series;
    return t;
}

RuleSet build_all(const Builder& b) {
    RuleSet rs;
    rs.normalize = build(b, Stage::normalize);
    rs.intermediate = build(b, Stage::intermediate);
    rs.generate = build(b, Stage::generate);
    return rs;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw NotFound("cannot read rule file " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

RuleSet parse_rules(std::string_view tsv, std::string_view origin) {
    Builder b;
    parse_into(b, tsv, origin);
    return build_all(b);
}

RuleTable parse_table(std::string_view tsv, Stage stage) {
    Builder b;
    parse_into(b, tsv, "<table>");
    return build(b, stage);
}

RuleSet load_rules(const std::filesystem::path& path) {
    Builder b;
    if (std::filesystem::is_directory(path)) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(path))
            if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw NotFound("no .tsv rule files in " + path.string());
        for (const auto& f : files) parse_into(b, slurp(f), f.filename().string());
    } else {
        parse_into(b, slurp(path), path.filename().string());
    }
    return build_all(b);
}

// --- stages -------------------------------------------------------------

std::string_view series_name(Series s) {
    switch (s) {
        case Series::A: return "A";
        case Series::B: return "B";
        case Series::untyped: break;
    }
    return "";
}

namespace {

bool in_repertoire(char32_t c) {
    if (c == U' ' || c == U'-' || c == U'\'' || c == U'\t') return true;
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    if (c >= 0xC0 && c <= 0x24F && c != 0xD7 && c != 0xF7) return true;  // Latin-1 letters, Extended-A/B
    if (c >= 0x250 && c <= 0x2FF) return true;                            // IPA, modifier letters
    if (c >= 0x300 && c <= 0x36F) return true;                            // combining marks
    if (c >= 0x1E00 && c <= 0x1EFF) return true;                          // Latin Extended Additional
    return false;
}

}  // namespace

NormalizeResult normalize_ipa(std::string_view s, const RuleTable& table) {
    NormalizeResult out;
    for (char32_t c : utf8::decode(s))
        if (!in_repertoire(c)) out.pass_through.push_back(utf8::encode(c));
    auto symbols = table.apply(utf8::code_points(s));
    for (const auto& sym : symbols) out.text += sym;
    return out;
}

IntermediateResult to_intermediate(std::string_view normalized, const RuleTable& table) {
    std::vector<std::string> seq{"-"};
    for (auto& c : utf8::clusters(normalized))
        if (!utf8::trim(c).empty()) seq.push_back(std::move(c));
    seq.push_back("-");
    seq = table.apply(std::move(seq));
    // Drop the word-boundary sentinels if rules left them in place.
    if (!seq.empty() && seq.front() == "-") seq.erase(seq.begin());
    if (!seq.empty() && seq.back() == "-") seq.pop_back();

    IntermediateResult out;
    Series pending = Series::untyped;
    for (const auto& sym : seq) {
        if (is_series_tag(sym)) {
            Series s = sym == "A" ? Series::A : Series::B;
            if (!out.tokens.empty() && out.tokens.back().kind == Kind::consonant) {
                auto& prev = out.tokens.back();
                if (prev.series == Series::untyped) prev.series = s;
                else if (prev.series != s)
                    out.diagnostics.push_back("conflicting series " + sym + " on '" + prev.grapheme + "', kept " +
                                              std::string(series_name(prev.series)));
            } else {
                if (pending != Series::untyped && pending != s)
                    out.diagnostics.push_back("conflicting dangling series tags");
                pending = s;
            }
            continue;
        }
        TypedToken t;
        t.grapheme = sym;
        if (sym == "-") {
            t.kind = Kind::separator;
            if (pending != Series::untyped) {
                out.diagnostics.push_back("series tag " + std::string(series_name(pending)) +
                                          " before a word boundary ignored");
                pending = Series::untyped;
            }
        } else {
            t.kind = table.consonants.count(sym) ? Kind::consonant : Kind::vowel;
            if (pending != Series::untyped) {
                t.series = pending;
                pending = Series::untyped;
            }
        }
        out.tokens.push_back(std::move(t));
    }
    if (pending != Series::untyped)
        out.diagnostics.push_back("trailing series tag " + std::string(series_name(pending)) + " ignored");
    for (std::size_t i = 0; i < out.tokens.size(); ++i)
        if (out.tokens[i].kind == Kind::consonant && out.tokens[i].series == Series::untyped) out.untyped.push_back(i);
    return out;
}

std::string render_intermediate(const std::vector<TypedToken>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        // A series on a vowel was attached forward, so it prints before it.
        if (t.kind == Kind::vowel && t.series != Series::untyped) {
            if (!out.empty()) out += ' ';
            out += series_name(t.series);
        }
        if (!out.empty()) out += ' ';
        out += t.grapheme;
        if (t.kind == Kind::consonant && t.series != Series::untyped) {
            out += ' ';
            out += series_name(t.series);
        }
    }
    return out;
}

GenerateResult generate_khmer(const std::vector<TypedToken>& tokens, const RuleTable& table) {
    GenerateResult out;
    std::vector<std::string> keys;
    keys.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind != Kind::consonant) {
            keys.push_back(t.grapheme);
            continue;
        }
        auto series = std::string(series_name(t.series));
        if (series.empty()) {
            series = table.default_series;
            out.low_confidence.push_back(i);
        }
        keys.push_back(t.grapheme + " " + series);
    }

    std::size_t i = 0;
    while (i < keys.size()) {
        if (tokens[i].kind == Kind::separator) {
            ++i;
            continue;
        }
        const Rule* rule = table.passes.empty() ? nullptr : table.passes.front().match(keys, i);
        if (!rule) throw UntranslatableGrapheme(tokens[i].grapheme, i);
        for (const auto& s : rule->replacement) out.khmer += s;
        i += rule->pattern.size();
    }
    return out;
}

Transliteration transliterate(std::string_view ipa, const RuleSet& rules) {
    Transliteration out;
    auto norm = normalize_ipa(ipa, rules.normalize);
    out.normalized = norm.text;
    out.report.pass_through = std::move(norm.pass_through);
    auto inter = to_intermediate(out.normalized, rules.intermediate);
    out.intermediate = render_intermediate(inter.tokens);
    for (auto idx : inter.untyped) out.report.untyped_consonants.push_back(inter.tokens[idx].grapheme);
    out.report.diagnostics = std::move(inter.diagnostics);
    auto gen = generate_khmer(inter.tokens, rules.generate);
    out.khmer = std::move(gen.khmer);
    out.report.low_confidence = gen.low_confidence.size();
    return out;
}

}  // namespace motamot::translit
