#include "motamot/ids.hpp"

#include <charconv>

#include "motamot/errors.hpp"

namespace motamot {

namespace {

constexpr std::string_view kReserved = ".,[]:%";

std::optional<long> parse_positive(std::string_view s) {
    if (s.empty() || s.size() > 18) return std::nullopt;
    if (s.size() > 1 && s[0] == '0') return std::nullopt;
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 1) return std::nullopt;
    return v;
}

bool valid_lang(std::string_view s) {
    if (s.size() != 3) return false;
    for (char c : s)
        if (c < 'a' || c > 'z') return false;
    return true;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

// Escaped text must contain none of the reserved characters except `%XX`.
bool well_escaped(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%') {
            if (i + 2 >= s.size()) return false;
            if (hex_value(s[i + 1]) < 0 || hex_value(s[i + 2]) < 0) return false;
            i += 2;
        } else if (kReserved.find(s[i]) != std::string_view::npos) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string escape_id_component(std::string_view s) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (kReserved.find(c) != std::string_view::npos) {
            auto u = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(kHex[u >> 4]);
            out.push_back(kHex[u & 0xF]);
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string unescape_id_component(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
            out.push_back(static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2])));
            i += 2;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

std::string EntryId::render() const {
    return lang + "." + escape_id_component(headword) + "." + std::to_string(ordinal) + ".e";
}

std::optional<EntryId> EntryId::parse(std::string_view text) {
    // lang "." headword "." ordinal ".e"
    if (text.size() < 2 || text.substr(text.size() - 2) != ".e") return std::nullopt;
    auto body = text.substr(0, text.size() - 2);
    auto first = body.find('.');
    auto last = body.rfind('.');
    if (first == std::string_view::npos || first == last) return std::nullopt;
    auto lang = body.substr(0, first);
    auto head = body.substr(first + 1, last - first - 1);
    auto ord = parse_positive(body.substr(last + 1));
    if (!valid_lang(lang) || head.empty() || !ord || !well_escaped(head)) return std::nullopt;
    return EntryId{std::string(lang), unescape_id_component(head), *ord};
}

std::string AxieId::render() const {
    return "axi.[" + labels[0].lang + ":" + escape_id_component(labels[0].headword) + "," +
           labels[1].lang + ":" + escape_id_component(labels[1].headword) + "]." +
           std::to_string(ordinal) + "." + std::to_string(sense_index) + ".e";
}

std::optional<AxieId> AxieId::parse(std::string_view text) {
    constexpr std::string_view kPrefix = "axi.[";
    if (text.substr(0, kPrefix.size()) != kPrefix) return std::nullopt;
    auto close = text.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    auto inside = text.substr(kPrefix.size(), close - kPrefix.size());
    auto comma = inside.find(',');
    if (comma == std::string_view::npos) return std::nullopt;

    AxieId id;
    std::array<std::string_view, 2> parts{inside.substr(0, comma), inside.substr(comma + 1)};
    for (std::size_t i = 0; i < 2; ++i) {
        auto colon = parts[i].find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        auto lang = parts[i].substr(0, colon);
        auto head = parts[i].substr(colon + 1);
        if (!valid_lang(lang) || head.empty() || !well_escaped(head)) return std::nullopt;
        id.labels[i] = {std::string(lang), unescape_id_component(head)};
    }

    // ".<ordinal>.<sense>.e"
    auto tail = text.substr(close + 1);
    if (tail.size() < 2 || tail[0] != '.' || tail.substr(tail.size() - 2) != ".e")
        return std::nullopt;
    auto nums = tail.substr(1, tail.size() - 3);
    auto dot = nums.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto ord = parse_positive(nums.substr(0, dot));
    auto sense = parse_positive(nums.substr(dot + 1));
    if (!ord || !sense) return std::nullopt;
    id.ordinal = *ord;
    id.sense_index = *sense;
    return id;
}

std::string make_entry_id(std::string_view lang, std::string_view headword, long ordinal) {
    if (headword.empty()) throw InvalidInput("entry id: empty headword");
    if (!valid_lang(lang)) throw InvalidInput("entry id: language must be a 3-letter code");
    if (ordinal < 1) throw InvalidInput("entry id: ordinal must be >= 1");
    return EntryId{std::string(lang), std::string(headword), ordinal}.render();
}

std::string make_axie_id(std::string_view fr_headword, std::string_view khm_translit, long ordinal,
                         long sense_index) {
    if (fr_headword.empty() || khm_translit.empty())
        throw InvalidInput("axie id: empty headword component");
    if (ordinal < 1 || sense_index < 1)
        throw InvalidInput("axie id: ordinal and sense index must be >= 1");
    AxieId id;
    id.labels = {AxieId::Label{"fra", std::string(fr_headword)},
                 AxieId::Label{"khm", std::string(khm_translit)}};
    id.ordinal = ordinal;
    id.sense_index = sense_index;
    return id.render();
}

std::string lang_of(std::string_view entry_id) {
    auto id = EntryId::parse(entry_id);
    return id ? id->lang : std::string();
}

}  // namespace motamot
