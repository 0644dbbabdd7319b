#include "motamot/utf8.hpp"

#include <cctype>

namespace motamot::utf8 {

std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            out.push_back(U'�');
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(U'�');
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            auto b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok) {
            out.push_back(U'�');
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode(char32_t c) {
    std::string out;
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
    return out;
}

std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) out += encode(c);
    return out;
}

bool is_combining_mark(char32_t c) {
    return (c >= 0x0300 && c <= 0x036F) || (c >= 0x1AB0 && c <= 0x1AFF) ||
           (c >= 0x1DC0 && c <= 0x1DFF) || (c >= 0x20D0 && c <= 0x20FF);
}

std::vector<std::string> clusters(std::string_view s) {
    std::vector<std::string> out;
    for (char32_t c : decode(s)) {
        if (is_combining_mark(c) && !out.empty()) {
            out.back() += encode(c);
        } else {
            out.push_back(encode(c));
        }
    }
    return out;
}

std::vector<std::string> code_points(std::string_view s) {
    std::vector<std::string> out;
    for (char32_t c : decode(s)) out.push_back(encode(c));
    return out;
}

char32_t fold_accent(char32_t c) {
    if (c < 0x80) return static_cast<char32_t>(std::tolower(static_cast<int>(c)));
    switch (c) {
        case U'à': case U'á': case U'â': case U'ã': case U'ä': case U'å': case U'ā':
        case U'À': case U'Á': case U'Â': case U'Ã': case U'Ä': case U'Å': case U'Ā':
            return U'a';
        case U'ç': case U'Ç':
            return U'c';
        case U'è': case U'é': case U'ê': case U'ë': case U'ē':
        case U'È': case U'É': case U'Ê': case U'Ë': case U'Ē':
            return U'e';
        case U'ì': case U'í': case U'î': case U'ï': case U'ī':
        case U'Ì': case U'Í': case U'Î': case U'Ï': case U'Ī':
            return U'i';
        case U'ñ': case U'Ñ':
            return U'n';
        case U'ò': case U'ó': case U'ô': case U'õ': case U'ö': case U'ō':
        case U'Ò': case U'Ó': case U'Ô': case U'Õ': case U'Ö': case U'Ō':
            return U'o';
        case U'ù': case U'ú': case U'û': case U'ü': case U'ū':
        case U'Ù': case U'Ú': case U'Û': case U'Ü': case U'Ū':
            return U'u';
        case U'ý': case U'ÿ': case U'Ý':
            return U'y';
        default:
            return c;
    }
}

static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string squeeze_spaces(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> split(std::string_view s, std::string_view delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + delim.size();
    }
    return out;
}

}  // namespace motamot::utf8
