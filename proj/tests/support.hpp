#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "motamot/codec.hpp"
#include "motamot/pipeline.hpp"
#include "motamot/translit.hpp"
#include "motamot/xml.hpp"

namespace support {

namespace fs = std::filesystem;

inline fs::path data_dir() { return MOTAMOT_DATA_DIR; }
inline fs::path rules_dir() { return MOTAMOT_RULES_DIR; }
inline fs::path golden_dir() { return MOTAMOT_GOLDEN_DIR; }

inline std::string read(const fs::path& p) { return motamot::codec::read_file(p.string()); }

inline std::string sample_source() { return read(data_dir() / "sample" / "sample.mam-src"); }
inline std::string sample_supplement() { return read(data_dir() / "sample" / "fem.tsv"); }
inline std::string golden(std::string_view name) { return read(golden_dir() / name); }

inline const motamot::translit::RuleSet& rules() {
    static const auto r = motamot::translit::load_rules(rules_dir());
    return r;
}

// Pipeline over the bundled sample, dictionary "sample".
inline const motamot::pipeline::Artifacts& sample_artifacts() {
    static const auto a = motamot::pipeline::run(sample_source(), sample_supplement(), rules(), "sample");
    return a;
}

inline std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

inline const motamot::xml::Element* find_entry(const motamot::xml::Element& root, std::string_view id) {
    for (const auto& c : root.children)
        if (c.attr_or("id") == id) return &c;
    return nullptr;
}

// Names, attributes and text compared recursively; attribute values listed
// in `ignore_values` only need to be present and namespace declarations are
// skipped. Returns the first difference.
inline std::string structural_diff(const motamot::xml::Element& want, const motamot::xml::Element& got,
                                   const std::vector<std::string>& ignore_values = {},
                                   const std::string& where = "") {
    const std::string here = where + "/" + want.name;
    if (want.name != got.name) return here + ": element " + got.name;
    auto sorted = [](auto attrs) {
        std::erase_if(attrs, [](const auto& a) { return a.first.starts_with("xmlns"); });
        std::sort(attrs.begin(), attrs.end());
        return attrs;
    };
    auto wa = sorted(want.attributes);
    auto ga = sorted(got.attributes);
    if (wa.size() != ga.size()) return here + ": attribute count " + std::to_string(ga.size());
    for (std::size_t i = 0; i < wa.size(); ++i) {
        if (wa[i].first != ga[i].first) return here + ": attribute " + ga[i].first;
        bool ignored = std::find(ignore_values.begin(), ignore_values.end(), wa[i].first) != ignore_values.end();
        if (!ignored && wa[i].second != ga[i].second)
            return here + "@" + wa[i].first + ": '" + ga[i].second + "' != '" + wa[i].second + "'";
    }
    if (want.text != got.text) return here + ": text '" + got.text + "' != '" + want.text + "'";
    if (want.children.size() != got.children.size())
        return here + ": " + std::to_string(got.children.size()) + " children, want " +
               std::to_string(want.children.size());
    for (std::size_t i = 0; i < want.children.size(); ++i) {
        auto d = structural_diff(want.children[i], got.children[i], ignore_values, here);
        if (!d.empty()) return d;
    }
    return "";
}

// Fresh directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("motamot-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

inline std::string random_string(std::mt19937& rng, const std::vector<std::string>& alphabet, std::size_t max_len,
                                 std::size_t min_len = 0) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s;
    for (std::size_t n = len(rng); n > 0; --n) s += alphabet[pick(rng)];
    return s;
}

}  // namespace support
