#include "motamot/store.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "motamot/codec.hpp"
#include "motamot/governance.hpp"
#include "motamot/ids.hpp"
#include "motamot/restructure.hpp"
#include "motamot/schema.hpp"

namespace motamot::store {

namespace fs = std::filesystem;

std::vector<IndexedField> default_fields(std::string_view language) {
    if (language == "axi") return {{"cdm-reflexie", "m:reflexie/@idref"}};
    return {
        {"cdm-headword", "m:head/m:headword"},
        {"cdm-writing", "m:head/m:writing"},
        {"cdm-pronunciation", "m:head/m:pronunciation"},
        {"cdm-pos", "m:head/m:pos"},
        {"cdm-domain", "m:sense/m:domain"},
        {"cdm-example", "m:sense/m:examples/m:example"},
        {"cdm-idiom", "m:sense/m:idioms/m:idiom"},
        {"cdm-translation", "m:sense/m:translations/m:translation"},
        {"cdm-refaxie", "m:sense/m:refaxie/@idrefaxie"},
    };
}

std::string default_volume_name(std::string_view dictionary, std::string_view language) {
    return std::string(dictionary) + "_" + std::string(language);
}

Strategy strategy_from_string(std::string_view s) {
    if (s == "exact") return Strategy::exact;
    if (s == "prefix") return Strategy::prefix;
    throw InvalidInput("unknown strategy '" + std::string(s) + "'");
}

// --- backends -------------------------------------------------------------

namespace {

std::string digest(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_atomic(const fs::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw NotFound("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

DirectoryBackend::DirectoryBackend(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::vector<PersistedVolume> DirectoryBackend::load() {
    std::vector<fs::path> metas;
    for (const auto& e : fs::directory_iterator(dir_)) {
        auto name = e.path().filename().string();
        if (name.size() > 10 && name.ends_with(".meta.json")) metas.push_back(e.path());
    }
    std::sort(metas.begin(), metas.end());

    std::vector<PersistedVolume> out;
    for (const auto& meta_path : metas) {
        auto meta = nlohmann::json::parse(slurp(meta_path));
        PersistedVolume v;
        v.descriptor.name = meta.at("name").get<std::string>();
        v.descriptor.dictionary = meta.at("dictionary").get<std::string>();
        v.descriptor.language = meta.at("language").get<std::string>();
        for (const auto& f : meta.at("indexed_fields"))
            v.descriptor.indexed_fields.push_back({f.at("criteria").get<std::string>(), f.at("path").get<std::string>()});
        v.xml = slurp(dir_ / (v.descriptor.name + ".xml"));
        for (const auto& [id, rev] : meta.at("revisions").items()) v.revisions[id] = rev.get<long>();
        // The XML was changed behind our back: outstanding revisions are stale.
        if (meta.value("digest", "") != digest(v.xml))
            for (auto& [id, rev] : v.revisions) ++rev;
        out.push_back(std::move(v));
    }
    return out;
}

void DirectoryBackend::save(const PersistedVolume& v) {
    nlohmann::json meta;
    meta["name"] = v.descriptor.name;
    meta["dictionary"] = v.descriptor.dictionary;
    meta["language"] = v.descriptor.language;
    meta["indexed_fields"] = nlohmann::json::array();
    for (const auto& f : v.descriptor.indexed_fields)
        meta["indexed_fields"].push_back({{"criteria", f.criteria}, {"path", f.path}});
    meta["revisions"] = v.revisions;
    meta["digest"] = digest(v.xml);
    write_atomic(dir_ / (v.descriptor.name + ".xml"), v.xml);
    write_atomic(dir_ / (v.descriptor.name + ".meta.json"), meta.dump(1) + "\n");
}

std::vector<PersistedVolume> MemoryBackend::load() {
    std::lock_guard lock(mutex_);
    std::vector<PersistedVolume> out;
    for (const auto& [name, v] : volumes_) out.push_back(v);
    return out;
}

void MemoryBackend::save(const PersistedVolume& v) {
    std::lock_guard lock(mutex_);
    volumes_[v.descriptor.name] = v;
}

// --- volumes --------------------------------------------------------------

struct Store::Volume {
    VolumeDescriptor descriptor;
    std::vector<std::string> order;
    std::unordered_map<std::string, StoredEntry> entries;
    std::map<std::string, std::map<std::string, std::set<std::string>>, std::less<>> indexes;
    std::unordered_map<std::string, std::string> sort_keys;
    bool retired = false;
    mutable std::shared_mutex mutex;

    const IndexedField* field(std::string_view criteria) const {
        for (const auto& f : descriptor.indexed_fields)
            if (f.criteria == criteria) return &f;
        return nullptr;
    }

    void index(const std::string& id, const xml::Element& e) {
        for (const auto& f : descriptor.indexed_fields)
            for (auto& value : xml::select(e, f.path))
                if (!value.empty()) indexes[f.criteria][value].insert(id);
        auto writing = xml::select(e, "m:head/m:writing");
        auto headword = xml::select(e, "m:head/m:headword");
        sort_keys[id] = !writing.empty() && !writing.front().empty() ? writing.front()
                        : !headword.empty()                          ? headword.front()
                                                                     : id;
    }

    void unindex(const std::string& id, const xml::Element& e) {
        for (const auto& f : descriptor.indexed_fields) {
            auto& idx = indexes[f.criteria];
            for (auto& value : xml::select(e, f.path)) {
                auto it = idx.find(value);
                if (it == idx.end()) continue;
                it->second.erase(id);
                if (it->second.empty()) idx.erase(it);
            }
        }
        sort_keys.erase(id);
    }

    void put(const std::string& id, StoredEntry entry) {
        auto it = entries.find(id);
        if (it != entries.end()) {
            unindex(id, it->second.element);
            it->second = std::move(entry);
        } else {
            order.push_back(id);
            it = entries.emplace(id, std::move(entry)).first;
        }
        index(id, it->second.element);
    }

    std::string export_xml() const {
        std::vector<xml::Element> elements;
        elements.reserve(order.size());
        for (const auto& id : order) elements.push_back(entries.at(id).element);
        auto doc = codec::volume_document({descriptor.dictionary, descriptor.language}, std::move(elements));
        doc.leading_comments.push_back(" " + descriptor.dictionary + " " + descriptor.language +
                                       " volume. Distributed under the Creative Commons Attribution 4.0"
                                       " International licence (CC BY 4.0). ");
        return xml::write(doc);
    }

    PersistedVolume persisted() const {
        PersistedVolume p{descriptor, export_xml(), {}};
        for (const auto& [id, e] : entries) p.revisions[id] = e.revision;
        return p;
    }
};

namespace {

bool is_pivot(std::string_view language) { return language == "axi"; }

// Canonical element for an incoming entry: codec round trip, drafts for
// unset levels.
xml::Element canonical(const xml::Element& e, bool pivot) {
    if (pivot) {
        auto a = codec::axie_from_xml(e);
        if (!a.level) a.level = QualityLevel::draft();
        return codec::to_xml(a);
    }
    auto v = codec::vocable_from_xml(e);
    if (!v.level) v.level = QualityLevel::draft();
    for (auto& s : v.senses)
        if (!s.level) s.level = QualityLevel::draft();
    return codec::to_xml(v);
}

void validate_descriptor(const VolumeDescriptor& d) {
    if (d.name.empty() || d.name.find_first_of("/\\") != std::string::npos || d.name.front() == '.')
        throw InvalidInput("invalid volume name '" + d.name + "'");
    const std::string_view root = is_pivot(d.language) ? "m:axie" : "m:entry";
    std::set<std::string> seen;
    for (const auto& f : d.indexed_fields) {
        if (f.criteria == kHandle) throw InvalidInput("criteria name 'handle' is reserved");
        if (!seen.insert(f.criteria).second) throw InvalidInput("duplicate criteria " + f.criteria);
        if (!schema::path_exists(root, f.path))
            throw InvalidInput("indexed path " + f.path + " is not in the " + std::string(root) + " schema");
    }
}

}  // namespace

Store::Store(std::unique_ptr<Backend> backend) : backend_(std::move(backend)) {
    for (auto& p : backend_->load()) {
        auto v = std::make_shared<Volume>();
        v->descriptor = p.descriptor;
        auto doc = xml::parse(p.xml);
        const bool pivot = is_pivot(p.descriptor.language);
        for (const auto& c : doc.root.children) {
            auto e = canonical(c, pivot);
            auto id = e.attr_or("id");
            auto rev = p.revisions.find(id);
            v->put(id, StoredEntry{std::move(e), rev == p.revisions.end() ? 1 : rev->second});
        }
        volumes_[p.descriptor.name] = std::move(v);
    }
}

Store::~Store() = default;

std::unique_ptr<Store> Store::open_directory(const fs::path& dir) {
    return std::make_unique<Store>(std::make_unique<DirectoryBackend>(dir));
}

std::unique_ptr<Store> Store::in_memory() { return std::make_unique<Store>(std::make_unique<MemoryBackend>()); }

std::shared_ptr<Store::Volume> Store::volume(std::string_view handle) const {
    std::shared_lock lock(registry_mutex_);
    auto it = volumes_.find(handle);
    if (it == volumes_.end()) throw NotFound("unknown volume " + std::string(handle));
    return it->second;
}

void Store::persist(const Volume& v) { backend_->save(v.persisted()); }

std::string Store::import_volume(std::string_view text, VolumeDescriptor d) {
    auto doc = xml::parse(text);
    if (doc.root.name != "m:volume") throw InvalidInput("expected <m:volume> root, got <" + doc.root.name + ">");
    auto header = codec::header_of(doc);
    if (d.dictionary.empty()) d.dictionary = header.dictionary;
    if (d.language.empty()) d.language = header.lang;
    if (d.dictionary.empty() || d.language.empty()) throw InvalidInput("volume needs a dictionary and a language");
    if (d.name.empty()) d.name = default_volume_name(d.dictionary, d.language);
    if (d.indexed_fields.empty()) d.indexed_fields = default_fields(d.language);
    validate_descriptor(d);

    auto fresh = std::make_shared<Volume>();
    fresh->descriptor = d;
    const bool pivot = is_pivot(d.language);
    const std::string_view expected = pivot ? "m:axie" : "m:entry";
    for (const auto& c : doc.root.children) {
        if (c.name != expected)
            throw InvalidInput("unexpected <" + c.name + "> in a volume of <" + std::string(expected) + ">");
        auto id = c.attr_or("id");
        if (fresh->entries.count(id)) throw InvalidInput("duplicate id " + id);
        fresh->put(id, StoredEntry{canonical(c, pivot), 1});
    }

    std::unique_lock registry(registry_mutex_);
    std::shared_ptr<Volume> old;
    if (auto it = volumes_.find(d.name); it != volumes_.end()) old = it->second;
    std::unique_lock<std::shared_mutex> old_lock;
    if (old) old_lock = std::unique_lock(old->mutex);
    persist(*fresh);
    if (old) old->retired = true;
    volumes_[d.name] = fresh;
    return d.name;
}

std::vector<VolumeDescriptor> Store::volumes() const {
    std::shared_lock lock(registry_mutex_);
    std::vector<VolumeDescriptor> out;
    for (const auto& [name, v] : volumes_) out.push_back(v->descriptor);
    return out;
}

std::optional<VolumeDescriptor> Store::descriptor(std::string_view handle) const {
    std::shared_lock lock(registry_mutex_);
    auto it = volumes_.find(handle);
    if (it == volumes_.end()) return std::nullopt;
    return it->second->descriptor;
}

std::optional<std::string> Store::find_volume(std::string_view dictionary, std::string_view language) const {
    std::shared_lock lock(registry_mutex_);
    for (const auto& [name, v] : volumes_)
        if (v->descriptor.dictionary == dictionary && v->descriptor.language == language) return name;
    return std::nullopt;
}

QueryResult Store::query(std::string_view handle, std::string_view criteria, std::string_view value,
                         Strategy strategy, std::size_t count, std::size_t start_index) const {
    auto v = volume(handle);
    std::shared_lock lock(v->mutex);

    std::set<std::string> hits;
    if (value == "*") {
        if (criteria != kHandle && !v->field(criteria))
            throw UnknownCriteria("unknown criteria " + std::string(criteria));
        hits.insert(v->order.begin(), v->order.end());
    } else if (criteria == kHandle) {
        for (const auto& id : v->order)
            if (strategy == Strategy::exact ? id == value : std::string_view(id).starts_with(value)) hits.insert(id);
    } else {
        if (!v->field(criteria)) throw UnknownCriteria("unknown criteria " + std::string(criteria));
        auto idx = v->indexes.find(criteria);
        if (idx != v->indexes.end()) {
            const auto& m = idx->second;
            if (strategy == Strategy::exact) {
                if (auto it = m.find(std::string(value)); it != m.end()) hits = it->second;
            } else {
                for (auto it = m.lower_bound(std::string(value));
                     it != m.end() && std::string_view(it->first).starts_with(value); ++it)
                    hits.insert(it->second.begin(), it->second.end());
            }
        }
    }

    std::vector<std::string> ids(hits.begin(), hits.end());
    std::stable_sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
        return v->sort_keys.at(a) < v->sort_keys.at(b);
    });
    QueryResult out;
    out.total = ids.size();
    if (start_index < ids.size()) {
        auto end = std::min(ids.size(), start_index + std::min(count, ids.size()));
        out.ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(start_index),
                       ids.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return out;
}

std::optional<StoredEntry> Store::get(std::string_view handle, std::string_view id) const {
    auto v = volume(handle);
    std::shared_lock lock(v->mutex);
    auto it = v->entries.find(std::string(id));
    if (it == v->entries.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Store::project(std::string_view handle, std::string_view id,
                                        std::string_view criteria) const {
    auto v = volume(handle);
    std::shared_lock lock(v->mutex);
    auto it = v->entries.find(std::string(id));
    if (it == v->entries.end()) throw NotFound("unknown entry " + std::string(id));
    if (criteria == kHandle) return {it->first};
    const auto* f = v->field(criteria);
    if (!f) throw UnknownCriteria("unknown criteria " + std::string(criteria));
    return xml::select(it->second.element, f->path);
}

std::vector<std::pair<std::string, StoredEntry>> Store::entries(std::string_view handle) const {
    auto v = volume(handle);
    std::shared_lock lock(v->mutex);
    std::vector<std::pair<std::string, StoredEntry>> out;
    out.reserve(v->order.size());
    for (const auto& id : v->order) out.emplace_back(id, v->entries.at(id));
    return out;
}

std::size_t Store::index_key_count(std::string_view handle, std::string_view criteria) const {
    auto v = volume(handle);
    std::shared_lock lock(v->mutex);
    if (!v->field(criteria)) throw UnknownCriteria("unknown criteria " + std::string(criteria));
    auto it = v->indexes.find(criteria);
    return it == v->indexes.end() ? 0 : it->second.size();
}

long Store::update_entry(std::string_view handle, std::string_view id, const xml::Element& new_xml,
                         const Contributor& editor, long expected_revision) {
    auto v = volume(handle);
    std::unique_lock lock(v->mutex);
    if (v->retired) throw Conflict(std::string(id), expected_revision, -1);
    auto it = v->entries.find(std::string(id));
    if (it == v->entries.end()) throw NotFound("unknown entry " + std::string(id));
    if (it->second.revision != expected_revision) throw Conflict(std::string(id), expected_revision, it->second.revision);
    if (is_pivot(v->descriptor.language)) throw InvalidInput("pivot entries change only through links");

    auto shape = restructure::validate_lmf_shape(new_xml);
    if (!shape.empty()) throw InvalidInput(shape.front());
    auto incoming = codec::vocable_from_xml(new_xml);
    if (!incoming.id.empty() && incoming.id != id)
        throw InvalidInput("entry id " + incoming.id + " does not match " + std::string(id));
    const auto stored = codec::vocable_from_xml(it->second.element);
    incoming.id = std::string(id);
    incoming.level = stored.level;
    incoming.revision = it->second.revision;
    for (auto& s : incoming.senses)
        if (!s.level) s.level = QualityLevel::draft();
    auto revised = revise_entry(std::move(incoming), editor);

    StoredEntry previous = it->second;
    v->put(std::string(id), StoredEntry{codec::to_xml(revised), revised.revision});
    try {
        persist(*v);
    } catch (...) {
        v->put(std::string(id), std::move(previous));
        throw;
    }
    return revised.revision;
}

LinkOutcome Store::create_link(std::string_view dictionary, const LinkRequest& request, long expected_revision) {
    auto resolve = [&](std::string_view entry) {
        auto lang = lang_of(entry);
        auto h = find_volume(dictionary, lang);
        if (!h) throw NotFound("no " + lang + " volume in " + std::string(dictionary));
        return *h;
    };
    const auto source_handle = resolve(request.source.entry);
    const auto target_handle = resolve(request.target.entry);
    std::string pivot_handle;
    {
        std::unique_lock registry(registry_mutex_);
        for (const auto& [name, v] : volumes_)
            if (v->descriptor.dictionary == dictionary && is_pivot(v->descriptor.language)) pivot_handle = name;
        if (pivot_handle.empty()) {
            auto v = std::make_shared<Volume>();
            v->descriptor = {default_volume_name(dictionary, "axi"), std::string(dictionary), "axi",
                             default_fields("axi")};
            validate_descriptor(v->descriptor);
            pivot_handle = v->descriptor.name;
            volumes_[pivot_handle] = std::move(v);
        }
    }

    // Lock every involved volume once, in name order.
    std::map<std::string, std::shared_ptr<Volume>> involved;
    for (const auto& h : {source_handle, target_handle, pivot_handle}) involved.emplace(h, volume(h));
    std::vector<std::unique_lock<std::shared_mutex>> locks;
    for (auto& [name, v] : involved) {
        locks.emplace_back(v->mutex);
        if (v->retired) throw Conflict(request.source.entry, expected_revision, -1);
    }
    auto& src = involved.at(source_handle);
    auto& tgt = involved.at(target_handle);
    auto& pivot = involved.at(pivot_handle);

    auto src_it = src->entries.find(request.source.entry);
    if (src_it == src->entries.end()) throw NotFound("unknown entry " + request.source.entry);
    if (expected_revision > 0 && src_it->second.revision != expected_revision)
        throw Conflict(request.source.entry, expected_revision, src_it->second.revision);
    auto tgt_it = tgt->entries.find(request.target.entry);
    if (tgt_it == tgt->entries.end()) throw NotFound("unknown entry " + request.target.entry);

    VolumeSet set;
    set.volume(lang_of(request.source.entry)).entries.push_back(codec::vocable_from_xml(src_it->second.element));
    if (request.target.entry != request.source.entry)
        set.volume(lang_of(request.target.entry)).entries.push_back(codec::vocable_from_xml(tgt_it->second.element));
    for (const auto& id : pivot->order) set.axies.axies.push_back(codec::axie_from_xml(pivot->entries.at(id).element));

    LinkOutcome out;
    out.result = add_translation_link(request, set);

    for (const auto& m : out.result.modified) {
        auto& owner = m.id == request.source.entry ? src : tgt;
        auto rev = owner->entries.at(m.id).revision + 1;
        owner->put(m.id, StoredEntry{codec::to_xml(m), rev});
        out.revisions[m.id] = rev;
    }
    if (out.result.axie) {
        pivot->put(out.result.axie->id, StoredEntry{codec::to_xml(*out.result.axie), 1});
        out.revisions[out.result.axie->id] = 1;
    }
    for (auto& [name, v] : involved) persist(*v);
    return out;
}

std::string Store::export_volume(std::string_view handle) const {
    auto v = volume(handle);
    std::shared_lock lock(v->mutex);
    return v->export_xml();
}

}  // namespace motamot::store
