#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "motamot/errors.hpp"
#include "motamot/links.hpp"
#include "motamot/model.hpp"
#include "motamot/xml.hpp"

namespace motamot::store {

class UnknownCriteria : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

struct IndexedField {
    std::string criteria;  // e.g. cdm-headword
    std::string path;      // relative to the entry root, e.g. m:head/m:headword

    bool operator==(const IndexedField&) const = default;
};

struct VolumeDescriptor {
    std::string name;
    std::string dictionary;
    std::string language;
    std::vector<IndexedField> indexed_fields;

    bool operator==(const VolumeDescriptor&) const = default;
};

// Reserved criteria matching the entry id.
inline constexpr std::string_view kHandle = "handle";

// Index set used when a descriptor declares none.
std::vector<IndexedField> default_fields(std::string_view language);

std::string default_volume_name(std::string_view dictionary, std::string_view language);

enum class Strategy { exact, prefix };

// Throws InvalidInput for anything but "exact" / "prefix".
Strategy strategy_from_string(std::string_view s);

struct QueryResult {
    std::size_t total = 0;
    std::vector<std::string> ids;  // the requested window
};

struct StoredEntry {
    xml::Element element;
    long revision = 0;
};

// What a backend keeps per volume. The XML is the export form.
struct PersistedVolume {
    VolumeDescriptor descriptor;
    std::string xml;
    std::map<std::string, long> revisions;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::vector<PersistedVolume> load() = 0;
    virtual void save(const PersistedVolume& volume) = 0;
};

// <name>.xml plus <name>.meta.json per volume, replaced atomically.
class DirectoryBackend : public Backend {
public:
    explicit DirectoryBackend(std::filesystem::path dir);
    std::vector<PersistedVolume> load() override;
    void save(const PersistedVolume& volume) override;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

class MemoryBackend : public Backend {
public:
    std::vector<PersistedVolume> load() override;
    void save(const PersistedVolume& volume) override;

private:
    std::mutex mutex_;
    std::map<std::string, PersistedVolume> volumes_;
};

struct LinkOutcome {
    LinkResult result;
    std::map<std::string, long> revisions;  // new revision of every touched entry
};

// Volumes keyed by handle (the volume name). Readers run concurrently;
// writers to one volume are serialized; a reader never sees half an edit.
class Store {
public:
    explicit Store(std::unique_ptr<Backend> backend);
    ~Store();
    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    static std::unique_ptr<Store> open_directory(const std::filesystem::path& dir);
    static std::unique_ptr<Store> in_memory();

    // Parses, validates and stores a whole volume, replacing any volume of
    // the same name. Missing descriptor fields come from the XML header.
    // Empty levels become drafts. Throws InvalidInput naming a duplicated
    // id, XmlError on malformed XML.
    std::string import_volume(std::string_view xml, VolumeDescriptor descriptor = {});

    std::vector<VolumeDescriptor> volumes() const;
    std::optional<VolumeDescriptor> descriptor(std::string_view handle) const;
    std::optional<std::string> find_volume(std::string_view dictionary, std::string_view language) const;

    // Ids ordered by headword (native-script form first when present), then
    // id. Value "*" matches every entry. Throws UnknownCriteria.
    QueryResult query(std::string_view handle, std::string_view criteria, std::string_view value,
                      Strategy strategy = Strategy::exact, std::size_t count = 10,
                      std::size_t start_index = 0) const;

    std::optional<StoredEntry> get(std::string_view handle, std::string_view id) const;

    // Values the criteria's path selects in one entry.
    std::vector<std::string> project(std::string_view handle, std::string_view id,
                                     std::string_view criteria) const;

    // Every entry in document order.
    std::vector<std::pair<std::string, StoredEntry>> entries(std::string_view handle) const;

    std::size_t index_key_count(std::string_view handle, std::string_view criteria) const;

    // Replaces one entry. The stored level never drops and rises to the
    // editor's skill. Throws NotFound, Conflict, InvalidInput.
    long update_entry(std::string_view handle, std::string_view id, const xml::Element& new_xml,
                      const Contributor& editor, long expected_revision);

    // Runs add_translation_link against the volumes of `dictionary`, creating
    // the pivot volume if needed. `expected_revision` guards the source entry
    // when positive.
    LinkOutcome create_link(std::string_view dictionary, const LinkRequest& request,
                            long expected_revision = 0);

    std::string export_volume(std::string_view handle) const;

private:
    struct Volume;
    std::shared_ptr<Volume> volume(std::string_view handle) const;
    void persist(const Volume& v);

    std::unique_ptr<Backend> backend_;
    mutable std::shared_mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<Volume>, std::less<>> volumes_;
};

}  // namespace motamot::store
