#pragma once

#include <string>
#include <string_view>

#include "motamot/model.hpp"
#include "motamot/xml.hpp"

// Mapping between the domain types and the `m:` volume XML.
namespace motamot::codec {

inline constexpr std::string_view kNamespace = "http://www-clips.imag.fr/geta/services/dml";

xml::Element to_xml(const Vocable& v);
xml::Element to_xml(const Axie& a);

// Throws InvalidInput on structural problems (missing id, bad level ...).
// Accepts both `m:refaxie` and `m:reflexie` as the sense-to-axie reference.
Vocable vocable_from_xml(const xml::Element& e);
Axie axie_from_xml(const xml::Element& e);

struct VolumeHeader {
    std::string dictionary;
    std::string lang;
};

xml::Document volume_document(const VolumeHeader& header, std::vector<xml::Element> entries);
xml::Document to_document(const VolumeHeader& header, const Volume& volume);
xml::Document to_document(const VolumeHeader& header, const AxieVolume& volume);

VolumeHeader header_of(const xml::Document& doc);
Volume volume_from_document(const xml::Document& doc);
AxieVolume axie_volume_from_document(const xml::Document& doc);

// Convenience: read/write whole files.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace motamot::codec
