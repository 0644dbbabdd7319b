#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Minimal ordered DOM for the lexical XML formats. Elements carry either
// text or child elements; whitespace-only text between child elements is
// dropped on parse so serialization is canonical.
namespace motamot::xml {

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::string text;

    Element() = default;
    explicit Element(std::string n) : name(std::move(n)) {}
    Element(std::string n, std::string t) : name(std::move(n)), text(std::move(t)) {}

    const std::string* attr(std::string_view key) const;
    std::string attr_or(std::string_view key, std::string_view fallback = "") const;
    Element& set_attr(std::string_view key, std::string value);
    bool remove_attr(std::string_view key);

    const Element* child(std::string_view child_name) const;
    Element* child(std::string_view child_name);
    std::vector<const Element*> children_named(std::string_view child_name) const;

    Element& add(Element e);
    Element& add(std::string child_name, std::string child_text);

    bool operator==(const Element&) const = default;
};

struct Document {
    Element root;
    std::vector<std::string> leading_comments;
};

// Throws XmlError with line/column on malformed input.
Document parse(std::string_view text);
Element parse_element(std::string_view text);

struct WriteOptions {
    bool declaration = true;
    int indent = 2;
};

std::string write(const Document& doc, const WriteOptions& opts = {});
std::string write(const Element& e, int indent = 2, int depth = 0);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

// Values reached by a slash-separated path relative to `e`. A final step
// starting with '@' selects an attribute.
std::vector<std::string> select(const Element& e, std::string_view path);

}  // namespace motamot::xml
