#pragma once

#include <string>
#include <string_view>
#include <vector>

// Element vocabulary of the volume XML and its mapping onto the LMF core
// classes (LexicalEntry, Form, Lemma, Sense, Definition, Equivalent).
namespace motamot::schema {

struct ElementRule {
    std::string_view name;
    std::string_view parent;  // empty for an entry root
    std::string_view lmf;     // LMF class or feature the element stands for
    bool required;            // must occur at least once under its parent
    bool repeatable;
    bool leaf;                // carries text rather than children
};

const std::vector<ElementRule>& elements();
const ElementRule* find(std::string_view name, std::string_view parent);

// True if every element step of `path` (relative to an entry root named
// `root`) is part of the vocabulary. A trailing `@attr` step is accepted.
bool path_exists(std::string_view root, std::string_view path);

// JSON description of an entry root's editable fields, in document order,
// for clients that generate forms.
std::string form_description(std::string_view root);

}  // namespace motamot::schema
