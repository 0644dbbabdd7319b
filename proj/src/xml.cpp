#include "motamot/xml.hpp"

#include <expat.h>

#include <memory>

#include "motamot/errors.hpp"
#include "motamot/utf8.hpp"

namespace motamot::xml {

const std::string* Element::attr(std::string_view key) const {
    for (const auto& [k, v] : attributes)
        if (k == key) return &v;
    return nullptr;
}

std::string Element::attr_or(std::string_view key, std::string_view fallback) const {
    const auto* v = attr(key);
    return v ? *v : std::string(fallback);
}

Element& Element::set_attr(std::string_view key, std::string value) {
    for (auto& [k, v] : attributes) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    attributes.emplace_back(std::string(key), std::move(value));
    return *this;
}

bool Element::remove_attr(std::string_view key) {
    for (auto it = attributes.begin(); it != attributes.end(); ++it) {
        if (it->first == key) {
            attributes.erase(it);
            return true;
        }
    }
    return false;
}

const Element* Element::child(std::string_view child_name) const {
    for (const auto& c : children)
        if (c.name == child_name) return &c;
    return nullptr;
}

Element* Element::child(std::string_view child_name) {
    for (auto& c : children)
        if (c.name == child_name) return &c;
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view child_name) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (c.name == child_name) out.push_back(&c);
    return out;
}

Element& Element::add(Element e) {
    children.push_back(std::move(e));
    return children.back();
}

Element& Element::add(std::string child_name, std::string child_text) {
    return add(Element(std::move(child_name), std::move(child_text)));
}

namespace {

struct ParseState {
    std::vector<Element> stack;
    std::vector<std::string> pending_text;
    Document doc;
    bool have_root = false;
};

bool whitespace_only(const std::string& s) {
    for (char c : s)
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') return false;
    return true;
}

void on_start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<ParseState*>(data);
    Element e(name);
    for (int i = 0; atts[i]; i += 2) e.attributes.emplace_back(atts[i], atts[i + 1]);
    st->stack.push_back(std::move(e));
    st->pending_text.emplace_back();
}

void on_end(void* data, const XML_Char*) {
    auto* st = static_cast<ParseState*>(data);
    Element e = std::move(st->stack.back());
    std::string text = std::move(st->pending_text.back());
    st->stack.pop_back();
    st->pending_text.pop_back();
    if (e.children.empty() || !whitespace_only(text)) e.text = std::move(text);
    if (st->stack.empty()) {
        st->doc.root = std::move(e);
        st->have_root = true;
    } else {
        st->stack.back().children.push_back(std::move(e));
    }
}

void on_text(void* data, const XML_Char* s, int len) {
    auto* st = static_cast<ParseState*>(data);
    if (!st->pending_text.empty()) st->pending_text.back().append(s, static_cast<std::size_t>(len));
}

void on_comment(void* data, const XML_Char* s) {
    auto* st = static_cast<ParseState*>(data);
    if (st->stack.empty() && !st->have_root) st->doc.leading_comments.emplace_back(s);
}

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

Document parse(std::string_view text) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    ParseState st;
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);
    XML_SetCommentHandler(parser.get(), on_comment);
    if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) ==
        XML_STATUS_ERROR) {
        throw XmlError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                       static_cast<long>(XML_GetCurrentLineNumber(parser.get())),
                       static_cast<long>(XML_GetCurrentColumnNumber(parser.get())));
    }
    if (!st.have_root) throw XmlError("no root element", 1, 0);
    return std::move(st.doc);
}

Element parse_element(std::string_view text) { return parse(text).root; }

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\t': out += "&#9;"; break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string write(const Element& e, int indent, int depth) {
    std::string pad(static_cast<std::size_t>(indent * depth), ' ');
    std::string out = pad + "<" + e.name;
    for (const auto& [k, v] : e.attributes) out += " " + k + "=\"" + escape_attr(v) + "\"";
    if (e.children.empty()) {
        if (e.text.empty()) return out + "/>\n";
        return out + ">" + escape_text(e.text) + "</" + e.name + ">\n";
    }
    out += ">";
    if (!e.text.empty()) out += escape_text(e.text);
    out += "\n";
    for (const auto& c : e.children) out += write(c, indent, depth + 1);
    return out + pad + "</" + e.name + ">\n";
}

std::string write(const Document& doc, const WriteOptions& opts) {
    std::string out;
    if (opts.declaration) out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    for (const auto& c : doc.leading_comments) out += "<!--" + c + "-->\n";
    out += write(doc.root, opts.indent, 0);
    return out;
}

namespace {

void select_into(const Element& e, const std::vector<std::string>& steps, std::size_t i,
                 std::vector<std::string>& out) {
    if (i == steps.size()) {
        out.push_back(e.text);
        return;
    }
    const auto& step = steps[i];
    if (!step.empty() && step[0] == '@') {
        if (i + 1 == steps.size()) {
            if (const auto* v = e.attr(std::string_view(step).substr(1))) out.push_back(*v);
        }
        return;
    }
    for (const auto& c : e.children)
        if (c.name == step) select_into(c, steps, i + 1, out);
}

}  // namespace

std::vector<std::string> select(const Element& e, std::string_view path) {
    std::vector<std::string> steps;
    for (auto& s : utf8::split(path, "/"))
        if (!s.empty()) steps.push_back(std::move(s));
    std::vector<std::string> out;
    select_into(e, steps, 0, out);
    return out;
}

}  // namespace motamot::xml
