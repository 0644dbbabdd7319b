#include "motamot/api.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <tuple>
#include <set>

#include <httplib.h>
#include <json.hpp>

#include "motamot/codec.hpp"
#include "motamot/ids.hpp"
#include "motamot/schema.hpp"
#include "motamot/utf8.hpp"
#include "motamot/xml.hpp"

namespace motamot::api {

Config parse_config(std::string_view text) {
    Config c;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
    if (j.contains("listen")) {
        auto listen = j["listen"].get<std::string>();
        auto colon = listen.rfind(':');
        if (colon == std::string::npos) throw InvalidInput("config: listen must be host:port");
        c.host = listen.substr(0, colon);
        auto port = listen.substr(colon + 1);
        auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), c.port);
        if (ec != std::errc() || p != port.data() + port.size() || c.port < 0 || c.port > 65535)
            throw InvalidInput("config: bad port in listen");
    }
    if (j.contains("data_dir")) c.data_dir = j["data_dir"].get<std::string>();
    if (j.contains("page_size")) {
        auto n = j["page_size"].get<long>();
        if (n < 1) throw InvalidInput("config: page_size must be positive");
        c.page_size = static_cast<std::size_t>(n);
    }
    std::set<std::string> seen;
    for (const auto& t : j.value("tokens", nlohmann::json::array())) {
        TokenGrant g{t.at("name").get<std::string>(), t.at("token").get<std::string>(), t.value("skill", 1)};
        if (g.token.empty()) throw InvalidInput("config: empty token for " + g.name);
        if (g.skill < QualityLevel::kMin || g.skill > QualityLevel::kMax)
            throw InvalidInput("config: skill of " + g.name + " outside 1..5");
        if (!seen.insert(g.token).second) throw InvalidInput("config: token of " + g.name + " reused");
        c.tokens.push_back(std::move(g));
    }
    return c;
}

Config load_config(const std::string& path) { return parse_config(codec::read_file(path)); }

std::string percent_decode(std::string_view s) {
    auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size() && hex(s[i + 1]) >= 0 && hex(s[i + 2]) >= 0) {
            out += static_cast<char>(hex(s[i + 1]) * 16 + hex(s[i + 2]));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

namespace {

Response xml_response(int status, const xml::Element& root) {
    Response r;
    r.status = status;
    xml::Document doc;
    doc.root = root;
    r.body = xml::write(doc);
    return r;
}

Response error(int status, std::string_view message) {
    xml::Element e("m:error", std::string(message));
    e.set_attr("xmlns:m", std::string(codec::kNamespace));
    e.set_attr("status", std::to_string(status));
    return xml_response(status, e);
}

std::optional<std::size_t> parse_count(const std::map<std::string, std::string>& params, const std::string& key,
                                       std::size_t fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const auto& s = it->second;
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return n;
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> out;
    if (!path.empty() && path.front() == '/') path.remove_prefix(1);
    for (auto& seg : utf8::split(path, "/")) out.push_back(percent_decode(seg));
    return out;
}

}  // namespace

Handler::Handler(store::Store& store, Config config) : store_(store), config_(std::move(config)) {}

std::optional<Contributor> Handler::authenticate(const Request& request) const {
    auto it = request.headers.find("authorization");
    if (it == request.headers.end()) return std::nullopt;
    std::string_view v = it->second;
    if (!v.starts_with("Bearer ")) return std::nullopt;
    auto token = utf8::trim(v.substr(7));
    for (const auto& g : config_.tokens)
        if (g.token == token) return Contributor{g.name, g.skill, 0};
    return std::nullopt;
}

Response Handler::handle(const Request& request) const {
    auto seg = split_path(request.path);
    if (seg.size() < 2 || seg[0] != "api" || std::any_of(seg.begin(), seg.end(), [](auto& s) { return s.empty(); }))
        return error(404, "no such route");
    try {
        if (request.method == "GET") {
            if (seg.size() == 3 && seg[2] == "export") return export_dictionary(seg[1], request);
            if (seg.size() == 4 && seg[3] == "schema") return schema(seg[1], seg[2]);
            if (seg.size() == 5 || seg.size() == 6) return lookup(seg, request);
            return error(404, "no such route");
        }
        if (request.method == "PUT") {
            if (seg.size() == 5 && seg[3] == "entry") return update(seg[1], seg[2], seg[4], request);
            return error(404, "no such route");
        }
        return error(405, "method not allowed");
    } catch (const store::UnknownCriteria& e) {
        return error(400, e.what());
    } catch (const Conflict& e) {
        return error(409, e.what());
    } catch (const NotFound& e) {
        return error(404, e.what());
    } catch (const XmlError& e) {
        return error(422, e.what());
    } catch (const InvalidInput& e) {
        return error(422, e.what());
    }
}

Response Handler::lookup(const std::vector<std::string>& seg, const Request& request) const {
    const auto& dict = seg[1];
    const auto& lang = seg[2];
    const auto& criteria = seg[3];
    const auto& value = seg[4];
    const std::optional<std::string> key = seg.size() == 6 ? std::optional(seg[5]) : std::nullopt;

    store::Strategy strategy = store::Strategy::exact;
    if (auto it = request.params.find("strategy"); it != request.params.end()) {
        try {
            strategy = store::strategy_from_string(it->second);
        } catch (const InvalidInput& e) {
            return error(400, e.what());
        }
    }
    auto count = parse_count(request.params, "count", config_.page_size);
    auto start = parse_count(request.params, "startIndex", 0);
    if (!count || !start) return error(400, "count and startIndex must be non-negative integers");

    // Volumes in (dictionary, language) order.
    std::vector<store::VolumeDescriptor> targets;
    for (auto& d : store_.volumes())
        if ((dict == "*" || d.dictionary == dict) && (lang == "*" || d.language == lang)) targets.push_back(d);
    std::sort(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dictionary, a.language, a.name) < std::tie(b.dictionary, b.language, b.name);
    });
    if (targets.empty()) return error(404, "no volume matches " + dict + "/" + lang);

    // Union over volumes, first occurrence of an id wins.
    std::vector<std::pair<std::string, std::string>> hits;  // handle, id
    std::set<std::string> seen;
    bool known = false;
    for (const auto& d : targets) {
        store::QueryResult r;
        try {
            r = store_.query(d.name, criteria, value, strategy, std::numeric_limits<std::size_t>::max(), 0);
        } catch (const store::UnknownCriteria&) {
            continue;
        }
        known = true;
        for (auto& id : r.ids)
            if (seen.insert(id).second) hits.emplace_back(d.name, id);
    }
    if (!known) return error(400, "unknown criteria " + criteria);
    if (hits.empty()) return error(404, "no entry matches " + criteria + "=" + value);

    xml::Element results("m:results");
    results.set_attr("xmlns:m", std::string(codec::kNamespace));
    results.set_attr("total-count", std::to_string(hits.size()));
    results.set_attr("start-index", std::to_string(*start));
    std::size_t begin = std::min(*start, hits.size());
    std::size_t end = begin + std::min(*count, hits.size() - begin);
    results.set_attr("count", std::to_string(end - begin));

    Response r;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& [handle, id] = hits[i];
        if (!key) {
            auto stored = store_.get(handle, id);
            if (!stored) continue;
            results.add(stored->element);
            if (end - begin == 1) r.headers["ETag"] = "\"" + std::to_string(stored->revision) + "\"";
            continue;
        }
        std::vector<std::string> keys;
        if (*key == "*") {
            auto d = store_.descriptor(handle);
            for (const auto& f : d->indexed_fields) keys.push_back(f.criteria);
        } else {
            keys.push_back(*key);
        }
        for (const auto& k : keys) {
            std::vector<std::string> values;
            try {
                values = store_.project(handle, id, k);
            } catch (const store::UnknownCriteria&) {
                if (*key != "*" && targets.size() == 1) return error(400, "unknown key " + k);
                continue;
            }
            for (auto& v : values) {
                xml::Element e("m:value", std::move(v));
                e.set_attr("entry", id);
                e.set_attr("key", k);
                results.add(std::move(e));
            }
        }
    }
    auto out = xml_response(200, results);
    out.headers = std::move(r.headers);
    return out;
}

Response Handler::update(const std::string& dict, const std::string& lang, const std::string& id,
                         const Request& request) const {
    auto who = authenticate(request);
    if (!who) {
        auto r = error(401, "authentication required");
        r.headers["WWW-Authenticate"] = "Bearer";
        return r;
    }
    auto handle = store_.find_volume(dict, lang);
    if (!handle) return error(404, "no volume " + dict + "/" + lang);

    auto m = request.headers.find("if-match");
    if (m == request.headers.end()) return error(400, "If-Match revision required");
    std::string_view rev_text = m->second;
    if (rev_text.starts_with("W/")) rev_text.remove_prefix(2);
    if (rev_text.size() >= 2 && rev_text.front() == '"' && rev_text.back() == '"')
        rev_text = rev_text.substr(1, rev_text.size() - 2);
    long expected = 0;
    auto [p, ec] = std::from_chars(rev_text.data(), rev_text.data() + rev_text.size(), expected);
    if (rev_text.empty() || ec != std::errc() || p != rev_text.data() + rev_text.size())
        return error(400, "If-Match must carry a revision number");

    auto body = xml::parse_element(request.body);
    xml::Element out;
    out.set_attr("xmlns:m", std::string(codec::kNamespace));
    if (body.name == "m:link") {
        LinkRequest link;
        link.source = {id, body.attr_or("source-sense")};
        link.target = {body.attr_or("target"), body.attr_or("target-sense")};
        link.creator = *who;
        if (link.target.entry.empty()) return error(422, "link needs a target entry");
        if (!store_.get(*handle, id)) return error(404, "unknown entry " + id);
        auto outcome = store_.create_link(dict, link, expected);
        out.name = "m:link-result";
        static constexpr std::string_view kinds[] = {"sense-to-sense", "sense-to-vocable", "vocable-level"};
        out.set_attr("case", std::string(kinds[static_cast<int>(outcome.result.kind)]));
        if (outcome.result.axie) out.set_attr("axie", outcome.result.axie->id);
        for (const auto& [entry, rev] : outcome.revisions) {
            xml::Element e("m:revision");
            e.set_attr("entry", entry);
            e.set_attr("value", std::to_string(rev));
            out.add(std::move(e));
        }
        auto r = xml_response(200, out);
        if (auto it = outcome.revisions.find(id); it != outcome.revisions.end())
            r.headers["ETag"] = "\"" + std::to_string(it->second) + "\"";
        return r;
    }
    if (body.name != "m:entry") return error(422, "expected <m:entry> or <m:link>, got <" + body.name + ">");
    auto rev = store_.update_entry(*handle, id, body, *who, expected);
    out.name = "m:updated";
    out.set_attr("id", id);
    out.set_attr("revision", std::to_string(rev));
    auto r = xml_response(200, out);
    r.headers["ETag"] = "\"" + std::to_string(rev) + "\"";
    return r;
}

Response Handler::export_dictionary(const std::string& dict, const Request& request) const {
    std::vector<store::VolumeDescriptor> vols;
    for (auto& d : store_.volumes())
        if (d.dictionary == dict) vols.push_back(d);
    if (vols.empty()) return error(404, "unknown dictionary " + dict);
    std::sort(vols.begin(), vols.end(), [](const auto& a, const auto& b) { return a.language < b.language; });
    if (auto it = request.params.find("lang"); it != request.params.end()) {
        auto found = std::find_if(vols.begin(), vols.end(), [&](auto& d) { return d.language == it->second; });
        if (found == vols.end()) return error(404, "no " + it->second + " volume in " + dict);
        vols = {*found};
    }
    Response r;
    r.headers["Content-Disposition"] = "attachment; filename=\"" + dict + ".xml\"";
    if (vols.size() == 1) {
        r.body = store_.export_volume(vols.front().name);
        return r;
    }
    xml::Document bundle;
    bundle.leading_comments.push_back(" " + dict +
                                      " dictionary. Distributed under the Creative Commons Attribution 4.0"
                                      " International licence (CC BY 4.0). ");
    bundle.root = xml::Element("m:dictionary");
    bundle.root.set_attr("xmlns:m", std::string(codec::kNamespace));
    bundle.root.set_attr("name", dict);
    for (const auto& d : vols) bundle.root.add(xml::parse(store_.export_volume(d.name)).root);
    r.body = xml::write(bundle);
    return r;
}

Response Handler::schema(const std::string& dict, const std::string& lang) const {
    auto handle = store_.find_volume(dict, lang);
    if (!handle) return error(404, "no volume " + dict + "/" + lang);
    auto d = *store_.descriptor(*handle);
    const std::string root = lang == "axi" ? "m:axie" : "m:entry";
    nlohmann::json j;
    j["volume"] = d.name;
    j["dictionary"] = d.dictionary;
    j["language"] = d.language;
    j["root"] = root;
    j["criteria"] = nlohmann::json::array();
    j["criteria"].push_back({{"name", std::string(store::kHandle)}, {"path", "@id"}});
    for (const auto& f : d.indexed_fields) j["criteria"].push_back({{"name", f.criteria}, {"path", f.path}});
    j["form"] = nlohmann::json::parse(schema::form_description(root));
    Response r;
    r.content_type = "application/json";
    r.body = j.dump(2) + "\n";
    return r;
}

// --- HTTP -----------------------------------------------------------------

struct Server::Impl {
    const Handler& handler;
    httplib::Server http;

    explicit Impl(const Handler& h) : handler(h) {
        auto serve = [this](const httplib::Request& req, httplib::Response& res) {
            Request r;
            r.method = req.method;
            auto target = req.target.empty() ? req.path : req.target;
            r.path = target.substr(0, target.find('?'));
            for (const auto& [k, v] : req.params) r.params.emplace(k, v);
            for (const auto& [k, v] : req.headers) {
                std::string lower = k;
                std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
                r.headers.emplace(std::move(lower), v);
            }
            r.body = req.body;
            auto out = handler.handle(r);
            res.status = out.status;
            for (const auto& [k, v] : out.headers) res.set_header(k, v);
            res.set_content(out.body, out.content_type);
        };
        http.Get(".*", serve);
        http.Put(".*", serve);
    }
};

Server::Server(const Handler& handler) : impl_(std::make_unique<Impl>(handler)) {}
Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::run() { return impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace motamot::api
