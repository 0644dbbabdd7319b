#pragma once

#include <httplib.h>

#include <memory>
#include <string>
#include <thread>

#include "motamot/api.hpp"
#include "motamot/codec.hpp"
#include "motamot/store.hpp"
#include "motamot/utf8.hpp"
#include "support.hpp"

namespace support {

inline motamot::api::Config test_config() {
    return motamot::api::parse_config(R"({
        "listen": "127.0.0.1:0",
        "page_size": 10,
        "tokens": [
            {"name": "ann", "token": "t-ann", "skill": 3},
            {"name": "bob", "token": "t-bob", "skill": 1}
        ]
    })");
}

// Sample volumes of dictionary "sample" plus a second French volume in
// dictionary "other" sharing every id and adding fra.abondir.99.e.
inline void seed(motamot::store::Store& s) {
    namespace m = motamot;
    const auto& a = sample_artifacts();
    s.import_volume(a.fra);
    s.import_volume(a.axi);
    s.import_volume(a.khm);
    s.import_volume(read(data_dir() / "sample" / "eng.xml"));

    auto doc = m::xml::parse(a.fra);
    m::Vocable extra;
    extra.id = "fra.abondir.99.e";
    extra.headword = "abondir";
    extra.senses.emplace_back();
    extra.senses[0].sense_id = "s1";
    extra.senses[0].gloss = "abondir";
    doc.root.add(m::codec::to_xml(extra));
    s.import_volume(m::xml::write(doc), {"other_fra", "other", "fra", {}});
}

struct Seeded {
    std::unique_ptr<motamot::store::Store> store;
    motamot::api::Handler handler;

    explicit Seeded(std::unique_ptr<motamot::store::Store> s = motamot::store::Store::in_memory(), bool fill = true)
        : store(std::move(s)), handler(*store, test_config()) {
        if (fill) seed(*store);
    }
};

// Runs a Server on an ephemeral port for the lifetime of the object.
class LiveServer {
public:
    explicit LiveServer(const motamot::api::Handler& h) : server_(h) {
        port_ = server_.bind("127.0.0.1", 0);
        thread_ = std::thread([this] { server_.run(); });
        server_.wait_until_ready();
    }
    ~LiveServer() {
        server_.stop();
        thread_.join();
    }
    LiveServer(const LiveServer&) = delete;
    LiveServer& operator=(const LiveServer&) = delete;

    int port() const { return port_; }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port_);
        c.set_keep_alive(false);
        return c;
    }

private:
    motamot::api::Server server_;
    std::thread thread_;
    int port_ = -1;
};

inline motamot::api::Request get(std::string path_and_query) {
    motamot::api::Request r;
    r.method = "GET";
    auto q = path_and_query.find('?');
    r.path = path_and_query.substr(0, q);
    if (q != std::string::npos) {
        for (auto& kv : motamot::utf8::split(path_and_query.substr(q + 1), "&")) {
            auto eq = kv.find('=');
            r.params[std::string(kv.substr(0, eq))] = eq == std::string::npos ? "" : std::string(kv.substr(eq + 1));
        }
    }
    return r;
}

inline motamot::api::Request put(std::string path, std::string body, std::string token, std::string if_match) {
    motamot::api::Request r;
    r.method = "PUT";
    r.path = std::move(path);
    r.body = std::move(body);
    if (!token.empty()) r.headers["authorization"] = "Bearer " + token;
    if (!if_match.empty()) r.headers["if-match"] = if_match;
    return r;
}

}  // namespace support
