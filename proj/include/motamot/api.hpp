#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "motamot/model.hpp"
#include "motamot/store.hpp"

// REST adapter over the store:
//
//   GET /api/{dict}/{lang}/{criteria}/{string}[/{key}]?strategy=&count=&startIndex=
//   PUT /api/{dict}/{lang}/entry/{id}          Authorization: Bearer, If-Match: <revision>
//   GET /api/{dict}/export[?lang=]
//   GET /api/{dict}/{lang}/schema
//
// `*` stands for any dictionary, language or key. Path segments are
// percent-decoded once.
namespace motamot::api {

struct TokenGrant {
    std::string name;
    std::string token;
    int skill = 1;
};

struct Config {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string data_dir = "data/store";
    std::size_t page_size = 10;
    std::vector<TokenGrant> tokens;
};

// JSON: {"listen": "host:port", "data_dir": ..., "page_size": n,
//        "tokens": [{"name": .., "token": .., "skill": n}]}
Config parse_config(std::string_view json);
Config load_config(const std::string& path);

struct Request {
    std::string method;
    std::string path;  // raw, still percent-encoded, without the query
    std::map<std::string, std::string> params;
    std::map<std::string, std::string> headers;  // lower-case names
    std::string body;
};

struct Response {
    int status = 200;
    std::string content_type = "application/xml; charset=utf-8";
    std::string body;
    std::map<std::string, std::string> headers;
};

std::string percent_decode(std::string_view s);

class Handler {
public:
    Handler(store::Store& store, Config config);

    Response handle(const Request& request) const;

    const Config& config() const { return config_; }

private:
    Response lookup(const std::vector<std::string>& segments, const Request& request) const;
    Response update(const std::string& dict, const std::string& lang, const std::string& id,
                    const Request& request) const;
    Response export_dictionary(const std::string& dict, const Request& request) const;
    Response schema(const std::string& dict, const std::string& lang) const;
    std::optional<Contributor> authenticate(const Request& request) const;

    store::Store& store_;
    Config config_;
};

// Serves a Handler over HTTP until stopped.
class Server {
public:
    explicit Server(const Handler& handler);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool run();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace motamot::api
