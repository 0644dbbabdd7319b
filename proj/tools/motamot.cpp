// motamot: pipeline driver and operations console.
//
// Exit status: 0 success, 1 validation or stage failure (an errors report
// is written), 2 usage error.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "motamot/api.hpp"
#include "motamot/codec.hpp"
#include "motamot/ingest.hpp"
#include "motamot/pipeline.hpp"
#include "motamot/reify.hpp"
#include "motamot/restructure.hpp"
#include "motamot/store.hpp"
#include "motamot/translit.hpp"
#include "motamot/xml.hpp"

namespace fs = std::filesystem;
using namespace motamot;

namespace {

struct Failure {
    std::vector<pipeline::Issue> issues;
};

struct Options {
    std::vector<std::string> in;
    std::string out;
    std::string supp;
    std::string rules;
    std::string config;
    std::string store_dir;
    std::string report;
    std::string dict = std::string(pipeline::kDictionary);
    std::string lang;
    bool trace = false;
    std::vector<std::string> text;
};

std::string read(const std::string& path) {
    if (path.empty()) throw InvalidInput("missing --in");
    return codec::read_file(path);
}

void write(const std::string& path, std::string_view content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    codec::write_file(path, content);
}

std::string one_input(const Options& o) {
    if (o.in.size() != 1) throw InvalidInput("expected exactly one --in");
    return o.in.front();
}

translit::RuleSet rules_of(const Options& o) {
    std::string path = o.rules;
    if (path.empty()) {
        const char* env = std::getenv("MOTAMOT_RULES");
        path = env ? env : "rules";
    }
    return translit::load_rules(path);
}

std::string store_dir_of(const Options& o) {
    if (!o.store_dir.empty()) return o.store_dir;
    if (!o.config.empty()) return api::load_config(o.config).data_dir;
    throw InvalidInput("need --store or --config");
}

void fail_if(const std::vector<std::string>& problems, std::string_view stage) {
    if (problems.empty()) return;
    Failure f;
    for (const auto& p : problems) f.issues.push_back({std::string(stage), p, 0});
    throw f;
}

// --- subcommands ------------------------------------------------------------

void cmd_ingest(const Options& o) {
    auto lines = ingest::read_lines(read(one_input(o)));
    auto tagged = ingest::tag_volume(lines);
    write(o.out, tagged.xml());
    if (!tagged.errors.empty()) {
        Failure f;
        for (const auto& e : tagged.errors) f.issues.push_back({"ingest", e.message + ": " + e.text, e.line});
        throw f;
    }
}

void cmd_restructure(const Options& o) {
    auto volume = restructure::restructure_volume(xml::parse(read(one_input(o))));
    write(o.out, xml::write(codec::to_document({o.dict, "fra"}, volume)));
}

void cmd_enrich(const Options& o) {
    auto doc = xml::parse(read(one_input(o)));
    auto volume = codec::volume_from_document(doc);
    auto stats = restructure::enrich_from_supplement(volume, restructure::parse_supplement(read(o.supp)));
    write(o.out, xml::write(codec::to_document(codec::header_of(doc), volume)));
    std::cerr << "matched " << stats.matched << ", pos set " << stats.pos_set << ", feminine forms "
              << stats.fem_forms << ", homonymous " << stats.homonyms.size() << "\n";
}

void cmd_reify(const Options& o) {
    if (o.out.empty()) throw InvalidInput("reify needs --out DIR");
    auto doc = xml::parse(read(one_input(o)));
    auto header = codec::header_of(doc);
    auto result = reify::reify_links(codec::volume_from_document(doc));
    fs::create_directories(o.out);
    auto dict = header.dictionary.empty() ? o.dict : header.dictionary;
    write((fs::path(o.out) / "fra.xml").string(), xml::write(codec::to_document({dict, "fra"}, result.french)));
    write((fs::path(o.out) / "axi.xml").string(), xml::write(codec::to_document({dict, "axi"}, result.axies)));
    write((fs::path(o.out) / "khm.xml").string(), xml::write(codec::to_document({dict, "khm"}, result.khmer)));
    for (const auto& r : result.report) std::cerr << r << "\n";
}

void cmd_translit(const Options& o) {
    auto rules = rules_of(o);
    if (!o.in.empty()) {
        auto doc = xml::parse(read(one_input(o)));
        auto volume = codec::volume_from_document(doc);
        auto issues = pipeline::transliterate_volume(volume, rules);
        write(o.out, xml::write(codec::to_document(codec::header_of(doc), volume)));
        if (!issues.empty()) throw Failure{issues};
        return;
    }
    if (o.text.empty()) throw InvalidInput("translit needs IPA text or --in");
    std::vector<pipeline::Issue> issues;
    for (const auto& text : o.text) {
        try {
            auto t = translit::transliterate(text, rules);
            if (!o.trace) {
                std::cout << t.khmer << "\n";
                continue;
            }
            std::cout << "input         " << text << "\n"
                      << "normalize     " << t.normalized << "\n"
                      << "intermediate  " << t.intermediate << "\n"
                      << "generate      " << t.khmer << "\n";
            for (const auto& c : t.report.pass_through) std::cout << "pass-through  " << c << "\n";
            for (const auto& c : t.report.untyped_consonants) std::cout << "untyped       " << c << "\n";
            if (t.report.low_confidence) std::cout << "low-confidence " << t.report.low_confidence << "\n";
            for (const auto& d : t.report.diagnostics) std::cout << "note          " << d << "\n";
        } catch (const translit::UntranslatableGrapheme& e) {
            issues.push_back({"translit", text + ": " + e.what(), 0});
        }
    }
    if (!issues.empty()) throw Failure{issues};
}

void cmd_import(const Options& o) {
    auto store = store::Store::open_directory(store_dir_of(o));
    if (o.in.empty()) throw InvalidInput("import needs --in");
    for (const auto& path : o.in) {
        store::VolumeDescriptor d;
        d.dictionary = o.dict;
        auto handle = store->import_volume(read(path), d);
        std::cerr << "imported " << path << " as " << handle << "\n";
    }
}

void cmd_export(const Options& o) {
    auto store = store::Store::open_directory(store_dir_of(o));
    if (o.lang.empty()) throw InvalidInput("export needs --lang");
    auto handle = store->find_volume(o.dict, o.lang);
    if (!handle) throw NotFound("no " + o.lang + " volume in " + o.dict);
    write(o.out, store->export_volume(*handle));
}

api::Server* g_server = nullptr;

void cmd_serve(const Options& o) {
    if (o.config.empty()) throw InvalidInput("serve needs --config");
    auto config = api::load_config(o.config);
    if (!o.store_dir.empty()) config.data_dir = o.store_dir;
    auto store = store::Store::open_directory(config.data_dir);
    api::Handler handler(*store, config);
    api::Server server(handler);
    int port = server.bind(config.host, config.port);
    if (port < 0) throw Error("cannot listen on " + config.host + ":" + std::to_string(config.port));
    g_server = &server;
    std::signal(SIGINT, [](int) {
        if (g_server) g_server->stop();
    });
    std::signal(SIGTERM, [](int) {
        if (g_server) g_server->stop();
    });
    std::cerr << "listening on " << config.host << ":" << port << "\n";
    server.run();
    g_server = nullptr;
}

void cmd_check(const Options& o) {
    std::vector<std::string> files;
    if (o.in.size() == 1 && fs::is_directory(o.in.front())) {
        for (auto name : {"fra.xml", "axi.xml", "khm.xml"}) files.push_back((fs::path(o.in.front()) / name).string());
    } else {
        files = o.in;
    }
    Volume french, khmer;
    AxieVolume axies;
    bool have_fra = false, have_axi = false, have_khm = false;
    for (const auto& f : files) {
        auto doc = xml::parse(read(f));
        auto lang = codec::header_of(doc).lang;
        if (lang == "axi") {
            axies = codec::axie_volume_from_document(doc);
            have_axi = true;
        } else if (lang == "fra") {
            french = codec::volume_from_document(doc);
            have_fra = true;
        } else if (lang == "khm") {
            khmer = codec::volume_from_document(doc);
            have_khm = true;
        } else {
            throw InvalidInput(f + ": unexpected volume language '" + lang + "'");
        }
    }
    if (!have_fra || !have_axi || !have_khm) throw InvalidInput("check needs the fra, axi and khm volumes");
    auto report = pipeline::check(french, axies, khmer);
    fail_if(report, "check");
    std::cerr << "ok: " << french.entries.size() << " French, " << axies.axies.size() << " axies, "
              << khmer.entries.size() << " Khmer entries\n";
}

void cmd_pipeline(const Options& o) {
    if (o.out.empty()) throw InvalidInput("pipeline needs --out DIR");
    auto rules = rules_of(o);
    auto a = pipeline::run(read(one_input(o)), read(o.supp), rules, o.dict);
    const fs::path dir = o.out;
    fs::create_directories(dir);
    write((dir / "tagged.xml").string(), a.tagged);
    write((dir / "restructured.xml").string(), a.restructured);
    write((dir / "enriched.xml").string(), a.enriched);
    write((dir / "fra.xml").string(), a.fra);
    write((dir / "axi.xml").string(), a.axi);
    write((dir / "khm.xml").string(), a.khm);
    std::cerr << "enrich: matched " << a.enrich.matched << ", pos set " << a.enrich.pos_set << ", feminine forms "
              << a.enrich.fem_forms << "\n";
    if (!a.ok()) throw Failure{a.issues};
}

std::string report_path(const Options& o) {
    if (!o.report.empty()) return o.report;
    if (!o.out.empty() && o.out != "-") {
        if (fs::is_directory(o.out)) return (fs::path(o.out) / "errors.json").string();
        return o.out + ".errors.json";
    }
    return "motamot-errors.json";
}

int report(const Options& o, const std::string& command, const std::vector<pipeline::Issue>& issues) {
    nlohmann::json j;
    j["command"] = command;
    j["status"] = 1;
    j["errors"] = nlohmann::json::array();
    for (const auto& i : issues) {
        nlohmann::json e = {{"stage", i.stage}, {"message", i.message}};
        if (i.line) e["line"] = i.line;
        j["errors"].push_back(e);
        std::cerr << i.stage << ": " << (i.line ? "line " + std::to_string(i.line) + ": " : "") << i.message << "\n";
    }
    auto path = report_path(o);
    try {
        write(path, j.dump(2) + "\n");
        std::cerr << issues.size() << " error(s), report written to " << path << "\n";
    } catch (const std::exception& e) {
        std::cerr << "cannot write report " << path << ": " << e.what() << "\n";
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MotAMot dictionary pipeline and server"};
    app.require_subcommand(1);
    Options o;

    auto add = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("--report", o.report, "Errors report file");
        return c;
    };
    auto* ingest = add("ingest", "Tag a source file: --in SRC --out tagged.xml");
    ingest->add_option("--in", o.in)->required();
    ingest->add_option("--out", o.out);

    auto* restructure = add("restructure", "Tagged volume to entry volume: --in tagged.xml --out fra.xml");
    restructure->add_option("--in", o.in)->required();
    restructure->add_option("--out", o.out);
    restructure->add_option("--dict", o.dict, "Dictionary name");

    auto* enrich = add("enrich", "Fill head blocks from a supplement lexicon");
    enrich->add_option("--in", o.in)->required();
    enrich->add_option("--supp", o.supp)->required();
    enrich->add_option("--out", o.out);

    auto* reify = add("reify", "Reify embedded translations: --in fra.xml --out DIR");
    reify->add_option("--in", o.in)->required();
    reify->add_option("--out", o.out)->required();

    auto* translit = add("translit", "IPA to Khmer script, for text arguments or a volume");
    translit->add_option("text", o.text, "IPA strings");
    translit->add_option("--in", o.in, "Volume whose headwords get a writing");
    translit->add_option("--out", o.out);
    translit->add_option("--rules", o.rules, "Rule file or directory (default $MOTAMOT_RULES or ./rules)");
    translit->add_flag("--trace", o.trace, "Print every stage");

    auto* import = add("import", "Import volume files into the store");
    import->add_option("--in", o.in)->required();
    import->add_option("--config", o.config);
    import->add_option("--store", o.store_dir, "Store directory (overrides the config)");
    import->add_option("--dict", o.dict);

    auto* exp = add("export", "Export one volume");
    exp->add_option("--config", o.config);
    exp->add_option("--store", o.store_dir);
    exp->add_option("--dict", o.dict);
    exp->add_option("--lang", o.lang)->required();
    exp->add_option("--out", o.out);

    auto* serve = add("serve", "Run the REST server");
    serve->add_option("--config", o.config)->required();
    serve->add_option("--store", o.store_dir);

    auto* check = add("check", "Integrity and LMF shape of fra/axi/khm volumes (files or a directory)");
    check->add_option("--in", o.in)->required();

    auto* pipe = add("pipeline", "Run every stage: --in SRC --supp TSV --rules DIR --out DIR");
    pipe->add_option("--in", o.in)->required();
    pipe->add_option("--supp", o.supp)->required();
    pipe->add_option("--rules", o.rules);
    pipe->add_option("--out", o.out)->required();
    pipe->add_option("--dict", o.dict);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::map<CLI::App*, void (*)(const Options&)> commands = {
        {ingest, cmd_ingest}, {restructure, cmd_restructure}, {enrich, cmd_enrich}, {reify, cmd_reify},
        {translit, cmd_translit}, {import, cmd_import}, {exp, cmd_export}, {serve, cmd_serve},
        {check, cmd_check}, {pipe, cmd_pipeline},
    };
    auto* sub = app.get_subcommands().front();
    try {
        commands.at(sub)(o);
        return 0;
    } catch (const Failure& f) {
        return report(o, sub->get_name(), f.issues);
    } catch (const XmlError& e) {
        return report(o, sub->get_name(), {{"xml", e.what(), static_cast<std::size_t>(e.line())}});
    } catch (const std::exception& e) {
        return report(o, sub->get_name(), {{sub->get_name(), e.what(), 0}});
    }
}
