#include "cli.hpp"

#include <signal.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "affekt/api.hpp"
#include "affekt/config.hpp"
#include "affekt/engine.hpp"
#include "affekt/error.hpp"
#include "affekt/lexicon.hpp"
#include "affekt/store.hpp"

namespace affekt::cli {
namespace {
using nlohmann::json;

struct Flags {
  std::string config;
  std::string store;
  std::string lexicon;
  std::optional<int> top_k;
  std::optional<double> threshold;
  std::string language;
  std::string translation;
  bool classify_basics = false;

  std::string items;
  std::string stories;
  std::string head, modifier;
  std::string item_file;
  std::string story;
  std::string kind;
  int limit = static_cast<int>(kDefaultRecommendationLimit);
  std::string triples;
  std::optional<int> port;
  std::string host;
};

ServiceConfig resolve_config(const Flags& f) {
  ServiceConfig config;
  // An explicit --config wins over the environment.
  if (!f.config.empty()) config = load_config(f.config);
  else if (auto env = config_path_from_env(std::nullopt)) config = load_config(*env);

  if (!f.store.empty()) config.store_path = f.store;
  if (!f.lexicon.empty()) config.lexicon_path = f.lexicon;
  if (f.top_k) config.top_k = *f.top_k;
  if (f.threshold) config.threshold = *f.threshold;
  if (!f.language.empty()) {
    auto lang = parse_language(f.language);
    if (!lang) throw Error(ErrorKind::domain, "unknown language '" + f.language + "'", "language");
    config.language = *lang;
  }
  if (!f.translation.empty()) config.translation_path = f.translation;
  if (f.classify_basics) config.classify_basics = true;
  if (f.port) config.port = *f.port;
  if (!f.host.empty()) config.host = f.host;
  config.validate();
  return config;
}

PrototypeSet prototypes_from_lexicon(const ServiceConfig& config) {
  const auto lexicon = load_lexicon(config.lexicon_path);
  return build_prototypes(lexicon.entries, config.top_k);
}

// The lexicon when one is configured, otherwise the prototypes saved by a
// previous ingest.
PrototypeSet resolve_prototypes(const ServiceConfig& config) {
  if (!config.lexicon_path.empty()) return prototypes_from_lexicon(config);
  if (std::filesystem::exists(config.store_path)) {
    CatalogStore store(config.store_path);
    if (auto snap = store.snapshot(); snap->prototypes) return *snap->prototypes;
  }
  throw Error(ErrorKind::contract, "no prototypes available: pass --lexicon or run ingest first",
              "lexicon");
}

TranslationMap resolve_translation(const ServiceConfig& config) {
  if (config.translation_path.empty()) return {};
  return load_translation_map(config.translation_path);
}

// Runs one API call and turns an error status back into an exception so the
// exit code reflects it.
json call(const Api& api, const std::string& method, const std::string& path,
          const std::string& body) {
  const auto res = api.handle({method, path, {}, body});
  json doc = res.json();
  if (res.status >= 400) {
    const auto kind = doc.value("kind", std::string());
    const ErrorKind ek = kind == "io" || res.status >= 500 ? ErrorKind::io
                         : res.status == 404             ? ErrorKind::not_found
                         : res.status == 409             ? ErrorKind::conflict
                         : res.status == 422             ? ErrorKind::unprocessable
                                                         : ErrorKind::schema;
    throw Error(ek, doc.value("error", std::string("request failed")), doc.value("field", ""));
  }
  return doc;
}

int cmd_ingest(const Flags& f, std::ostream& out) {
  auto config = resolve_config(f);
  if (config.lexicon_path.empty())
    throw Error(ErrorKind::contract, "ingest requires --lexicon", "lexicon");
  const auto items = load_items(f.items);
  const auto stories = f.stories.empty() ? std::vector<Story>{} : load_stories(f.stories);

  CatalogStore store(config.store_path);
  store.put_prototypes(prototypes_from_lexicon(config));
  Engine engine(*store.snapshot()->prototypes, config, resolve_translation(config));
  Api api(store, engine);

  json item_results = json::array();
  for (const auto& item : items)
    item_results.push_back(call(api, "POST", "/items", to_json(item).dump()));
  json story_results = json::array();
  for (const auto& story : stories)
    story_results.push_back(call(api, "POST", "/stories", to_json(story).dump()));

  out << json{{"revision", store.snapshot()->revision},
              {"items", std::move(item_results)},
              {"stories", std::move(story_results)}}
             .dump(2)
      << '\n';
  return kOk;
}

int cmd_combine(const Flags& f, std::ostream& out) {
  const auto config = resolve_config(f);
  const auto& wheel = build_wheel();
  auto basic = [&](const std::string& name, const char* field) {
    auto id = wheel.find(name);
    if (!id || !id->is_basic())
      throw Error(ErrorKind::domain, "'" + name + "' is not a basic emotion", field);
    return *id;
  };
  const EmotionId head = basic(f.head, "head");
  const EmotionId modifier = basic(f.modifier, "modifier");
  if (head == modifier)
    throw Error(ErrorKind::domain, "head and modifier must differ", "modifier");

  const auto set = resolve_prototypes(config);
  auto prototype = combine(set.basics.at(head), set.basics.at(modifier));
  if (auto dyad = wheel.dyad_of(head, modifier)) prototype.concept_name = wheel.name(*dyad);
  out << to_json(prototype).dump(2) << '\n';
  return kOk;
}

int cmd_classify(const Flags& f, std::ostream& out) {
  const auto config = resolve_config(f);
  std::ifstream in(f.item_file);
  if (!in) throw Error(ErrorKind::io, "cannot open item '" + f.item_file + "'", "item");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto record = parse_item(buf.str());

  Engine engine(resolve_prototypes(config), config, resolve_translation(config));
  const auto assignments = engine.classify(engine.profile(record));
  json emotions = json::array();
  for (const auto& a : assignments)
    emotions.push_back({{"emotion", engine.wheel().name(a.emotion)}, {"score", a.score}, {"matched", a.matched}});
  out << json{{"id", record.id}, {"emotions", std::move(emotions)}}.dump(2) << '\n';
  return kOk;
}

int cmd_recommend(const Flags& f, std::ostream& out) {
  const auto config = resolve_config(f);
  const auto kind = parse_relation(f.kind);
  if (!kind)
    throw Error(ErrorKind::domain, "kind must be same, similar or opposite, got '" + f.kind + "'",
                "kind");
  if (f.limit < 1) throw Error(ErrorKind::domain, "limit must be a positive integer", "limit");
  const auto& wheel = build_wheel();
  CatalogStore store(config.store_path);
  const auto rec = recommend(f.story, store.snapshot()->profiled_stories(), *kind,
                             static_cast<std::size_t>(f.limit), wheel);
  for (const auto& e : rec.entries)
    out << e.story_id << '\t' << json(e.relevance).dump() << '\t' << wheel.name(e.source_emotion)
        << '\t' << wheel.name(e.target_emotion) << '\n';
  return kOk;
}

int cmd_export(const Flags& f, std::ostream& out) {
  const auto config = resolve_config(f);
  CatalogStore store(config.store_path);
  const auto triples = export_assignments(store.snapshot()->all_assignments(), build_wheel());
  if (f.triples == "-") {
    out << triples;
    return kOk;
  }
  std::ofstream file(f.triples, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::io, "cannot write '" + f.triples + "'", "triples");
  file << triples;
  file.close();
  if (!file) throw Error(ErrorKind::io, "cannot write '" + f.triples + "'", "triples");
  return kOk;
}

int cmd_serve(const Flags& f, std::ostream& out) {
  const auto config = resolve_config(f);
  CatalogStore store(config.store_path);
  auto prototypes = config.lexicon_path.empty() ? resolve_prototypes(config)
                                                : prototypes_from_lexicon(config);
  store.put_prototypes(prototypes);
  Engine engine(std::move(prototypes), config, resolve_translation(config));
  Api api(store, engine);
  HttpServer server(api);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int port = server.bind(config.host, config.port);
  out << "listening on http://" << config.host << ':' << port << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() can also return on its own; wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Emotion prototypes, item classification and story recommendations", "affekt"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", f.config, "JSON config file (default: $AFFEKT_CONFIG)");
  app.add_option("--store", f.store, "catalog directory");
  app.add_option("--lexicon", f.lexicon, "emotion intensity lexicon (TSV)");
  app.add_option("--top-k", f.top_k, "terms kept per basic emotion");
  app.add_option("--threshold", f.threshold, "classification threshold");
  app.add_option("--language", f.language, "stopword language: en or it");
  app.add_option("--translation-map", f.translation, "lemma translation map (JSON object)");
  app.add_flag("--classify-basics", f.classify_basics, "also assign basic emotions");

  auto* ingest = app.add_subcommand("ingest", "build prototypes, classify and store items and stories");
  ingest->add_option("--items", f.items, "directory of item JSON files or a JSON-lines file")->required();
  ingest->add_option("--stories", f.stories, "directory of story JSON files or a JSON-lines file");

  auto* comb = app.add_subcommand("combine", "print the combined prototype of two basic emotions");
  comb->add_option("--head", f.head)->required();
  comb->add_option("--modifier", f.modifier)->required();

  auto* classify = app.add_subcommand("classify", "classify one item without storing it");
  classify->add_option("--item", f.item_file, "item JSON file")->required();

  auto* rec = app.add_subcommand("recommend", "recommend stories for a stored story");
  rec->add_option("--story", f.story)->required();
  rec->add_option("--kind", f.kind, "same, similar or opposite")->required();
  rec->add_option("--limit", f.limit);

  auto* exp = app.add_subcommand("export", "write the emotion assignments as N-Triples");
  exp->add_option("--triples", f.triples, "output path, - for stdout")->required();

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--port", f.port);
  serve->add_option("--host", f.host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(f, out);
    if (comb->parsed()) return cmd_combine(f, out);
    if (classify->parsed()) return cmd_classify(f, out);
    if (rec->parsed()) return cmd_recommend(f, out);
    if (exp->parsed()) return cmd_export(f, out);
    if (serve->parsed()) return cmd_serve(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " [" << e.field() << "]";
    err << '\n';
    return e.kind() == ErrorKind::io ? kIo : kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace affekt::cli
