#include "affekt/items.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "affekt/error.hpp"
#include "affekt/text.hpp"
#include "utf8.hpp"

namespace affekt {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string required_string(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null())
    throw Error(ErrorKind::schema, std::string("missing field '") + field + "'", field);
  if (!it->is_string())
    throw Error(ErrorKind::schema, std::string("field '") + field + "' must be a string", field);
  return it->get<std::string>();
}

std::string optional_string(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return {};
  if (!it->is_string())
    throw Error(ErrorKind::schema, std::string("field '") + field + "' must be a string", field);
  return it->get<std::string>();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

ItemRecord item_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::schema, "item must be a JSON object");
  ItemRecord item;
  item.id = required_string(doc, "id");
  if (item.id.empty()) throw Error(ErrorKind::schema, "field 'id' is empty", "id");
  item.description = required_string(doc, "description");
  item.title = optional_string(doc, "title");
  if (doc.contains("author") && !doc.at("author").is_null())
    item.author = optional_string(doc, "author");
  if (auto it = doc.find("annotations"); it != doc.end() && !it->is_null()) {
    if (!it->is_array())
      throw Error(ErrorKind::schema, "field 'annotations' must be an array", "annotations");
    for (const auto& a : *it) {
      if (!a.is_string())
        throw Error(ErrorKind::schema, "annotations must be strings", "annotations");
      item.annotations.push_back(a.get<std::string>());
    }
  }
  return item;
}

ItemRecord parse_item(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed item JSON: ") + e.what());
  }
  return item_from_json(doc);
}

json to_json(const ItemRecord& item) {
  json doc = {{"id", item.id}, {"title", item.title}};
  doc["author"] = item.author ? json(*item.author) : json();
  doc["description"] = item.description;
  doc["annotations"] = item.annotations;
  return doc;
}

std::vector<SourceDocument> read_documents(const std::string& path) {
  std::vector<SourceDocument> docs;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file);
      if (!in) throw Error(ErrorKind::io, "cannot open " + file.string(), file.string());
      std::stringstream buf;
      buf << in.rdbuf();
      docs.push_back({file.filename().string(), buf.str()});
    }
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'", path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      docs.push_back({path + ":" + std::to_string(lineno), line});
    }
  }
  return docs;
}

std::vector<ItemRecord> load_items(const std::string& path) {
  std::vector<ItemRecord> items;
  for (const auto& doc : read_documents(path)) {
    try {
      items.push_back(parse_item(doc.text));
    } catch (const Error& e) {
      throw Error(e.kind(), doc.origin + ": " + e.what(), e.field());
    }
  }
  std::set<std::string> seen;
  for (const auto& item : items)
    if (!seen.insert(item.id).second)
      throw Error(ErrorKind::conflict, "duplicate item id '" + item.id + "'", item.id);
  return items;
}

std::string rule_lemmatize(std::string_view token) {
  std::string t(token);
  if (utf8_length(t) <= 3) return t;
  auto strip = [&](std::size_t n, std::string_view add = {}) {
    return t.substr(0, t.size() - n) + std::string(add);
  };
  if (ends_with(t, "sses")) return strip(2);
  if (ends_with(t, "ies")) return strip(3, "y");
  if (ends_with(t, "ied")) return strip(3, "y");
  if (ends_with(t, "xes") || ends_with(t, "ches") || ends_with(t, "shes") || ends_with(t, "zzes"))
    return strip(2);
  if (ends_with(t, "s") && !ends_with(t, "ss") && !ends_with(t, "us") && !ends_with(t, "is"))
    return strip(1);
  if (ends_with(t, "ing") && utf8_length(t) >= 7) {
    std::string stem = strip(3);
    const std::size_t n = stem.size();
    constexpr std::string_view kDoubled = "bdgmnprt";
    if (n >= 2 && stem[n - 1] == stem[n - 2] && kDoubled.find(stem[n - 1]) != std::string_view::npos)
      stem.pop_back();
    return stem;
  }
  return t;
}

std::vector<std::string> normalize_and_lemmatize(std::string_view text,
                                                 const std::set<std::string>& stopwords,
                                                 const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  std::string current;
  std::size_t current_len = 0;
  auto flush = [&] {
    if (current_len >= 2 && !stopwords.count(current)) {
      std::string lemma = lemmatizer(current);
      if (utf8_length(lemma) >= 2 && !stopwords.count(lemma)) out.push_back(std::move(lemma));
    }
    current.clear();
    current_len = 0;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = detail::next_code_point(text, pos);
    if (detail::is_word_char(cp)) {
      detail::append_utf8(current, detail::fold_case(cp));
      ++current_len;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::map<std::string, double> term_frequencies(const std::vector<std::string>& lemmas) {
  if (lemmas.empty()) throw Error(ErrorKind::unprocessable, "empty profile");
  std::map<std::string, std::size_t> counts;
  for (const auto& l : lemmas) ++counts[l];
  std::map<std::string, double> out;
  const double total = static_cast<double>(lemmas.size());
  for (const auto& [lemma, count] : counts) out.emplace(lemma, static_cast<double>(count) / total);
  return out;
}

std::set<std::string> ItemProfile::lemma_set() const {
  std::set<std::string> out;
  for (const auto& [lemma, _] : frequencies) out.insert(lemma);
  return out;
}

std::vector<std::string> TextPipeline::lemmas(const ItemRecord& item) const {
  const auto& stop = stopwords(language);
  auto out = normalize_and_lemmatize(item.description, stop, lemmatizer);
  for (const auto& a : item.annotations) {
    auto more = normalize_and_lemmatize(a, stop, lemmatizer);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

ItemProfile TextPipeline::profile(const ItemRecord& item) const {
  const auto seq = lemmas(item);
  if (seq.empty())
    throw Error(ErrorKind::unprocessable, "no lexical content in item '" + item.id + "'", item.id);
  return {item.id, term_frequencies(seq)};
}

json to_json(const ItemProfile& profile) {
  json freq = json::object();
  for (const auto& [lemma, f] : profile.frequencies) freq[lemma] = f;
  return {{"schema", "profile/1"}, {"id", profile.id}, {"frequencies", std::move(freq)}};
}

ItemProfile profile_from_json(const json& doc) {
  try {
    if (doc.value("schema", "") != "profile/1")
      throw Error(ErrorKind::schema, "expected schema profile/1", "schema");
    ItemProfile p;
    p.id = doc.at("id").get<std::string>();
    for (const auto& [lemma, f] : doc.at("frequencies").items()) p.frequencies[lemma] = f.get<double>();
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::schema, std::string("malformed profile/1 document: ") + e.what());
  }
}

}  // namespace affekt
