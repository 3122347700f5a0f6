#include "affekt/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "affekt/error.hpp"
#include "affekt/text.hpp"

namespace affekt {
namespace {

std::optional<double> parse_intensity(std::string_view text) {
  double value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

bool valid_term(std::string_view term) {
  return !term.empty() && term.front() != '!' &&
         std::none_of(term.begin(), term.end(),
                      [](unsigned char c) { return c == ' ' || c == '\t' || c < 0x20; });
}

}  // namespace

LexiconParseResult parse_lexicon(std::istream& in, const WheelCatalog& wheel) {
  LexiconParseResult result;
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto view = trim(line);
    if (view.empty()) continue;
    ++lines;
    const auto fields = split(view, '\t');
    if (fields.size() != 3) {
      ++result.skipped;
      continue;
    }
    const std::string term = to_lower(trim(fields[0]));
    const auto emotion = wheel.find(trim(fields[1]));
    const auto intensity = parse_intensity(trim(fields[2]));
    if (!valid_term(term) || !emotion || !emotion->is_basic() || !intensity ||
        !(*intensity > 0.0 && *intensity <= 1.0)) {
      ++result.skipped;
      continue;
    }
    result.entries.push_back({term, *emotion, *intensity});
  }
  if (in.bad()) throw Error(ErrorKind::io, "failed reading lexicon stream");
  if (lines > 0 && result.skipped * 2 > lines)
    throw Error(ErrorKind::format, std::to_string(result.skipped) + " of " +
                                       std::to_string(lines) +
                                       " lexicon lines are malformed; not an emotion lexicon?");
  return result;
}

LexiconParseResult load_lexicon(const std::string& path, const WheelCatalog& wheel) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open lexicon '" + path + "'", path);
  return parse_lexicon(in, wheel);
}

double intensity_to_degree(double intensity) {
  if (!std::isfinite(intensity) || intensity <= 0.0 || intensity > 1.0)
    throw Error(ErrorKind::domain,
                "intensity " + std::to_string(intensity) + " is outside (0, 1]");
  return 0.5 + intensity / 2.0;
}

Prototype BasicPrototype::to_prototype(const WheelCatalog& wheel) const {
  Prototype p;
  p.concept_name = wheel.name(emotion);
  p.rigid = rigid;
  for (const auto& t : typical) p.typical.push_back({PropertyLiteral(t.term), t.degree});
  return p;
}

BasicPrototype BasicPrototype::from_prototype(const Prototype& p, const WheelCatalog& wheel) {
  BasicPrototype b;
  b.emotion = wheel.at(p.concept_name);
  if (!b.emotion.is_basic())
    throw Error(ErrorKind::schema, p.concept_name + " is not a basic emotion", "concept");
  b.rigid = p.rigid;
  for (const auto& t : p.typical) {
    if (!t.literal.positive())
      throw Error(ErrorKind::schema, "basic prototypes carry positive terms only", "polarity");
    b.typical.push_back({t.literal.term(), t.degree});
  }
  return b;
}

std::map<EmotionId, BasicPrototype> build_basic_prototypes(const std::vector<LexiconEntry>& entries,
                                                           int k, const WheelCatalog& wheel) {
  if (k < 1) throw Error(ErrorKind::contract, "top-k must be at least 1", "top_k");

  std::map<EmotionId, std::map<std::string, double>> by_emotion;
  for (const auto& e : entries) {
    auto& slot = by_emotion[e.emotion][e.term];
    slot = std::max(slot, e.intensity);
  }

  std::string missing;
  for (const auto& b : wheel.basics())
    if (!by_emotion.count(wheel.at(b.name))) missing += (missing.empty() ? "" : ", ") + b.name;
  if (!missing.empty())
    throw Error(ErrorKind::unprocessable, "lexicon has no entries for: " + missing, missing);

  std::map<EmotionId, BasicPrototype> out;
  for (const auto& [emotion, terms] : by_emotion) {
    std::vector<std::pair<std::string, double>> ranked(terms.begin(), terms.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(k);
    BasicPrototype proto{emotion, {}, {}};
    for (const auto& [term, intensity] : ranked)
      proto.typical.push_back({term, intensity_to_degree(intensity)});
    out.emplace(emotion, std::move(proto));
  }
  return out;
}

std::map<EmotionId, Prototype> to_prototypes(const std::map<EmotionId, BasicPrototype>& basics,
                                             const WheelCatalog& wheel) {
  std::map<EmotionId, Prototype> out;
  for (const auto& [id, b] : basics) out.emplace(id, b.to_prototype(wheel));
  return out;
}

}  // namespace affekt
