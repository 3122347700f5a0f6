#include "affekt/tcl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <queue>
#include <set>
#include <sstream>

#include "affekt/error.hpp"
#include "affekt/text.hpp"

namespace affekt {
namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string format_degree(double degree) {
  std::ostringstream out;
  out.precision(17);
  out << degree;
  return out.str();
}

}  // namespace

PropertyLiteral::PropertyLiteral(std::string term, Polarity polarity)
    : term_(std::move(term)), polarity_(polarity) {
  if (term_.empty()) throw Error(ErrorKind::domain, "property term is empty");
  if (has_whitespace(term_))
    throw Error(ErrorKind::domain, "property term '" + term_ + "' contains whitespace");
  if (to_lower(term_) != term_)
    throw Error(ErrorKind::domain, "property term '" + term_ + "' is not lowercase");
  if (term_.front() == '!')
    throw Error(ErrorKind::domain, "property term '" + term_ + "' starts with '!'");
}

PropertyLiteral PropertyLiteral::parse(std::string_view text) {
  if (!text.empty() && text.front() == '!')
    return PropertyLiteral(std::string(text.substr(1)), Polarity::negative);
  return PropertyLiteral(std::string(text), Polarity::positive);
}

PropertyLiteral PropertyLiteral::negated() const {
  return PropertyLiteral(term_, positive() ? Polarity::negative : Polarity::positive);
}

std::string PropertyLiteral::to_string() const { return positive() ? term_ : "!" + term_; }

bool valid_degree(double degree) noexcept {
  return std::isfinite(degree) && degree > 0.5 && degree <= 1.0;
}

TypicalityInclusion::TypicalityInclusion(std::string subject, PropertyLiteral property,
                                         double degree)
    : subject_(std::move(subject)), property_(std::move(property)), degree_(degree) {
  if (subject_.empty()) throw Error(ErrorKind::domain, "typicality inclusion without subject");
  if (!valid_degree(degree_))
    throw Error(ErrorKind::domain, "degree " + format_degree(degree_) + " of T(" + subject_ +
                                       ") ⊑ " + property_.to_string() +
                                       " is outside (0.5, 1]");
}

// --- KnowledgeBase -----------------------------------------------------------

void KnowledgeBase::add_rigid(RigidInclusion inclusion) {
  if (inclusion.subject.empty()) throw Error(ErrorKind::contract, "rigid inclusion without subject");
  for (const auto& r : rigid_) {
    if (r.subject != inclusion.subject) continue;
    if (r.property == inclusion.property) return;
    if (r.property.conflicts_with(inclusion.property))
      throw Error(ErrorKind::contract, "rigid inclusions of " + inclusion.subject +
                                           " contain both polarities of '" +
                                           inclusion.property.term() + "'");
  }
  rigid_.push_back(std::move(inclusion));
}

void KnowledgeBase::add_typical(TypicalityInclusion inclusion) {
  for (const auto& t : typical_) {
    if (t.subject() != inclusion.subject()) continue;
    if (t.property() == inclusion.property())
      throw Error(ErrorKind::contract, "duplicate typicality inclusion T(" + inclusion.subject() +
                                           ") ⊑ " + inclusion.property().to_string());
    if (t.property().conflicts_with(inclusion.property()))
      throw Error(ErrorKind::contract, "typical properties of " + inclusion.subject() +
                                           " contain both polarities of '" +
                                           inclusion.property().term() + "'");
  }
  typical_.push_back(std::move(inclusion));
}

bool KnowledgeBase::has_concept(std::string_view subject) const {
  return std::any_of(rigid_.begin(), rigid_.end(),
                     [&](const auto& r) { return r.subject == subject; }) ||
         std::any_of(typical_.begin(), typical_.end(),
                     [&](const auto& t) { return t.subject() == subject; });
}

std::vector<std::string> KnowledgeBase::concepts() const {
  std::set<std::string> names;
  for (const auto& r : rigid_) names.insert(r.subject);
  for (const auto& t : typical_) names.insert(t.subject());
  return {names.begin(), names.end()};
}

std::vector<TypicalityInclusion> KnowledgeBase::typical_of(std::string_view subject) const {
  std::vector<TypicalityInclusion> out;
  for (const auto& t : typical_)
    if (t.subject() == subject) out.push_back(t);
  return out;
}

std::vector<PropertyLiteral> KnowledgeBase::rigid_of(std::string_view subject) const {
  std::vector<PropertyLiteral> out;
  for (const auto& r : rigid_)
    if (r.subject == subject) out.push_back(r.property);
  return out;
}

KnowledgeBase parse_kb(std::istream& in) {
  KnowledgeBase kb;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    std::istringstream fields{std::string(view)};
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;

    const auto where = "line " + std::to_string(lineno) + ": ";
    try {
      if (tokens[0] == "rigid" && tokens.size() == 3) {
        kb.add_rigid({tokens[1], PropertyLiteral::parse(tokens[2])});
      } else if (tokens[0] == "typ" && tokens.size() == 4) {
        std::size_t used = 0;
        double degree = 0;
        try {
          degree = std::stod(tokens[3], &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tokens[3].size())
          throw Error(ErrorKind::parse, "bad degree '" + tokens[3] + "'");
        kb.add_typical({tokens[1], PropertyLiteral::parse(tokens[2]), degree});
      } else {
        throw Error(ErrorKind::parse, "expected `rigid <subject> <[!]term>` or "
                                      "`typ <subject> <[!]term> <degree>`");
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, where + e.what());
    }
  }
  if (in.bad()) throw Error(ErrorKind::io, "failed reading knowledge base");
  return kb;
}

std::string format_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  for (const auto& r : kb.rigid())
    out << "rigid " << r.subject << ' ' << r.property.to_string() << '\n';
  for (const auto& t : kb.typical())
    out << "typ " << t.subject() << ' ' << t.property().to_string() << ' '
        << format_degree(t.degree()) << '\n';
  return out.str();
}

// --- Scenarios ---------------------------------------------------------------

double scenario_probability(std::uint32_t selection,
                            std::span<const TypicalityInclusion> inclusions) {
  double p = 1.0;
  for (std::size_t i = 0; i < inclusions.size(); ++i) {
    const double d = inclusions[i].degree();
    p *= ((selection >> i) & 1u) ? d : 1.0 - d;
  }
  return p;
}

double scenario_probability(const std::vector<bool>& selection,
                            std::span<const TypicalityInclusion> inclusions) {
  if (selection.size() != inclusions.size())
    throw Error(ErrorKind::contract, "selection has " + std::to_string(selection.size()) +
                                         " entries for " + std::to_string(inclusions.size()) +
                                         " inclusions");
  double p = 1.0;
  for (std::size_t i = 0; i < inclusions.size(); ++i) {
    const double d = inclusions[i].degree();
    p *= selection[i] ? d : 1.0 - d;
  }
  return p;
}

namespace {

std::vector<TypicalityInclusion> concat(std::span<const TypicalityInclusion> head,
                                        std::span<const TypicalityInclusion> modifier) {
  std::vector<TypicalityInclusion> all(head.begin(), head.end());
  all.insert(all.end(), modifier.begin(), modifier.end());
  return all;
}

void check_cap(std::size_t n, int cap) {
  if (cap < 0 || cap > 31)
    throw Error(ErrorKind::contract, "scenario cap must lie in 0..31, got " + std::to_string(cap));
  if (n > static_cast<std::size_t>(cap))
    throw Error(ErrorKind::domain, "combination too large: " + std::to_string(n) +
                                       " typicality inclusions exceed the cap of " +
                                       std::to_string(cap));
}

// Bitmask view of a HEAD/MODIFIER combination used to classify scenarios in O(n).
class CombinationMasks {
 public:
  CombinationMasks(std::span<const TypicalityInclusion> head,
                   std::span<const TypicalityInclusion> modifier,
                   std::span<const PropertyLiteral> rigid)
      : head_size_(static_cast<int>(head.size())) {
    std::vector<const PropertyLiteral*> lits;
    for (const auto& t : head) lits.push_back(&t.property());
    for (const auto& t : modifier) lits.push_back(&t.property());
    const int n = static_cast<int>(lits.size());

    for (std::size_t a = 0; a < rigid.size(); ++a)
      for (std::size_t b = a + 1; b < rigid.size(); ++b)
        if (rigid[a].conflicts_with(rigid[b])) rigid_self_conflict_ = true;

    conflicts_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      for (const auto& r : rigid)
        if (lits[i]->conflicts_with(r)) rigid_conflict_ |= 1u << i;
      for (int j = 0; j < n; ++j)
        if (i != j && lits[i]->conflicts_with(*lits[j])) conflicts_[i] |= 1u << j;
    }
    for (int i = 0; i < head_size_; ++i)
      if (!((rigid_conflict_ >> i) & 1u)) inheritable_head_ |= 1u << i;
    for (int j = head_size_; j < n; ++j)
      if (conflicts_[j] & inheritable_head_) preferring_modifier_ |= 1u << j;
  }

  ScenarioClass classify(std::uint32_t selection) const {
    if (rigid_self_conflict_ || (selection & rigid_conflict_)) return ScenarioClass::inconsistent;
    for (std::size_t i = 0; i < conflicts_.size(); ++i)
      if (((selection >> i) & 1u) && (selection & conflicts_[i])) return ScenarioClass::inconsistent;
    if ((selection & inheritable_head_) == inheritable_head_) return ScenarioClass::trivial;
    if (selection & preferring_modifier_) return ScenarioClass::modifier_preferring;
    return ScenarioClass::admissible;
  }

 private:
  int head_size_;
  bool rigid_self_conflict_ = false;
  std::uint32_t rigid_conflict_ = 0;
  std::uint32_t inheritable_head_ = 0;
  std::uint32_t preferring_modifier_ = 0;
  std::vector<std::uint32_t> conflicts_;
};

// Best-first enumeration of scenarios by decreasing probability. Every
// degree exceeds 0.5, so the all-selected scenario is the most probable and
// each deselection multiplies by (1-d)/d <= 1. Deselection candidates are
// ordered by increasing degree; subsets are generated with the classic
// "extend / shift last" successor scheme, which visits each subset once and
// never yields a child more probable than its parent.
class ScenarioQueue {
 public:
  explicit ScenarioQueue(std::span<const TypicalityInclusion> inclusions)
      : inclusions_(inclusions), order_(inclusions.size()) {
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return inclusions_[a].degree() < inclusions_[b].degree();
    });
    full_ = inclusions.empty() ? 0u : static_cast<std::uint32_t>((1ull << inclusions.size()) - 1);
    push(0, -1);
  }

  bool empty() const { return heap_.empty(); }
  double top_probability() const { return heap_.top().probability; }

  Scenario pop() {
    Node node = heap_.top();
    heap_.pop();
    const int next = node.last + 1;
    if (next < static_cast<int>(order_.size())) {
      push(node.flipped | (1u << order_[next]), next);
      if (node.last >= 0) push((node.flipped & ~(1u << order_[node.last])) | (1u << order_[next]), next);
    }
    return {full_ & ~node.flipped, static_cast<int>(order_.size()), node.probability};
  }

 private:
  struct Node {
    double probability;
    std::uint32_t flipped;
    int last;
    bool operator<(const Node& other) const {
      if (probability != other.probability) return probability < other.probability;
      return flipped > other.flipped;
    }
  };

  void push(std::uint32_t flipped, int last) {
    heap_.push({scenario_probability(full_ & ~flipped, inclusions_), flipped, last});
  }

  std::span<const TypicalityInclusion> inclusions_;
  std::vector<int> order_;
  std::uint32_t full_ = 0;
  std::priority_queue<Node> heap_;
};

}  // namespace

std::vector<Scenario> enumerate_scenarios(std::span<const TypicalityInclusion> head,
                                          std::span<const TypicalityInclusion> modifier,
                                          int cap) {
  check_cap(head.size() + modifier.size(), cap);
  const auto all = concat(head, modifier);
  const int n = static_cast<int>(all.size());
  std::vector<Scenario> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto sel = static_cast<std::uint32_t>(mask);
    out.push_back({sel, n, scenario_probability(sel, all)});
  }
  return out;
}

const char* to_string(ScenarioClass c) noexcept {
  switch (c) {
    case ScenarioClass::inconsistent: return "inconsistent";
    case ScenarioClass::trivial: return "trivial";
    case ScenarioClass::modifier_preferring: return "modifier_preferring";
    case ScenarioClass::admissible: return "admissible";
  }
  return "?";
}

ScenarioClass classify_scenario(const Scenario& scenario,
                                std::span<const TypicalityInclusion> head,
                                std::span<const TypicalityInclusion> modifier,
                                std::span<const PropertyLiteral> rigid) {
  const auto n = head.size() + modifier.size();
  if (static_cast<std::size_t>(scenario.size) != n || n > 31)
    throw Error(ErrorKind::contract, "scenario size " + std::to_string(scenario.size) +
                                         " does not match " + std::to_string(n) + " inclusions");
  return CombinationMasks(head, modifier, rigid).classify(scenario.selection);
}

// --- Prototypes --------------------------------------------------------------

void sort_typical(std::vector<TypicalProperty>& typical) {
  std::sort(typical.begin(), typical.end(), [](const auto& a, const auto& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.literal < b.literal;
  });
}

nlohmann::json to_json(const Prototype& prototype) {
  nlohmann::json rigid = nlohmann::json::array();
  for (const auto& r : prototype.rigid) rigid.push_back(r.to_string());
  nlohmann::json typical = nlohmann::json::array();
  for (const auto& t : prototype.typical) {
    typical.push_back({{"term", t.literal.term()},
                       {"polarity", t.literal.positive() ? "positive" : "negative"},
                       {"degree", t.degree}});
  }
  nlohmann::json doc = {{"schema", "prototype/1"}, {"concept", prototype.concept_name}};
  doc["head"] = prototype.combined() ? nlohmann::json(prototype.head) : nlohmann::json();
  doc["modifier"] = prototype.combined() ? nlohmann::json(prototype.modifier) : nlohmann::json();
  doc["rigid"] = std::move(rigid);
  doc["typical"] = std::move(typical);
  return doc;
}

Prototype prototype_from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("schema", "") != "prototype/1")
      throw Error(ErrorKind::schema, "expected schema prototype/1", "schema");
    Prototype p;
    p.concept_name = doc.at("concept").get<std::string>();
    if (!doc.value("head", nlohmann::json()).is_null()) p.head = doc.at("head").get<std::string>();
    if (!doc.value("modifier", nlohmann::json()).is_null())
      p.modifier = doc.at("modifier").get<std::string>();
    for (const auto& r : doc.at("rigid")) p.rigid.push_back(PropertyLiteral::parse(r.get<std::string>()));
    for (const auto& t : doc.at("typical")) {
      const auto pol = t.at("polarity").get<std::string>();
      if (pol != "positive" && pol != "negative")
        throw Error(ErrorKind::schema, "bad polarity '" + pol + "'", "polarity");
      const double degree = t.at("degree").get<double>();
      if (!valid_degree(degree))
        throw Error(ErrorKind::domain, "degree outside (0.5, 1] in prototype " + p.concept_name);
      p.typical.push_back({PropertyLiteral(t.at("term").get<std::string>(),
                                           pol == "positive" ? Polarity::positive
                                                             : Polarity::negative),
                           degree});
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, std::string("malformed prototype/1 document: ") + e.what());
  }
}

CombinedPrototype combine_concepts(std::string_view head_name,
                                   std::span<const TypicalityInclusion> head,
                                   std::span<const PropertyLiteral> head_rigid,
                                   std::string_view modifier_name,
                                   std::span<const TypicalityInclusion> modifier,
                                   std::span<const PropertyLiteral> modifier_rigid,
                                   const CombineOptions& options) {
  if (head.empty())
    throw Error(ErrorKind::contract,
                "HEAD concept " + std::string(head_name) + " has no typicality inclusions",
                std::string(head_name));
  if (modifier.empty())
    throw Error(ErrorKind::contract,
                "MODIFIER concept " + std::string(modifier_name) + " has no typicality inclusions",
                std::string(modifier_name));
  check_cap(head.size() + modifier.size(), options.cap);

  std::vector<PropertyLiteral> rigid(head_rigid.begin(), head_rigid.end());
  rigid.insert(rigid.end(), modifier_rigid.begin(), modifier_rigid.end());
  std::sort(rigid.begin(), rigid.end());
  rigid.erase(std::unique(rigid.begin(), rigid.end()), rigid.end());

  CombinedPrototype result;
  result.concept_name = std::string(head_name) + "+" + std::string(modifier_name);
  result.head = head_name;
  result.modifier = modifier_name;
  result.rigid = rigid;

  const auto all = concat(head, modifier);
  const CombinationMasks masks(head, modifier, rigid);
  ScenarioQueue queue(all);

  while (!queue.empty()) {
    const double anchor = queue.top_probability();
    if (anchor <= 0.0) break;
    std::uint32_t selected_union = 0;
    bool any_admissible = false;
    while (!queue.empty() && queue.top_probability() >= anchor - options.tolerance) {
      const Scenario s = queue.pop();
      if (masks.classify(s.selection) == ScenarioClass::admissible) {
        any_admissible = true;
        selected_union |= s.selection;
      }
    }
    if (!any_admissible) continue;

    std::map<PropertyLiteral, double> chosen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!((selected_union >> i) & 1u)) continue;
      const auto& lit = all[i].property();
      if (chosen.count(lit)) continue;
      // A literal typical of the HEAD keeps the HEAD's degree.
      double degree = all[i].degree();
      for (const auto& h : head)
        if (h.property() == lit) degree = h.degree();
      chosen.emplace(lit, degree);
    }
    for (auto& [lit, degree] : chosen) result.typical.push_back({lit, degree});
    sort_typical(result.typical);
    return result;
  }
  return result;
}

CombinedPrototype combine(const KnowledgeBase& kb, std::string_view head,
                          std::string_view modifier, const CombineOptions& options) {
  for (auto name : {head, modifier})
    if (!kb.has_concept(name))
      throw Error(ErrorKind::not_found, "unknown concept '" + std::string(name) + "'",
                  std::string(name));
  const auto head_typ = kb.typical_of(head);
  const auto mod_typ = kb.typical_of(modifier);
  const auto head_rigid = kb.rigid_of(head);
  const auto mod_rigid = kb.rigid_of(modifier);
  auto result = combine_concepts(head, head_typ, head_rigid, modifier, mod_typ, mod_rigid, options);
  return result;
}

namespace {

std::vector<TypicalityInclusion> inclusions_of(const Prototype& p) {
  std::vector<TypicalityInclusion> out;
  out.reserve(p.typical.size());
  for (const auto& t : p.typical) out.emplace_back(p.concept_name, t.literal, t.degree);
  return out;
}

}  // namespace

CombinedPrototype combine(const Prototype& head, const Prototype& modifier,
                          const CombineOptions& options) {
  const auto head_typ = inclusions_of(head);
  const auto mod_typ = inclusions_of(modifier);
  return combine_concepts(head.concept_name, head_typ, head.rigid, modifier.concept_name, mod_typ,
                          modifier.rigid, options);
}

void HeadRule::override_head(EmotionId dyad, EmotionId head) { overrides_[dyad] = head; }

EmotionId HeadRule::head_for(const WheelCatalog& wheel, EmotionId dyad) const {
  const auto& d = wheel.dyad(dyad);
  if (auto it = overrides_.find(dyad); it != overrides_.end()) {
    if (it->second != d.components[0] && it->second != d.components[1])
      throw Error(ErrorKind::contract, wheel.name(it->second) + " is not a component of " + d.name);
    return it->second;
  }
  return wheel.sector(d.components[0]) < wheel.sector(d.components[1]) ? d.components[0]
                                                                      : d.components[1];
}

std::map<EmotionId, CombinedPrototype> generate_compound_prototypes(
    const WheelCatalog& wheel, const std::map<EmotionId, Prototype>& basics,
    const HeadRule& head_rule, const CombineOptions& options) {
  std::vector<std::string> missing;
  for (const auto& b : wheel.basics()) {
    const EmotionId id = wheel.at(b.name);
    auto it = basics.find(id);
    if (it == basics.end() || it->second.typical.empty()) missing.push_back(b.name);
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::unprocessable, "missing basic prototype for: " + names, missing.front());
  }

  std::vector<std::pair<EmotionId, std::future<CombinedPrototype>>> jobs;
  for (EmotionId dyad : wheel.dyad_ids()) {
    const auto& d = wheel.dyad(dyad);
    const EmotionId head = head_rule.head_for(wheel, dyad);
    const EmotionId modifier = head == d.components[0] ? d.components[1] : d.components[0];
    jobs.emplace_back(dyad, std::async(std::launch::async, [&, head, modifier, dyad] {
                        auto p = combine(basics.at(head), basics.at(modifier), options);
                        p.concept_name = wheel.name(dyad);
                        return p;
                      }));
  }
  std::map<EmotionId, CombinedPrototype> out;
  for (auto& [id, job] : jobs) out.emplace(id, job.get());
  return out;
}

}  // namespace affekt
