#include "affekt/items.hpp"

namespace affekt {

std::optional<Language> parse_language(std::string_view name) {
  if (name == "en" || name == "english") return Language::english;
  if (name == "it" || name == "italian") return Language::italian;
  return std::nullopt;
}

const std::set<std::string>& stopwords(Language language) {
  static const std::set<std::string> english = {
      "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and",
      "any", "are", "as", "at", "be", "because", "been", "before", "being", "below", "between",
      "both", "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during",
      "each", "even", "few", "for", "from", "further", "had", "has", "have", "having", "he",
      "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in", "into",
      "is", "it", "its", "itself", "just", "me", "more", "most", "my", "myself", "no", "nor",
      "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours",
      "ourselves", "out", "over", "own", "same", "she", "should", "so", "some", "such", "than",
      "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
      "this", "those", "through", "to", "too", "under", "until", "up", "upon", "very", "was",
      "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why", "will",
      "with", "would", "you", "your", "yours", "yourself", "yourselves"};
  static const std::set<std::string> italian = {
      "a", "ad", "agli", "ai", "al", "alla", "alle", "allo", "anche", "che", "chi", "ci",
      "come", "con", "cui", "da", "dagli", "dai", "dal", "dalla", "dalle", "dallo", "degli",
      "dei", "del", "della", "delle", "dello", "di", "dove", "e", "ed", "era", "erano", "essere",
      "gli", "ha", "hanno", "ho", "i", "il", "in", "io", "la", "le", "lei", "lo", "loro", "lui",
      "ma", "mi", "mio", "ne", "negli", "nei", "nel", "nella", "nelle", "nello", "noi", "non",
      "o", "per", "perché", "più", "quale", "quando", "quella", "quelle", "quello", "questa",
      "queste", "questo", "se", "si", "sia", "sono", "su", "sua", "sue", "sui", "sul", "sulla",
      "suo", "suoi", "ti", "tra", "tu", "tutti", "tutto", "un", "una", "uno", "vi", "voi"};
  return language == Language::italian ? italian : english;
}

}  // namespace affekt
