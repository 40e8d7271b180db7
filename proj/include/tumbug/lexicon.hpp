#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tumbug/detail/text.hpp"
#include "tumbug/error.hpp"
#include "tumbug/payload.hpp"

namespace tumbug {

enum class Truth { True, False, DC };

struct ConceptCell {
  Truth value = Truth::DC;
  bool implied = false;  // parenthesized: shown, but not counted when matching
  bool operator==(const ConceptCell&) const = default;
};

inline std::string format_cell(const ConceptCell& c) {
  std::string v = c.value == Truth::True ? "T" : c.value == Truth::False ? "F" : "DC";
  return c.implied ? "(" + v + ")" : v;
}

inline ConceptCell parse_cell(std::string_view s) {
  s = detail::trim(s);
  bool implied = s.size() >= 2 && s.front() == '(' && s.back() == ')';
  if (implied) s = s.substr(1, s.size() - 2);
  if (s == "T") return {Truth::True, implied};
  if (s == "F") return {Truth::False, implied};
  if (s == "DC") return {Truth::DC, implied};
  throw Error(ErrorCode::InvalidTable, "cell must be T, F or DC: " + std::string(s));
}

// Named TRUE/FALSE/DON'T-CARE entries, one per attribute.
struct ConceptVector {
  std::vector<std::string> names;
  std::vector<ConceptCell> cells;

  bool operator==(const ConceptVector&) const = default;

  std::size_t size() const { return names.size(); }

  const ConceptCell* find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return &cells[i];
    return nullptr;
  }
};

inline void check_vector(const ConceptVector& v) {
  if (v.names.size() != v.cells.size()) throw Error(ErrorCode::SchemaMismatch, "one entry per attribute required");
  std::set<std::string> seen;
  for (const auto& n : v.names) {
    if (n.empty()) throw Error(ErrorCode::SchemaMismatch, "empty attribute name");
    if (!seen.insert(n).second) throw Error(ErrorCode::SchemaMismatch, "attribute listed twice: " + n);
  }
}

inline ConceptVector make_vector(std::vector<std::string> names, std::vector<ConceptCell> cells) {
  ConceptVector v{std::move(names), std::move(cells)};
  check_vector(v);
  return v;
}

// One cell: DC matches anything, otherwise values must agree.
inline bool cells_match(const ConceptCell& a, const ConceptCell& b) {
  if (a.value == Truth::DC || b.value == Truth::DC) return true;
  return a.value == b.value;
}

// Number of compatible attributes; implied cells never score. Schemas must name the same attributes.
inline int match_count(const ConceptVector& context, const ConceptVector& candidate) {
  check_vector(context);
  check_vector(candidate);
  if (context.size() != candidate.size()) throw Error(ErrorCode::SchemaMismatch, "attribute counts differ");
  int count = 0;
  for (std::size_t i = 0; i < context.size(); ++i) {
    auto other = candidate.find(context.names[i]);
    if (!other) throw Error(ErrorCode::SchemaMismatch, "candidate lacks attribute " + context.names[i]);
    if (context.cells[i].implied || other->implied) continue;
    if (cells_match(context.cells[i], *other)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Tables: header of attribute names, then `word|meaning|cell,cell,...`.
// `@lang <tag>` optionally names the language. `#` starts a comment line.

struct TableRow {
  std::string word;
  std::string meaning;
  ConceptVector vector;
  bool operator==(const TableRow&) const = default;
};

struct ConceptTable {
  std::string language;
  std::vector<std::string> names;
  std::vector<TableRow> rows;
  bool operator==(const ConceptTable&) const = default;

  const TableRow* find(std::string_view word, std::string_view meaning) const {
    for (const auto& r : rows)
      if (r.word == word && r.meaning == meaning) return &r;
    return nullptr;
  }
};

using Lexicon = ConceptTable;

inline ConceptTable parse_concept_table(std::string_view text) {
  ConceptTable t;
  bool have_header = false;
  int line_no = 0;
  std::set<std::pair<std::string, std::string>> keys;
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    auto line = detail::trim(raw);
    auto where = " (line " + std::to_string(line_no) + ")";
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("@lang", 0) == 0) {
      t.language = std::string(detail::trim(line.substr(5)));
      continue;
    }
    if (!have_header) {
      for (auto n : detail::split(line, ',')) t.names.emplace_back(detail::trim(n));
      try {
        check_vector(ConceptVector{t.names, std::vector<ConceptCell>(t.names.size())});
      } catch (const Error& e) {
        throw Error(ErrorCode::InvalidTable, std::string(e.what()) + where);
      }
      have_header = true;
      continue;
    }
    auto parts = detail::split(line, '|');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidTable, "row is word|meaning|cells" + where);
    TableRow row{std::string(detail::trim(parts[0])), std::string(detail::trim(parts[1])), {t.names, {}}};
    if (row.word.empty()) throw Error(ErrorCode::InvalidTable, "empty word" + where);
    for (auto c : detail::split(parts[2], ',')) row.vector.cells.push_back(parse_cell(c));
    if (row.vector.cells.size() != t.names.size())
      throw Error(ErrorCode::InvalidTable, "expected " + std::to_string(t.names.size()) + " cells" + where);
    if (!keys.insert({row.word, row.meaning}).second) throw Error(ErrorCode::InvalidTable, "duplicate row" + where);
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::InvalidTable, "missing header line");
  return t;
}

inline std::string format_concept_table(const ConceptTable& t) {
  std::string out;
  if (!t.language.empty()) out += "@lang " + t.language + "\n";
  out += detail::join(t.names, ",") + "\n";
  for (const auto& r : t.rows) {
    std::vector<std::string> cells;
    for (const auto& c : r.vector.cells) cells.push_back(format_cell(c));
    out += r.word + "|" + r.meaning + "|" + detail::join(cells, ",") + "\n";
  }
  return out;
}

struct RankedWord {
  std::string word;
  std::string meaning;
  int count = 0;
  int rank = 1;  // competition ranking: ties share a rank
  bool tied = false;
  bool operator==(const RankedWord&) const = default;
};

// Candidates ordered by match count, best first; ties broken lexicographically and flagged.
inline std::vector<RankedWord> select_word(const ConceptVector& context, const Lexicon& lex) {
  if (lex.rows.empty()) throw Error(ErrorCode::EmptyLexicon, "lexicon has no entries");
  std::vector<RankedWord> out;
  for (const auto& r : lex.rows) out.push_back(RankedWord{r.word, r.meaning, match_count(context, r.vector)});
  std::sort(out.begin(), out.end(), [](const RankedWord& a, const RankedWord& b) {
    if (a.count != b.count) return a.count > b.count;
    return std::tie(a.word, a.meaning) < std::tie(b.word, b.meaning);
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = i > 0 && out[i].count == out[i - 1].count ? out[i - 1].rank : static_cast<int>(i) + 1;
    out[i].tied = (i > 0 && out[i].count == out[i - 1].count) || (i + 1 < out.size() && out[i].count == out[i + 1].count);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modal verbs

inline constexpr std::array<std::string_view, 17> kModalConcepts = {
    "Ability",    "Advice",     "Formal Directive", "Formality",  "Habit",      "Ideal",
    "Intention",  "Likelihood", "Obligation",       "Offer",      "Permission", "Possibility",
    "Prediction", "Request",    "Suggestion",       "Tense",      "Willpower",
};

// Cell ids used by the modal verb icon, one per concept.
inline constexpr std::array<std::string_view, 17> kModalCellIds = {
    "Abi", "Adv", "FDi", "For", "Hab", "Ide", "Int", "Lik", "Obl",
    "Off", "Per", "Pos", "Pre", "Req", "Sug", "Ten", "Wil",
};

inline constexpr std::array<std::string_view, 16> kModalVerbs = {
    "be able to", "can",   "could", "had best", "had better", "have got to", "have to", "may",
    "might",      "must",  "needn't", "ought to", "shall",    "should",      "will",    "would",
};

struct ModalConcept {
  std::string name;
  bool implied = false;
  bool operator==(const ModalConcept&) const = default;
};

class ModalTable {
 public:
  explicit ModalTable(ConceptTable t) : table_(std::move(t)) {
    std::set<std::string> seen;
    for (const auto& n : table_.names) {
      if (std::find(kModalConcepts.begin(), kModalConcepts.end(), n) == kModalConcepts.end())
        throw Error(ErrorCode::InvalidTable, "unknown modal concept column: " + n);
      seen.insert(n);
    }
    if (seen.size() != kModalConcepts.size()) throw Error(ErrorCode::InvalidTable, "modal table needs all 17 concepts");
  }

  const ConceptTable& table() const { return table_; }

  const TableRow& row(std::string_view verb, std::string_view meaning) const {
    auto r = table_.find(verb, meaning);
    if (!r) throw Error(ErrorCode::UnknownModalRow, std::string(verb) + " (" + std::string(meaning) + ")");
    return *r;
  }

  // Active concepts of a verb-with-meaning, in concept order; implied cells flagged.
  std::vector<ModalConcept> concepts(std::string_view verb, std::string_view meaning) const {
    const auto& r = row(verb, meaning);
    std::vector<ModalConcept> out;
    for (auto name : kModalConcepts) {
      auto cell = r.vector.find(name);
      if (cell->value == Truth::True) out.push_back(ModalConcept{std::string(name), cell->implied});
    }
    return out;
  }

 private:
  ConceptTable table_;
};

// Fixed, deliberately irregular cell layout shared by every modal verb icon.
inline SwirlyArrayPayload modal_icon_skeleton() {
  SwirlyArrayPayload a;
  for (std::size_t i = 0; i < kModalCellIds.size(); ++i) {
    double angle = static_cast<double>(i) * 2.399963229728653;  // golden angle
    double radius = 12.0 * std::sqrt(static_cast<double>(i) + 0.5);
    double x = std::round(radius * std::cos(angle) * 100) / 100;
    double y = std::round(radius * std::sin(angle) * 100) / 100;
    a.cells.push_back(ArrayCell{std::string(kModalCellIds[i]), x, y});
  }
  return a;
}

inline std::string_view modal_cell_id(std::string_view concept_name) {
  for (std::size_t i = 0; i < kModalConcepts.size(); ++i)
    if (kModalConcepts[i] == concept_name) return kModalCellIds[i];
  throw Error(ErrorCode::UnknownKind, "unknown modal concept: " + std::string(concept_name));
}

inline SwirlyArrayPayload modal_icon(const ModalTable& t, std::string_view verb, std::string_view meaning) {
  auto a = modal_icon_skeleton();
  for (const auto& c : t.concepts(verb, meaning)) a.active.emplace_back(modal_cell_id(c.name));
  return a;
}

// Shipped copy of data/modal_verbs.tbl.
inline constexpr std::string_view kDefaultModalTable = R"TBL(# Modal verbs of English versus the reduced modal concepts.
# T = active, F = inactive, (T) = implied. Provisional cell contents.
Ability,Advice,Formal Directive,Formality,Habit,Ideal,Intention,Likelihood,Obligation,Offer,Permission,Possibility,Prediction,Request,Suggestion,Tense,Willpower
be able to|ability|T,F,F,F,F,F,F,F,F,F,F,F,F,(T),F,F,F
be able to|request|F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F
can|ability|T,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F
can|likelihood|F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F,F
can|offer|F,F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F
can|permission|F,F,F,F,F,F,F,F,F,F,T,F,F,T,F,F,F
can|request|F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F
could|ability|T,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F
could|habit past|F,F,F,F,T,F,F,F,F,F,F,F,F,F,F,F,F
could|likelihood|F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F,F
could|offer|F,F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F
could|permission|F,F,F,F,F,F,F,F,F,F,T,F,F,T,F,F,F
could|request|F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F
had best|advice informal|F,T,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F
had better|advice formal|F,T,F,T,F,F,F,F,F,F,F,F,F,F,F,F,F
have got to|necessity|F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F
have got to|obligation|F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F
have to|obligation|F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F
may|likelihood|F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F,F
may|permission|F,F,F,F,F,F,F,F,F,F,T,F,F,F,F,F,F
may|request|F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F
might|likelihood|F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F,F
might|request|F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F
might|suggestion|F,F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F
must|likelihood|F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F,F
must|obligation|F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F
needn't|not necessary|F,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F
ought to|advice|F,T,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F
shall|formal directive|F,F,T,F,F,F,F,F,F,F,F,F,F,F,F,F,F
shall|future|F,F,F,F,F,F,F,F,F,F,F,(T),F,F,F,T,F
shall|offer|F,F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F
shall|willpower|F,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F,T
should|advice|F,T,F,F,F,F,F,F,F,F,F,F,F,F,F,F,F
should|future|F,F,F,F,F,F,F,F,F,F,F,(T),F,F,F,T,F
should|ideal|F,F,F,F,F,T,F,F,F,F,F,F,F,F,F,F,F
should|offer|F,F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F
should|possibility|F,F,F,F,F,F,F,F,F,F,F,T,F,F,F,F,F
will|future|F,F,F,F,F,F,F,F,F,F,F,(T),F,F,F,T,F
will|habit present|F,F,F,F,T,F,F,F,F,F,F,F,F,F,F,F,F
will|intention|F,F,F,F,F,F,T,F,F,F,F,F,F,F,F,F,F
will|obligation|F,F,F,F,F,F,F,F,T,F,F,F,F,F,F,F,F
will|prediction|F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F,F
will|request|F,F,F,F,F,F,F,F,F,F,F,F,F,T,F,F,F
would|habit past|F,F,F,F,T,F,F,F,F,F,F,F,F,F,F,F,F
would|habit present|F,F,F,F,T,F,F,F,F,F,F,F,F,F,F,F,F
)TBL";

inline const ModalTable& default_modal_table() {
  static const ModalTable table{parse_concept_table(kDefaultModalTable)};
  return table;
}

inline std::vector<ModalConcept> modal_concepts(std::string_view verb, std::string_view meaning) {
  return default_modal_table().concepts(verb, meaning);
}

inline SwirlyArrayPayload modal_icon(std::string_view verb, std::string_view meaning) {
  return modal_icon(default_modal_table(), verb, meaning);
}

// ---------------------------------------------------------------------------
// Propositional attitudes

struct AttitudeCategory {
  std::string name;
  std::vector<std::string> attitudes;
};

inline std::vector<AttitudeCategory> default_attitudes() {
  return {
      {"emotional motivation", {"fear", "hope"}},
      {"general motivation", {"desire", "intend", "want", "wish"}},
      {"cognitive", {"believe", "consider", "deny", "doubt", "imagine", "judge", "know", "perceive"}},
      {"communication", {"assert", "inform"}},
      {"grammatical", {"command"}},
  };
}

inline std::optional<std::string> attitude_category(std::string_view attitude,
                                                    const std::vector<AttitudeCategory>& catalog = default_attitudes()) {
  for (const auto& c : catalog)
    if (std::find(c.attitudes.begin(), c.attitudes.end(), attitude) != c.attitudes.end()) return c.name;
  return std::nullopt;
}

}  // namespace tumbug
