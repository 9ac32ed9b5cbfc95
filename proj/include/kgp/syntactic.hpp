#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"

namespace kgp {

// Word counts throughout exclude PUNCT tokens.
std::size_t word_count(const Sentence& s);
std::size_t word_count(const AnnotatedDocument& doc);

FeatureGroup word_type_features(const AnnotatedDocument& doc);

// ---------------------------------------------------------------------------
// Tense

enum class Tense {
  PresentSimple,
  PresentProgressive,
  PresentPerfect,
  PresentPerfectProgressive,
  PastSimple,
  PastProgressive,
  PastPerfect,
  PastPerfectProgressive,
  FutureSimple,
  FutureProgressive,
  FuturePerfect
};
inline constexpr std::size_t kTenseCount = 11;

enum class Voice { Active, Passive };

struct TenseLabel {
  Tense tense;
  Voice voice;
  bool operator==(const TenseLabel&) const = default;
};

std::string_view tense_name(Tense t);  // "present_simple", ...

using Clause = std::span<const Token>;

/// Splits at "," and ";" tokens; separators and empty clauses are dropped.
std::vector<Clause> split_clauses(const Sentence& sentence);

/// Versioned table mapping verb-group patterns to tense labels.
class TenseRules {
 public:
  enum class VerbClass { Will, Have, Be, Any };
  struct Element {
    VerbClass cls;
    std::vector<std::string> tags;
  };
  struct Rule {
    std::vector<Element> pattern;
    TenseLabel label;
  };

  /// Parses the TSV rule format of data/tense_rules.tsv.
  static TenseRules parse(std::string_view tsv);
  /// The table compiled into the library.
  static const TenseRules& builtin();

  /// Rules sorted longest pattern first (stable w.r.t. file order).
  const std::vector<Rule>& rules() const { return rules_; }

  std::optional<TenseLabel> detect(Clause clause) const;

 private:
  std::vector<Rule> rules_;
};

std::optional<TenseLabel> detect_tense(Clause clause,
                                       const TenseRules& rules = TenseRules::builtin());

FeatureGroup tense_features(const AnnotatedDocument& doc,
                            const TenseRules& rules = TenseRules::builtin());

// ---------------------------------------------------------------------------

FeatureGroup phrase_features(const AnnotatedDocument& doc);
FeatureGroup other_syntactic_features(const AnnotatedDocument& doc);

/// All 154 syntactic features of one modality.
FeatureGroup syntactic_features(const AnnotatedDocument& doc,
                                const TenseRules& rules = TenseRules::builtin());

}  // namespace kgp
