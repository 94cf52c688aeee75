#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corplex/keyvalue.hpp"

namespace corplex {

/// Constituency tree. Preterminals carry their word in `leaf` and have no
/// children.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::optional<std::string> leaf;

  bool is_leaf() const noexcept { return leaf.has_value(); }
  /// Category without function tags or indices: "NP-SBJ-1" -> "NP". Labels
  /// starting with '-' (such as -NONE-) are returned unchanged.
  std::string category() const;
  /// Function tags: "NP-SBJ-1" -> {"SBJ"}.
  std::vector<std::string> function_tags() const;
  std::size_t leaf_count() const;
  std::vector<std::string> words() const;
};

/// Parses one bracketed tree such as "(S (NP (PRP I)) (VP (VBD ran)))".
/// An outer unlabeled or ROOT/TOP bracket with a single child is removed.
/// Throws IngestionError (line 1) on malformed input.
ParseTree parse_bracketed(std::string_view line);

struct SkippedLine {
  std::size_t line = 0;
  std::string reason;
};

struct BracketedFile {
  std::vector<ParseTree> trees;
  /// 1-based input line of each tree.
  std::vector<std::size_t> lines;
  std::vector<SkippedLine> skipped;
};

/// One tree per line. Malformed lines are recorded in `skipped` and do not
/// stop the read. Blank lines are not counted as input.
BracketedFile read_bracketed(std::istream& in);
BracketedFile read_bracketed(const std::filesystem::path& path);

/// Category and word lists the classifier keys on. Defaults target Penn
/// Treebank bracketing as produced by the common statistical parsers.
struct DLevelRules {
  std::set<std::string> clause_labels{"S", "SINV", "SQ", "SBARQ"};
  std::set<std::string> verb_tags{"VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"};
  std::set<std::string> finite_verb_tags{"VBD", "VBZ", "VBP", "MD"};
  std::set<std::string> coordinator_tags{"CC"};
  /// Words introducing adverbial clauses.
  std::set<std::string> adverbial_subordinators{
      "because", "although", "though", "while", "whilst", "whereas", "since", "unless", "until", "till",
      "after", "before", "once", "as", "when", "whenever", "wherever", "if", "so", "lest", "where"};
  /// Wh-words and complementizers that introduce object clauses when they
  /// directly follow the verb or its object.
  std::set<std::string> complement_words{"that", "whether", "if", "how", "why", "what", "who", "whom",
                                         "which", "whose", "where"};
  std::set<std::string> comparative_words{"than"};
  /// Tags skipped when testing whether a clause directly follows its verb.
  std::set<std::string> transparent_tags{"RB", "ADVP"};
  /// Longer sentences are classified normally but flagged.
  std::size_t length_cap = 100;

  /// Keys as the member names; values are whitespace-separated lists.
  static DLevelRules from_config(const KeyValueConfig& config);
  static DLevelRules load(const std::filesystem::path& path);
};

struct DLevelResult {
  int level = 0;
  /// Levels 1..6 whose constructions occur in the tree.
  std::set<int> triggers;
  bool over_length_cap = false;
};

/// Level 0 without triggers, 7 with two or more distinct trigger levels, the
/// single trigger level otherwise.
DLevelResult classify_dlevel(const ParseTree& tree, const DLevelRules& rules = {});

struct DLevelDistribution {
  std::array<std::size_t, 8> counts{};
  double mean = 0;
  double sd = 0;
  std::size_t classified = 0;
  std::size_t skipped = 0;
};

/// Histogram and population mean/SD. Throws UndefinedMeasure if nothing was
/// classified.
DLevelDistribution dlevel_distribution(std::span<const DLevelResult> results, std::size_t skipped = 0);

}  // namespace corplex
