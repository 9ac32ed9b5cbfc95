#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kgp {

/// Labeled ordered tree read from Penn-Treebank bracket notation. Leaves
/// carry the token text and have no children.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  std::size_t leaf_count() const;
};

/// Parses one bracketed expression, e.g. "(S (NP (DT The) (NN dog)))".
/// Throws ParseError on unbalanced or empty brackets.
ParseTree parse_tree(std::string_view text);

std::string to_string(const ParseTree& tree);

/// Strips function tags and indices: "NP-SBJ-1" -> "NP", "NP=2" -> "NP".
/// Labels starting with '-' (e.g. "-NONE-") are returned unchanged.
std::string base_label(std::string_view label);

}  // namespace kgp
