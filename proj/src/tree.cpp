#include "kgp/tree.hpp"

#include <cctype>

#include "kgp/error.hpp"

namespace kgp {

std::size_t ParseTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

namespace {

class TreeReader {
 public:
  explicit TreeReader(std::string_view text) : s_(text) {}

  ParseTree read_root() {
    skip_space();
    ParseTree t = read_node();
    skip_space();
    if (pos_ != s_.size())
      throw ParseError(s_[pos_] == ')' ? "unbalanced brackets: unexpected ')'"
                                       : "trailing input after tree");
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string read_atom() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  ParseTree read_node() {
    if (pos_ >= s_.size() || s_[pos_] != '(') throw ParseError("expected '('");
    ++pos_;
    skip_space();
    ParseTree node;
    if (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')') node.label = read_atom();
    for (;;) {
      skip_space();
      if (pos_ >= s_.size()) throw ParseError("unbalanced brackets: missing ')'");
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (s_[pos_] == '(') {
        node.children.push_back(read_node());
      } else {
        node.children.push_back(ParseTree{read_atom(), {}});
      }
    }
    if (node.children.empty()) throw ParseError("empty bracket '" + node.label + "'");
    return node;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void write(const ParseTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.label;
    return;
  }
  out += '(';
  out += t.label;
  for (const auto& c : t.children) {
    out += ' ';
    write(c, out);
  }
  out += ')';
}

}  // namespace

ParseTree parse_tree(std::string_view text) {
  return TreeReader(text).read_root();
}

std::string to_string(const ParseTree& tree) {
  std::string out;
  write(tree, out);
  return out;
}

std::string base_label(std::string_view label) {
  if (label.empty() || label.front() == '-') return std::string(label);
  const auto cut = label.find_first_of("-=");
  return std::string(label.substr(0, cut));
}

}  // namespace kgp
