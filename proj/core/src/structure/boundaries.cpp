#include <algorithm>
#include <cctype>
#include <map>

#include "docstruct/errors.hpp"
#include "docstruct/structure.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

namespace {

struct FlatNode {
  std::size_t header = 0;
  int level = 1;
  std::vector<std::size_t> body;
  std::vector<std::size_t> children;
};

void append_line(std::string& out, std::string_view line) {
  line = text::trim(line);
  if (line.empty()) return;
  if (!out.empty()) {
    // "algo-" + "rithm" -> "algorithm"
    if (out.size() > 1 && out.back() == '-' && std::isalpha(static_cast<unsigned char>(out[out.size() - 2])) &&
        std::islower(static_cast<unsigned char>(line.front()))) {
      out.pop_back();
    } else {
      out.push_back(' ');
    }
  }
  out += line;
}

SectionNode materialize(const std::vector<FlatNode>& flat, std::size_t id, const Document& doc) {
  const FlatNode& f = flat[id];
  SectionNode node;
  node.header_id = f.header;
  node.header = doc.lines[f.header];
  node.level = f.level;
  node.body = f.body;
  for (std::size_t line : f.body) append_line(node.body_text, doc.lines[line].text);
  for (std::size_t child : f.children) node.children.push_back(materialize(flat, child, doc));
  return node;
}

template <typename Node, typename Out>
void collect(Node& node, Out& out) {
  out.push_back(&node);
  for (auto& child : node.children) collect(child, out);
}

void collect_lines(const SectionNode& node, std::vector<std::size_t>& out) {
  out.push_back(node.header_id);
  out.insert(out.end(), node.body.begin(), node.body.end());
  for (const auto& child : node.children) collect_lines(child, out);
}

}  // namespace

std::string SectionNode::text() const {
  std::string out(text::trim(header.text));
  if (!body_text.empty()) {
    if (!out.empty()) out.push_back(' ');
    out += body_text;
  }
  return out;
}

TocTree detect_section_boundaries(const Document& doc, std::span<const HeaderAssignment> headers) {
  std::map<std::size_t, int> level_of;
  for (const auto& h : headers) {
    if (h.line >= doc.lines.size()) throw ContractError("header line id out of range");
    if (h.level < 1 || h.level > 3) throw ContractError("header level must lie in 1..3");
    level_of[h.line] = h.level;
  }

  std::vector<FlatNode> flat;
  std::vector<std::size_t> roots;
  std::vector<std::size_t> open;  // stack of flat ids
  TocTree tree;
  tree.doc_id = doc.doc_id;
  tree.line_count = doc.lines.size();
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    auto it = level_of.find(i);
    if (it == level_of.end()) {
      if (open.empty()) {
        tree.preamble.push_back(i);
      } else {
        flat[open.back()].body.push_back(i);
      }
      continue;
    }
    const int level = it->second;
    while (!open.empty() && flat[open.back()].level >= level) open.pop_back();
    const std::size_t id = flat.size();
    flat.push_back(FlatNode{i, level, {}, {}});
    if (open.empty()) {
      roots.push_back(id);
    } else {
      flat[open.back()].children.push_back(id);
    }
    open.push_back(id);
  }
  for (std::size_t r : roots) tree.roots.push_back(materialize(flat, r, doc));
  return tree;
}

std::vector<HeaderAssignment> headers_from_labels(const Document& doc) {
  std::vector<HeaderAssignment> out;
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const auto& label = doc.lines[i].label;
    if (label && *label > 0) out.push_back({i, std::min(*label, 3)});
  }
  return out;
}

std::vector<const SectionNode*> flatten_sections(const TocTree& tree) {
  std::vector<const SectionNode*> out;
  for (const auto& r : tree.roots) collect(r, out);
  return out;
}

std::vector<SectionNode*> flatten_sections(TocTree& tree) {
  std::vector<SectionNode*> out;
  for (auto& r : tree.roots) collect(r, out);
  return out;
}

std::vector<std::size_t> flatten_lines(const TocTree& tree) {
  std::vector<std::size_t> out = tree.preamble;
  for (const auto& r : tree.roots) collect_lines(r, out);
  return out;
}

bool conserves_lines(const TocTree& tree) {
  const auto lines = flatten_lines(tree);
  if (lines.size() != tree.line_count) return false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i] != i) return false;
  }
  return true;
}

std::vector<TocEntry> build_toc(const TocTree& tree) {
  std::vector<TocEntry> out;
  for (const SectionNode* s : flatten_sections(tree))
    out.push_back({std::string(text::trim(s->header.text)), s->level, s->header.page_number});
  return out;
}

std::vector<TocEntry> toc_from_bookmarks(const std::vector<BookmarkEntry>& toc) {
  std::vector<TocEntry> out;
  for (const auto& b : toc) out.push_back({b.title, b.depth, 0});
  return out;
}

std::string toc_to_text(const std::vector<TocEntry>& toc) {
  std::string out;
  for (const auto& e : toc) {
    out.append(static_cast<std::size_t>(std::max(0, e.level - 1)) * 2, ' ');
    out += e.title;
    out += " ... ";
    out += std::to_string(e.page);
    out += '\n';
  }
  return out;
}

}  // namespace docstruct
