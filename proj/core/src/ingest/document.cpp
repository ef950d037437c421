#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/ingest.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

const PageStats* Document::page(int page_number) const {
  auto it = std::lower_bound(pages.begin(), pages.end(), page_number,
                             [](const PageStats& p, int n) { return p.page_number < n; });
  if (it == pages.end() || it->page_number != page_number) return nullptr;
  return &*it;
}

InputFormat parse_input_format(std::string_view name) {
  if (name == "tetml" || name == "xml") return InputFormat::tetml;
  if (name == "line_csv" || name == "csv") return InputFormat::line_csv;
  throw ContractError("unknown input format: " + std::string(name));
}

void validate_line(const LineRecord& line) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (line.page_number < 1) throw SchemaError("page_number must be positive");
  if (!finite(line.font_size) || line.font_size <= 0) throw SchemaError("font_size must be > 0");
  if (!finite(line.font_weight) || line.font_weight < 0) throw SchemaError("font_weight must be >= 0");
  if (!finite(line.page_width) || line.page_width <= 0) throw SchemaError("page_width must be > 0");
  if (!finite(line.page_height) || line.page_height <= 0) throw SchemaError("page_height must be > 0");
  if (!finite(line.x_left) || !finite(line.x_right) || line.x_left > line.x_right)
    throw SchemaError("x_left must be <= x_right");
  if (!finite(line.y_top) || !finite(line.y_bottom) || line.y_top > line.y_bottom)
    throw SchemaError("y_top must be <= y_bottom");
  if (line.label && *line.label < 0) throw SchemaError("label must be >= 0");
}

void sort_reading_order(std::vector<LineRecord>& lines) {
  std::stable_sort(lines.begin(), lines.end(), [](const LineRecord& a, const LineRecord& b) {
    if (a.page_number != b.page_number) return a.page_number < b.page_number;
    if (a.y_bottom != b.y_bottom) return a.y_bottom < b.y_bottom;
    return a.x_left < b.x_left;
  });
}

Document parse_positional_document(std::istream& in, InputFormat format, std::string doc_id) {
  if (format == InputFormat::tetml) return parse_tetml(in, std::move(doc_id));
  Document doc = load_line_records(in);
  if (!doc_id.empty()) doc.doc_id = std::move(doc_id);
  sort_reading_order(doc.lines);
  compute_page_statistics(doc);
  return doc;
}

std::vector<BookmarkEntry> parse_bookmarks_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bookmark JSON: ") + e.what(), 1, e.byte);
  }
  if (!j.is_array()) throw SchemaError("bookmark JSON must be an array");
  std::vector<BookmarkEntry> out;
  int index = 0;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("title") || !item["title"].is_string())
      throw SchemaError("bookmark entry " + std::to_string(index) + " lacks string 'title'");
    if (!item.contains("depth") || !item["depth"].is_number_integer())
      throw SchemaError("bookmark entry " + std::to_string(index) + " lacks integer 'depth'");
    BookmarkEntry e;
    e.title = item["title"].get<std::string>();
    e.depth = item["depth"].get<int>();
    e.order = item.value("order", index);
    if (e.depth < 1) throw SchemaError("bookmark entry " + std::to_string(index) + " has depth < 1");
    out.push_back(std::move(e));
    ++index;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BookmarkEntry& a, const BookmarkEntry& b) { return a.order < b.order; });
  return out;
}

std::string bookmarks_to_json(const std::vector<BookmarkEntry>& toc) {
  json arr = json::array();
  for (const auto& e : toc) arr.push_back({{"depth", e.depth}, {"order", e.order}, {"title", e.title}});
  return arr.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace docstruct
