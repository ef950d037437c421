#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Positional-text ingestion: TETML subset and line-record CSV in, Documents
// out. Coordinates use a top-left page origin with y growing downwards, so
// y_top <= y_bottom and y_bottom is the line's baseline.
namespace docstruct {

inline constexpr double kNormalWeight = 400.0;
inline constexpr double kBoldWeight = 700.0;

struct LineRecord {
  std::string text;
  int page_number = 1;
  double font_size = 10.0;
  double font_weight = kNormalWeight;
  std::string font_family;
  double x_left = 0, x_right = 0;
  double y_top = 0, y_bottom = 0;
  double page_width = 612, page_height = 792;
  // 0 = regular text, k >= 1 = header at TOC depth k.
  std::optional<int> label;

  double baseline() const { return y_bottom; }
  bool operator==(const LineRecord&) const = default;
};

struct PageStats {
  int page_number = 0;
  double avg_font_size = 0;
  double avg_font_weight = 0;
  double avg_line_spacing = 0;
  double avg_indentation = 0;

  bool operator==(const PageStats&) const = default;
};

struct BookmarkEntry {
  std::string title;
  int depth = 1;
  int order = 0;

  bool operator==(const BookmarkEntry&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<LineRecord> lines;
  std::vector<PageStats> pages;
  std::optional<std::vector<BookmarkEntry>> toc;

  // PageStats for a page; nullptr when absent.
  const PageStats* page(int page_number) const;

  bool operator==(const Document&) const = default;
};

enum class InputFormat { tetml, line_csv };

InputFormat parse_input_format(std::string_view name);

// Throws SchemaError naming the violated field.
void validate_line(const LineRecord& line);

// Parses either format, sorts lines into reading order and fills page stats.
// For line_csv input containing several doc_ids, use load_line_record_corpus.
Document parse_positional_document(std::istream& in, InputFormat format,
                                   std::string doc_id = {});

Document parse_tetml(std::istream& in, std::string doc_id = {});

// Stable sort by (page, baseline, x_left).
void sort_reading_order(std::vector<LineRecord>& lines);

// Idempotent; a page with a single line gets avg_line_spacing 0.
void compute_page_statistics(Document& doc);

// line_csv columns, in order.
inline constexpr const char* kLineCsvHeader =
    "doc_id,page_number,text,font_size,font_weight,font_family,x_left,x_right,"
    "y_top,y_bottom,page_width,page_height,label";

void save_line_records(const Document& doc, std::ostream& out, bool header = true);
void save_line_records(const std::vector<Document>& docs, std::ostream& out);
void save_line_records_file(const std::vector<Document>& docs, const std::string& path);

// Rows exactly as stored (no reordering); page stats recomputed. A missing
// label column leaves every label absent. Exactly one doc_id is allowed.
Document load_line_records(std::istream& in);

// Multi-document variant: documents in order of first appearance.
std::vector<Document> load_line_record_corpus(std::istream& in);
std::vector<Document> load_line_record_corpus_file(const std::string& path);

// TOC sidecar: JSON array of {title, depth, order}.
std::vector<BookmarkEntry> parse_bookmarks_json(std::string_view json);
std::string bookmarks_to_json(const std::vector<BookmarkEntry>& toc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace docstruct
