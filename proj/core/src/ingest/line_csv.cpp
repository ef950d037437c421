#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/ingest.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

namespace {

constexpr std::array<const char*, 13> kColumns = {
    "doc_id",  "page_number", "text",   "font_size",  "font_weight",  "font_family", "x_left",
    "x_right", "y_top",       "y_bottom", "page_width", "page_height", "label"};

void write_field(std::ostream& out, std::string_view field) {
  bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

// RFC 4180 reader that tracks physical line numbers for diagnostics.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input.
  bool next(std::vector<std::string>& fields, std::size_t& row_line) {
    fields.clear();
    int c = in_.get();
    if (c == EOF) return false;
    row_line = line_;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    std::size_t col = 0;
    while (true) {
      if (c == EOF) {
        if (quoted) throw ParseError("unterminated quoted field", row_line, col);
        fields.push_back(std::move(field));
        return true;
      }
      char ch = static_cast<char>(c);
      ++col;
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            field.push_back('"');
            in_.get();
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
      } else if (ch == '"') {
        if (!field.empty() || was_quoted)
          throw ParseError("unexpected quote inside unquoted field", line_, col);
        quoted = true;
        was_quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (ch == '\r' && in_.peek() == '\n') {
        // swallow, newline follows
      } else if (ch == '\n') {
        ++line_;
        fields.push_back(std::move(field));
        return true;
      } else {
        if (was_quoted) throw ParseError("text after closing quote", line_, col);
        field.push_back(ch);
      }
      c = in_.get();
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

double number_field(const std::string& value, const char* column, std::size_t row) {
  auto v = text::parse_double(value);
  if (!v)
    throw SchemaError("row " + std::to_string(row) + ": column '" + column +
                      "' is not numeric: '" + value + "'");
  return *v;
}

}  // namespace

void save_line_records(const Document& doc, std::ostream& out, bool header) {
  if (header) out << kLineCsvHeader << '\n';
  for (const auto& l : doc.lines) {
    write_field(out, doc.doc_id);
    out << ',' << l.page_number << ',';
    write_field(out, l.text);
    out << ',' << text::shortest(l.font_size) << ',' << text::shortest(l.font_weight) << ',';
    write_field(out, l.font_family);
    out << ',' << text::shortest(l.x_left) << ',' << text::shortest(l.x_right) << ','
        << text::shortest(l.y_top) << ',' << text::shortest(l.y_bottom) << ','
        << text::shortest(l.page_width) << ',' << text::shortest(l.page_height) << ',';
    if (l.label) out << *l.label;
    out << '\n';
  }
  if (!out) throw IoError("failed writing line records for " + doc.doc_id);
}

void save_line_records(const std::vector<Document>& docs, std::ostream& out) {
  out << kLineCsvHeader << '\n';
  for (const auto& d : docs) save_line_records(d, out, false);
}

void save_line_records_file(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_line_records(docs, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<Document> load_line_record_corpus(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::size_t row_line = 0;
  std::vector<Document> docs;
  if (!reader.next(fields, row_line)) return docs;

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < fields.size(); ++i) index[std::string(text::trim(fields[i]))] = i;
  std::array<std::ptrdiff_t, kColumns.size()> col{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = index.find(kColumns[c]);
    if (it == index.end()) {
      if (std::string_view(kColumns[c]) == "label") {
        col[c] = -1;
        continue;
      }
      throw SchemaError(std::string("line_csv header lacks required column '") + kColumns[c] + "'");
    }
    col[c] = static_cast<std::ptrdiff_t>(it->second);
  }

  std::map<std::string, std::size_t> doc_index;
  std::size_t row = 0;
  while (reader.next(fields, row_line)) {
    ++row;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != index.size())
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(index.size()),
                       row_line);
    auto get = [&](std::size_t c) -> const std::string& { return fields[static_cast<std::size_t>(col[c])]; };
    LineRecord l;
    auto page = text::parse_int(get(1));
    if (!page) throw SchemaError("row " + std::to_string(row) + ": column 'page_number' is not an integer");
    l.page_number = static_cast<int>(*page);
    l.text = get(2);
    l.font_size = number_field(get(3), "font_size", row);
    l.font_weight = number_field(get(4), "font_weight", row);
    l.font_family = get(5);
    l.x_left = number_field(get(6), "x_left", row);
    l.x_right = number_field(get(7), "x_right", row);
    l.y_top = number_field(get(8), "y_top", row);
    l.y_bottom = number_field(get(9), "y_bottom", row);
    l.page_width = number_field(get(10), "page_width", row);
    l.page_height = number_field(get(11), "page_height", row);
    if (col[12] >= 0 && !text::trim(get(12)).empty()) {
      auto label = text::parse_int(get(12));
      if (!label) throw SchemaError("row " + std::to_string(row) + ": column 'label' is not an integer");
      l.label = static_cast<int>(*label);
    }
    try {
      validate_line(l);
    } catch (const SchemaError& e) {
      throw SchemaError("row " + std::to_string(row) + ": " + e.what());
    }
    const std::string& id = get(0);
    auto [it, inserted] = doc_index.try_emplace(id, docs.size());
    if (inserted) {
      docs.emplace_back();
      docs.back().doc_id = id;
    }
    docs[it->second].lines.push_back(std::move(l));
  }
  for (auto& d : docs) compute_page_statistics(d);
  return docs;
}

std::vector<Document> load_line_record_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return load_line_record_corpus(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.offset());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Document load_line_records(std::istream& in) {
  auto docs = load_line_record_corpus(in);
  if (docs.empty()) return Document{};
  if (docs.size() > 1)
    throw SchemaError("expected a single doc_id, found " + std::to_string(docs.size()));
  return std::move(docs.front());
}

}  // namespace docstruct
