#include <map>
#include <ostream>

#include "docstruct/synthgen.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return text::shortest(v); }

}  // namespace

// Words are laid out left to right with widths proportional to their length;
// every glyph carries the line's font and size.
void write_tetml(const Document& doc, std::ostream& out) {
  std::map<std::pair<std::string, double>, std::string> fonts;
  for (const auto& l : doc.lines) {
    auto key = std::make_pair(l.font_family.empty() ? std::string("Unknown") : l.font_family, l.font_weight);
    if (!fonts.count(key)) fonts.emplace(key, "F" + std::to_string(fonts.size()));
  }

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<TET>\n<Document filename=\"" << escape(doc.doc_id)
      << ".pdf\">\n<Pages>\n<Resources>\n<Fonts>\n";
  for (const auto& [key, id] : fonts)
    out << "<Font id=\"" << id << "\" name=\"" << escape(key.first) << "\" weight=\"" << num(key.second) << "\"/>\n";
  out << "</Fonts>\n</Resources>\n";

  std::size_t i = 0;
  while (i < doc.lines.size()) {
    const int page = doc.lines[i].page_number;
    const double height = doc.lines[i].page_height;
    out << "<Page number=\"" << page << "\" width=\"" << num(doc.lines[i].page_width) << "\" height=\""
        << num(height) << "\">\n<Content>\n";
    for (; i < doc.lines.size() && doc.lines[i].page_number == page; ++i) {
      const auto& l = doc.lines[i];
      const auto& font = fonts.at({l.font_family.empty() ? std::string("Unknown") : l.font_family, l.font_weight});
      const auto words = text::split_whitespace(l.text);
      const double chars = static_cast<double>(l.text.size());
      const double per_char = chars > 0 ? (l.x_right - l.x_left) / chars : 0.0;
      double x = l.x_left;
      out << "<Line>\n";
      for (const auto& w : words) {
        const double x1 = x + per_char * static_cast<double>(w.size());
        out << "<Word><Text>" << escape(w) << "</Text><Box llx=\"" << num(x) << "\" lly=\"" << num(height - l.y_bottom)
            << "\" urx=\"" << num(x1) << "\" ury=\"" << num(height - l.y_top) << "\">";
        for (char c : w)
          out << "<Glyph font=\"" << font << "\" size=\"" << num(l.font_size) << "\">" << escape(std::string(1, c))
              << "</Glyph>";
        out << "</Box></Word>\n";
        x = x1 + per_char;
      }
      out << "</Line>\n";
    }
    out << "</Content>\n</Page>\n";
  }
  out << "</Pages>\n</Document>\n</TET>\n";
}

}  // namespace docstruct
