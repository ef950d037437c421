#include <algorithm>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "docstruct/errors.hpp"
#include "docstruct/ingest.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

namespace pt = boost::property_tree;

namespace {

struct FontInfo {
  std::string family;
  double weight = kNormalWeight;
};

struct Glyph {
  std::string font;
  double size = 0;
};

struct Word {
  std::string text;
  double llx, lly, urx, ury;
  std::vector<Glyph> glyphs;
};

struct PendingLine {
  std::vector<const Word*> words;
  double top, bottom;  // page-down coordinates
};

double required_number(const pt::ptree& node, const char* element, const char* attr) {
  auto raw = node.get_optional<std::string>(std::string("<xmlattr>.") + attr);
  if (!raw) throw SchemaError(std::string("<") + element + "> is missing attribute '" + attr + "'");
  auto v = text::parse_double(*raw);
  if (!v)
    throw SchemaError(std::string("<") + element + "> attribute '" + attr +
                      "' is not numeric: '" + *raw + "'");
  return *v;
}

double weight_from_name(std::string_view name) {
  std::string lower = text::to_lower(name);
  for (const char* marker : {"bold", "black", "heavy", "semibold", "demi"}) {
    if (lower.find(marker) != std::string::npos) return kBoldWeight;
  }
  return kNormalWeight;
}

template <typename Fn>
void for_each_named(const pt::ptree& node, const std::string& name, Fn&& fn) {
  for (const auto& [key, child] : node) {
    if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
    if (key == name) {
      fn(child);
    } else {
      for_each_named(child, name, fn);
    }
  }
}

// Mode of a sequence; ties go to the value that occurs first.
template <typename T>
T first_mode(const std::vector<T>& values) {
  std::map<T, std::size_t> counts;
  for (const auto& v : values) ++counts[v];
  std::size_t best = 0;
  for (const auto& [_, c] : counts) best = std::max(best, c);
  for (const auto& v : values) {
    if (counts[v] == best) return v;
  }
  return T{};
}

Word read_word(const pt::ptree& node) {
  Word w{};
  auto box = node.get_child_optional("Box");
  if (!box) throw SchemaError("<Word> is missing child <Box>");
  w.llx = required_number(*box, "Box", "llx");
  w.lly = required_number(*box, "Box", "lly");
  w.urx = required_number(*box, "Box", "urx");
  w.ury = required_number(*box, "Box", "ury");
  if (w.llx > w.urx) std::swap(w.llx, w.urx);
  if (w.lly > w.ury) std::swap(w.lly, w.ury);
  std::string glyph_text;
  for_each_named(*box, "Glyph", [&](const pt::ptree& g) {
    Glyph glyph;
    auto font = g.get_optional<std::string>("<xmlattr>.font");
    if (!font) throw SchemaError("<Glyph> is missing attribute 'font'");
    glyph.font = *font;
    glyph.size = required_number(g, "Glyph", "size");
    glyph_text += g.get_value<std::string>();
    w.glyphs.push_back(std::move(glyph));
  });
  if (auto t = node.get_optional<std::string>("Text")) {
    w.text = *t;
  } else {
    w.text = glyph_text;
  }
  if (w.glyphs.empty()) throw SchemaError("<Word> has no <Glyph> elements");
  return w;
}

}  // namespace

Document parse_tetml(std::istream& in, std::string doc_id) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed TETML: " + e.message(), e.line());
  }

  Document doc;
  if (doc_id.empty()) {
    std::string filename;
    for_each_named(tree, "Document", [&](const pt::ptree& d) {
      if (filename.empty()) filename = d.get("<xmlattr>.filename", "");
    });
    auto slash = filename.find_last_of("/\\");
    if (slash != std::string::npos) filename = filename.substr(slash + 1);
    auto dot = filename.find_last_of('.');
    if (dot != std::string::npos && dot > 0) filename = filename.substr(0, dot);
    doc_id = filename.empty() ? "doc" : filename;
  }
  doc.doc_id = std::move(doc_id);

  std::map<std::string, FontInfo> fonts;
  for_each_named(tree, "Font", [&](const pt::ptree& f) {
    auto id = f.get_optional<std::string>("<xmlattr>.id");
    if (!id) throw SchemaError("<Font> is missing attribute 'id'");
    FontInfo info;
    info.family = f.get("<xmlattr>.name", f.get("<xmlattr>.fullname", *id));
    if (auto w = f.get_optional<std::string>("<xmlattr>.weight"); w && text::parse_double(*w)) {
      info.weight = *text::parse_double(*w);
    } else {
      info.weight = weight_from_name(info.family);
    }
    fonts[*id] = std::move(info);
  });

  for_each_named(tree, "Page", [&](const pt::ptree& page) {
    std::vector<Word> words;
    for_each_named(page, "Word", [&](const pt::ptree& w) { words.push_back(read_word(w)); });
    if (words.empty()) return;
    const int number = static_cast<int>(required_number(page, "Page", "number"));
    const double width = required_number(page, "Page", "width");
    const double height = required_number(page, "Page", "height");

    std::vector<PendingLine> lines;
    for (const auto& w : words) {
      const double top = height - w.ury;
      const double bottom = height - w.lly;
      PendingLine* best = nullptr;
      double best_ratio = -1;
      for (auto& line : lines) {
        const double overlap = std::min(bottom, line.bottom) - std::max(top, line.top);
        const double smaller = std::min(bottom - top, line.bottom - line.top);
        if (overlap < 0) continue;
        const double ratio = smaller > 0 ? overlap / smaller : 1.0;
        if (ratio >= 0.5 && ratio > best_ratio) {
          best = &line;
          best_ratio = ratio;
        }
      }
      if (best) {
        best->words.push_back(&w);
        best->top = std::min(best->top, top);
        best->bottom = std::max(best->bottom, bottom);
      } else {
        lines.push_back(PendingLine{{&w}, top, bottom});
      }
    }

    for (auto& pending : lines) {
      std::stable_sort(pending.words.begin(), pending.words.end(),
                       [](const Word* a, const Word* b) { return a->llx < b->llx; });
      LineRecord line;
      line.page_number = number;
      line.page_width = width;
      line.page_height = height;
      line.y_top = pending.top;
      line.y_bottom = pending.bottom;
      line.x_left = pending.words.front()->llx;
      line.x_right = pending.words.front()->urx;
      std::vector<std::string> parts;
      std::vector<double> sizes;
      std::vector<std::string> families;
      std::vector<double> weights;
      for (const Word* w : pending.words) {
        line.x_right = std::max(line.x_right, w->urx);
        parts.push_back(w->text);
        for (const auto& g : w->glyphs) {
          sizes.push_back(g.size);
          auto f = fonts.find(g.font);
          if (f == fonts.end()) {
            families.push_back(g.font);
            weights.push_back(weight_from_name(g.font));
          } else {
            families.push_back(f->second.family);
            weights.push_back(f->second.weight);
          }
        }
      }
      line.text = text::join(parts, " ");
      line.font_size = first_mode(sizes);
      line.font_family = first_mode(families);
      line.font_weight = first_mode(weights);
      validate_line(line);
      doc.lines.push_back(std::move(line));
    }
  });

  sort_reading_order(doc.lines);
  compute_page_statistics(doc);
  return doc;
}

}  // namespace docstruct
