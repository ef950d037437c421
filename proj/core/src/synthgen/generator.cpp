#include <algorithm>
#include <cctype>
#include <cmath>

#include "docstruct/errors.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/synthgen.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

namespace {

constexpr double kPageWidth = 612, kPageHeight = 792, kMargin = 72;
constexpr double kBodySize = 10, kLineGap = 12;
constexpr double kHeaderSpaceAbove = 10, kHeaderSpaceBelow = 6;
constexpr double kCharWidth = 0.5;  // average glyph advance as a fraction of font size
constexpr double kParagraphIndent = 15;
constexpr std::size_t kMaxLineChars = 90;

const std::vector<std::string> kSurnames = {"Smith", "Chen", "Garcia", "Kumar", "Novak", "Ito", "Okafor", "Larsen",
                                            "Rossi", "Haddad", "Silva", "Weber"};
const std::vector<std::string> kSymbols = {"x", "y", "z", "w", "h", "u", "v", "theta", "lambda", "sigma"};

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.below(items.size())];
}

int between(int lo, int hi, Rng& rng) { return lo + static_cast<int>(rng.below(static_cast<std::size_t>(hi - lo + 1))); }

struct TextSource {
  const CorpusSpec& spec;
  Rng& rng;

  std::string word(const ClassVocabulary& v) {
    return rng.bernoulli(spec.class_word_rate) ? pick(v.words, rng) : pick(spec.general_words, rng);
  }

  std::string equation() {
    return pick(kSymbols, rng) + "_" + std::to_string(between(1, 9, rng)) + " = " + pick(kSymbols, rng) + " + " +
           std::to_string(between(2, 9, rng)) + pick(kSymbols, rng);
  }

  std::string citation() {
    if (rng.bernoulli(0.5)) return "[" + std::to_string(between(1, 60, rng)) + "]";
    return "(" + pick(kSurnames, rng) + " et al., " + std::to_string(between(1995, 2020, rng)) + ")";
  }

  std::string sentence(const std::string& cls, const ClassVocabulary& v) {
    const int n = between(8, 16, rng);
    std::vector<std::string> words;
    for (int i = 0; i < n; ++i) words.push_back(word(v));
    words[0] = capitalize(words[0]);
    if (cls == "RelatedWork" && rng.bernoulli(0.7)) words.push_back(citation());
    if ((cls == "Approach" || cls == "Preliminary" || cls == "ProofOfTheorem") && rng.bernoulli(0.5)) {
      words.push_back("where");
      words.push_back(equation());
    }
    return text::join(words, " ") + ".";
  }

  std::string reference(int k, const ClassVocabulary& v) {
    std::string s = "[" + std::to_string(k) + "] " + std::string(1, static_cast<char>('A' + rng.below(26))) + ". " +
                    pick(kSurnames, rng) + " and " + std::string(1, static_cast<char>('A' + rng.below(26))) + ". " +
                    pick(kSurnames, rng) + ". ";
    std::vector<std::string> title;
    for (int i = between(4, 8, rng); i > 0; --i) title.push_back(pick(spec.general_words, rng));
    title[0] = capitalize(title[0]);
    s += text::join(title, " ") + ". ";
    std::vector<std::string> venue;
    for (int i = between(2, 4, rng); i > 0; --i) venue.push_back(capitalize(pick(v.words, rng)));
    s += text::join(venue, " ") + ", " + std::to_string(between(1995, 2020, rng)) + ".";
    return s;
  }

  // Paragraphs of plain sentences; references become numbered entries.
  std::vector<std::string> paragraphs(const std::string& cls, const ClassVocabulary& v, int& ref_counter) {
    std::vector<std::string> out;
    const int n = between(spec.min_paragraphs, spec.max_paragraphs, rng);
    for (int p = 0; p < n; ++p) {
      if (cls == "References") {
        for (int e = between(2, 4, rng); e > 0; --e) out.push_back(reference(++ref_counter, v));
        continue;
      }
      std::vector<std::string> sentences;
      for (int s = between(spec.min_sentences, spec.max_sentences, rng); s > 0; --s) sentences.push_back(sentence(cls, v));
      out.push_back(text::join(sentences, " "));
    }
    return out;
  }

  std::string subsection_title(const ClassVocabulary& v) {
    std::string a = capitalize(pick(v.words, rng));
    std::string b = capitalize(pick(v.words, rng));
    for (int tries = 0; b == a && tries < 8; ++tries) b = capitalize(pick(v.words, rng));
    switch (rng.below(3)) {
      case 0: return a + " " + b;
      case 1: return a + " and " + b;
      default: return a + " of " + b;
    }
  }
};

std::vector<std::string> wrap(const std::string& paragraph, std::size_t width) {
  std::vector<std::string> lines;
  std::string current;
  for (const auto& w : text::split_whitespace(paragraph)) {
    if (!current.empty() && current.size() + 1 + w.size() > width) {
      lines.push_back(std::move(current));
      current.clear();
    }
    if (!current.empty()) current += ' ';
    current += w;
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

class PageWriter {
 public:
  PageWriter(const CorpusSpec& spec, Rng& rng, Document& doc) : spec_(spec), rng_(rng), doc_(doc) {}

  int page() const { return page_; }

  // Places a line below the previous one; `space_above` is extra leading.
  void emit(std::string textline, double size, bool bold, double indent, double space_above, int label) {
    size = round2(size + (spec_.font_jitter > 0 ? rng_.normal() * spec_.font_jitter : 0.0));
    size = std::max(size, 4.0);
    double gap = kLineGap * size / kBodySize + space_above;
    if (spec_.spacing_jitter > 0) gap = std::max(gap + rng_.normal() * spec_.spacing_jitter, size);
    double baseline = first_on_page_ ? kMargin + size : baseline_ + gap;
    if (baseline > kPageHeight - kMargin) {
      ++page_;
      baseline = kMargin + size;
    }
    first_on_page_ = false;
    baseline_ = baseline;

    LineRecord line;
    line.page_number = page_;
    line.font_size = size;
    line.font_weight = bold ? kBoldWeight : kNormalWeight;
    line.font_family = bold ? "Times-Bold" : "Times-Roman";
    line.x_left = kMargin + indent;
    line.x_right = round2(std::min(kPageWidth - kMargin, line.x_left + kCharWidth * size * static_cast<double>(textline.size())));
    line.y_top = round2(baseline - size);
    line.y_bottom = round2(baseline);
    line.page_width = kPageWidth;
    line.page_height = kPageHeight;
    line.label = label;
    line.text = std::move(textline);
    doc_.lines.push_back(std::move(line));
  }

  void body_paragraph(const std::string& paragraph, bool indent_first) {
    auto lines = wrap(paragraph, kMaxLineChars);
    for (std::size_t i = 0; i < lines.size(); ++i)
      emit(std::move(lines[i]), kBodySize, false, i == 0 && indent_first ? kParagraphIndent : 0, 0, 0);
  }

  // Following line gets extra leading (used after headers).
  void add_space_below(double pts) { baseline_ += pts; }

 private:
  const CorpusSpec& spec_;
  Rng& rng_;
  Document& doc_;
  int page_ = 1;
  double baseline_ = 0;
  bool first_on_page_ = true;
};

std::vector<std::string> choose_classes(const CorpusSpec& spec, Rng& rng) {
  std::vector<bool> chosen(spec.class_order.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = rng.bernoulli(spec.classes.at(spec.class_order[i]).inclusion);
  auto count = [&] { return static_cast<int>(std::count(chosen.begin(), chosen.end(), true)); };
  const int target_min = std::min<int>(spec.min_sections, static_cast<int>(chosen.size()));
  while (count() < target_min) chosen[rng.below(chosen.size())] = true;
  while (count() > spec.max_sections) chosen[rng.below(chosen.size())] = false;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (chosen[i]) out.push_back(spec.class_order[i]);
  return out;
}

int sample_depth(const CorpusSpec& spec, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0;
  for (int d = 0; d < 3; ++d) {
    acc += spec.depth_distribution[static_cast<std::size_t>(d)];
    if (u < acc) return d + 1;
  }
  return 1;
}

std::string corrupt(const std::string& s, double rate, Rng& rng) {
  if (rate <= 0) return s;
  std::string out = s;
  for (auto& c : out)
    if (std::isalpha(static_cast<unsigned char>(c)) && rng.bernoulli(rate)) c = static_cast<char>('a' + rng.below(26));
  return out;
}

void hard_negative(PageWriter& w, TextSource& src, const std::string& cls, const ClassVocabulary& v, int& figure,
                   Rng& rng) {
  if (rng.bernoulli(0.5)) {
    const int items = between(2, 3, rng);
    for (int i = 1; i <= items; ++i) {
      auto lines = wrap(std::to_string(i) + ". " + src.sentence(cls, v), kMaxLineChars);
      for (std::size_t k = 0; k < lines.size(); ++k) w.emit(std::move(lines[k]), kBodySize, false, k == 0 ? 0 : 10, 0, 0);
    }
  } else {
    std::vector<std::string> words;
    for (int i = between(3, 7, rng); i > 0; --i) words.push_back(src.word(v));
    words[0] = capitalize(words[0]);
    const char* kind = rng.bernoulli(0.5) ? "Figure " : "Table ";
    w.emit(kind + std::to_string(++figure) + ": " + text::join(words, " "), kBodySize - 1, false, 0, 0, 0);
  }
}

GeneratedDocument generate_document(const CorpusSpec& spec, std::size_t index) {
  Rng rng(Rng::derive(spec.seed, index));
  TextSource src{spec, rng};
  GeneratedDocument g;
  Document& doc = g.document;
  doc.doc_id = "doc" + std::string(index < 10 ? "00" : (index < 100 ? "0" : "")) + std::to_string(index);

  PageWriter w(spec, rng, doc);
  {
    std::vector<std::string> title;
    for (int i = between(5, 9, rng); i > 0; --i) title.push_back(capitalize(pick(spec.general_words, rng)));
    w.emit(text::join(title, " "), 16, true, 40, 0, 0);
    w.emit(pick(kSurnames, rng) + ", " + pick(kSurnames, rng) + " and " + pick(kSurnames, rng), 11, false, 120, 6, 0);
  }

  std::vector<BookmarkEntry> bookmarks;
  int n1 = 0, ref_counter = 0, figure = 0;
  auto emit_header = [&](const std::string& label_text, int level) {
    const bool bold = !rng.bernoulli(spec.non_bold_header_rate);
    const double size = level == 1 ? 12 : (level == 2 ? 11 : 10);
    w.emit(label_text, size, bold, 0, kHeaderSpaceAbove, level);
    w.add_space_below(kHeaderSpaceBelow);
    g.planted_toc.push_back({label_text, level, w.page()});
    bookmarks.push_back({corrupt(label_text, spec.header_corruption_rate, rng), level,
                         static_cast<int>(bookmarks.size())});
  };
  auto emit_body = [&](const std::string& cls, const ClassVocabulary& v, std::string& section_text) {
    auto paras = src.paragraphs(cls, v, ref_counter);
    for (const auto& p : paras) {
      w.body_paragraph(p, cls != "References");
      if (!section_text.empty()) section_text += ' ';
      section_text += p;
      if (cls != "References" && rng.bernoulli(spec.hard_negative_rate)) hard_negative(w, src, cls, v, figure, rng);
    }
  };

  for (const auto& cls : choose_classes(spec, rng)) {
    const ClassVocabulary& v = spec.classes.at(cls);
    std::string title = pick(v.headers, rng);
    if (v.numbered) title = std::to_string(++n1) + " " + title;
    emit_header(title, 1);
    std::string section_text;
    emit_body(cls, v, section_text);

    if (v.subsections && v.numbered) {
      int n2 = 0, n3 = 0, prev = 1;
      for (int d = sample_depth(spec, rng); d != 1; d = sample_depth(spec, rng)) {
        const int level = std::min(d, prev + 1);
        std::string number;
        if (level == 2) {
          n3 = 0;
          number = std::to_string(n1) + "." + std::to_string(++n2);
        } else {
          number = std::to_string(n1) + "." + std::to_string(n2) + "." + std::to_string(++n3);
        }
        emit_header(number + " " + src.subsection_title(v), level);
        emit_body(cls, v, section_text);
        prev = level;
      }
    }
    g.section_classes.push_back(cls);
    g.section_texts.push_back(std::move(section_text));
  }

  doc.toc = std::move(bookmarks);
  compute_page_statistics(doc);
  return g;
}

}  // namespace

std::vector<GeneratedDocument> generate_corpus(const CorpusSpec& spec) {
  spec.validate();
  std::vector<GeneratedDocument> out;
  out.reserve(static_cast<std::size_t>(spec.n_docs));
  for (int i = 0; i < spec.n_docs; ++i) out.push_back(generate_document(spec, static_cast<std::size_t>(i)));
  return out;
}

std::vector<LabeledSection> generate_sections(const CorpusSpec& spec, int per_class, std::uint64_t seed) {
  spec.validate();
  if (per_class < 0) throw ContractError("per_class must be non-negative");
  std::vector<LabeledSection> out;
  for (std::size_t c = 0; c < spec.class_order.size(); ++c) {
    const auto& cls = spec.class_order[c];
    const ClassVocabulary& v = spec.classes.at(cls);
    Rng rng(Rng::derive(seed, c));
    TextSource src{spec, rng};
    int refs = 0;
    for (int i = 0; i < per_class; ++i) out.push_back({text::join(src.paragraphs(cls, v, refs), " "), cls});
  }
  return out;
}

}  // namespace docstruct
