#include <algorithm>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/learn.hpp"
#include "docstruct/text.hpp"
#include "json.hpp"

namespace docstruct {

EvalReport evaluate_predictions(const std::vector<int>& class_alphabet, const std::vector<int>& truth,
                                const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) throw ContractError("truth/prediction size mismatch");
  if (truth.empty()) throw ContractError("cannot evaluate an empty dataset");
  const std::size_t k = class_alphabet.size();
  auto index_of = [&](int label) {
    auto it = std::find(class_alphabet.begin(), class_alphabet.end(), label);
    if (it == class_alphabet.end()) throw ContractError("label " + std::to_string(label) + " outside class alphabet");
    return static_cast<std::size_t>(it - class_alphabet.begin());
  };

  EvalReport r;
  r.class_alphabet = class_alphabet;
  r.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const std::size_t t = index_of(truth[i]), p = index_of(predicted[i]);
    ++r.confusion[t][p];
    if (t == p) ++correct;
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  for (std::size_t c = 0; c < k; ++c) {
    ClassMetrics m;
    m.label = class_alphabet[c];
    std::size_t predicted_c = 0;
    for (std::size_t t = 0; t < k; ++t) {
      m.support += r.confusion[c][t];
      predicted_c += r.confusion[t][c];
    }
    const double tp = static_cast<double>(r.confusion[c][c]);
    m.never_predicted = predicted_c == 0;
    m.precision = predicted_c ? tp / static_cast<double>(predicted_c) : 0.0;
    m.recall = m.support ? tp / static_cast<double>(m.support) : 0.0;
    m.f1 = (m.precision + m.recall) > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
    r.per_class.push_back(m);
  }
  r.macro_precision /= static_cast<double>(k);
  r.macro_recall /= static_cast<double>(k);
  r.macro_f1 /= static_cast<double>(k);
  return r;
}

EvalReport evaluate(const Model& m, const LabeledDataset& ds) {
  std::vector<int> predicted;
  predicted.reserve(ds.size());
  for (const auto& x : ds.features) predicted.push_back(m.predict(x).label);
  return evaluate_predictions(m.class_alphabet, ds.labels, predicted);
}

std::string EvalReport::to_json() const {
  // Metrics are rounded to 4 decimals so reports are byte-stable.
  auto r4 = [](double v) { return nlohmann::json::parse(text::fixed(v, 4)); };
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& m : per_class) {
    classes.push_back({{"label", m.label},
                       {"precision", r4(m.precision)},
                       {"recall", r4(m.recall)},
                       {"f1", r4(m.f1)},
                       {"support", m.support},
                       {"never_predicted", m.never_predicted}});
  }
  nlohmann::json j = {{"classes", classes},
                      {"macro", {{"precision", r4(macro_precision)}, {"recall", r4(macro_recall)}, {"f1", r4(macro_f1)}}},
                      {"accuracy", r4(accuracy)},
                      {"confusion", confusion}};
  return j.dump(2) + "\n";
}

std::string EvalReport::to_table(const std::vector<std::string>& class_names) const {
  std::vector<std::string> names;
  std::size_t width = std::string("Macro avg").size();
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    names.push_back(c < class_names.size() ? class_names[c] : std::to_string(per_class[c].label));
    width = std::max(width, names.back().size());
  }
  std::ostringstream out;
  auto row = [&](const std::string& name, const std::string& p, const std::string& r, const std::string& f,
                 const std::string& s) {
    out << name << std::string(width - name.size() + 2, ' ');
    for (const auto* cell : {&p, &r, &f, &s}) out << std::string(cell->size() < 9 ? 9 - cell->size() : 0, ' ') << *cell << "  ";
    out << '\n';
  };
  row("Class", "Precision", "Recall", "F1-score", "Support");
  std::size_t total = 0;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    const auto& m = per_class[c];
    total += m.support;
    row(names[c], text::fixed(m.precision), text::fixed(m.recall), text::fixed(m.f1), std::to_string(m.support));
  }
  row("Macro avg", text::fixed(macro_precision), text::fixed(macro_recall), text::fixed(macro_f1),
      std::to_string(total));
  out << "Accuracy " << text::fixed(accuracy) << '\n';
  return out.str();
}

}  // namespace docstruct
