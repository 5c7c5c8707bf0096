#include "graphqa/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace graphqa {

namespace {

QAInstance parse_instance(const nlohmann::json& obj, std::size_t line_no) {
  const std::string where = "line " + std::to_string(line_no);
  if (!obj.is_object()) throw std::runtime_error(where + ": expected a JSON object");

  QAInstance inst;
  inst.id = obj.value("id", "");
  if (inst.id.empty()) throw std::runtime_error(where + ": missing instance id");

  const std::string tag = where + " (" + inst.id + ")";
  if (!obj.contains("question") || !obj["question"].is_object())
    throw std::runtime_error(tag + ": missing question object");
  const auto& q = obj["question"];
  inst.question = q.value("stem", "");
  if (inst.question.empty()) throw std::runtime_error(tag + ": missing question stem");

  if (!q.contains("choices") || !q["choices"].is_array())
    throw std::runtime_error(tag + ": missing choices array");
  const auto& choices = q["choices"];
  if (choices.size() != 5)
    throw std::runtime_error(tag + ": expected exactly 5 choices, got " +
                             std::to_string(choices.size()));

  std::array<bool, 5> seen{};
  for (const auto& choice : choices) {
    const std::string label = choice.value("label", "");
    const std::string text = choice.value("text", "");
    if (label.size() != 1 || label[0] < 'A' || label[0] > 'E')
      throw std::runtime_error(tag + ": choice label must be A..E, got '" + label + "'");
    if (text.empty()) throw std::runtime_error(tag + ": choice " + label + " has empty text");
    const int idx = label[0] - 'A';
    if (seen[static_cast<std::size_t>(idx)])
      throw std::runtime_error(tag + ": duplicate choice label " + label);
    seen[static_cast<std::size_t>(idx)] = true;
    inst.choices[static_cast<std::size_t>(idx)] = text;
  }

  if (obj.contains("answerKey") && !obj["answerKey"].is_null()) {
    const std::string key = obj["answerKey"].get<std::string>();
    if (key.size() != 1 || key[0] < 'A' || key[0] > 'E')
      throw std::runtime_error(tag + ": answerKey must be A..E, got '" + key + "'");
    inst.gold = key[0] - 'A';
  }
  return inst;
}

}  // namespace

std::vector<QAInstance> load_dataset_stream(std::istream& in, const std::string& origin) {
  std::vector<QAInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(origin + " line " + std::to_string(line_no) +
                               ": invalid JSON: " + e.what());
    }
    out.push_back(parse_instance(obj, line_no));
  }
  return out;
}

std::vector<QAInstance> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  return load_dataset_stream(in, path);
}

}  // namespace graphqa
