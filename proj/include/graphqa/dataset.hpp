#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace graphqa {

struct QAInstance {
  std::string id;
  std::string question;
  std::array<std::string, 5> choices;  // A..E in label order
  int gold = -1;                       // index into choices, -1 when unlabeled
};

/// Parses the JSONL question format: one object per line with "id",
/// "question.stem", "question.choices" (exactly five label/text pairs)
/// and an optional "answerKey". Malformed lines throw with the line
/// number and instance id where available.
std::vector<QAInstance> load_dataset(const std::string& path);
std::vector<QAInstance> load_dataset_stream(std::istream& in, const std::string& origin);

}  // namespace graphqa
