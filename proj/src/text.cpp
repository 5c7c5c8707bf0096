#include "graphqa/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphqa {

namespace {

bool is_word_byte(unsigned char c) {
  // Non-ASCII bytes count as word characters so multi-byte UTF-8
  // sequences are never split.
  if (c >= 0x80) return true;
  return std::isalnum(c) != 0;
}

}  // namespace

StopwordSet StopwordSet::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  return from_stream(in);
}

StopwordSet StopwordSet::from_stream(std::istream& in) {
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (!line.empty()) set.words_.insert(line);
  }
  return set;
}

std::vector<Token> tokenize(std::string_view text, const StopwordSet& stopwords) {
  std::vector<Token> out;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    out.push_back(Token{current, stopwords.contains(current)});
    current.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> tokenize_plain(std::string_view text) {
  static const StopwordSet empty;
  std::vector<std::string> out;
  for (auto& tok : tokenize(text, empty)) out.push_back(std::move(tok.text));
  return out;
}

std::vector<std::string> content_tokens(std::string_view text,
                                        const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (auto& tok : tokenize(text, stopwords)) {
    if (!tok.is_stopword) out.push_back(std::move(tok.text));
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace graphqa
