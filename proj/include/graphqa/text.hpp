#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace graphqa {

struct Token {
  std::string text;
  bool is_stopword = false;
};

/// Fixed stopword vocabulary loaded from a one-token-per-line file.
/// A single instance is shared by every module that filters stopwords.
class StopwordSet {
 public:
  StopwordSet() = default;

  static StopwordSet from_file(const std::string& path);
  static StopwordSet from_stream(std::istream& in);

  bool contains(std::string_view token) const {
    return words_.count(std::string(token)) > 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Lowercases and splits on whitespace/punctuation (both dropped).
/// Bytes outside ASCII are kept as word characters so UTF-8 words
/// survive intact. Deterministic; empty input yields an empty list.
std::vector<Token> tokenize(std::string_view text, const StopwordSet& stopwords);

/// Token texts only, stopword flags discarded.
std::vector<std::string> tokenize_plain(std::string_view text);

/// Non-stopword token texts, in order.
std::vector<std::string> content_tokens(std::string_view text,
                                        const StopwordSet& stopwords);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace graphqa
