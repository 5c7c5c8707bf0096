#include "doctest.h"

#include <cstdint>
#include <sstream>

#include "graphqa/text.hpp"

using namespace graphqa;

namespace {

StopwordSet data_stopwords() { return StopwordSet::from_file(GRAPHQA_DATA_DIR "/stopwords.txt"); }

// Tiny deterministic string generator for the determinism property.
std::string random_text(std::uint64_t& state) {
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  static const char alphabet[] = "abc XYZ.,!?'\"-12 \t";
  std::string out;
  const int len = static_cast<int>(next() % 24);
  for (int i = 0; i < len; ++i) out += alphabet[next() % (sizeof(alphabet) - 1)];
  return out;
}

}  // namespace

TEST_CASE("tokenize: empty input yields empty list") {
  const StopwordSet stopwords;
  CHECK(tokenize("", stopwords).empty());
  CHECK(tokenize("   \t  ", stopwords).empty());
}

TEST_CASE("tokenize: lowercases, splits, flags stopwords from the shipped list") {
  const auto stopwords = data_stopwords();
  const auto tokens = tokenize("Making music and playing guitar", stopwords);
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0].text == "making");
  CHECK(tokens[1].text == "music");
  CHECK(tokens[2].text == "and");
  CHECK(tokens[3].text == "playing");
  CHECK(tokens[4].text == "guitar");
  CHECK_FALSE(tokens[0].is_stopword);
  CHECK_FALSE(tokens[1].is_stopword);
  CHECK(tokens[2].is_stopword);
  CHECK_FALSE(tokens[3].is_stopword);
  CHECK_FALSE(tokens[4].is_stopword);
}

TEST_CASE("tokenize: punctuation is dropped, not kept as tokens") {
  const auto tokens = tokenize_plain("Cats, chase. mice!  (Really?)");
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0] == "cats");
  CHECK(tokens[1] == "chase");
  CHECK(tokens[2] == "mice");
  CHECK(tokens[3] == "really");
}

TEST_CASE("tokenize: deterministic over 1000 random strings") {
  const auto stopwords = data_stopwords();
  std::uint64_t state = 0x1234567890abcdefull;
  for (int i = 0; i < 1000; ++i) {
    const std::string text = random_text(state);
    const auto a = tokenize(text, stopwords);
    const auto b = tokenize(text, stopwords);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].text == b[j].text);
      CHECK(a[j].is_stopword == b[j].is_stopword);
    }
  }
}

TEST_CASE("tokenize: idempotent on its own joined output") {
  for (const char* text : {"Making MUSIC And Playing", "He BEGAN, making; music!", "a-b c_d"}) {
    const auto once = tokenize_plain(text);
    const auto twice = tokenize_plain(join_tokens(once));
    CHECK(once == twice);
  }
}

TEST_CASE("content_tokens strips stopwords") {
  const auto stopwords = data_stopwords();
  const auto content = content_tokens("Making music and playing the guitar", stopwords);
  REQUIRE(content.size() == 4);
  CHECK(content == std::vector<std::string>{"making", "music", "playing", "guitar"});
}

TEST_CASE("StopwordSet loads one token per line") {
  std::istringstream in("and\nthe\nis\n");
  const auto set = StopwordSet::from_stream(in);
  CHECK(set.size() == 3);
  CHECK(set.contains("and"));
  CHECK(set.contains("the"));
  CHECK_FALSE(set.contains("guitar"));
}
