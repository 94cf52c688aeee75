#include <sstream>
#include <string>
#include <vector>

#include "corplex/corpus.hpp"
#include "corplex/error.hpp"
#include "corplex/keyvalue.hpp"
#include "corplex/text.hpp"
#include "doctest.h"

using namespace corplex;

namespace {

std::vector<std::string> surfaces(const TokenStream& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens()) out.push_back(t.surface);
  return out;
}

std::vector<std::size_t> bounds(std::span<const std::size_t> b) { return {b.begin(), b.end()}; }

Token word(std::string s, std::string tag = "NN") { return Token{s, tag, s, true}; }

}  // namespace

TEST_SUITE("text") {
  TEST_CASE("utf8 decode and error offset") {
    CHECK(text::decode_utf8("a\xc3\xa9").size() == 2);
    try {
      text::decode_utf8("ab\xc3(");
      FAIL("expected IngestionError");
    } catch (const IngestionError& e) {
      CHECK(e.unit() == IngestionError::Unit::byte);
      CHECK(e.location() == 2);
    }
    CHECK_THROWS_AS(text::decode_utf8("\xed\xa0\x80"), IngestionError);  // surrogate
    CHECK_THROWS_AS(text::decode_utf8("\xc0\xaf"), IngestionError);      // overlong
  }

  TEST_CASE("lowercase covers Latin-1 and Greek") {
    CHECK(text::lowercase("ÉCOLE Straße ΑΒΓ") == "école straße αβγ");
  }

  TEST_CASE("key value config") {
    auto c = KeyValueConfig::parse("# comment\nnoun = NN NNS\n\nverb=V\nverb = VB\n");
    CHECK(c.get("verb") == "VB");
    CHECK(c.list("noun") == std::vector<std::string>{"NN", "NNS"});
    CHECK_FALSE(c.contains("adjective"));
    CHECK_THROWS_AS(KeyValueConfig::parse("no equals sign"), IngestionError);
  }
}

TEST_SUITE("corpus") {
  TEST_CASE("plain tokenization splits words and punctuation") {
    auto s = tokenize_plain("The cat's toy, e.g. a ball, cost 3.50 dollars. Then it rained!");
    CHECK(surfaces(s) == std::vector<std::string>{"The", "cat's", "toy", ",", "e.g.", "a", "ball", ",", "cost",
                                                  "3.50", "dollars", ".", "Then", "it", "rained", "!"});
    CHECK(bounds(s.sentence_bounds()) == std::vector<std::size_t>{12, 16});
    CHECK(s.word_count() == 12);
    CHECK_FALSE(s.tagged());
  }

  TEST_CASE("abbreviations do not end sentences") {
    auto s = tokenize_plain("Ask Dr. Smith. He knows.");
    CHECK(s.sentence_count() == 2);
    CHECK(s.tokens()[1].surface == "Dr.");
  }

  TEST_CASE("lowercase continuation does not end a sentence") {
    auto s = tokenize_plain("It costs approx. ten. and more");
    CHECK(s.sentence_count() == 1);
  }

  TEST_CASE("closing quotes stay with their sentence") {
    auto s = tokenize_plain("He said \"stop.\" Then he left.");
    CHECK(s.sentence_count() == 2);
    CHECK(s.tokens()[s.sentence_end(0) - 1].surface == "\"");
  }

  TEST_CASE("paragraph breaks end sentences unless disabled") {
    const std::string t = "a heading\n\nbody text here.";
    CHECK(tokenize_plain(t).sentence_count() == 2);
    PlainTextOptions o;
    o.paragraph_breaks_end_sentences = false;
    CHECK(tokenize_plain(t, o).sentence_count() == 1);
  }

  TEST_CASE("invalid utf8 in plain text reports byte offset") {
    try {
      tokenize_plain("fine\nbad \xff here");
      FAIL("expected IngestionError");
    } catch (const IngestionError& e) {
      CHECK(e.location() == 9);
    }
  }

  TEST_CASE("vertical reader") {
    const std::string v =
        "<doc id=\"1\">\n"
        "The\tDT\tthe\nDogs\tNNS\tdog\nbark\tVVP\tbark\n.\tSENT\t.\n"
        "no\tDT\tno\nend\tNN\tend\n"
        "</doc>\n<doc id=\"2\">\nHello\tUH\t<unknown>\n</s>\nOK\tUH\tok\n</doc>\n";
    auto s = read_vertical(v);
    CHECK(s.size() == 8);
    CHECK(bounds(s.sentence_bounds()) == std::vector<std::size_t>{4, 6, 7, 8});
    CHECK(bounds(s.document_bounds()) == std::vector<std::size_t>{6, 8});
    CHECK_FALSE(s.tokens()[3].is_word);
    CHECK(s.tagged());
    auto surface = type_keys(s);
    auto lemma = type_keys(s, TypeDefinition::lemma);
    CHECK(surface[1] == "dogs");
    CHECK(lemma[1] == "dog");
    CHECK(lemma[6] == "hello");  // <unknown> falls back to the surface
  }

  TEST_CASE("vertical reader rejects wrong field counts with the line number") {
    try {
      read_vertical(std::string("a\tDT\ta\nb\tNN\n"));
      FAIL("expected IngestionError");
    } catch (const IngestionError& e) {
      CHECK(e.unit() == IngestionError::Unit::line);
      CHECK(e.location() == 2);
    }
    CHECK_THROWS_AS(read_vertical(std::string("<doc>\n</doc>\n")), IngestionError);
  }

  TEST_CASE("vertical round trip") {
    const std::string v = "<doc>\nA\tDT\ta\nb\tNN\tb\n.\tSENT\t.\nc\tNN\tc\n</s>\n</doc>\n<doc>\nd\tNN\td\n</s>\n</doc>\n";
    auto s = read_vertical(v);
    std::ostringstream out;
    write_vertical(out, s);
    CHECK(out.str() == v);
    CHECK(read_vertical(out.str()) == s);
  }

  TEST_CASE("stream invariants are validated") {
    CHECK_THROWS_AS(TokenStream({word("a"), word("b")}, {1}), ArgumentError);
    CHECK_THROWS_AS(TokenStream({word("a"), word("b")}, {2, 2}), ArgumentError);
    CHECK_THROWS_AS(TokenStream({word("a"), word("b"), word("c")}, {2, 3}, {1, 3}), ArgumentError);
    CHECK_THROWS_AS(TokenStream({word("")}, {1}), ArgumentError);
    CHECK_NOTHROW(TokenStream({}, {}));
  }

  TEST_CASE("segments are document local and drop remainders") {
    std::vector<Token> t;
    for (int i = 0; i < 7; ++i) t.push_back(word("w" + std::to_string(i)));
    t.insert(t.begin() + 2, Token{",", ",", ",", false});
    TokenStream s(t, {3, 5, 8}, {5, 8});
    auto seg = segment(s, 2);
    REQUIRE(seg.size() == 3);
    CHECK(seg[0].start == 0);
    CHECK(seg[0].end == 2);
    CHECK(seg[1].start == 2);
    CHECK(seg[1].end == 5);  // the comma is carried but not counted
    CHECK(seg[2].start == 5);
    CHECK(seg[2].end == 7);
    CHECK_THROWS_AS(segment(s, 0), ArgumentError);
  }

  TEST_CASE("concatenate and word_tokens keep document structure") {
    TokenStream a({word("x"), Token{".", "SENT", ".", false}}, {2});
    TokenStream b({word("y")}, {1});
    std::vector<TokenStream> parts{a, b};
    auto c = concatenate(parts);
    CHECK(bounds(c.document_bounds()) == std::vector<std::size_t>{2, 3});
    auto w = word_tokens(c);
    CHECK(w.size() == 2);
    CHECK(bounds(w.sentence_bounds()) == std::vector<std::size_t>{1, 2});
    CHECK(bounds(w.document_bounds()) == std::vector<std::size_t>{1, 2});
  }

  TEST_CASE("sentence sampling") {
    std::vector<Token> t;
    std::vector<std::size_t> sb;
    for (int s = 0; s < 50; ++s) {
      for (int k = 0; k <= s % 4; ++k) t.push_back(word("s" + std::to_string(s)));
      sb.push_back(t.size());
    }
    TokenStream stream(t, sb);
    auto a = sample_sentences(stream, 40, 7);
    auto b = sample_sentences(stream, 40, 7);
    CHECK(a.stream == b.stream);
    CHECK(a.stream.size() <= 40);
    CHECK_FALSE(a.budget_exceeds_stream);
    // whole sentences in original order
    std::size_t last = 0;
    for (std::size_t s = 0; s < a.stream.sentence_count(); ++s) {
      const auto& first = a.stream.tokens()[a.stream.sentence_begin(s)].surface;
      const std::size_t idx = std::stoul(first.substr(1));
      CHECK(a.stream.sentence_end(s) - a.stream.sentence_begin(s) == idx % 4 + 1);
      if (s > 0) CHECK(idx > last);
      last = idx;
    }
    CHECK(sample_sentences(stream, 1000, 7).budget_exceeds_stream);
    CHECK(sample_sentences(stream, stream.size(), 7).stream == stream);
    CHECK_THROWS_AS(sample_sentences(stream, 0, 7), ArgumentError);
  }
}
