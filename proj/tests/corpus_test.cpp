#include <gtest/gtest.h>

#include <random>
#include <set>

#include "codelm/corpus.hpp"
#include "support/fixtures.hpp"

namespace codelm {
namespace {

using fixtures::texts;

TEST(Lexer, EmptyInputGivesEmptyStream) {
  EXPECT_TRUE(lex_file("", LexerKind::kCLike).tokens.empty());
  EXPECT_TRUE(lex_file("", LexerKind::kPretokenized).tokens.empty());
}

TEST(Lexer, SimpleDeclaration) {
  const auto s = lex_file("int x = 1;", LexerKind::kCLike);
  EXPECT_EQ(texts(s), (std::vector<std::string>{"int", "x", "=", "1", ";"}));
  EXPECT_EQ(s.tokens[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(s.tokens[1].kind, TokenKind::kIdentifier);
  EXPECT_EQ(s.tokens[3].kind, TokenKind::kLiteral);
}

TEST(Lexer, MatchesHandLexedSample) {
  const auto source = read_text_file(fixtures::data_dir() / "sample" / "sample.c");
  const auto golden = fixtures::read_lines(fixtures::data_dir() / "sample" / "sample.golden");
  EXPECT_EQ(texts(lex_file(source, LexerKind::kCLike)), golden);
}

TEST(Lexer, MaximalMunchOperators) {
  EXPECT_EQ(texts(lex_file("a>>=b->c;i++", LexerKind::kCLike)),
            (std::vector<std::string>{"a", ">>=", "b", "->", "c", ";", "i", "++"}));
}

TEST(Lexer, StringLiteralsStayWhole) {
  EXPECT_EQ(texts(lex_file(R"(s = "a \"b\" c";)", LexerKind::kCLike)),
            (std::vector<std::string>{"s", "=", R"("a \"b\" c")", ";"}));
}

TEST(Lexer, UnterminatedStringNamesOffset) {
  try {
    lex_file("x = \"abc", LexerKind::kCLike);
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_NE(std::string(e.what()).find("byte offset 4"), std::string::npos);
  }
}

TEST(Lexer, UnterminatedCommentNamesOffset) {
  try {
    lex_file("int a; /* open", LexerKind::kCLike);
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.offset(), 7u);
  }
}

TEST(Lexer, StringCannotCrossNewline) { EXPECT_THROW(lex_file("'a\n'", LexerKind::kCLike), LexError); }

TEST(Lexer, ReservedTextIsEscaped) {
  const auto s = lex_file("x </t> y", LexerKind::kPretokenized);
  EXPECT_EQ(texts(s), (std::vector<std::string>{"x", std::string(kEscapedEndOfToken), "y"}));
  const auto c = lex_file("s = \"</t>\";", LexerKind::kCLike);
  EXPECT_EQ(c.tokens[2].text, "\"<\\/t>\"");
}

TEST(Lexer, PretokenizedSplitsOnSingleSpaces) {
  EXPECT_EQ(texts(lex_file("public  void main\n", LexerKind::kPretokenized)),
            (std::vector<std::string>{"public", "void", "main"}));
}

TEST(Lexer, UnknownLexerNameIsConfigError) {
  EXPECT_EQ(parse_lexer_kind("c-like"), LexerKind::kCLike);
  EXPECT_THROW(parse_lexer_kind("java"), ConfigError);
}

TEST(Sanitize, AsciiIsIdentity) { EXPECT_EQ(sanitize_text("counter"), "counter"); }

TEST(Sanitize, NonAsciiRunsCollapse) {
  EXPECT_EQ(sanitize_text("计数器"), "<non-ascii>");
  EXPECT_EQ(sanitize_text("ab计数cd"), "ab<non-ascii>cd");
  EXPECT_EQ(sanitize_text("\"é x ü\""), "\"<non-ascii> x <non-ascii>\"");
}

TEST(Sanitize, OutputIsAsciiAndIdempotent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const auto len = rng() % 20;
    for (std::size_t i = 0; i < len; ++i) {
      const auto pick = rng() % 4;
      text += pick == 0 ? static_cast<char>(0x80 + rng() % 0x80) : static_cast<char>('a' + rng() % 3);
    }
    const auto once = sanitize_text(text);
    for (unsigned char c : once) ASSERT_LT(c, 0x80);
    ASSERT_EQ(sanitize_text(once), once);
  }
}

TEST(Sanitize, LexedNonAsciiBecomesPlaceholder) {
  auto s = sanitize(lex_file("x = \"计数器\";", LexerKind::kCLike));
  EXPECT_EQ(s.tokens[2].text, "\"<non-ascii>\"");
  // A literal placeholder in the source is escaped so it stays distinguishable.
  auto t = sanitize(lex_file("<non-ascii>", LexerKind::kPretokenized));
  EXPECT_EQ(t.tokens[0].text, std::string(kEscapedNonAscii));
}

std::vector<std::string> projects(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("proj" + std::to_string(1000 + i));
  return out;
}

TEST(Split, HundredProjectsSizes) {
  const auto s = split_corpus(projects(100), {0.01, 0.01, 0.10}, 7);
  EXPECT_EQ(s.validation.size(), 1u);
  EXPECT_EQ(s.test.size(), 1u);
  EXPECT_EQ(s.encoding.size(), 10u);
  EXPECT_EQ(s.train.size(), 88u);
}

TEST(Split, Deterministic) {
  const auto a = split_corpus(projects(100), {0.01, 0.01, 0.10}, 7);
  const auto b = split_corpus(projects(100), {0.01, 0.01, 0.10}, 7);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.validation, b.validation);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.encoding, b.encoding);
  const auto c = split_corpus(projects(100), {0.01, 0.01, 0.10}, 8);
  EXPECT_NE(a.encoding, c.encoding);
}

TEST(Split, FourProjectsOneEach) {
  const auto s = split_corpus(projects(4), {0.25, 0.25, 0.25}, 1);
  EXPECT_EQ(s.train.size(), 1u);
  EXPECT_EQ(s.validation.size(), 1u);
  EXPECT_EQ(s.test.size(), 1u);
  EXPECT_EQ(s.encoding.size(), 1u);
}

TEST(Split, RolesPartitionTheProjects) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto all = projects(37);
    const auto s = split_corpus(all, {0.05, 0.05, 0.2}, seed);
    std::multiset<std::string> seen;
    for (const auto* role : {&s.train, &s.validation, &s.test, &s.encoding}) seen.insert(role->begin(), role->end());
    EXPECT_EQ(std::vector<std::string>(seen.begin(), seen.end()), all);
  }
}

TEST(Split, TooFewProjects) {
  EXPECT_THROW(split_corpus(projects(3), {0.01, 0.01, 0.10}, 1), ConfigError);
  EXPECT_THROW(split_corpus(projects(5), {0.4, 0.4, 0.1}, 1), ConfigError);
}

TEST(TokenFiles, RoundTripWithSpacesInLiterals) {
  fixtures::TempDir dir("tokens");
  TokenStream s = lex_file("puts(\"a b\\tc\"); x <non-ascii>", LexerKind::kCLike);
  s = sanitize(std::move(s));
  s.project_id = "proj";
  s.file_id = "Main.java";
  write_token_file(dir.path(), s);
  const auto back = read_token_corpus(dir.path());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].project_id, "proj");
  EXPECT_EQ(back[0].file_id, "Main.java");
  EXPECT_EQ(texts(back[0]), texts(s));
}

TEST(TokenFiles, CorpusListingIsSorted) {
  fixtures::TempDir dir("listing");
  for (const auto* p : {"b/z.c", "a/y.c", "b/a.c", "a/x.txt"}) write_text_file(dir.path() / p, "x");
  const auto entries = list_corpus(dir.path(), ".c");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].project_id + "/" + entries[0].file_id, "a/y");
  EXPECT_EQ(entries[1].project_id + "/" + entries[1].file_id, "b/a");
  EXPECT_EQ(entries[2].project_id + "/" + entries[2].file_id, "b/z");
}

}  // namespace
}  // namespace codelm
