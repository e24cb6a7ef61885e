// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "codelm/error.hpp"

namespace codelm {

inline constexpr std::string_view kEndOfToken = "</t>";
inline constexpr std::string_view kNonAscii = "<non-ascii>";
// Replacements for literal occurrences of the reserved texts in raw input.
inline constexpr std::string_view kEscapedEndOfToken = "<\\/t>";
inline constexpr std::string_view kEscapedNonAscii = "<non\\-ascii>";

enum class TokenKind { kIdentifier, kKeyword, kLiteral, kOperator, kPunctuation, kOther };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kOther;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenStream {
  std::string project_id;
  std::string file_id;
  std::vector<Token> tokens;
};

enum class LexerKind { kCLike, kPretokenized };

inline LexerKind parse_lexer_kind(std::string_view name) {
  if (name == "c-like") return LexerKind::kCLike;
  if (name == "pretokenized") return LexerKind::kPretokenized;
  throw ConfigError("unknown lexer '" + std::string(name) + "' (expected c-like or pretokenized)");
}

namespace detail {

inline void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Literal occurrences of reserved texts in raw input are rewritten so that the
// reserved texts only ever come from this library.
inline std::string escape_reserved(std::string text) {
  replace_all(text, kEndOfToken, kEscapedEndOfToken);
  replace_all(text, kNonAscii, kEscapedNonAscii);
  return text;
}

inline bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; }
inline bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; }

inline bool is_keyword(std::string_view word) {
  static constexpr std::array<std::string_view, 70> kKeywords = {
      "abstract", "assert",   "auto",      "bool",     "boolean",  "break",     "byte",
      "case",     "catch",    "char",      "class",    "const",    "continue",  "default",
      "delete",   "do",       "double",    "else",     "enum",     "extends",   "extern",
      "false",    "final",    "finally",   "float",    "for",      "goto",      "if",
      "implements", "import", "inline",    "instanceof", "int",    "interface", "long",
      "namespace", "native",  "new",       "null",     "nullptr",  "package",   "private",
      "protected", "public",  "register",  "restrict", "return",   "short",     "signed",
      "sizeof",   "static",   "struct",    "super",    "switch",   "synchronized", "template",
      "this",     "throw",    "throws",    "transient", "true",    "try",       "typedef",
      "union",    "unsigned", "using",     "virtual",  "void",     "volatile",  "while"};
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

inline TokenKind classify(std::string_view text) {
  const auto c = static_cast<unsigned char>(text.front());
  if (is_ident_start(c)) return is_keyword(text) ? TokenKind::kKeyword : TokenKind::kIdentifier;
  if (std::isdigit(c) || c == '"' || c == '\'') return TokenKind::kLiteral;
  if (text.size() > 1 && c == '.' && std::isdigit(static_cast<unsigned char>(text[1])))
    return TokenKind::kLiteral;
  if (text.size() == 1 && std::string_view("()[]{};,.").find(text[0]) != std::string_view::npos)
    return TokenKind::kPunctuation;
  if (std::string_view("+-*/%=<>!&|^~?:").find(text[0]) != std::string_view::npos)
    return TokenKind::kOperator;
  return TokenKind::kOther;
}

// Longest operators first so that a single scan picks the maximal munch.
inline constexpr std::array<std::string_view, 27> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",   "||",  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "::", "##", "=>"};

inline std::vector<Token> lex_c_like(std::string_view src) {
  std::vector<Token> out;
  const std::size_t n = src.size();
  std::size_t i = 0;
  auto emit = [&](std::size_t begin, std::size_t end, TokenKind kind) {
    out.push_back({escape_reserved(std::string(src.substr(begin, end - begin))), kind});
  };
  while (i < n) {
    const auto c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const std::size_t close = src.find("*/", i + 2);
      if (close == std::string_view::npos) throw LexError("unterminated block comment", i);
      i = close + 2;
      continue;
    }
    const std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(static_cast<unsigned char>(src[i]))) ++i;
      const auto word = src.substr(start, i - start);
      emit(start, i, is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier);
      continue;
    }
    if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      // Numbers: digits, hex, fraction, exponent with sign, and type suffixes.
      ++i;
      while (i < n) {
        const auto d = static_cast<unsigned char>(src[i]);
        if (std::isalnum(d) || d == '.' || d == '_') {
          ++i;
        } else if ((d == '+' || d == '-') && (src[i - 1] == 'e' || src[i - 1] == 'E' ||
                                              src[i - 1] == 'p' || src[i - 1] == 'P')) {
          ++i;
        } else {
          break;
        }
      }
      emit(start, i, TokenKind::kLiteral);
      continue;
    }
    if (c == '"' || c == '\'') {
      ++i;
      bool closed = false;
      while (i < n) {
        if (src[i] == '\\' && i + 1 < n) {
          i += 2;
          continue;
        }
        if (src[i] == '\n') break;
        if (src[i] == static_cast<char>(c)) {
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed) throw LexError(c == '"' ? "unterminated string literal" : "unterminated char literal", start);
      emit(start, i, TokenKind::kLiteral);
      continue;
    }
    if (c >= 0x80) {
      while (i < n && static_cast<unsigned char>(src[i]) >= 0x80) ++i;
      emit(start, i, TokenKind::kOther);
      continue;
    }
    bool matched = false;
    for (auto op : kOperators) {
      if (src.substr(i, op.size()) == op) {
        i += op.size();
        emit(start, i, TokenKind::kOperator);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    ++i;
    emit(start, i, classify(src.substr(start, 1)));
  }
  return out;
}

}  // namespace detail

// Token files store one source file per line with single-space separators.
// Spaces and tabs inside tokens (string literals) are written as U+2423 and
// U+2409; sanitized tokens are pure ASCII, so the mapping is unambiguous.
inline constexpr std::string_view kVisibleSpace = "\xE2\x90\xA3";
inline constexpr std::string_view kVisibleTab = "\xE2\x90\x89";

inline std::string encode_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == ' ') {
      out += kVisibleSpace;
    } else if (c == '\t') {
      out += kVisibleTab;
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string decode_field(std::string_view text) {
  std::string out(text);
  detail::replace_all(out, kVisibleSpace, " ");
  detail::replace_all(out, kVisibleTab, "\t");
  return out;
}

// Splits a line on single spaces, dropping empty fields and a trailing CR.
inline std::vector<std::string> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t next = line.find(' ', pos);
    if (next == std::string_view::npos) next = line.size();
    if (next > pos) fields.push_back(decode_field(line.substr(pos, next - pos)));
    pos = next + 1;
  }
  return fields;
}

/// Lexes one source file. Comments and whitespace are dropped and string
/// literals stay whole. Literal occurrences of the reserved texts are escaped.
/// Throws LexError on unterminated strings or block comments.
inline TokenStream lex_file(std::string_view source_text, LexerKind lexer) {
  TokenStream stream;
  if (lexer == LexerKind::kCLike) {
    stream.tokens = detail::lex_c_like(source_text);
    return stream;
  }
  std::string_view text = source_text;
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.find('\n') != std::string_view::npos)
    throw LexError("pretokenized record spans more than one line", text.find('\n'));
  for (auto& field : split_fields(text)) {
    auto escaped = detail::escape_reserved(std::move(field));
    const auto kind = detail::classify(escaped);
    stream.tokens.push_back({std::move(escaped), kind});
  }
  return stream;
}

inline std::string sanitize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (static_cast<unsigned char>(text[i]) >= 0x80) {
      while (i < text.size() && static_cast<unsigned char>(text[i]) >= 0x80) ++i;
      out += kNonAscii;
    } else {
      out += text[i++];
    }
  }
  detail::replace_all(out, kEndOfToken, kEscapedEndOfToken);
  return out;
}

/// Replaces each maximal run of non-ASCII bytes with "<non-ascii>". Idempotent.
inline TokenStream sanitize(TokenStream stream) {
  for (auto& token : stream.tokens) token.text = sanitize_text(token.text);
  return stream;
}

struct SplitFractions {
  double validation = 0.01;
  double test = 0.01;
  double encoding = 0.10;
};

struct CorpusSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
  std::vector<std::string> encoding;
};

/// Assigns whole projects to the four roles. Each role size is
/// floor(n * fraction) with a minimum of one; the remainder trains.
inline CorpusSplit split_corpus(std::vector<std::string> projects, const SplitFractions& fractions,
                                std::uint64_t seed) {
  const double sum = fractions.validation + fractions.test + fractions.encoding;
  if (fractions.validation < 0 || fractions.test < 0 || fractions.encoding < 0 || sum >= 1.0)
    throw ConfigError("split fractions must be non-negative and sum to less than 1");
  std::sort(projects.begin(), projects.end());
  projects.erase(std::unique(projects.begin(), projects.end()), projects.end());
  const std::size_t n = projects.size();
  if (n < 4) throw ConfigError("at least 4 projects are required to split a corpus, got " + std::to_string(n));
  auto count = [n](double f) -> std::size_t {
    if (f <= 0) return 0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(n) * f));
  };
  const std::size_t nv = count(fractions.validation), nt = count(fractions.test),
                    ne = count(fractions.encoding);
  if (nv + nt + ne >= n) throw ConfigError("too few projects to populate all four splits");

  // Fisher-Yates on the raw engine output keeps the split identical across
  // standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(projects[i], projects[rng() % (i + 1)]);

  CorpusSplit split;
  auto take = [&, pos = std::size_t{0}](std::vector<std::string>& dst, std::size_t k) mutable {
    dst.assign(projects.begin() + static_cast<std::ptrdiff_t>(pos),
               projects.begin() + static_cast<std::ptrdiff_t>(pos + k));
    std::sort(dst.begin(), dst.end());
    pos += k;
  };
  take(split.validation, nv);
  take(split.test, nt);
  take(split.encoding, ne);
  take(split.train, n - nv - nt - ne);
  return split;
}

// ---------------------------------------------------------------------------
// On-disk corpora: <root>/<project_id>/<file_id><extension>

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

struct CorpusEntry {
  std::string project_id;
  std::string file_id;
  std::filesystem::path path;
};

/// Lists `<root>/<project>/<file><extension>` entries ordered by (project, file).
inline std::vector<CorpusEntry> list_corpus(const std::filesystem::path& root, std::string_view extension) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw DataError("corpus directory not found: " + root.string());
  std::vector<CorpusEntry> entries;
  for (const auto& project : fs::directory_iterator(root)) {
    if (!project.is_directory()) continue;
    for (const auto& file : fs::directory_iterator(project.path())) {
      if (!file.is_regular_file()) continue;
      if (!extension.empty() && file.path().extension() != extension) continue;
      entries.push_back({project.path().filename().string(),
                         extension.empty() ? file.path().filename().string() : file.path().stem().string(),
                         file.path()});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
    return std::tie(a.project_id, a.file_id) < std::tie(b.project_id, b.file_id);
  });
  return entries;
}

inline std::string format_token_line(const TokenStream& stream) {
  std::string line;
  for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
    if (i) line += ' ';
    line += encode_field(stream.tokens[i].text);
  }
  line += '\n';
  return line;
}

// Reads a token line written by this library; no reserved-text escaping.
inline TokenStream parse_token_line(std::string_view content) {
  while (!content.empty() && (content.back() == '\n' || content.back() == '\r')) content.remove_suffix(1);
  TokenStream stream;
  for (auto& field : split_fields(content)) {
    const auto kind = detail::classify(field);
    stream.tokens.push_back({std::move(field), kind});
  }
  return stream;
}

inline std::vector<TokenStream> read_token_corpus(const std::filesystem::path& root) {
  std::vector<TokenStream> corpus;
  for (const auto& entry : list_corpus(root, ".tokens")) {
    auto stream = parse_token_line(read_text_file(entry.path));
    stream.project_id = entry.project_id;
    stream.file_id = entry.file_id;
    corpus.push_back(std::move(stream));
  }
  return corpus;
}

inline void write_token_file(const std::filesystem::path& root, const TokenStream& stream) {
  write_text_file(root / stream.project_id / (stream.file_id + ".tokens"), format_token_line(stream));
}

}  // namespace codelm
