// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Deterministic generator of small C-like code corpora for experiments and
// tests. Projects draw identifiers from a shared English word pool combined
// in project-specific ways, so different projects share subword structure
// but not whole identifiers, and files inside a project reuse the same
// names heavily.

#include <cstdint>
#include <cstdio>
#include <iterator>
#include <random>
#include <string>
#include <vector>

namespace codelm::synthetic {

struct SourceFile {
  std::string project_id;
  std::string file_id;
  std::string text;
};

struct CorpusSpec {
  std::size_t projects = 20;
  std::size_t files_per_project = 8;
  std::size_t bytes_per_file = 1200;
  // Probability that a new statement is a verbatim copy of an earlier one
  // from the same project.
  double repetition = 0.3;
  std::uint64_t seed = 2019;
};

namespace detail {

inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> words = {
      "get",    "set",     "value",  "count",  "index",   "buffer", "size",    "name",   "data",    "list",
      "item",   "node",    "user",   "file",   "path",    "state",  "config",  "result", "error",   "message",
      "length", "offset",  "total",  "max",    "min",     "next",   "prev",    "head",   "tail",    "key",
      "table",  "entry",   "handle", "stream", "reader",  "writer", "parse",   "load",   "save",    "update",
      "remove", "insert",  "find",   "init",   "free",    "alloc",  "copy",    "compare", "hash",   "sort",
      "print",  "format",  "token",  "line",   "char",    "byte",   "word",    "block",  "page",    "cache",
      "queue",  "stack",   "tree",   "graph",  "edge",    "vertex", "weight",  "score",  "rank",    "level",
      "depth",  "width",   "height", "color",  "point",   "vector", "matrix",  "row",    "column",  "cell",
      "event",  "timer",   "clock",  "thread", "lock",    "mutex",  "signal",  "socket", "packet",  "request",
      "response", "client", "server", "session", "account", "order", "price",  "amount", "balance", "record",
      "field",  "schema",  "query",  "filter", "mapper",  "handler", "manager", "builder", "factory", "context",
      "option", "flag",    "mode",   "type",   "kind",    "status", "report",  "summary", "detail", "image",
      "pixel",  "frame",   "sample", "channel", "volume", "track",  "player",  "game",   "board",   "move"};
  return words;
}

inline std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

class ProjectWriter {
 public:
  ProjectWriter(std::uint64_t seed, double repetition) : rng_(seed), repetition_(repetition) {
    const auto& pool = word_pool();
    // Each project works with its own slice of the shared pool.
    for (int i = 0; i < 28; ++i) words_.push_back(pool[pick(pool.size())]);
    const char* prefixes[] = {"", "", "", "my", "app", "lib", "ui", "db", "io", "net"};
    prefix_ = prefixes[pick(std::size(prefixes))];
    for (int i = 0; i < 4; ++i) types_.push_back(capitalize(word()) + capitalize(word()));
    for (int i = 0; i < 10; ++i) funcs_.push_back(compose(2 + static_cast<int>(pick(2)), true));
    for (int i = 0; i < 12; ++i) vars_.push_back(compose(1 + static_cast<int>(pick(2)), false));
    for (int i = 0; i < 6; ++i) fields_.push_back(compose(1 + static_cast<int>(pick(2)), false));
    for (int i = 0; i < 3; ++i) consts_.push_back(upper(word()) + "_" + upper(word()));
  }

  std::string file(std::size_t bytes) {
    std::string out = "#include <stdio.h>\n#include \"" + snake(types_[0]) + ".h\"\n\n";
    out += "/* " + word() + " " + word() + " support */\n";
    out += "#define " + consts_[pick(consts_.size())] + " " + std::to_string(8 << pick(6)) + "\n\n";
    while (out.size() < bytes) out += function();
    return out;
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }
  const std::string& word() { return words_[pick(words_.size())]; }
  template <typename T>
  const T& any(const std::vector<T>& v) { return v[pick(v.size())]; }

  static std::string upper(std::string w) {
    for (auto& c : w)
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    return w;
  }
  static std::string snake(const std::string& camel) {
    std::string out;
    for (char c : camel) {
      if (c >= 'A' && c <= 'Z') {
        if (!out.empty()) out += '_';
        out += static_cast<char>(c - 'A' + 'a');
      } else {
        out += c;
      }
    }
    return out;
  }
  std::string compose(int parts, bool with_prefix) {
    std::string id = with_prefix && !prefix_.empty() ? prefix_ : "";
    for (int i = 0; i < parts; ++i) id += id.empty() ? word() : capitalize(word());
    return id;
  }

  std::string expr() {
    switch (pick(6)) {
      case 0: return any(vars_);
      case 1: return std::to_string(pick(100));
      case 2: return any(vars_) + " + " + std::to_string(1 + pick(9));
      case 3: return any(vars_) + "->" + any(fields_);
      case 4: return any(funcs_) + "(" + any(vars_) + ")";
      default: return any(vars_) + "[" + any(vars_) + "]";
    }
  }

  std::string statement(int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    if (!history_.empty() && chance(repetition_)) return pad + any(history_) + "\n";
    std::string s;
    switch (pick(9)) {
      case 0: s = "int " + any(vars_) + " = " + expr() + ";"; break;
      case 1: s = any(vars_) + " += " + expr() + ";"; break;
      case 2: s = any(vars_) + "->" + any(fields_) + " = " + expr() + ";"; break;
      case 3: s = any(funcs_) + "(" + any(vars_) + ", " + expr() + ");"; break;
      case 4: s = "if (" + any(vars_) + " == NULL) { return " + consts_[0] + "; }"; break;
      case 5: s = "printf(\"" + word() + " %d\\n\", " + any(vars_) + ");"; break;
      case 6: s = "for (int i = 0; i < " + any(vars_) + "; i++) { " + any(vars_) + "[i] = " + expr() + "; }"; break;
      case 7: s = "// " + word() + " the " + word(); break;
      default: s = "struct " + any(types_) + " *" + any(vars_) + " = " + any(funcs_) + "(" + expr() + ");"; break;
    }
    history_.push_back(s);
    return pad + s + "\n";
  }

  std::string function() {
    std::string out = (chance(0.3) ? "static " : "") + std::string(chance(0.5) ? "int " : "void ") + any(funcs_) +
                      "(struct " + any(types_) + " *" + any(vars_) + ", int " + any(vars_) + ")\n{\n";
    const std::size_t n = 3 + pick(6);
    for (std::size_t i = 0; i < n; ++i) {
      if (chance(0.2)) {
        out += "    while (" + any(vars_) + " < " + consts_[pick(consts_.size())] + ") {\n";
        out += statement(2) + statement(2) + "    }\n";
      } else {
        out += statement(1);
      }
    }
    out += "    return " + expr() + ";\n}\n\n";
    return out;
  }

  std::mt19937_64 rng_;
  double repetition_;
  std::string prefix_;
  std::vector<std::string> words_, types_, funcs_, vars_, fields_, consts_, history_;
};

}  // namespace detail

inline std::vector<SourceFile> generate_corpus(const CorpusSpec& spec) {
  std::vector<SourceFile> files;
  std::mt19937_64 seeds(spec.seed);
  for (std::size_t p = 0; p < spec.projects; ++p) {
    char project[32];
    std::snprintf(project, sizeof(project), "proj%02zu", p);
    detail::ProjectWriter writer(seeds(), spec.repetition);
    for (std::size_t f = 0; f < spec.files_per_project; ++f) {
      char file[32];
      std::snprintf(file, sizeof(file), "file%02zu", f);
      files.push_back({project, file, writer.file(spec.bytes_per_file)});
    }
  }
  return files;
}

}  // namespace codelm::synthetic
