// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: one subcommand per pipeline stage.
//
//   lex -> split -> learn-bpe -> segment -> train -> eval-{static,dynamic,maintenance}
//
// Exit status: 0 success, 1 usage/configuration, 2 data, 3 numeric failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "codelm/codelm.hpp"

namespace fs = std::filesystem;
using namespace codelm;

namespace {

struct ModelFlags {
  std::size_t embed = 512;
  std::size_t hidden = 0;  // 0 = same as embed
  double dropout = 0.5;    // drop probability
};

struct SearchFlags {
  std::size_t k = 10;
  std::size_t beam = 10;
  std::string limits = "5000,0.8,7";
  std::size_t max_positions = std::numeric_limits<std::size_t>::max();
};

SearchLimits parse_limits(const std::string& text) {
  SearchLimits limits;
  if (text == "none") return SearchLimits::disabled();
  std::stringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ',') || !std::getline(in, b, ',') || !std::getline(in, c, ','))
    throw ConfigError("--limits expects TOKENS,TOTAL,ITERS or 'none'");
  try {
    limits.max_tokens_done = std::stoul(a);
    limits.max_total = std::stod(b);
    limits.max_iterations = std::stoul(c);
  } catch (const std::exception&) {
    throw ConfigError("--limits expects TOKENS,TOTAL,ITERS or 'none'");
  }
  return limits;
}

void add_search_flags(CLI::App* cmd, SearchFlags& f, bool ranks_corpus = true) {
  cmd->add_option("--k", f.k, "Completions per query")->capture_default_str();
  cmd->add_option("--beam", f.beam, "Beam width")->capture_default_str();
  cmd->add_option("--limits", f.limits, "Search limits TOKENS,TOTAL,ITERS or 'none'")->capture_default_str();
  if (ranks_corpus) cmd->add_option("--max-positions", f.max_positions, "Completion queries to rank (default: all)");
}

struct LoadedModel {
  MergeTable table;
  SubwordVocabulary vocab;
  GruModel<float> model;
};

LoadedModel load_model(const std::string& checkpoint, const std::string& bpe) {
  LoadedModel m;
  m.table = read_merge_table(bpe);
  m.vocab = SubwordVocabulary(m.table);
  m.model = read_checkpoint(checkpoint, m.vocab.hash());
  return m;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string corpus_name(const std::string& dir) {
  auto p = fs::path(dir).lexically_normal();
  if (!p.has_filename()) p = p.parent_path();
  return p.filename().string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-vocabulary subword language modeling for source code"};
  app.fallthrough();
  app.require_subcommand(1);
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  app.add_option("--jobs", jobs, "Worker threads for per-file/per-project work")->capture_default_str();
  app.add_option("--seed", seed, "Seed for all randomness")->capture_default_str();

  // lex
  std::string lex_in, lex_out, lexer_name = "c-like";
  auto* lex = app.add_subcommand("lex", "Lex <input>/<project>/<file> sources into sanitized token files");
  lex->add_option("--input", lex_in, "Source directory")->required();
  lex->add_option("--output", lex_out, "Token corpus directory")->required();
  lex->add_option("--lexer", lexer_name, "c-like or pretokenized")->capture_default_str();

  // split
  std::string split_in, split_out;
  SplitFractions fractions;
  auto* split = app.add_subcommand("split", "Split a token corpus by project into train/validation/test/encoding");
  split->add_option("--corpus", split_in, "Token corpus directory")->required();
  split->add_option("--output", split_out, "Directory receiving the four role subdirectories")->required();
  split->add_option("--valid", fractions.validation, "Validation fraction")->capture_default_str();
  split->add_option("--test", fractions.test, "Test fraction")->capture_default_str();
  split->add_option("--encoding", fractions.encoding, "Encoding-learning fraction")->capture_default_str();

  // learn-bpe
  std::string bpe_corpus, bpe_out;
  std::size_t ops = 5000;
  auto* learn = app.add_subcommand("learn-bpe", "Learn a merge table from a token corpus");
  learn->add_option("--corpus", bpe_corpus, "Token corpus directory")->required();
  learn->add_option("--ops", ops, "Maximum merge operations (2000, 5000 or 10000 in the reference setup)")
      ->capture_default_str();
  learn->add_option("--output", bpe_out, "Merge table file")->required();

  // segment / join
  std::string seg_in, seg_out, seg_bpe;
  auto* segment = app.add_subcommand("segment", "Segment a token corpus into subword units");
  segment->add_option("--corpus", seg_in, "Token corpus directory")->required();
  segment->add_option("--bpe", seg_bpe, "Merge table file")->required();
  segment->add_option("--output", seg_out, "Segmented corpus directory")->required();
  std::string join_in, join_out;
  auto* join_cmd = app.add_subcommand("join", "Reassemble a segmented corpus into token files");
  join_cmd->add_option("--corpus", join_in, "Segmented corpus directory")->required();
  join_cmd->add_option("--output", join_out, "Token corpus directory")->required();

  // train
  std::string tr_bpe, tr_train, tr_valid, tr_out, tr_log;
  ModelFlags model_flags;
  TrainSchedule schedule;
  auto* train_cmd = app.add_subcommand("train", "Train the GRU language model on segmented corpora");
  train_cmd->add_option("--bpe", tr_bpe, "Merge table file")->required();
  train_cmd->add_option("--train", tr_train, "Segmented training corpus")->required();
  train_cmd->add_option("--valid", tr_valid, "Segmented validation corpus")->required();
  train_cmd->add_option("--output", tr_out, "Checkpoint to write")->required();
  train_cmd->add_option("--log", tr_log, "Training log file (default: stdout)");
  train_cmd->add_option("--embed", model_flags.embed, "Embedding size")->capture_default_str();
  train_cmd->add_option("--hidden", model_flags.hidden, "GRU state size (default: embedding size)");
  train_cmd->add_option("--dropout", model_flags.dropout, "Dropout probability")->capture_default_str();
  train_cmd->add_option("--lr", schedule.initial_lr, "Initial learning rate")->capture_default_str();
  train_cmd->add_option("--epochs", schedule.max_epochs, "Maximum epochs")->capture_default_str();
  train_cmd->add_option("--halvings", schedule.max_halvings, "Maximum learning-rate halvings")->capture_default_str();
  train_cmd->add_option("--batch", schedule.batch_size, "Minibatch size in windows")->capture_default_str();
  train_cmd->add_option("--unroll", schedule.unroll, "BPTT unroll length")->capture_default_str();

  // eval-*
  std::string ev_ckpt, ev_bpe, ev_test, ev_report;
  SearchFlags search;
  double adapt_lr = 0.0;
  std::size_t adapt_unroll = 20, partitions = 10;
  auto add_eval = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--checkpoint", ev_ckpt, "Model checkpoint")->required();
    cmd->add_option("--bpe", ev_bpe, "Merge table file")->required();
    cmd->add_option("--test", ev_test, "Segmented test corpus")->required();
    cmd->add_option("--report", ev_report, "Report file (default: stdout)");
    add_search_flags(cmd, search);
    return cmd;
  };
  auto* ev_static = add_eval("eval-static", "Evaluate without test-time updates");
  auto* ev_dynamic = add_eval("eval-dynamic", "Evaluate with per-project online adaptation");
  auto* ev_maint = add_eval("eval-maintenance", "Evaluate with leave-partition-out adaptation");
  for (auto* cmd : {ev_dynamic, ev_maint}) {
    cmd->add_option("--adapt-lr", adapt_lr, "Adaptation learning rate (default: the checkpoint's final rate)");
    cmd->add_option("--adapt-unroll", adapt_unroll, "Adaptation window length")->capture_default_str();
  }
  ev_maint->add_option("--partitions", partitions, "Partitions per project")->capture_default_str();

  // complete
  std::string cp_ckpt, cp_bpe;
  SearchFlags complete_search;
  auto* complete = app.add_subcommand("complete", "Rank completions for a token history read from stdin");
  complete->add_option("--checkpoint", cp_ckpt, "Model checkpoint")->required();
  complete->add_option("--bpe", cp_bpe, "Merge table file")->required();
  add_search_flags(complete, complete_search, false);

  // ngram
  std::string ng_train, ng_test, ng_report;
  NgramConfig ng_config;
  bool ng_cache = false;
  std::size_t ng_positions = std::numeric_limits<std::size_t>::max();
  auto* ngram = app.add_subcommand("ngram", "Train and evaluate the interpolated n-gram baseline");
  ngram->add_option("--train", ng_train, "Token training corpus")->required();
  ngram->add_option("--test", ng_test, "Token test corpus")->required();
  ngram->add_option("--order", ng_config.order, "n-gram order")->capture_default_str();
  ngram->add_option("--cutoff", ng_config.vocab_cutoff, "Minimum count to enter the vocabulary")->capture_default_str();
  ngram->add_option("--lambdas", ng_config.lambdas, "Interpolation weights, unigram first");
  ngram->add_flag("--cache", ng_cache, "Enable the file-level cache");
  ngram->add_option("--cache-lambda", ng_config.cache_lambda, "Cache mixing weight")->capture_default_str();
  ngram->add_option("--max-positions", ng_positions, "Completion queries to rank (default: all)");
  ngram->add_option("--report", ng_report, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*lex) {
      const auto kind = parse_lexer_kind(lexer_name);
      for (const auto& entry : list_corpus(lex_in, "")) {
        auto stream = sanitize(lex_file(read_text_file(entry.path), kind));
        stream.project_id = entry.project_id;
        stream.file_id = entry.path.stem().string();
        write_token_file(lex_out, stream);
      }
    } else if (*split) {
      std::vector<std::string> projects;
      for (const auto& entry : list_corpus(split_in, ".tokens")) projects.push_back(entry.project_id);
      const auto parts = split_corpus(projects, fractions, seed);
      const std::pair<const char*, const std::vector<std::string>*> roles[] = {
          {"train", &parts.train}, {"validation", &parts.validation}, {"test", &parts.test}, {"encoding", &parts.encoding}};
      for (const auto& [role, members] : roles) {
        for (const auto& project : *members) {
          fs::create_directories(fs::path(split_out) / role);
          fs::copy(fs::path(split_in) / project, fs::path(split_out) / role / project,
                   fs::copy_options::recursive | fs::copy_options::overwrite_existing);
        }
        std::cout << role << " " << members->size() << "\n";
      }
    } else if (*learn) {
      emit(bpe_out, format_merge_table(learn_merges(read_token_corpus(bpe_corpus), ops)));
    } else if (*segment) {
      const auto table = read_merge_table(seg_bpe);
      for (const auto& file : segment_corpus(read_token_corpus(seg_in), table)) write_segmented_file(seg_out, file);
    } else if (*join_cmd) {
      for (const auto& file : read_segmented_corpus(join_in)) {
        TokenStream stream{file.project_id, file.file_id, {}};
        for (auto& text : join(file.sequence)) stream.tokens.push_back({std::move(text), TokenKind::kOther});
        write_token_file(join_out, stream);
      }
    } else if (*train_cmd) {
      const auto table = read_merge_table(tr_bpe);
      const SubwordVocabulary vocab(table);
      const auto train_files = encode_corpus(read_segmented_corpus(tr_train), vocab);
      const auto valid_files = encode_corpus(read_segmented_corpus(tr_valid), vocab);
      ModelConfig config{vocab.size(), model_flags.embed, model_flags.hidden ? model_flags.hidden : model_flags.embed,
                         1.0 - model_flags.dropout, schedule.unroll};
      auto model = init_model<float>(config, seed);
      model.vocab_hash = vocab.hash();
      TrainOptions options;
      options.seed = seed;
      options.jobs = jobs;
      std::string log_text;
      options.on_epoch = [&](const EpochRecord& r) {
        if (tr_log.empty()) std::cout << format_epoch(r) << std::endl;
        log_text += format_epoch(r) + "\n";
      };
      auto result = train(std::move(model), train_files, valid_files, schedule, options);
      if (!tr_log.empty()) write_text_file(tr_log, log_text);
      write_checkpoint(tr_out, result.model);
    } else if (*ev_static || *ev_dynamic || *ev_maint) {
      const auto loaded = load_model(ev_ckpt, ev_bpe);
      const auto files = encode_corpus(read_segmented_corpus(ev_test), loaded.vocab);
      EvalOptions options{search.k, search.beam, parse_limits(search.limits), search.max_positions, jobs};
      AdaptationPolicy policy;
      policy.unroll = adapt_unroll;
      policy.lr = adapt_lr > 0.0 ? adapt_lr : loaded.model.final_lr;
      EvalReport report;
      if (*ev_static) {
        report = run_static(loaded.model, loaded.vocab, files, options, corpus_name(ev_test));
      } else if (*ev_dynamic) {
        report = run_dynamic(loaded.model, loaded.vocab, files, policy, options, corpus_name(ev_test));
      } else {
        report = run_maintenance(loaded.model, loaded.vocab, files, policy, partitions, options, corpus_name(ev_test));
      }
      emit(ev_report, format_report(report));
    } else if (*complete) {
      const auto loaded = load_model(cp_ckpt, cp_bpe);
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      auto history = sanitize(parse_token_line(buf.str()));
      const Segmenter segmenter(loaded.table);
      const auto units = loaded.vocab.encode(segmenter.segment(history));
      const auto ranked = predict_top_k(loaded.model, loaded.vocab, std::span<const int>(units), complete_search.k,
                                        complete_search.beam, parse_limits(complete_search.limits));
      for (std::size_t r = 0; r < ranked.size(); ++r) {
        char prob[32];
        std::snprintf(prob, sizeof(prob), "%.6f", ranked[r].prob);
        std::cout << (r + 1) << " " << encode_field(ranked[r].text) << " " << prob << "\n";
      }
    } else if (*ngram) {
      const auto model = NgramModel::train(read_token_corpus(ng_train), ng_config);
      NgramScoreOptions options{ng_cache, 10, ng_positions, jobs};
      emit(ng_report, format_report(ngram_evaluate(model, read_token_corpus(ng_test), options, corpus_name(ng_test))));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
