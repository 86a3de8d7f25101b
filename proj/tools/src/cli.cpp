#include "jamoparse/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "jamoparse/conllu.hpp"
#include "jamoparse/corpus.hpp"
#include "jamoparse/embeddings.hpp"
#include "jamoparse/errors.hpp"
#include "jamoparse/evaluate.hpp"
#include "jamoparse/hangul.hpp"
#include "jamoparse/model_io.hpp"
#include "jamoparse/tree.hpp"
#include "jamoparse/utf8.hpp"

namespace jamoparse::cli {
namespace {

std::string two_decimals(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string scores_line(const AttachmentScores& s) {
  return "uas=" + two_decimals(s.uas()) + " las=" + two_decimals(s.las());
}

std::string read_all(std::istream& in) {
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  return read_all(f);
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto treebank = read_conllu(cfg.train_path);
  std::vector<ConlluSentence> usable;
  std::size_t nonprojective = 0;
  std::size_t malformed = 0;
  for (auto& s : treebank) {
    const auto heads = s.heads();
    if (!is_well_formed(heads) || !has_single_root(heads)) {
      ++malformed;
    } else if (!is_projective(heads)) {
      ++nonprojective;
    } else {
      usable.push_back(std::move(s));
    }
  }
  if (nonprojective + malformed > 0) {
    err << "skipping " << nonprojective << " non-projective and " << malformed << " malformed training trees\n";
  }
  if (usable.empty()) throw EmptyInputError("no usable training trees in " + cfg.train_path);

  std::vector<ConlluSentence> dev;
  if (!cfg.dev_path.empty()) dev = read_conllu(cfg.dev_path);

  ModelConfig model_config;
  model_config.units = cfg.units;
  model_config.scorer_hidden = cfg.scorer_hidden;

  TrainOptions options;
  options.epochs = cfg.epochs;
  options.seed = cfg.seed;
  options.optimizer.kind = nn::parse_optimizer_kind(cfg.optimizer);
  options.optimizer.learning_rate = cfg.learning_rate;
  options.oracle = parse_oracle_mode(cfg.oracle);
  options.word_dropout = cfg.dropout;
  options.exclude_punctuation = cfg.exclude_punct;

  std::optional<PretrainedEmbeddings> embeddings;
  EmbeddingSource source;
  if (!cfg.embeddings_path.empty()) {
    embeddings = PretrainedEmbeddings::read(cfg.embeddings_path);
    if (embeddings->dim() != cfg.units.word_dim) {
      throw DimensionMismatchError("embedding file has dimension " + std::to_string(embeddings->dim()) +
                                   " but --dim-word is " + std::to_string(cfg.units.word_dim));
    }
    source.embeddings = &*embeddings;
    source.expand_vocabulary = cfg.expand_embeddings;
  }

  const TrainedModel model = train(usable, dev, model_config, options, source, [&](const EpochReport& r) {
    out << "epoch=" << r.epoch << ' ' << scores_line(r.scores) << '\n' << std::flush;
  });
  save_model(model, cfg.model_path);
  return kExitOk;
}

int cmd_parse(const RunConfig& cfg, std::ostream& out, std::istream& in) {
  const TrainedModel model = load_model(cfg.model_path);
  ConlluReadOptions read_options;
  read_options.require_heads = false;
  std::vector<ConlluSentence> sentences;
  if (cfg.input_path.empty() || cfg.input_path == "-") {
    sentences = read_conllu(in, read_options);
  } else {
    sentences = read_conllu(cfg.input_path, read_options);
  }
  const auto parsed = parse_sentences(model, std::move(sentences), cfg.threads);
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write_conllu(out, parsed);
  } else {
    write_conllu(cfg.output_path, parsed);
  }
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const auto gold = read_conllu(cfg.gold_path);
  const auto pred = read_conllu(cfg.pred_path);
  out << scores_line(evaluate(gold, pred, cfg.exclude_punct)) << '\n';
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::istream& in) {
  std::string text;
  if (!cfg.text.empty()) {
    text = cfg.text;
  } else if (!cfg.input_path.empty() && cfg.input_path != "-") {
    text = read_file(cfg.input_path);
  } else {
    text = read_all(in);
  }
  for (const auto& d : hangul::decompose_text(std::string_view(text))) {
    if (d.ch == U'\n' || d.ch == U'\r') continue;
    out << utf8::encode(d.ch);
    if (d.atomic()) {
      out << "\tATOMIC\n";
    } else {
      out << '\t' << hangul::display(d.jamo->head_jamo()) << '\t' << hangul::display(d.jamo->vowel_jamo()) << '\t'
          << hangul::display(d.jamo->tail_jamo()) << '\n';
    }
  }
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const std::string& path = cfg.input_path.empty() ? cfg.train_path : cfg.input_path;
  const CorpusStats stats = compute_stats(read_conllu(path));
  out << format_stats_line(stats) << '\n';
  const std::string table = format_stats_table(stats);
  if (cfg.report_path.empty()) {
    out << '\n' << table;
  } else {
    std::ofstream report(cfg.report_path);
    if (!report) throw IoError("cannot write " + cfg.report_path);
    report << table;
    if (!report.flush()) throw IoError("write failed for " + cfg.report_path);
  }
  return kExitOk;
}

}  // namespace

void RunConfig::validate() const {
  if (subcommand == "train") {
    if (train_path.empty()) throw UsageError("train: --train is required");
    if (model_path.empty()) throw UsageError("train: --model is required");
    try {
      units.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("train: ") + e.what());
    }
    if (scorer_hidden == 0) throw UsageError("train: --hidden must be positive");
    if (optimizer != "adam" && optimizer != "sgd") throw UsageError("train: --optimizer must be adam or sgd");
    if (oracle != "static" && oracle != "dynamic") throw UsageError("train: --oracle must be static or dynamic");
    if (!(learning_rate > 0)) throw UsageError("train: --learning-rate must be positive");
    if (!(dropout >= 0)) throw UsageError("train: --dropout must be non-negative");
    if (expand_embeddings && embeddings_path.empty()) {
      throw UsageError("train: --expand-embeddings needs --embeddings");
    }
  } else if (subcommand == "parse") {
    if (model_path.empty()) throw UsageError("parse: --model is required");
    if (threads == 0) throw UsageError("parse: --threads must be positive");
  } else if (subcommand == "eval") {
    if (gold_path.empty() || pred_path.empty()) throw UsageError("eval: --gold and --pred are required");
  } else if (subcommand == "stats") {
    if (input_path.empty() && train_path.empty()) throw UsageError("stats: a treebank path is required");
  } else if (subcommand != "decompose") {
    throw UsageError("unknown subcommand '" + subcommand + "'");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  RunConfig cfg;
  CLI::App app{"Korean dependency parser with jamo-level compositional representations", "jamoparse"};
  app.require_subcommand(1);

  auto* train_cmd = app.add_subcommand("train", "train a parser on a CoNLL-U treebank");
  train_cmd->add_option("--train", cfg.train_path, "training treebank (CoNLL-U)");
  train_cmd->add_option("--dev", cfg.dev_path, "development treebank used for model selection");
  train_cmd->add_option("--model", cfg.model_path, "output model file");
  train_cmd->add_option("--dim-jamo", cfg.units.jamo_dim, "jamo embedding dimension (0 disables)")->capture_default_str();
  train_cmd->add_option("--dim-char", cfg.units.char_dim, "character embedding dimension (0 disables)")
      ->capture_default_str();
  train_cmd->add_option("--dim-word", cfg.units.word_dim, "word embedding dimension (0 disables)")->capture_default_str();
  train_cmd->add_option("--dim-encoder", cfg.units.encoder_dim, "sentence BiLSTM output dimension (even)")
      ->capture_default_str();
  train_cmd->add_option("--layers", cfg.units.encoder_layers, "sentence BiLSTM layers")->capture_default_str();
  train_cmd->add_option("--hidden", cfg.scorer_hidden, "scorer hidden layer size")->capture_default_str();
  train_cmd->add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
  train_cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  train_cmd->add_option("--embeddings", cfg.embeddings_path, "pre-trained word vectors (text format)");
  train_cmd->add_flag("--expand-embeddings", cfg.expand_embeddings, "add embedding-only words to the vocabulary");
  train_cmd->add_option("--oracle", cfg.oracle, "static or dynamic")->capture_default_str();
  train_cmd->add_option("--optimizer", cfg.optimizer, "adam or sgd")->capture_default_str();
  train_cmd->add_option("--learning-rate", cfg.learning_rate, "optimizer step size")->capture_default_str();
  train_cmd->add_option("--dropout", cfg.dropout, "word dropout constant")->capture_default_str();
  train_cmd->add_flag("--exclude-punct", cfg.exclude_punct, "ignore punctuation when scoring epochs");

  auto* parse_cmd = app.add_subcommand("parse", "parse CoNLL-U input with a trained model");
  parse_cmd->add_option("--model", cfg.model_path, "model file");
  parse_cmd->add_option("--input", cfg.input_path, "CoNLL-U input (default: stdin)");
  parse_cmd->add_option("--output", cfg.output_path, "CoNLL-U output (default: stdout)");
  parse_cmd->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();

  auto* eval_cmd = app.add_subcommand("eval", "score predicted trees against gold trees");
  eval_cmd->add_option("--gold", cfg.gold_path, "gold CoNLL-U");
  eval_cmd->add_option("--pred", cfg.pred_path, "predicted CoNLL-U");
  eval_cmd->add_flag("--exclude-punct", cfg.exclude_punct, "ignore punctuation tokens");

  auto* decompose_cmd = app.add_subcommand("decompose", "print the jamo of each character");
  decompose_cmd->add_option("text", cfg.text, "text to decompose (default: --input or stdin)");
  decompose_cmd->add_option("--input", cfg.input_path, "UTF-8 text file");

  auto* stats_cmd = app.add_subcommand("stats", "summarize a treebank");
  stats_cmd->add_option("treebank", cfg.input_path, "CoNLL-U treebank");
  stats_cmd->add_option("--input,--train", cfg.input_path, "CoNLL-U treebank");
  stats_cmd->add_option("--report", cfg.report_path, "write the summary table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    cfg.validate();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cfg.subcommand == "train") return cmd_train(cfg, out, err);
    if (cfg.subcommand == "parse") return cmd_parse(cfg, out, in);
    if (cfg.subcommand == "eval") return cmd_eval(cfg, out);
    if (cfg.subcommand == "decompose") return cmd_decompose(cfg, out, in);
    return cmd_stats(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace jamoparse::cli
