#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "jamoparse/composition.hpp"
#include "jamoparse/optimizer.hpp"
#include "jamoparse/trainer.hpp"

namespace jamoparse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Flags shared by every subcommand; each one reads the fields it needs.
struct RunConfig {
  std::string subcommand;
  std::string train_path;
  std::string dev_path;
  std::string model_path;
  std::string input_path;
  std::string output_path;
  std::string gold_path;
  std::string pred_path;
  std::string embeddings_path;
  std::string report_path;
  std::string text;
  UnitConfig units;
  std::size_t scorer_hidden = 100;
  std::size_t epochs = 30;
  std::uint64_t seed = 42;
  std::string optimizer = "adam";
  double learning_rate = 1e-3;
  double dropout = 0.25;
  std::string oracle = "dynamic";
  bool exclude_punct = false;
  bool expand_embeddings = false;
  std::size_t threads = 1;

  // Throws UsageError describing the first problem found.
  void validate() const;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs the command line. Returns 0 on success, 2 on usage errors, 1 on any
// other failure (message written to `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace jamoparse::cli
