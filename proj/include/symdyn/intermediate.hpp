#pragma once

#include "symdyn/edit.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace symdyn {

struct TypicalOptions {
  std::size_t depth = 4;
  unsigned workers = 1;
  std::size_t cap = 10'000'000;
};

// Words of L_N whose canonical extension w0^inf has a depth-k empirical
// measure within eta of nu, counting the tail error against eta.
std::vector<Word> typical_words(const Subshift& shift, const MarkovMeasure& nu, double eta,
                                std::size_t n, const TypicalOptions& opts = {});

// Lambda = union of sigma^i((Gamma)^N), i < M.
struct CodeSubshift {
  std::size_t m = 0;  // block length M
  int alphabet_size = 2;
  std::vector<Word> words;

  void validate() const;
  nlohmann::json to_json() const;
  static CodeSubshift from_json(const nlohmann::json& j);
};

struct CardinalityWindow {
  std::size_t lower = 0;   // ceil(e^{M(h - eps/2)})
  std::size_t upper = 0;   // largest integer below e^{M(h + eps/2)}
  std::size_t target = 0;  // round(e^{Mh}) clamped into the window
};

CardinalityWindow cardinality_window(std::size_t m, double h, double eps);

struct CodeBuildOptions {
  TypicalOptions typical;
  MistakeFn mistake = MistakeFn::zero();
};

struct CodeBuild {
  CodeSubshift code;
  CardinalityWindow window;
  std::size_t typical = 0;           // #L_N^{nu,eta}
  std::size_t distinct_images = 0;   // after phi
  std::size_t class_size = 0;        // images of the chosen length
};

CodeBuild build_code(const Subshift& shift, const GoodFamily& family, const MarkovMeasure& nu,
                     double h, double eps, double eta, std::size_t n,
                     const CodeBuildOptions& opts = {});

struct CodeLanguageCount {
  std::optional<std::uint64_t> exact;
  double log_count = 0.0;
};

// #L_n(Lambda) through the subset construction on the prefix trie of Gamma.
CodeLanguageCount lambda_language_count(const CodeSubshift& code, std::size_t n);
std::vector<Word> lambda_language(const CodeSubshift& code, std::size_t n,
                                  std::size_t cap = 10'000'000);

struct EntropyWindowRow {
  std::size_t n = 0;
  double log_count = 0.0;
  double value = 0.0;  // (1/n) log count
  double slack = 0.0;  // (log M + log #Gamma) / n
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct EntropyWindowReport {
  std::vector<EntropyWindowRow> rows;
  bool pass() const;
  std::string to_csv() const;
};

EntropyWindowReport verify_entropy_window(const CodeSubshift& code, std::size_t n_max, double h,
                                          double eps);

// t with t P(mu1) + (1 - t) P(mu2) = alpha.
double mix_to_pressure(const MarkovMeasure& mu1, const MarkovMeasure& mu2, const Potential& f,
                       double alpha);

struct CodeMeasureSample {
  double distance = 0.0;
  double tail = 0.0;
};

// Empirical check that long concatenations of random code words sit near nu.
CodeMeasureSample code_measure_distance(const CodeSubshift& code, const MarkovMeasure& nu,
                                        std::size_t blocks, std::size_t depth, std::uint64_t seed);

}  // namespace symdyn
