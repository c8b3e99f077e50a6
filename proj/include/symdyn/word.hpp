#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

// Digits for alphabets of size <= 10, comma-separated integers otherwise.
Word parse_word(std::string_view text, int alphabet_size);
std::string format_word(const Word& w, int alphabet_size);

Word concat(const Word& a, const Word& b);
Word repeat(const Word& w, std::size_t times);
Word subword(const Word& w, std::size_t start, std::size_t len);
void check_alphabet(const Word& w, int alphabet_size);

// A point of the one-sided shift known through a finite prefix followed by
// an optional periodic tail.
class PointPrefix {
 public:
  PointPrefix() = default;
  explicit PointPrefix(Word prefix, Word periodic_tail = {});
  static PointPrefix periodic(const Word& period);

  bool is_infinite() const { return !tail_.empty(); }
  // Number of symbols available; SIZE_MAX when the tail is periodic.
  std::size_t available() const;
  Symbol at(std::size_t i) const;
  Word take(std::size_t n) const;
  Word window(std::size_t start, std::size_t len) const;
  PointPrefix shifted(std::size_t t) const;
  const Word& prefix() const { return prefix_; }
  const Word& tail() const { return tail_; }

 private:
  Word prefix_;
  Word tail_;
};

struct MetricValue {
  double value = 0.0;
  double error_bound = 0.0;
};

// d(x,y) = sum_j |x_j - y_j| / 2^j truncated at `depth`.
MetricValue shift_metric(const PointPrefix& x, const PointPrefix& y, std::size_t depth,
                         int alphabet_size);

}  // namespace symdyn
