#include "symdyn/word.hpp"

#include "symdyn/errors.hpp"

#include <cmath>
#include <limits>

namespace symdyn {

Word parse_word(std::string_view text, int alphabet_size) {
  if (alphabet_size < 1) throw DomainError("alphabet size must be positive");
  Word w;
  if (alphabet_size <= 10) {
    w.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') throw DomainError(std::string("invalid symbol '") + c + "'");
      int s = c - '0';
      if (s >= alphabet_size) {
        throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " +
                          std::to_string(alphabet_size));
      }
      w.push_back(static_cast<Symbol>(s));
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    if (item.empty()) throw DomainError("empty symbol in word");
    for (char c : item) {
      if (c < '0' || c > '9') throw DomainError("invalid symbol '" + item + "'");
    }
    int s = std::stoi(item);
    if (s >= alphabet_size || s > 255) {
      throw DomainError("symbol " + item + " outside alphabet");
    }
    w.push_back(static_cast<Symbol>(s));
    pos = comma + 1;
  }
  return w;
}

std::string format_word(const Word& w, int alphabet_size) {
  std::string out;
  if (alphabet_size <= 10) {
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(static_cast<int>(w[i]));
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word repeat(const Word& w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word subword(const Word& w, std::size_t start, std::size_t len) {
  if (start + len > w.size()) throw DomainError("subword out of range");
  return Word(w.begin() + static_cast<std::ptrdiff_t>(start),
              w.begin() + static_cast<std::ptrdiff_t>(start + len));
}

void check_alphabet(const Word& w, int alphabet_size) {
  for (Symbol s : w) {
    if (static_cast<int>(s) >= alphabet_size) {
      throw DomainError("symbol " + std::to_string(static_cast<int>(s)) +
                        " outside alphabet of size " + std::to_string(alphabet_size));
    }
  }
}

PointPrefix::PointPrefix(Word prefix, Word periodic_tail)
    : prefix_(std::move(prefix)), tail_(std::move(periodic_tail)) {}

PointPrefix PointPrefix::periodic(const Word& period) {
  if (period.empty()) throw DomainError("empty period");
  return PointPrefix({}, period);
}

std::size_t PointPrefix::available() const {
  return tail_.empty() ? prefix_.size() : std::numeric_limits<std::size_t>::max();
}

Symbol PointPrefix::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  if (tail_.empty()) {
    throw DomainError("point prefix of length " + std::to_string(prefix_.size()) +
                      " does not reach index " + std::to_string(i));
  }
  return tail_[(i - prefix_.size()) % tail_.size()];
}

Word PointPrefix::take(std::size_t n) const { return window(0, n); }

Word PointPrefix::window(std::size_t start, std::size_t len) const {
  if (tail_.empty() && start + len > prefix_.size()) {
    throw DomainError("point prefix of length " + std::to_string(prefix_.size()) +
                      " cannot supply " + std::to_string(start + len) + " symbols");
  }
  Word out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = at(start + i);
  return out;
}

PointPrefix PointPrefix::shifted(std::size_t t) const {
  if (t <= prefix_.size()) {
    return PointPrefix(Word(prefix_.begin() + static_cast<std::ptrdiff_t>(t), prefix_.end()), tail_);
  }
  if (tail_.empty()) throw DomainError("shift beyond prefix");
  std::size_t r = (t - prefix_.size()) % tail_.size();
  Word rotated(tail_.begin() + static_cast<std::ptrdiff_t>(r), tail_.end());
  rotated.insert(rotated.end(), tail_.begin(), tail_.begin() + static_cast<std::ptrdiff_t>(r));
  return PointPrefix({}, rotated);
}

MetricValue shift_metric(const PointPrefix& x, const PointPrefix& y, std::size_t depth,
                         int alphabet_size) {
  MetricValue out;
  double scale = 0.5;
  for (std::size_t j = 0; j < depth; ++j, scale *= 0.5) {
    int a = x.at(j);
    int b = y.at(j);
    out.value += std::abs(a - b) * scale;
  }
  out.error_bound = (alphabet_size - 1) * std::ldexp(1.0, -static_cast<int>(depth));
  return out;
}

}  // namespace symdyn
