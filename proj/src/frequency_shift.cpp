#include "symdyn/frequency_shift.hpp"

#include "symdyn/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace symdyn {

double FrequencyFn::operator()(std::size_t n) const {
  switch (kind) {
    case Kind::Const:
      return c;
    case Kind::CPlusLog:
      return c + std::log(static_cast<double>(n));
    case Kind::Linear:
      return c * static_cast<double>(n);
  }
  return c;
}

std::string FrequencyFn::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Const:
      os << "const(" << c << ")";
      break;
    case Kind::CPlusLog:
      os << c << "+ln(n)";
      break;
    case Kind::Linear:
      os << c << "*n";
      break;
  }
  return os.str();
}

void FrequencyShiftSpec::validate() const {
  if (alphabet_size < 1 || alphabet_size > 255) throw DomainError("alphabet size out of range");
  if (window < 1) throw DomainError("window width must be positive");
  std::set<Word> seen;
  for (const auto& cls : classes) {
    if (cls.f.kind != FrequencyFn::Kind::Const && cls.f.kind != FrequencyFn::Kind::CPlusLog &&
        cls.f.kind != FrequencyFn::Kind::Linear) {
      throw DomainError("unknown frequency function kind");
    }
    if (cls.f.kind == FrequencyFn::Kind::Linear && cls.f.c < 0) {
      throw DomainError("linear frequency function must be non-decreasing");
    }
    for (const auto& w : cls.words) {
      if (w.size() != window) throw DomainError("class word length differs from window width");
      check_alphabet(w, alphabet_size);
      if (!seen.insert(w).second) throw DomainError("frequency classes are not disjoint");
    }
  }
  double total = std::pow(static_cast<double>(alphabet_size), static_cast<double>(window));
  if (static_cast<double>(seen.size()) != total) {
    throw DomainError("frequency classes do not cover all windows (" + std::to_string(seen.size()) +
                      " of " + std::to_string(static_cast<long long>(total)) + ")");
  }
}

int FrequencyShiftSpec::class_of(const Word& u, std::size_t pos) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (const auto& w : classes[i].words) {
      bool match = true;
      for (std::size_t t = 0; t < window; ++t) {
        if (u[pos + t] != w[t]) {
          match = false;
          break;
        }
      }
      if (match) return static_cast<int>(i);
    }
  }
  return -1;
}

std::string FrequencyShiftSpec::describe() const {
  std::ostringstream os;
  os << "xf(M=" << window;
  for (const auto& cls : classes) {
    os << ";{";
    for (std::size_t i = 0; i < cls.words.size(); ++i) {
      if (i) os << ",";
      os << format_word(cls.words[i], alphabet_size);
    }
    os << "}<=" << cls.f.describe();
  }
  os << ")";
  return os.str();
}

FrequencyShiftSpec FrequencyShiftSpec::shipped(double c) {
  FrequencyShiftSpec s;
  s.alphabet_size = 3;
  s.window = 2;
  s.classes.push_back({{{1, 2}, {2, 1}}, {FrequencyFn::Kind::Const, 0.0}});
  s.classes.push_back({{{0, 0}, {1, 1}, {2, 2}}, {FrequencyFn::Kind::CPlusLog, c}});
  s.classes.push_back({{{0, 1}, {0, 2}, {1, 0}, {2, 0}}, {FrequencyFn::Kind::Linear, 1.0}});
  return s;
}

bool freq_membership(const Word& u, const FrequencyShiftSpec& spec) {
  check_alphabet(u, spec.alphabet_size);
  if (u.size() < spec.window) return true;
  std::size_t positions = u.size() - spec.window + 1;
  std::vector<std::vector<std::size_t>> occ(spec.classes.size());
  for (std::size_t p = 0; p < positions; ++p) {
    int c = spec.class_of(u, p);
    if (c >= 0) occ[static_cast<std::size_t>(c)].push_back(p);
  }
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    const auto& f = spec.classes[c].f;
    if (f(1) < 0) return false;
    const auto& p = occ[c];
    // the tightest window holding occurrences i..j spans p[j]-p[i]+1 positions
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i; j < p.size(); ++j) {
        double count = static_cast<double>(j - i + 1);
        if (count > f(p[j] - p[i] + 1)) return false;
      }
    }
  }
  return true;
}

namespace {

const char* kind_name(FrequencyFn::Kind k) {
  switch (k) {
    case FrequencyFn::Kind::Const:
      return "const";
    case FrequencyFn::Kind::CPlusLog:
      return "c_plus_log";
    case FrequencyFn::Kind::Linear:
      return "linear";
  }
  return "const";
}

}  // namespace

nlohmann::json FrequencyShiftSpec::to_json() const {
  nlohmann::json j;
  j["M"] = window;
  j["alphabet"] = alphabet_size;
  auto arr = nlohmann::json::array();
  for (const auto& cls : classes) {
    nlohmann::json cj;
    auto words = nlohmann::json::array();
    for (const auto& w : cls.words) words.push_back(format_word(w, alphabet_size));
    cj["words"] = words;
    cj["f"] = {{"kind", kind_name(cls.f.kind)}, {"c", cls.f.c}};
    arr.push_back(cj);
  }
  j["classes"] = arr;
  return j;
}

FrequencyShiftSpec FrequencyShiftSpec::from_json(const nlohmann::json& j) {
  FrequencyShiftSpec s;
  try {
    s.window = j.at("M").get<std::size_t>();
    s.alphabet_size = j.value("alphabet", 3);
    for (const auto& cj : j.at("classes")) {
      FrequencyClass cls;
      for (const auto& w : cj.at("words")) cls.words.push_back(parse_word(w.get<std::string>(), s.alphabet_size));
      auto kind = cj.at("f").at("kind").get<std::string>();
      if (kind == "const") {
        cls.f.kind = FrequencyFn::Kind::Const;
      } else if (kind == "c_plus_log") {
        cls.f.kind = FrequencyFn::Kind::CPlusLog;
      } else if (kind == "linear") {
        cls.f.kind = FrequencyFn::Kind::Linear;
      } else {
        throw DomainError("unknown frequency function kind '" + kind + "'");
      }
      cls.f.c = cj.at("f").value("c", 0.0);
      s.classes.push_back(std::move(cls));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed frequency spec: ") + e.what());
  }
  s.validate();
  return s;
}

}  // namespace symdyn
