#include "regulus/word.hpp"

#include <sstream>
#include <stdexcept>

namespace regulus {

GroupWord::GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  reduce();
}

void GroupWord::reduce() {
  std::vector<Letter> out;
  for (auto& l : letters_) {
    if (l.exponent == 0) continue;
    if (!out.empty() && out.back().name == l.name) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  letters_ = std::move(out);
}

GroupWord GroupWord::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<Letter> ls;
  std::string tok;
  while (is >> tok) {
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long exp = 1;
    if (caret != std::string::npos) {
      std::string es = tok.substr(caret + 1);
      size_t pos = 0;
      try {
        exp = std::stol(es, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed word token: '" + tok + "'");
      }
      if (pos != es.size() || exp == 0)
        throw std::invalid_argument("malformed word token: '" + tok + "'");
    }
    if (name.empty()) throw std::invalid_argument("malformed word token: '" + tok + "'");
    ls.push_back({name, exp});
  }
  return GroupWord(std::move(ls));
}

long GroupWord::length() const {
  long n = 0;
  for (const auto& l : letters_) n += std::labs(l.exponent);
  return n;
}

GroupWord GroupWord::concat(const GroupWord& o) const {
  std::vector<Letter> ls = letters_;
  ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
  return GroupWord(std::move(ls));
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> ls;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    ls.push_back({it->name, -it->exponent});
  return GroupWord(std::move(ls));
}

GroupWord GroupWord::pow(long n) const {
  GroupWord r;
  GroupWord base = n < 0 ? inverse() : *this;
  for (long i = 0; i < std::labs(n); ++i) r = r.concat(base);
  return r;
}

std::string GroupWord::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << letters_[i].name;
    if (letters_[i].exponent != 1) os << '^' << letters_[i].exponent;
  }
  return os.str();
}

RationalMatrix word_eval(const GeneratorMap& generators, const GroupWord& w) {
  if (generators.empty()) throw std::invalid_argument("empty generator map");
  int dim = generators.begin()->second.dim();
  RationalMatrix r = RationalMatrix::identity(dim);
  for (const auto& l : w.letters()) {
    auto it = generators.find(l.name);
    if (it == generators.end())
      throw std::invalid_argument("unbound generator name: '" + l.name + "'");
    r = r * it->second.pow(l.exponent);
  }
  return r;
}

}  // namespace regulus
