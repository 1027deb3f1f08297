#pragma once

#include <map>
#include <string>
#include <vector>

#include "regulus/matrix.hpp"

namespace regulus {

/// Freely reduced word in named generators. Canonicalized on construction:
/// adjacent letters with the same name merge, zero exponents drop.
class GroupWord {
 public:
  struct Letter {
    std::string name;
    long exponent;  // nonzero
    bool operator==(const Letter&) const = default;
  };

  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);

  /// Parses whitespace-separated tokens `name` or `name^k`, k nonzero.
  static GroupWord parse(const std::string& text);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  /// Word length: sum of |exponent|.
  long length() const;

  GroupWord concat(const GroupWord& o) const;
  GroupWord inverse() const;
  GroupWord pow(long n) const;

  bool operator==(const GroupWord&) const = default;

  std::string str() const;

 private:
  void reduce();
  std::vector<Letter> letters_;
};

using GeneratorMap = std::map<std::string, RationalMatrix>;

/// Exact product of generator powers in word order.
RationalMatrix word_eval(const GeneratorMap& generators, const GroupWord& w);

}  // namespace regulus
