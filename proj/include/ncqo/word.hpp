#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ncqo/modes.hpp"

namespace ncqo {

// Generators of the mode algebra: a(mode), ad(mode) and the central unit
// element one(mode) appearing on the right-hand side of [a, ad].
enum class GeneratorKind { Annihilate, Create, Unit };

struct Generator {
  GeneratorKind kind = GeneratorKind::Annihilate;
  std::string mode;

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

// Product of generators with a scalar prefactor, in left-to-right operator
// order. An empty factor list with coefficient 1 is the identity.
struct OperatorWord {
  std::vector<Generator> factors;
  std::complex<double> coefficient{1.0, 0.0};

  int creator_count() const;
  int annihilator_count() const;
  // #creators - #annihilators; conserved termwise under normal ordering.
  int imbalance() const;
};

struct WordToken {
  GeneratorKind kind = GeneratorKind::Annihilate;
  std::string mode_id;
  std::size_t offset = 0;  // byte offset of the token start
};

// Grammar:  word := item+ ; item := "a(" id ")" | "ad(" id ")" | "one(" id ")"
// Items may be whitespace-separated or adjacent. Ids run up to the closing
// parenthesis and may not contain whitespace or parentheses.
std::vector<WordToken> lex_word(std::string_view text);

// Lexes and resolves every mode id against the table.
// Throws ParseError (with byte offset) or UnknownMode.
OperatorWord parse_word(std::string_view text, const ModeTable& table);

std::string to_string(const Generator& g);
std::string to_string(const OperatorWord& word);

}  // namespace ncqo
