#include "ncqo/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ncqo {

ModeTable::ModeTable(std::vector<ModeLabel> modes) {
  for (auto& m : modes) add(std::move(m));
}

const ModeLabel& ModeTable::add(ModeLabel mode) {
  if (mode.id.empty()) throw std::invalid_argument("mode id must be nonempty");
  if (!(mode.omega > 0.0))
    throw std::invalid_argument("mode '" + mode.id + "': omega must be > 0");
  if (index_.count(mode.id))
    throw std::invalid_argument("duplicate mode id '" + mode.id + "'");
  index_.emplace(mode.id, modes_.size());
  modes_.push_back(std::move(mode));
  return modes_.back();
}

bool ModeTable::contains(std::string_view id) const {
  return index_.find(id) != index_.end();
}

const ModeLabel& ModeTable::at(std::string_view id) const {
  return modes_[index_of(id)];
}

std::size_t ModeTable::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw UnknownMode("mode '" + std::string(id) + "' is not in the table");
  return it->second;
}

int OperatorWord::creator_count() const {
  return static_cast<int>(std::count_if(
      factors.begin(), factors.end(),
      [](const Generator& g) { return g.kind == GeneratorKind::Create; }));
}

int OperatorWord::annihilator_count() const {
  return static_cast<int>(std::count_if(
      factors.begin(), factors.end(),
      [](const Generator& g) { return g.kind == GeneratorKind::Annihilate; }));
}

int OperatorWord::imbalance() const {
  return creator_count() - annihilator_count();
}

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_name_char(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_id_char(char c) {
  return c != '(' && c != ')' && !is_space(c);
}

}  // namespace

std::vector<WordToken> lex_word(std::string_view text) {
  std::vector<WordToken> tokens;
  std::size_t pos = 0;
  const std::size_t n = text.size();

  while (pos < n && is_space(text[pos])) ++pos;
  if (pos == n) throw ParseError("expected at least one generator", pos);

  while (pos < n) {
    const std::size_t start = pos;
    std::size_t end = pos;
    while (end < n && is_name_char(text[end])) ++end;
    const std::string_view name = text.substr(start, end - start);

    GeneratorKind kind;
    if (name == "a") {
      kind = GeneratorKind::Annihilate;
    } else if (name == "ad") {
      kind = GeneratorKind::Create;
    } else if (name == "one") {
      kind = GeneratorKind::Unit;
    } else {
      throw ParseError("expected 'a', 'ad' or 'one', got '" +
                           std::string(name) + "'",
                       start);
    }

    pos = end;
    if (pos >= n || text[pos] != '(')
      throw ParseError("expected '(' after generator name", pos);
    ++pos;

    const std::size_t id_start = pos;
    while (pos < n && is_id_char(text[pos])) ++pos;
    if (pos == id_start) throw ParseError("expected mode id", pos);
    if (pos >= n || text[pos] != ')')
      throw ParseError("expected ')' after mode id", pos);

    tokens.push_back({kind, std::string(text.substr(id_start, pos - id_start)),
                      start});
    ++pos;

    while (pos < n && is_space(text[pos])) ++pos;
  }
  return tokens;
}

OperatorWord parse_word(std::string_view text, const ModeTable& table) {
  OperatorWord word;
  for (auto& tok : lex_word(text)) {
    if (!table.contains(tok.mode_id))
      throw UnknownMode("mode '" + tok.mode_id + "' is not in the table");
    word.factors.push_back({tok.kind, std::move(tok.mode_id)});
  }
  return word;
}

std::string to_string(const Generator& g) {
  switch (g.kind) {
    case GeneratorKind::Annihilate:
      return "a(" + g.mode + ")";
    case GeneratorKind::Create:
      return "ad(" + g.mode + ")";
    case GeneratorKind::Unit:
      return "one(" + g.mode + ")";
  }
  return {};
}

std::string to_string(const OperatorWord& word) {
  std::ostringstream out;
  if (word.coefficient != std::complex<double>(1.0, 0.0)) {
    out << "(" << word.coefficient.real() << (word.coefficient.imag() < 0 ? "-" : "+")
        << std::abs(word.coefficient.imag()) << "i) ";
  }
  bool first = true;
  for (const auto& g : word.factors) {
    if (!first) out << ' ';
    out << to_string(g);
    first = false;
  }
  if (word.factors.empty()) out << "1";
  return out.str();
}

}  // namespace ncqo
