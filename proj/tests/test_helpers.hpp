#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ncqo/vacuum.hpp"
#include "ncqo/word.hpp"

namespace ncqo::testing {

inline ModeTable two_modes() {
  return ModeTable{{{"k1", 1.0}, {"k2", 1.7}}};
}

inline VacuumSpec sample_vacuum(ModeTable table = two_modes()) {
  // Complex profile on purpose, to exercise conjugation in the oracles.
  return VacuumSpec(std::move(table), {{1, 0.3}, {2, 0.5}, {3, 0.2}},
                    {{"k1", {0.8, 0.0}}, {"k2", {0.0, 0.6}}});
}

// Enumerates every word of the given length over the generator alphabet.
inline void for_each_word(
    const std::vector<Generator>& alphabet, int max_length,
    const std::function<void(const OperatorWord&)>& visit) {
  OperatorWord word;
  std::function<void(int)> recurse = [&](int remaining) {
    if (!word.factors.empty()) visit(word);
    if (remaining == 0) return;
    for (const auto& g : alphabet) {
      word.factors.push_back(g);
      recurse(remaining - 1);
      word.factors.pop_back();
    }
  };
  recurse(max_length);
}

inline std::vector<Generator> ladder_alphabet(const ModeTable& table) {
  std::vector<Generator> out;
  for (const auto& mode : table.modes()) {
    out.push_back({GeneratorKind::Annihilate, mode.id});
    out.push_back({GeneratorKind::Create, mode.id});
  }
  return out;
}

inline std::vector<Generator> full_alphabet(const ModeTable& table) {
  auto out = ladder_alphabet(table);
  for (const auto& mode : table.modes())
    out.push_back({GeneratorKind::Unit, mode.id});
  return out;
}

// Deterministic word sampler for property tests (mt19937_64 raw draws).
struct RandomWords {
  std::mt19937_64 engine;
  std::vector<Generator> alphabet;

  OperatorWord next(int max_length) {
    OperatorWord word;
    const int length = 1 + static_cast<int>(
                               engine() % static_cast<std::uint64_t>(max_length));
    for (int i = 0; i < length; ++i)
      word.factors.push_back(alphabet[engine() % alphabet.size()]);
    return word;
  }
};

}  // namespace ncqo::testing
