#pragma once

// Test-only canonical reference: a standard multimode Fock space with one
// independent oscillator per mode and [a, ad] = 1. Unit generators act as
// the identity here. Kept deliberately separate from the library so the
// canonical_vev implementation has an independent check.

#include <cmath>
#include <complex>
#include <vector>

#include "ncqo/word.hpp"

namespace ncqo::testing {

class CcrOracle {
 public:
  CcrOracle(const ModeTable& modes, int fock_dim)
      : modes_(modes), dim_per_mode_(fock_dim) {
    total_dim_ = 1;
    for (std::size_t m = 0; m < modes.size(); ++m) total_dim_ *= fock_dim;
  }

  std::complex<double> vacuum_expectation(const OperatorWord& word) const {
    std::vector<std::complex<double>> state(total_dim_, {0.0, 0.0});
    state[0] = 1.0;  // all modes in the ground state
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
      switch (it->kind) {
        case GeneratorKind::Annihilate:
          state = lower(state, modes_.index_of(it->mode));
          break;
        case GeneratorKind::Create:
          state = raise(state, modes_.index_of(it->mode));
          break;
        case GeneratorKind::Unit:
          break;  // canonical choice: the unit element is the scalar 1
      }
    }
    return word.coefficient * state[0];
  }

 private:
  std::size_t stride(std::size_t mode) const {
    std::size_t s = 1;
    for (std::size_t m = 0; m < mode; ++m) s *= dim_per_mode_;
    return s;
  }

  int level(std::size_t index, std::size_t mode) const {
    return static_cast<int>(index / stride(mode) % dim_per_mode_);
  }

  std::vector<std::complex<double>> lower(
      const std::vector<std::complex<double>>& v, std::size_t mode) const {
    std::vector<std::complex<double>> out(total_dim_, {0.0, 0.0});
    const std::size_t s = stride(mode);
    for (std::size_t i = 0; i < total_dim_; ++i) {
      const int n = level(i, mode);
      if (n > 0) out[i - s] += std::sqrt(static_cast<double>(n)) * v[i];
    }
    return out;
  }

  std::vector<std::complex<double>> raise(
      const std::vector<std::complex<double>>& v, std::size_t mode) const {
    std::vector<std::complex<double>> out(total_dim_, {0.0, 0.0});
    const std::size_t s = stride(mode);
    for (std::size_t i = 0; i < total_dim_; ++i) {
      const int n = level(i, mode);
      if (n < static_cast<int>(dim_per_mode_) - 1)
        out[i + s] += std::sqrt(static_cast<double>(n + 1)) * v[i];
    }
    return out;
  }

  const ModeTable& modes_;
  std::size_t dim_per_mode_;
  std::size_t total_dim_;
};

}  // namespace ncqo::testing
