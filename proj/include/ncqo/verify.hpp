#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncqo/oracle.hpp"
#include "ncqo/xfactor.hpp"

namespace ncqo {

struct AgreementCase {
  std::string word;
  Complex symbolic{0.0, 0.0};
  Complex matrix{0.0, 0.0};
  double abs_error = 0.0;
  bool pass = false;
};

struct AgreementReport {
  std::vector<AgreementCase> cases;
  double max_abs_error = 0.0;
  bool all_pass = true;
};

// Seeded random words over the oracle's modes, each evaluated twice: the
// symbolic route (normal ordering + set-partition moments) against the
// dense-matrix route. Word generation is reproducible from the seed alone.
AgreementReport run_agreement_suite(const FockOracle& oracle,
                                    const VacuumSpec& vacuum, int word_count,
                                    std::uint64_t seed,
                                    double tolerance = 1e-10,
                                    int max_length = 6);

}  // namespace ncqo
