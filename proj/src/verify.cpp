#include "ncqo/verify.hpp"

#include <random>

namespace ncqo {

namespace {

// mt19937_64 with modular draws: the raw output sequence is pinned by the
// standard, so suites are byte-reproducible across platforms.
struct WordSampler {
  std::mt19937_64 engine;
  const ModeTable& modes;
  int max_length;

  OperatorWord next(int max_creators) {
    while (true) {
      OperatorWord word;
      const int length =
          1 + static_cast<int>(engine() % static_cast<std::uint64_t>(max_length));
      for (int i = 0; i < length; ++i) {
        Generator g;
        switch (engine() % 5) {
          case 0:
          case 1:
            g.kind = GeneratorKind::Annihilate;
            break;
          case 2:
          case 3:
            g.kind = GeneratorKind::Create;
            break;
          default:
            g.kind = GeneratorKind::Unit;
            break;
        }
        g.mode = modes.modes()[engine() % modes.size()].id;
        word.factors.push_back(std::move(g));
      }
      if (word.creator_count() < max_creators) return word;
    }
  }
};

}  // namespace

AgreementReport run_agreement_suite(const FockOracle& oracle,
                                    const VacuumSpec& vacuum, int word_count,
                                    std::uint64_t seed, double tolerance,
                                    int max_length) {
  WordSampler sampler{std::mt19937_64(seed), oracle.config().modes,
                      max_length};
  AgreementReport report;
  report.cases.reserve(static_cast<std::size_t>(word_count));
  for (int i = 0; i < word_count; ++i) {
    const OperatorWord word = sampler.next(oracle.config().fock_dim);
    AgreementCase item;
    item.word = to_string(word);
    item.symbolic = vev(vacuum, normal_order(word));
    item.matrix = oracle.vev_oracle(vacuum, word);
    item.abs_error = std::abs(item.symbolic - item.matrix);
    item.pass = item.abs_error < tolerance;
    report.max_abs_error = std::max(report.max_abs_error, item.abs_error);
    report.all_pass = report.all_pass && item.pass;
    report.cases.push_back(std::move(item));
  }
  return report;
}

}  // namespace ncqo
