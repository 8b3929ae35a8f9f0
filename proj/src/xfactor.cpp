#include "ncqo/xfactor.hpp"

#include <cmath>

namespace ncqo {

std::complex<double> canonical_vev(const NormalForm& form) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& term : form.terms()) {
    if (term.pure_unit()) sum += term.coefficient;
  }
  return sum;
}

std::complex<double> canonical_vev(const OperatorWord& word,
                                   const RewriteOptions& opts) {
  return canonical_vev(normal_order(word, opts));
}

XFactorReport xfactor(const VacuumSpec& vac, const OperatorWord& word,
                      const MomentOptions& moments,
                      const RewriteOptions& rewrite) {
  const NormalForm form = normal_order(word, rewrite);
  XFactorReport report;
  report.canonical = canonical_vev(form);
  report.noncanonical = vev(vac, form, moments);
  // The rewrite only ever adds terms with nonnegative integer coefficients,
  // so a vanishing canonical value means no pure-unit term exists at all.
  report.vanishing = report.canonical == std::complex<double>{0.0, 0.0};
  if (!report.vanishing)
    report.ratio = report.noncanonical / report.canonical;
  return report;
}

FlatVacuum::FlatVacuum(int mode_count, double omega_max)
    : amplitude_(1.0 / std::sqrt(static_cast<double>(mode_count))),
      mode_count_(mode_count),
      omega_max_(omega_max) {
  if (mode_count < 1)
    throw std::invalid_argument("flat vacuum needs at least one mode");
  if (!(omega_max > 0.0))
    throw std::invalid_argument("flat vacuum cutoff must be positive");
}

FlatVacuum::FlatVacuum(double amplitude, int mode_count, double omega_max)
    : FlatVacuum(mode_count, omega_max) {
  if (std::abs(amplitude * amplitude * mode_count - 1.0) > 1e-12)
    throw std::invalid_argument(
        "flat vacuum normalization violated: C^2 M must equal 1");
  amplitude_ = amplitude;
}

ModeTable FlatVacuum::table() const {
  ModeTable table;
  for (int j = 1; j <= mode_count_; ++j) {
    table.add({"f" + std::to_string(j),
               omega_max_ * static_cast<double>(j) / mode_count_});
  }
  return table;
}

VacuumSpec FlatVacuum::vacuum(std::map<int, double> number_dist,
                              VacuumOptions options) const {
  std::map<std::string, std::complex<double>> profile;
  for (const auto& mode : table().modes()) profile[mode.id] = amplitude_;
  return VacuumSpec(table(), std::move(number_dist), std::move(profile),
                    options);
}

double renormalize_coupling(const FlatVacuum& flat, double bare_e_over_m) {
  return flat.amplitude() * bare_e_over_m;
}

EmissionProcess EmissionProcess::n_photon_same(int n, std::string mode) {
  return {Kind::NPhotonSame, n, std::move(mode), {}};
}

EmissionProcess EmissionProcess::two_different(std::string mode,
                                               std::string partner) {
  return {Kind::TwoDifferent, 1, std::move(mode), std::move(partner)};
}

EmissionProcess EmissionProcess::stimulated(int n, std::string mode) {
  return {Kind::Stimulated, n, std::move(mode), {}};
}

double emission_factor(const VacuumSpec& vac, const EmissionProcess& process,
                       const MomentOptions& opts) {
  switch (process.kind) {
    case EmissionProcess::Kind::NPhotonSame:
      return std::sqrt(nphoton_norm(vac, process.mode, process.photon_count,
                                    opts));
    case EmissionProcess::Kind::TwoDifferent: {
      if (process.mode == process.partner_mode)
        throw std::invalid_argument(
            "two-photon different-mode emission needs distinct modes");
      MomentRequest req;
      req.powers[process.mode] = 1;
      req.powers[process.partner_mode] = 1;
      return std::sqrt(unit_moment(vac, req, opts));
    }
    case EmissionProcess::Kind::Stimulated: {
      const double denom =
          nphoton_norm(vac, process.mode, process.photon_count, opts);
      if (denom == 0.0)
        throw ZeroDenominator("stimulated emission on mode '" + process.mode +
                              "': <one^" +
                              std::to_string(process.photon_count) +
                              "> vanishes");
      const double numer =
          nphoton_norm(vac, process.mode, process.photon_count + 1, opts);
      return std::sqrt(numer / denom);
    }
  }
  throw std::logic_error("unreachable emission process kind");
}

namespace {

OperatorWord pattern_word(const std::string& pattern, const std::string& l,
                          const std::string& p) {
  // pattern characters: '0' annihilator, '1' creator; modes by parallel list.
  OperatorWord word;
  for (std::size_t i = 0; i < pattern.size() / 2; ++i) {
    const char op = pattern[i];
    const char mode_tag = pattern[pattern.size() / 2 + i];
    word.factors.push_back(
        {op == '0' ? GeneratorKind::Annihilate : GeneratorKind::Create,
         mode_tag == 'l' ? l : p});
  }
  return word;
}

}  // namespace

std::vector<LabeledXFactor> decay_series_factors(const VacuumSpec& vac,
                                                 int order,
                                                 const MomentOptions& opts) {
  if (order != 2 && order != 4)
    throw std::invalid_argument("decay series factors exist at orders 2 and 4");

  const auto& modes = vac.table().modes();
  if (modes.empty()) throw std::invalid_argument("vacuum has no modes");
  const std::string l = modes.front().id;

  std::vector<std::pair<std::string, std::string>> patterns;
  if (order == 2) {
    patterns = {{"X01_ll", "01ll"}};
  } else {
    if (modes.size() < 2)
      throw std::invalid_argument(
          "order-4 mode patterns need at least two modes");
    patterns = {{"X0101_llll", "0101llll"},
                {"X0101_llpp", "0101llpp"},
                {"X0011_llll", "0011llll"},
                {"X0011_lplp", "0011lplp"}};
  }
  const std::string p = modes.size() > 1 ? modes[1].id : l;

  std::vector<LabeledXFactor> out;
  for (const auto& [label, encoded] : patterns) {
    const OperatorWord word = pattern_word(encoded, l, p);
    out.push_back({label, to_string(word), xfactor(vac, word, opts)});
  }
  return out;
}

}  // namespace ncqo
