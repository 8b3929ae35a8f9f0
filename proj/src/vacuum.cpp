#include "ncqo/vacuum.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

namespace ncqo {

VacuumSpec::VacuumSpec(ModeTable table, std::map<int, double> number_dist,
                       std::map<std::string, std::complex<double>> profile,
                       VacuumOptions options)
    : table_(std::move(table)), p_(std::move(number_dist)) {
  for (auto& [id, amp] : profile) {
    if (!table_.contains(id))
      throw UnknownMode("profile mode '" + id + "' is not in the table");
    profile_.emplace(id, amp);
  }

  double p_total = 0.0;
  for (const auto& [n, pn] : p_) {
    if (n < 1)
      throw UnsupportedVacuum("oscillator numbers must satisfy n >= 1, got " +
                              std::to_string(n));
    if (pn < 0.0)
      throw UnsupportedVacuum("negative probability p_" + std::to_string(n));
    p_total += pn;
  }
  if (p_.empty() || p_total <= 0.0)
    throw UnsupportedVacuum("empty oscillator-number distribution");

  double profile_norm = 0.0;
  for (const auto& [id, amp] : profile_) profile_norm += std::norm(amp);
  if (profile_norm <= 0.0)
    throw UnsupportedVacuum("vacuum profile has zero norm");

  if (options.renormalize) {
    for (auto& [n, pn] : p_) pn /= p_total;
    const double scale = 1.0 / std::sqrt(profile_norm);
    for (auto& [id, amp] : profile_) amp *= scale;
  } else {
    if (std::abs(p_total - 1.0) > options.tolerance)
      throw UnsupportedVacuum("oscillator-number probabilities sum to " +
                              std::to_string(p_total) + ", expected 1");
    if (std::abs(profile_norm - 1.0) > options.tolerance)
      throw UnsupportedVacuum("profile norm is " +
                              std::to_string(profile_norm) + ", expected 1");
  }
}

VacuumSpec VacuumSpec::geometric(
    ModeTable table, double ratio, int max_n,
    std::map<std::string, std::complex<double>> profile,
    VacuumOptions options) {
  if (!(ratio > 0.0) || ratio >= 1.0)
    throw UnsupportedVacuum("geometric ratio must lie in (0, 1)");
  if (max_n < 1) throw UnsupportedVacuum("geometric max_n must be >= 1");
  std::map<int, double> p;
  double total = 0.0;
  double term = 1.0;
  for (int n = 1; n <= max_n; ++n, term *= ratio) {
    p[n] = term;
    total += term;
  }
  for (auto& [n, pn] : p) pn /= total;
  return VacuumSpec(std::move(table), std::move(p), std::move(profile),
                    options);
}

VacuumSpec VacuumSpec::from_json(const nlohmann::json& j) {
  std::map<int, double> p;
  for (const auto& [key, value] : j.at("p").items()) {
    std::size_t consumed = 0;
    const int n = std::stoi(key, &consumed);
    if (consumed != key.size())
      throw UnsupportedVacuum("bad oscillator-number key '" + key + "'");
    p[n] = value.get<double>();
  }
  ModeTable table;
  std::map<std::string, std::complex<double>> profile;
  for (const auto& entry : j.at("profile")) {
    ModeLabel mode;
    mode.id = entry.at("id").get<std::string>();
    mode.omega = entry.value("omega", 1.0);
    table.add(mode);
    profile[mode.id] = {entry.value("re", 0.0), entry.value("im", 0.0)};
  }
  VacuumOptions options;
  options.renormalize = j.value("renormalize", false);
  return VacuumSpec(std::move(table), std::move(p), std::move(profile),
                    options);
}

nlohmann::json VacuumSpec::to_json() const {
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [n, pn] : p_) p[std::to_string(n)] = pn;
  nlohmann::json profile = nlohmann::json::array();
  for (const auto& mode : table_.modes()) {
    const auto amp = amplitude(mode.id);
    profile.push_back({{"id", mode.id},
                       {"omega", mode.omega},
                       {"re", amp.real()},
                       {"im", amp.imag()}});
  }
  return {{"p", p}, {"profile", profile}, {"renormalize", false}};
}

int VacuumSpec::max_oscillator_number() const {
  return p_.empty() ? 0 : p_.rbegin()->first;
}

std::complex<double> VacuumSpec::amplitude(std::string_view id) const {
  auto it = profile_.find(id);
  return it == profile_.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

double VacuumSpec::weight(std::string_view id) const {
  return std::norm(amplitude(id));
}

double VacuumSpec::inv_n_moment(int k) const {
  if (k < 0) throw std::invalid_argument("inv_n_moment: k must be >= 0");
  double sum = 0.0;
  for (const auto& [n, pn] : p_)
    sum += pn / std::pow(static_cast<double>(n), k);
  return sum;
}

int MomentRequest::total_power() const {
  int total = 0;
  for (const auto& [id, power] : powers) {
    if (power < 1)
      throw std::invalid_argument("moment powers must be positive");
    total += power;
  }
  return total;
}

MomentRequest MomentRequest::single(std::string id, int power) {
  MomentRequest req;
  req.powers[std::move(id)] = power;
  return req;
}

namespace {

// Enumerates set partitions of the unit-factor slots in restricted-growth
// order, pruning blocks that mix modes (their oscillator factor vanishes).
// Each leaf contributes fall[#blocks] * prod_over_blocks |O_block|^2, where
// fall[b] = sum_n p_n n(n-1)...(n-b+1) / n^k counts injective assignments
// of blocks to oscillators.
struct PartitionSum {
  const std::vector<int>& slot_mode;
  const std::vector<double>& slot_weight;
  const std::vector<double>& fall;
  std::vector<int> block_mode;
  double total = 0.0;

  void recurse(std::size_t slot, double product) {
    if (product == 0.0) return;
    if (slot == slot_mode.size()) {
      total += fall[block_mode.size()] * product;
      return;
    }
    const int mode = slot_mode[slot];
    for (std::size_t b = 0; b < block_mode.size(); ++b) {
      if (block_mode[b] == mode) recurse(slot + 1, product);
    }
    block_mode.push_back(mode);
    recurse(slot + 1, product * slot_weight[slot]);
    block_mode.pop_back();
  }
};

}  // namespace

double unit_moment(const VacuumSpec& vac, const MomentRequest& req,
                   const MomentOptions& opts) {
  const int k = req.total_power();
  if (k == 0) return 1.0;
  if (k > opts.power_cap)
    throw MomentTooLarge("total unit power " + std::to_string(k) +
                         " exceeds cap " + std::to_string(opts.power_cap));

  std::vector<int> slot_mode;
  std::vector<double> slot_weight;
  for (const auto& [id, power] : req.powers) {
    const int mode_index = static_cast<int>(vac.table().index_of(id));
    const double w = vac.weight(id);
    for (int i = 0; i < power; ++i) {
      slot_mode.push_back(mode_index);
      slot_weight.push_back(w);
    }
  }

  // fall[b] = sum_n p_n n^(b) / n^k (falling factorial; zero once b > n).
  std::vector<double> fall(static_cast<std::size_t>(k) + 1, 0.0);
  for (const auto& [n, pn] : vac.number_distribution()) {
    const double nk = std::pow(static_cast<double>(n), k);
    double ff = 1.0;
    for (int b = 1; b <= k && b <= n; ++b) {
      ff *= static_cast<double>(n - b + 1);
      fall[b] += pn * ff / nk;
    }
  }

  PartitionSum sum{slot_mode, slot_weight, fall, {}, 0.0};
  sum.recurse(0, 1.0);
  return sum.total;
}

double nphoton_norm(const VacuumSpec& vac, std::string_view mode,
                    int photon_count, const MomentOptions& opts) {
  if (photon_count < 1)
    throw std::invalid_argument("photon count must be positive");
  return unit_moment(vac, MomentRequest::single(std::string(mode), photon_count),
                     opts);
}

std::complex<double> vev(const VacuumSpec& vac, const NormalForm& form,
                         const MomentOptions& opts) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& term : form.terms()) {
    if (!term.pure_unit()) continue;  // annihilators kill the vacuum
    MomentRequest req;
    for (const auto& [id, power] : term.units) req.powers[id] = power;
    sum += term.coefficient * unit_moment(vac, req, opts);
  }
  return sum;
}

}  // namespace ncqo
