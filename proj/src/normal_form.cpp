#include "ncqo/normal_form.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace ncqo {

namespace {

using Complex = std::complex<double>;
using UnitPowers = std::vector<std::pair<std::string, int>>;
using TermKey = std::tuple<UnitPowers, std::vector<std::string>,
                           std::vector<std::string>>;

// In-flight term during rewriting: central units pulled out, remaining
// factors are creators/annihilators only.
struct WorkTerm {
  Complex coefficient;
  std::map<std::string, int> units;
  std::vector<Generator> factors;
};

UnitPowers to_unit_powers(const std::map<std::string, int>& units) {
  UnitPowers out(units.begin(), units.end());
  return out;  // std::map iteration is already id-sorted
}

class Accumulator {
 public:
  explicit Accumulator(std::size_t cap) : cap_(cap) {}

  void add(TermKey key, Complex coefficient) {
    auto [it, inserted] = merged_.try_emplace(std::move(key), coefficient);
    if (!inserted) it->second += coefficient;
    if (merged_.size() > cap_)
      throw TermExplosion("normal form exceeds " + std::to_string(cap_) +
                          " terms");
  }

  NormalForm take() {
    std::vector<NormalTerm> terms;
    terms.reserve(merged_.size());
    for (auto& [key, coeff] : merged_) {
      if (coeff == Complex{0.0, 0.0}) continue;
      NormalTerm t;
      t.coefficient = coeff;
      t.units = std::get<0>(key);
      t.creators = std::get<1>(key);
      t.annihilators = std::get<2>(key);
      terms.push_back(std::move(t));
    }
    return NormalForm::from_terms(std::move(terms));
  }

 private:
  std::size_t cap_;
  std::map<TermKey, Complex> merged_;
};

void reduce_term(WorkTerm seed, Accumulator& acc, const RewriteOptions& opts) {
  std::vector<WorkTerm> stack;
  stack.push_back(std::move(seed));

  while (!stack.empty()) {
    WorkTerm t = std::move(stack.back());
    stack.pop_back();
    if (stack.size() > opts.term_cap)
      throw TermExplosion("rewrite frontier exceeds " +
                          std::to_string(opts.term_cap) + " terms");

    // Rightmost adjacent (annihilator, creator) pair.
    std::size_t swap_at = t.factors.size();
    for (std::size_t i = t.factors.size(); i-- > 1;) {
      if (t.factors[i - 1].kind == GeneratorKind::Annihilate &&
          t.factors[i].kind == GeneratorKind::Create) {
        swap_at = i - 1;
        break;
      }
    }

    if (swap_at == t.factors.size()) {
      // Already of the form ad... a...; canonicalize and merge.
      std::vector<std::string> creators;
      std::vector<std::string> annihilators;
      for (auto& g : t.factors) {
        (g.kind == GeneratorKind::Create ? creators : annihilators)
            .push_back(std::move(g.mode));
      }
      std::sort(creators.begin(), creators.end());
      std::sort(annihilators.begin(), annihilators.end());
      acc.add({to_unit_powers(t.units), std::move(creators),
               std::move(annihilators)},
              t.coefficient);
      continue;
    }

    const bool same_mode =
        t.factors[swap_at].mode == t.factors[swap_at + 1].mode;
    if (same_mode) {
      WorkTerm contracted = t;
      contracted.units[t.factors[swap_at].mode] += 1;
      contracted.factors.erase(contracted.factors.begin() + swap_at,
                               contracted.factors.begin() + swap_at + 2);
      stack.push_back(std::move(contracted));
    }
    std::swap(t.factors[swap_at], t.factors[swap_at + 1]);
    stack.push_back(std::move(t));
  }
}

}  // namespace

NormalForm NormalForm::identity() {
  NormalTerm t;
  t.coefficient = {1.0, 0.0};
  return from_terms({t});
}

NormalForm NormalForm::from_terms(std::vector<NormalTerm> terms,
                                  const RewriteOptions& opts) {
  std::map<TermKey, Complex> merged;
  for (auto& t : terms) {
    std::sort(t.units.begin(), t.units.end());
    std::sort(t.creators.begin(), t.creators.end());
    std::sort(t.annihilators.begin(), t.annihilators.end());
    TermKey key{std::move(t.units), std::move(t.creators),
                std::move(t.annihilators)};
    auto [it, inserted] = merged.try_emplace(std::move(key), t.coefficient);
    if (!inserted) it->second += t.coefficient;
  }
  if (merged.size() > opts.term_cap)
    throw TermExplosion("normal form exceeds " +
                        std::to_string(opts.term_cap) + " terms");
  NormalForm form;
  for (auto& [key, coeff] : merged) {
    if (coeff == Complex{0.0, 0.0}) continue;
    NormalTerm t;
    t.coefficient = coeff;
    t.units = std::get<0>(key);
    t.creators = std::get<1>(key);
    t.annihilators = std::get<2>(key);
    form.terms_.push_back(std::move(t));
  }
  return form;
}

NormalForm normal_order(const OperatorWord& word, const RewriteOptions& opts) {
  WorkTerm seed;
  seed.coefficient = word.coefficient;
  for (const auto& g : word.factors) {
    if (g.kind == GeneratorKind::Unit) {
      seed.units[g.mode] += 1;  // central: commutes past everything
    } else {
      seed.factors.push_back(g);
    }
  }
  Accumulator acc(opts.term_cap);
  reduce_term(std::move(seed), acc, opts);
  return acc.take();
}

NormalForm normal_order(const NormalForm& form, const RewriteOptions& opts) {
  Accumulator acc(opts.term_cap);
  for (const auto& term : form.terms()) {
    WorkTerm seed;
    seed.coefficient = term.coefficient;
    for (const auto& [id, power] : term.units) seed.units[id] = power;
    for (const auto& id : term.creators)
      seed.factors.push_back({GeneratorKind::Create, id});
    for (const auto& id : term.annihilators)
      seed.factors.push_back({GeneratorKind::Annihilate, id});
    reduce_term(std::move(seed), acc, opts);
  }
  return acc.take();
}

NormalForm multiply(const NormalForm& lhs, const NormalForm& rhs,
                    const RewriteOptions& opts) {
  Accumulator acc(opts.term_cap);
  for (const auto& l : lhs.terms()) {
    for (const auto& r : rhs.terms()) {
      WorkTerm seed;
      seed.coefficient = l.coefficient * r.coefficient;
      for (const auto& [id, power] : l.units) seed.units[id] += power;
      for (const auto& [id, power] : r.units) seed.units[id] += power;
      // Operator order: l.creators l.annihilators r.creators r.annihilators.
      for (const auto& id : l.creators)
        seed.factors.push_back({GeneratorKind::Create, id});
      for (const auto& id : l.annihilators)
        seed.factors.push_back({GeneratorKind::Annihilate, id});
      for (const auto& id : r.creators)
        seed.factors.push_back({GeneratorKind::Create, id});
      for (const auto& id : r.annihilators)
        seed.factors.push_back({GeneratorKind::Annihilate, id});
      reduce_term(std::move(seed), acc, opts);
    }
  }
  return acc.take();
}

nlohmann::json to_json(const NormalForm& form) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : form.terms()) {
    nlohmann::json units = nlohmann::json::array();
    for (const auto& [id, power] : t.units)
      units.push_back(nlohmann::json::array({id, power}));
    terms.push_back({{"coeff", {t.coefficient.real(), t.coefficient.imag()}},
                     {"units", units},
                     {"creators", t.creators},
                     {"annihilators", t.annihilators}});
  }
  return {{"terms", terms}};
}

NormalForm normal_form_from_json(const nlohmann::json& j) {
  std::vector<NormalTerm> terms;
  for (const auto& jt : j.at("terms")) {
    NormalTerm t;
    const auto& coeff = jt.at("coeff");
    t.coefficient = {coeff.at(0).get<double>(), coeff.at(1).get<double>()};
    for (const auto& ju : jt.at("units"))
      t.units.emplace_back(ju.at(0).get<std::string>(), ju.at(1).get<int>());
    t.creators = jt.at("creators").get<std::vector<std::string>>();
    t.annihilators = jt.at("annihilators").get<std::vector<std::string>>();
    terms.push_back(std::move(t));
  }
  return NormalForm::from_terms(std::move(terms));
}

std::string to_string(const NormalForm& form) {
  if (form.zero()) return "0";
  std::ostringstream out;
  bool first_term = true;
  for (const auto& t : form.terms()) {
    if (!first_term) out << " + ";
    first_term = false;
    const Complex c = t.coefficient;
    if (c.imag() == 0.0) {
      out << c.real();
    } else {
      out << "(" << c.real() << (c.imag() < 0 ? "-" : "+")
          << std::abs(c.imag()) << "i)";
    }
    for (const auto& [id, power] : t.units) {
      out << " one(" << id << ")";
      if (power > 1) out << "^" << power;
    }
    for (const auto& id : t.creators) out << " ad(" << id << ")";
    for (const auto& id : t.annihilators) out << " a(" << id << ")";
  }
  return out.str();
}

}  // namespace ncqo
