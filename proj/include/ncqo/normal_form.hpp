#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncqo/word.hpp"

namespace ncqo {

// One monomial of a normal-ordered polynomial: a scalar times symbolic unit
// powers times creators times annihilators (creators to the left). Unit
// powers are kept symbolic: one(m)^2 does not reduce to one(m), the unit
// elements are not idempotent away from the one-oscillator sector.
struct NormalTerm {
  std::complex<double> coefficient{0.0, 0.0};
  std::vector<std::pair<std::string, int>> units;  // sorted by id, power >= 1
  std::vector<std::string> creators;               // sorted multiset of ids
  std::vector<std::string> annihilators;           // sorted multiset of ids

  bool pure_unit() const { return creators.empty() && annihilators.empty(); }
  int degree() const {
    return static_cast<int>(creators.size()) -
           static_cast<int>(annihilators.size());
  }
};

struct RewriteOptions {
  std::size_t term_cap = 1'000'000;  // TermExplosion beyond this
};

// Canonical normal-ordered polynomial: terms sorted by (units, creators,
// annihilators), merged, zero coefficients dropped.
class NormalForm {
 public:
  NormalForm() = default;  // the zero polynomial

  static NormalForm identity();
  static NormalForm from_terms(std::vector<NormalTerm> terms,
                               const RewriteOptions& opts = {});

  const std::vector<NormalTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool zero() const { return terms_.empty(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  std::vector<NormalTerm> terms_;
};

// Rewrites the word into its unique normal form using
//   a(m) ad(m')  ->  ad(m') a(m) + delta_{mm'} one(m)
// with every one(m) central. Idempotent on already-normal input.
NormalForm normal_order(const OperatorWord& word,
                        const RewriteOptions& opts = {});
NormalForm normal_order(const NormalForm& form, const RewriteOptions& opts = {});

// Normal-ordered product; associative, identity element normal_order of the
// empty word.
NormalForm multiply(const NormalForm& lhs, const NormalForm& rhs,
                    const RewriteOptions& opts = {});

// Stable JSON shape:
// {"terms":[{"coeff":[re,im],"units":[[id,pow]...],
//            "creators":[id...],"annihilators":[id...]}]}
nlohmann::json to_json(const NormalForm& form);
NormalForm normal_form_from_json(const nlohmann::json& j);

std::string to_string(const NormalForm& form);

}  // namespace ncqo
