#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ncqo/errors.hpp"

namespace ncqo {

// Discrete field mode: opaque identifier plus angular frequency.
// Natural units throughout (hbar = c = k_B = 1).
struct ModeLabel {
  std::string id;
  double omega = 1.0;
};

class ModeTable {
 public:
  ModeTable() = default;
  explicit ModeTable(std::vector<ModeLabel> modes);

  // Rejects duplicate ids and non-positive frequencies.
  const ModeLabel& add(ModeLabel mode);

  bool contains(std::string_view id) const;
  const ModeLabel& at(std::string_view id) const;   // throws UnknownMode
  std::size_t index_of(std::string_view id) const;  // throws UnknownMode

  const std::vector<ModeLabel>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }

 private:
  std::vector<ModeLabel> modes_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace ncqo
