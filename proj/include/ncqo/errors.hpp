#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncqo {

// Domain error carrying a stable name; the CLI reports the name on exit 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error("ParseError",
              what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

#define NCQO_DEFINE_ERROR(NAME)                                      \
  class NAME : public Error {                                        \
   public:                                                           \
    explicit NAME(const std::string& what) : Error(#NAME, what) {}   \
  }

NCQO_DEFINE_ERROR(UnknownMode);
NCQO_DEFINE_ERROR(TermExplosion);
NCQO_DEFINE_ERROR(MomentTooLarge);
NCQO_DEFINE_ERROR(UnsupportedVacuum);
NCQO_DEFINE_ERROR(DimensionCap);
NCQO_DEFINE_ERROR(ZeroDenominator);
NCQO_DEFINE_ERROR(ConvergenceFailure);

#undef NCQO_DEFINE_ERROR

}  // namespace ncqo
