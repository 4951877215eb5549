#pragma once

#include <stdexcept>
#include <string>

namespace lscd {

/// Broad failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
  Config,           // invalid or incompatible run configuration
  Format,           // malformed input file or dangling references
  UndefinedMetric,  // metric undefined on the given data
  DegenerateInput,  // measure undefined on the given data (empty period, zero vector)
  Shape,            // array dimensions disagree
  CorruptStore,     // embedding store failed validation
  Contract,         // caller broke a precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LSCD_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

LSCD_DEFINE_ERROR(ConfigError, Config)
LSCD_DEFINE_ERROR(FormatError, Format)
LSCD_DEFINE_ERROR(UndefinedMetricError, UndefinedMetric)
LSCD_DEFINE_ERROR(DegenerateInputError, DegenerateInput)
LSCD_DEFINE_ERROR(ShapeError, Shape)
LSCD_DEFINE_ERROR(ContractError, Contract)

#undef LSCD_DEFINE_ERROR

class CorruptStoreError : public Error {
 public:
  CorruptStoreError(const std::string& what, std::size_t offset)
      : Error(ErrorKind::CorruptStore, what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// CLI exit status: 0 success, 2 config, 3 data format, 4 undefined metric.
int exit_code(ErrorKind kind) noexcept;

}  // namespace lscd
