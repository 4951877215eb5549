#include "lscd/error.hpp"

namespace lscd {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Format:
    case ErrorKind::CorruptStore:
    case ErrorKind::Shape:
      return 3;
    case ErrorKind::UndefinedMetric:
    case ErrorKind::DegenerateInput:
      return 4;
    case ErrorKind::Contract:
      return 1;
  }
  return 1;
}

}  // namespace lscd
