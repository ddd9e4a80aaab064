#include "convseq/error.hpp"

namespace convseq {

std::string_view category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Decode: return "decode";
    case ErrorCategory::Dataset: return "dataset";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Evaluation: return "evaluation";
    case ErrorCategory::Range: return "range";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Internal: return "internal";
  }
  return "internal";
}

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Decode: return 3;
    case ErrorCategory::Dataset: return 4;
    case ErrorCategory::Parse: return 5;
    case ErrorCategory::Evaluation: return 6;
    case ErrorCategory::Range: return 7;
    case ErrorCategory::Io: return 8;
    case ErrorCategory::Internal: return 9;
  }
  return 9;
}

}  // namespace convseq
