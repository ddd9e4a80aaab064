#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace convseq {

// Machine-parseable failure categories. The CLI prints the category name and
// maps each one to a distinct exit status.
enum class ErrorCategory {
  Config,
  Decode,
  Dataset,
  Parse,
  Evaluation,
  Range,
  Io,
  Internal,
};

std::string_view category_name(ErrorCategory category) noexcept;
int exit_code(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

inline Error config_error(const std::string& msg) { return {ErrorCategory::Config, msg}; }
inline Error decode_error(const std::string& msg) { return {ErrorCategory::Decode, msg}; }
inline Error dataset_error(const std::string& msg) { return {ErrorCategory::Dataset, msg}; }
inline Error parse_error(const std::string& msg) { return {ErrorCategory::Parse, msg}; }
inline Error evaluation_error(const std::string& msg) { return {ErrorCategory::Evaluation, msg}; }
inline Error range_error(const std::string& msg) { return {ErrorCategory::Range, msg}; }
inline Error io_error(const std::string& msg) { return {ErrorCategory::Io, msg}; }
inline Error internal_error(const std::string& msg) { return {ErrorCategory::Internal, msg}; }

}  // namespace convseq
