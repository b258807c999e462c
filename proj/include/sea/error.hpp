#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sea {

// Coarse error classes; the CLI reports these as machine-readable categories.
enum class ErrorCategory { kConfig, kIo, kNumeric, kAnalysis };

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace sea
