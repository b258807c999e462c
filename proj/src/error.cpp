#include "sea/error.hpp"

namespace sea {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kConfig:
      return "config";
    case ErrorCategory::kIo:
      return "io";
    case ErrorCategory::kNumeric:
      return "numeric";
    case ErrorCategory::kAnalysis:
      return "analysis";
  }
  return "unknown";
}

}  // namespace sea
