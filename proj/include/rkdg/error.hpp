#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace rkdg {

/// Raised when a caller violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for numerical breakdown: singular solves, divergence, failed
/// iterations, CFL violations in strict mode.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Process-wide sink for non-fatal diagnostics (CFL guard, low-degree
/// ultra-weak assembly). Defaults to stderr; an empty sink restores that.
using WarningSink = std::function<void(const std::string&)>;
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace rkdg
