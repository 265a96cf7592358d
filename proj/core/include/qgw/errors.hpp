#pragma once

#include <stdexcept>
#include <string>

namespace qgw {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidParams : public Error { using Error::Error; };

/// Ground-state iteration hit the cap; message carries the residual.
class NoConvergence : public Error { using Error::Error; };

/// Top Fock state carries more weight than the truncation tolerance.
class UnderTruncated : public Error { using Error::Error; };

/// Chemical potential outside the requested Mott lobe.
class OutOfLobe : public Error { using Error::Error; };

/// Density root-find could not bracket the target filling.
class NoBracket : public Error { using Error::Error; };

/// Complex Bogoliubov frequency: the underlying state is not a minimum.
class DynamicallyUnstable : public Error { using Error::Error; };

/// Requested gamma2 evaluation mode not available at this size.
class ModeUnavailable : public Error { using Error::Error; };

/// Input density matrix is not a valid state.
class InvalidState : public Error { using Error::Error; };

/// N+ vanished while N- did not; the time grid cannot resolve the echo.
class DegenerateEcho : public Error { using Error::Error; };

/// Oracle bath kind/dimension combination without a reference expression.
class Unsupported : public Error { using Error::Error; };

/// Power-law fit window contains non-positive samples.
class NonPositive : public Error { using Error::Error; };

/// Plot emission asked for a series file that does not exist.
class MissingSeries : public Error { using Error::Error; };

class ConfigError : public Error { using Error::Error; };

}  // namespace qgw
