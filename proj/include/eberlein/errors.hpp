#pragma once

#include <stdexcept>
#include <string>

namespace eberlein {

struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Enumeration hit its cap before closing.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A table-level check was asked of a truncated enumeration.
struct IncompleteTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Witness scan exhausted its search bound (scale problem, not a math failure).
struct WitnessCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The joint placement search exhausted its whole candidate space: certifies
/// that no witness exists among scan-window values and door constructions,
/// as opposed to running out of budget.
struct NoWitnessInRange : WitnessCapExceeded {
  using WitnessCapExceeded::WitnessCapExceeded;
};

struct NotBijectiveOnSupport : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RealignmentFailed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedRelation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotIndiscernible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SequenceNotIndiscernible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EtaNotFixed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WindowTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApproximationTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterated-limit detection failed to settle: inconclusive, not a
/// counterexample.
struct TailNotStabilized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eberlein
