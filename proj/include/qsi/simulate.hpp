#pragma once

#include <map>
#include <vector>

#include "qsi/protocol.hpp"

namespace qsi {

struct TrialOutcome {
  bool ok = false;
  bool agree = false;
  ErrorKind error = ErrorKind::InvariantViolation;  // meaningful when !ok
  int attempts = 0;
  std::map<ErrorKind, int> rejections;  // words the responder threw away
  double seconds = 0;
};

struct SimulationStats {
  std::uint64_t q = 0;
  int m = 0;
  int version = 1;
  std::vector<TrialOutcome> trials;  // in trial order

  std::size_t completed() const;
  std::size_t agreed() const;
  std::size_t errored() const;
  std::map<ErrorKind, std::size_t> errors() const;
  /// Rejected responder words of one kind over all words drawn.
  double rejection_rate(ErrorKind kind) const;
  int total_attempts() const;
  double total_seconds() const;
};

/// Trial i uses keygen and respond seeds drawn from split("trial", i) of the root
/// stream, so results do not depend on `jobs`.
SimulationStats simulate(std::uint64_t q, int m, int version, std::size_t trials, std::uint64_t seed,
                         unsigned jobs = 1);

}  // namespace qsi
