#pragma once

#include "isingc/pulse.hpp"

#include <chrono>
#include <map>
#include <string>

namespace isingc {

using Microseconds = std::chrono::duration<double, std::micro>;

/// Trapped-ion timing constants; all durations must be positive.
struct TimingParams {
  Microseconds t_pi{5.0};             ///< single-qubit bit flip
  Microseconds t_ising_per_ion{50.0};  ///< Ising operation at unit strength, per ion
  Microseconds t_ms{100.0};            ///< two-qubit MS gate, reporting only

  /// Reads timing.t_pi_us, timing.t_ising_per_ion_us and timing.t_ms_us; other keys are ignored.
  static TimingParams from_config(const std::map<std::string, std::string>& config);
  void validate() const;
};

/// (L0 + 1) t_pi + L1 n t_ising_per_ion. Bit flips run in parallel, one round
/// before the first operation and one after each.
Microseconds estimate_time(const PulseSequence& seq, const TimingParams& params = {});

/// Same formula from the norms alone.
Microseconds estimate_time(int n, std::size_t l0, double l1, const TimingParams& params = {});

}  // namespace isingc
