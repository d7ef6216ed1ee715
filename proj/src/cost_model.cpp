#include "isingc/cost_model.hpp"

#include "isingc/config.hpp"
#include "isingc/error.hpp"

namespace isingc {

TimingParams TimingParams::from_config(const std::map<std::string, std::string>& config) {
  TimingParams params;
  params.t_pi = Microseconds(config_double(config, "timing.t_pi_us", params.t_pi.count()));
  params.t_ising_per_ion = Microseconds(config_double(config, "timing.t_ising_per_ion_us", params.t_ising_per_ion.count()));
  params.t_ms = Microseconds(config_double(config, "timing.t_ms_us", params.t_ms.count()));
  params.validate();
  return params;
}

void TimingParams::validate() const {
  if (!(t_pi.count() > 0) || !(t_ising_per_ion.count() > 0) || !(t_ms.count() > 0)) {
    throw Error(ErrorKind::invalid_argument, "timing parameters must be positive");
  }
}

Microseconds estimate_time(int n, std::size_t l0, double l1, const TimingParams& params) {
  params.validate();
  return static_cast<double>(l0 + 1) * params.t_pi + l1 * (n * params.t_ising_per_ion);
}

Microseconds estimate_time(const PulseSequence& seq, const TimingParams& params) {
  return estimate_time(seq.num_qubits(), seq.l0(), to_double(seq.l1()), params);
}

}  // namespace isingc
