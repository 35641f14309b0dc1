#pragma once

// Single-qubit 2-switch study: gate 0 encodes the input as RX(x), gate 1 is
// the variational gate. Order rank 0 applies the variational gate after the
// encoding; rank 1 reverses them.

#include "switchsim/nswitch.hpp"

namespace switchsim {

class TwoSwitchStudy {
 public:
  TwoSwitchStudy();

  const SwitchLayout& layout() const { return layout_; }

  double fixed_output(double x, const GateSpec& var_gate,
                      unsigned order_rank) const;
  // Equal-weight classical mixture of both orders, observable I x sigma_z.
  double classical_output(double x, const GateSpec& var_gate) const;
  // |+> ancilla preparation, observable |+><+| x sigma_z on (ancilla, target).
  double quantum_output(double x, const GateSpec& var_gate) const;
  // Interference term 2 Re <psi_1|sigma_z|psi_0> between the two orders.
  double cross_term(double x, const GateSpec& var_gate) const;

  StateVector final_state(double x, const GateSpec& var_gate,
                          unsigned order_rank) const;

 private:
  std::vector<GateSpec> gates(double x, const GateSpec& var_gate) const;

  SwitchLayout layout_;
  SwitchEngine engine_;
  ComplexMatrix obs_classical_;
  ComplexMatrix obs_quantum_;
};

}  // namespace switchsim
