#include "switchsim/twoswitch.hpp"

namespace switchsim {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

TwoSwitchStudy::TwoSwitchStudy()
    : layout_(SwitchLayout::make(2, 1, false)), engine_(layout_) {
  ComplexMatrix plus(2, 2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  const unsigned anc = layout_.ancilla_base();
  obs_classical_ = embed(pauli_z(), {0}, layout_.total_qubits);
  obs_quantum_ = embed(plus, {anc}, layout_.total_qubits) * obs_classical_;
}

std::vector<GateSpec> TwoSwitchStudy::gates(double x,
                                            const GateSpec& var_gate) const {
  return {GateSpec::rx(x, 0), var_gate};
}

StateVector TwoSwitchStudy::final_state(double x, const GateSpec& var_gate,
                                        unsigned order_rank) const {
  return engine_.run(gates(x, var_gate),
                     BasisOrder{Permutation::from_rank(order_rank, 2)},
                     StateVector(1));
}

double TwoSwitchStudy::fixed_output(double x, const GateSpec& var_gate,
                                    unsigned order_rank) const {
  return expectation(final_state(x, var_gate, order_rank), obs_classical_);
}

double TwoSwitchStudy::classical_output(double x,
                                        const GateSpec& var_gate) const {
  const DensityMatrix rho =
      engine_.run_mixture(gates(x, var_gate), Mixture{{0.5, 0.5}},
                          StateVector(1));
  return expectation(rho, obs_classical_);
}

double TwoSwitchStudy::quantum_output(double x,
                                      const GateSpec& var_gate) const {
  const StateVector psi =
      engine_.run(gates(x, var_gate),
                  Superposition{{cplx{kInvSqrt2, 0.0}, cplx{kInvSqrt2, 0.0}}},
                  StateVector(1));
  return expectation(psi, obs_quantum_);
}

double TwoSwitchStudy::cross_term(double x, const GateSpec& var_gate) const {
  // 2 Re <psi_1| sigma_z |psi_0> on the register without the ancilla: each
  // branch sits in its own ancilla basis state, so the ancilla index is
  // stripped before taking the overlap.
  StateVector psi0 = final_state(x, var_gate, 0);
  const StateVector psi1 = final_state(x, var_gate, 1);
  psi0.apply_matrix(pauli_z(), {0});
  const std::size_t rest_dim = dim_of(layout_.ancilla_base());
  cplx s = 0.0;
  for (std::size_t i = 0; i < rest_dim; ++i)
    s += std::conj(psi1[i | (std::size_t{1} << layout_.ancilla_base())]) *
         psi0[i];
  return 2.0 * s.real();
}

}  // namespace switchsim
