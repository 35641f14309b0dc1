#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "switchsim/gates.hpp"
#include "switchsim/matrix.hpp"
#include "switchsim/state.hpp"

namespace switchsim {

// Assignment of gates to slots: slots[n] is the gate applied in slot n.
struct Permutation {
  std::vector<unsigned> slots;

  static Permutation from_rank(std::size_t rank, unsigned n);
  std::size_t rank() const;  // lexicographic
  unsigned size() const { return static_cast<unsigned>(slots.size()); }
  unsigned gate_at_slot(unsigned slot) const { return slots.at(slot); }
  unsigned slot_of_gate(unsigned gate) const;
  void validate() const;
};

std::size_t factorial(unsigned n);

// Qubit allocation for an N-switch register:
//   [target | working t_1..t_N | control c | history (optional) | ancilla]
// with qubit 0 as the least significant basis-index bit.
struct SwitchLayout {
  unsigned n_gates = 0;       // N
  unsigned n_target = 0;      // qubits per target system
  bool include_history = false;
  unsigned n_alpha = 0;       // ceil(log2 N!)
  unsigned n_c = 0;           // ceil(log2 N)
  unsigned total_qubits = 0;

  static SwitchLayout make(unsigned n_gates, unsigned n_target,
                           bool include_history);

  unsigned target_base() const { return 0; }
  unsigned working_base(unsigned k) const {  // k in [0, N)
    return n_target * (k + 1);
  }
  unsigned control_base() const { return n_target * (n_gates + 1); }
  unsigned history_base() const { return control_base() + n_c; }
  unsigned history_qubits() const { return include_history ? n_gates : 0; }
  unsigned ancilla_base() const { return history_base() + history_qubits(); }

  std::size_t n_orders() const { return factorial(n_gates); }  // |E|
  std::size_t ancilla_dim() const { return dim_of(n_alpha); }
  std::size_t control_dim() const { return dim_of(n_c); }
  bool in_effective(std::size_t ancilla_value) const {
    return ancilla_value < n_orders();
  }
  bool in_control_effective(std::size_t control_value) const {
    return control_value < n_gates;
  }

  std::vector<unsigned> target_qubits() const;
  std::vector<unsigned> working_qubits(unsigned k) const;
  std::vector<unsigned> control_qubits() const;
  std::vector<unsigned> history_qubits_list() const;
  std::vector<unsigned> ancilla_qubits() const;
};

// Control/ancilla preparation variants.
struct BasisOrder {
  Permutation order;
};
struct Mixture {
  std::vector<double> probabilities;  // over E, size N!
};
struct Superposition {
  std::vector<cplx> amplitudes;  // over E, size N!
};
struct PreparationBlock {
  std::vector<GateSpec> gates;  // targets are ancilla-local, in [0, n_alpha)
};
using ControlPrep =
    std::variant<BasisOrder, Mixture, Superposition, PreparationBlock>;

void validate_prep(const SwitchLayout& layout, const ControlPrep& prep);

// Operators below live on sub-registers; within each sub-register the listed
// systems occupy ascending bit positions (control bits lowest).
//
// On (control, history): flips history bit i for control value i in cE,
// identity for i in cR. Requires include_history.
ComplexMatrix build_exunion(const SwitchLayout& layout);
// On (control, ancilla): advances the control value from the gate of the
// current slot to the gate of the next slot under the order encoded in the
// ancilla (cyclically in the slot index); identity on redundancy sectors.
ComplexMatrix build_shift(const SwitchLayout& layout);
// On (control, ancilla): returns the control from the last slot's gate to 0;
// shifts within cE modulo N, identity on redundancy sectors.
ComplexMatrix build_final(const SwitchLayout& layout);
// On (control, ancilla): writes the first slot's gate into the control
// (modulo-N shift within cE); identity on redundancy sectors.
ComplexMatrix build_u1(const SwitchLayout& layout);
// On the full control block (control, [history], ancilla).
ComplexMatrix build_un(const SwitchLayout& layout);
ComplexMatrix build_ufinal(const SwitchLayout& layout);

// Slot operator factors on (target, workings, control): the controlled-SWAP
// sandwich around the parallel gate layer.
struct SlotParts {
  ComplexMatrix controlled_swap;  // self-inverse
  ComplexMatrix gate_layer;       // tensor of the N gates on the workings
};
SlotParts build_slot_parts(const SwitchLayout& layout,
                           const std::vector<GateSpec>& gates);
ComplexMatrix build_slot(const SwitchLayout& layout,
                         const std::vector<GateSpec>& gates);

// Caches the layout-dependent operators; pure with respect to runs.
class SwitchEngine {
 public:
  explicit SwitchEngine(SwitchLayout layout);

  const SwitchLayout& layout() const { return layout_; }

  // Full-register final state for a pure preparation (throws on Mixture).
  StateVector run(const std::vector<GateSpec>& gates, const ControlPrep& prep,
                  const StateVector& target_in) const;
  DensityMatrix run_mixture(const std::vector<GateSpec>& gates,
                            const Mixture& prep,
                            const StateVector& target_in) const;

  StateVector initial_state(const ControlPrep& prep,
                            const StateVector& target_in) const;

 private:
  struct CachedOp {
    std::vector<unsigned> targets;
    ComplexMatrix matrix;
    std::vector<std::size_t> perm;  // nonempty when the matrix is a 0/1 permutation
  };
  void apply(StateVector& psi, const CachedOp& op) const;
  void apply_slot(StateVector& psi, const std::vector<GateSpec>& gates) const;

  SwitchLayout layout_;
  CachedOp u1_, un_, ufinal_, cswap_;
};

using SwitchOutput = std::variant<StateVector, DensityMatrix>;

// Assembles the initial state (workings and control at |0>, history empty,
// ancilla per prep), runs the control/slot pipeline, returns the final
// full-register state (a density matrix for Mixture preparations).
SwitchOutput run_switch(const SwitchLayout& layout,
                        const std::vector<GateSpec>& gates,
                        const ControlPrep& prep, const StateVector& target_in);
StateVector run_switch_pure(const SwitchLayout& layout,
                            const std::vector<GateSpec>& gates,
                            const ControlPrep& prep,
                            const StateVector& target_in);

// Product A_{pi(N)} ... A_{pi(1)} of the gate matrices, the operator the
// switch realizes on the target for a basis preparation.
ComplexMatrix ordered_product(const std::vector<GateSpec>& gates,
                              const Permutation& order);

}  // namespace switchsim
