#include "switchsim/nswitch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace switchsim {
namespace {

constexpr double kPrepTol = 1e-12;

unsigned bits_for(std::size_t values) {
  unsigned b = 0;
  while (dim_of(b) < values) ++b;
  return b;
}

std::vector<unsigned> range_list(unsigned base, unsigned count) {
  std::vector<unsigned> v(count);
  std::iota(v.begin(), v.end(), base);
  return v;
}

// Detects a 0/1 permutation matrix; returns the column -> row map.
std::vector<std::size_t> permutation_of(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::vector<bool> hit(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t row = n;
    for (std::size_t r = 0; r < n; ++r) {
      const cplx e = m(r, c);
      if (std::abs(e) < 1e-14) continue;
      if (row != n || std::abs(e - cplx{1.0, 0.0}) > 1e-14) return {};
      row = r;
    }
    if (row == n || hit[row]) return {};
    hit[row] = true;
    perm[c] = row;
  }
  return perm;
}

GateSpec retarget(const GateSpec& g, unsigned offset) {
  GateSpec out = g;
  for (auto& t : out.targets) t += offset;
  return out;
}

void validate_gates(const SwitchLayout& layout,
                    const std::vector<GateSpec>& gates) {
  if (gates.size() != layout.n_gates)
    throw std::invalid_argument("switch: wrong gate count");
  for (const auto& g : gates) {
    validate_gate(g);
    for (unsigned t : g.targets)
      if (t >= layout.n_target)
        throw std::invalid_argument("switch: gate target outside the target system");
  }
}

}  // namespace

std::size_t factorial(unsigned n) {
  std::size_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Permutation Permutation::from_rank(std::size_t rank, unsigned n) {
  if (rank >= factorial(n))
    throw std::out_of_range("permutation rank out of range");
  std::vector<unsigned> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  Permutation p;
  p.slots.reserve(n);
  for (unsigned i = n; i > 0; --i) {
    const std::size_t f = factorial(i - 1);
    const std::size_t idx = rank / f;
    rank %= f;
    p.slots.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return p;
}

std::size_t Permutation::rank() const {
  validate();
  const unsigned n = size();
  std::vector<unsigned> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::size_t r = 0;
  for (unsigned i = 0; i < n; ++i) {
    const auto it = std::find(pool.begin(), pool.end(), slots[i]);
    r += static_cast<std::size_t>(it - pool.begin()) * factorial(n - i - 1);
    pool.erase(it);
  }
  return r;
}

unsigned Permutation::slot_of_gate(unsigned gate) const {
  const auto it = std::find(slots.begin(), slots.end(), gate);
  if (it == slots.end())
    throw std::invalid_argument("permutation: unknown gate index");
  return static_cast<unsigned>(it - slots.begin());
}

void Permutation::validate() const {
  std::vector<bool> seen(slots.size(), false);
  for (unsigned g : slots) {
    if (g >= slots.size() || seen[g])
      throw std::invalid_argument("permutation: slots are not a bijection");
    seen[g] = true;
  }
}

SwitchLayout SwitchLayout::make(unsigned n_gates, unsigned n_target,
                                bool include_history) {
  if (n_gates == 0 || n_target == 0)
    throw std::invalid_argument("switch layout: empty system");
  SwitchLayout l;
  l.n_gates = n_gates;
  l.n_target = n_target;
  l.include_history = include_history;
  l.n_alpha = bits_for(factorial(n_gates));
  l.n_c = bits_for(n_gates);
  l.total_qubits = n_target * (n_gates + 1) + l.n_c +
                   (include_history ? n_gates : 0) + l.n_alpha;
  if (l.total_qubits > kMaxQubits)
    throw std::invalid_argument("switch layout: register too large");
  return l;
}

std::vector<unsigned> SwitchLayout::target_qubits() const {
  return range_list(0, n_target);
}
std::vector<unsigned> SwitchLayout::working_qubits(unsigned k) const {
  return range_list(working_base(k), n_target);
}
std::vector<unsigned> SwitchLayout::control_qubits() const {
  return range_list(control_base(), n_c);
}
std::vector<unsigned> SwitchLayout::history_qubits_list() const {
  return range_list(history_base(), history_qubits());
}
std::vector<unsigned> SwitchLayout::ancilla_qubits() const {
  return range_list(ancilla_base(), n_alpha);
}

void validate_prep(const SwitchLayout& layout, const ControlPrep& prep) {
  const std::size_t n_orders = layout.n_orders();
  if (const auto* basis = std::get_if<BasisOrder>(&prep)) {
    basis->order.validate();
    if (basis->order.size() != layout.n_gates)
      throw std::invalid_argument("prep: permutation size mismatch");
  } else if (const auto* mix = std::get_if<Mixture>(&prep)) {
    if (mix->probabilities.size() != n_orders)
      throw std::invalid_argument("prep: mixture must cover the effective space");
    double sum = 0.0;
    for (double p : mix->probabilities) {
      if (p < 0.0) throw std::invalid_argument("prep: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kPrepTol)
      throw std::invalid_argument("prep: probabilities do not sum to 1");
  } else if (const auto* sup = std::get_if<Superposition>(&prep)) {
    if (sup->amplitudes.size() != n_orders)
      throw std::invalid_argument("prep: superposition must cover the effective space");
    double sum = 0.0;
    for (const cplx& a : sup->amplitudes) sum += std::norm(a);
    if (std::abs(sum - 1.0) > kPrepTol)
      throw std::invalid_argument("prep: amplitudes are not normalized");
  } else if (const auto* block = std::get_if<PreparationBlock>(&prep)) {
    for (const auto& g : block->gates) {
      validate_gate(g);
      for (unsigned t : g.targets)
        if (t >= layout.n_alpha)
          throw std::invalid_argument("prep: block gate outside the ancilla");
    }
  }
}

ComplexMatrix build_exunion(const SwitchLayout& layout) {
  if (!layout.include_history)
    throw std::invalid_argument("exunion requires the history system");
  const std::size_t cd = layout.control_dim();
  const std::size_t hd = dim_of(layout.n_gates);
  ComplexMatrix m(cd * hd, cd * hd);
  for (std::size_t h = 0; h < hd; ++h) {
    for (std::size_t i = 0; i < cd; ++i) {
      const std::size_t h_out =
          layout.in_control_effective(i) ? (h ^ (std::size_t{1} << i)) : h;
      m(h_out * cd + i, h * cd + i) = 1.0;
    }
  }
  return m;
}

ComplexMatrix build_shift(const SwitchLayout& layout) {
  const unsigned n = layout.n_gates;
  const std::size_t cd = layout.control_dim();
  const std::size_t ad = layout.ancilla_dim();
  ComplexMatrix m(cd * ad, cd * ad);
  for (std::size_t a = 0; a < ad; ++a) {
    if (layout.in_effective(a)) {
      const Permutation pi = Permutation::from_rank(a, n);
      for (std::size_t j = 0; j < cd; ++j) {
        std::size_t out = j;
        if (layout.in_control_effective(j)) {
          // Gate of the slot after the one holding gate j, cyclic in slots.
          const unsigned slot = pi.slot_of_gate(static_cast<unsigned>(j));
          out = pi.gate_at_slot((slot + 1) % n);
        }
        m(a * cd + out, a * cd + j) = 1.0;
      }
    } else {
      for (std::size_t j = 0; j < cd; ++j) m(a * cd + j, a * cd + j) = 1.0;
    }
  }
  return m;
}

ComplexMatrix build_final(const SwitchLayout& layout) {
  const unsigned n = layout.n_gates;
  const std::size_t cd = layout.control_dim();
  const std::size_t ad = layout.ancilla_dim();
  ComplexMatrix m(cd * ad, cd * ad);
  for (std::size_t a = 0; a < ad; ++a) {
    if (layout.in_effective(a)) {
      const Permutation pi = Permutation::from_rank(a, n);
      const unsigned last = pi.gate_at_slot(n - 1);
      for (std::size_t j = 0; j < cd; ++j) {
        // Maps |pi(N) + j mod N> to |j> within cE; identity on cR.
        const std::size_t in = layout.in_control_effective(j)
                                   ? (last + j) % n
                                   : j;
        m(a * cd + j, a * cd + in) = 1.0;
      }
    } else {
      for (std::size_t j = 0; j < cd; ++j) m(a * cd + j, a * cd + j) = 1.0;
    }
  }
  return m;
}

ComplexMatrix build_u1(const SwitchLayout& layout) {
  const unsigned n = layout.n_gates;
  const std::size_t cd = layout.control_dim();
  const std::size_t ad = layout.ancilla_dim();
  ComplexMatrix m(cd * ad, cd * ad);
  for (std::size_t a = 0; a < ad; ++a) {
    if (layout.in_effective(a)) {
      const Permutation pi = Permutation::from_rank(a, n);
      const unsigned first = pi.gate_at_slot(0);
      for (std::size_t i = 0; i < cd; ++i) {
        const std::size_t out = layout.in_control_effective(i)
                                    ? (first + i) % n
                                    : i;
        m(a * cd + out, a * cd + i) = 1.0;
      }
    } else {
      for (std::size_t i = 0; i < cd; ++i) m(a * cd + i, a * cd + i) = 1.0;
    }
  }
  return m;
}

namespace {

// Embeds the (control, ancilla) and (control, history) operators into the
// full control block (control low, history middle, ancilla high).
ComplexMatrix control_block(const SwitchLayout& layout,
                            const ComplexMatrix& control_ancilla,
                            bool with_exunion) {
  const unsigned n_h = layout.history_qubits();
  const unsigned block_qubits = layout.n_c + n_h + layout.n_alpha;
  std::vector<unsigned> ca_targets = range_list(0, layout.n_c);
  for (unsigned j = 0; j < layout.n_alpha; ++j)
    ca_targets.push_back(layout.n_c + n_h + j);
  ComplexMatrix out = embed(control_ancilla, ca_targets, block_qubits);
  if (with_exunion) {
    std::vector<unsigned> ch_targets = range_list(0, layout.n_c + n_h);
    out = out * embed(build_exunion(layout), ch_targets, block_qubits);
  }
  return out;
}

}  // namespace

ComplexMatrix build_un(const SwitchLayout& layout) {
  return control_block(layout, build_shift(layout), layout.include_history);
}

ComplexMatrix build_ufinal(const SwitchLayout& layout) {
  return control_block(layout, build_final(layout), layout.include_history);
}

SlotParts build_slot_parts(const SwitchLayout& layout,
                           const std::vector<GateSpec>& gates) {
  validate_gates(layout, gates);
  const unsigned nt = layout.n_target;
  const unsigned n = layout.n_gates;
  const unsigned block_qubits = nt * (n + 1) + layout.n_c;
  const std::size_t dim = dim_of(block_qubits);
  const std::size_t td = dim_of(nt);
  const unsigned c_shift = nt * (n + 1);

  ComplexMatrix cswap(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t k = i >> c_shift;
    std::size_t out = i;
    if (layout.in_control_effective(k)) {
      const std::size_t t_val = i & (td - 1);
      const unsigned w_base = layout.working_base(static_cast<unsigned>(k));
      const std::size_t w_val = (i >> w_base) & (td - 1);
      out = i & ~(td - 1) & ~((td - 1) << w_base);
      out |= w_val | (t_val << w_base);
    }
    cswap(out, i) = 1.0;
  }

  ComplexMatrix gate_layer = ComplexMatrix::identity(dim);
  for (unsigned k = 0; k < n; ++k) {
    std::vector<unsigned> t;
    for (unsigned q : gates[k].targets) t.push_back(q + layout.working_base(k));
    gate_layer = embed(gate_matrix(gates[k]), t, block_qubits) * gate_layer;
  }
  return {std::move(cswap), std::move(gate_layer)};
}

ComplexMatrix build_slot(const SwitchLayout& layout,
                         const std::vector<GateSpec>& gates) {
  SlotParts parts = build_slot_parts(layout, gates);
  return parts.controlled_swap * parts.gate_layer * parts.controlled_swap;
}

SwitchEngine::SwitchEngine(SwitchLayout layout) : layout_(layout) {
  const auto ctrl_anc = [&](const ComplexMatrix& m) {
    CachedOp op;
    std::vector<unsigned> t = layout_.control_qubits();
    for (unsigned q : layout_.ancilla_qubits()) t.push_back(q);
    op.targets = std::move(t);
    op.matrix = m;
    op.perm = permutation_of(m);
    return op;
  };
  u1_ = ctrl_anc(build_u1(layout_));
  if (layout_.include_history) {
    // Full control block, contiguous from the control base.
    const unsigned block =
        layout_.n_c + layout_.history_qubits() + layout_.n_alpha;
    CachedOp un;
    un.targets = range_list(layout_.control_base(), block);
    un.matrix = build_un(layout_);
    un.perm = permutation_of(un.matrix);
    un_ = un;
    CachedOp uf;
    uf.targets = un_.targets;
    uf.matrix = build_ufinal(layout_);
    uf.perm = permutation_of(uf.matrix);
    ufinal_ = uf;
  } else {
    un_ = ctrl_anc(build_shift(layout_));
    ufinal_ = ctrl_anc(build_final(layout_));
  }
  // Controlled-SWAP factor; the gate layer is applied per run.
  const unsigned slot_block = layout_.n_target * (layout_.n_gates + 1) + layout_.n_c;
  SlotParts parts = build_slot_parts(
      layout_, std::vector<GateSpec>(
                   layout_.n_gates,
                   GateSpec::custom_gate(ComplexMatrix::identity(
                                             dim_of(layout_.n_target)),
                                         range_list(0, layout_.n_target))));
  cswap_.targets = range_list(0, slot_block);
  cswap_.matrix = std::move(parts.controlled_swap);
  cswap_.perm = permutation_of(cswap_.matrix);
}

void SwitchEngine::apply(StateVector& psi, const CachedOp& op) const {
  if (!op.perm.empty())
    psi.apply_subsystem_permutation(op.perm, op.targets);
  else
    psi.apply_matrix(op.matrix, op.targets);
}

void SwitchEngine::apply_slot(StateVector& psi,
                              const std::vector<GateSpec>& gates) const {
  apply(psi, cswap_);
  for (unsigned k = 0; k < layout_.n_gates; ++k)
    psi.apply_matrix(gate_matrix(gates[k]),
                     [&] {
                       std::vector<unsigned> t;
                       for (unsigned q : gates[k].targets)
                         t.push_back(q + layout_.working_base(k));
                       return t;
                     }());
  apply(psi, cswap_);
}

StateVector SwitchEngine::initial_state(const ControlPrep& prep,
                                        const StateVector& target_in) const {
  if (target_in.n_qubits() != layout_.n_target)
    throw std::invalid_argument("switch: target state size mismatch");
  validate_prep(layout_, prep);
  StateVector psi(layout_.total_qubits);
  auto& amps = psi.amplitudes();
  amps.assign(amps.size(), cplx{});
  const std::size_t td = dim_of(layout_.n_target);
  const unsigned a_base = layout_.ancilla_base();
  if (const auto* basis = std::get_if<BasisOrder>(&prep)) {
    const std::size_t a = basis->order.rank();
    for (std::size_t t = 0; t < td; ++t)
      amps[(a << a_base) | t] = target_in[t];
  } else if (const auto* sup = std::get_if<Superposition>(&prep)) {
    for (std::size_t a = 0; a < sup->amplitudes.size(); ++a) {
      if (sup->amplitudes[a] == cplx{}) continue;
      for (std::size_t t = 0; t < td; ++t)
        amps[(a << a_base) | t] = sup->amplitudes[a] * target_in[t];
    }
  } else if (std::get_if<PreparationBlock>(&prep)) {
    for (std::size_t t = 0; t < td; ++t) amps[t] = target_in[t];
    for (const auto& g : std::get<PreparationBlock>(prep).gates)
      apply_gate(psi, retarget(g, a_base));
  } else {
    throw std::invalid_argument("mixture preparations require run_mixture");
  }
  return psi;
}

StateVector SwitchEngine::run(const std::vector<GateSpec>& gates,
                              const ControlPrep& prep,
                              const StateVector& target_in) const {
  validate_gates(layout_, gates);
  StateVector psi = initial_state(prep, target_in);
  apply(psi, u1_);
  for (unsigned slot = 0; slot < layout_.n_gates; ++slot) {
    apply_slot(psi, gates);
    apply(psi, slot + 1 < layout_.n_gates ? un_ : ufinal_);
  }
  return psi;
}

DensityMatrix SwitchEngine::run_mixture(const std::vector<GateSpec>& gates,
                                        const Mixture& prep,
                                        const StateVector& target_in) const {
  validate_prep(layout_, prep);
  DensityMatrix rho = DensityMatrix::zero(layout_.total_qubits);
  for (std::size_t r = 0; r < prep.probabilities.size(); ++r) {
    const double p = prep.probabilities[r];
    if (p == 0.0) continue;
    const StateVector psi =
        run(gates,
            BasisOrder{Permutation::from_rank(r, layout_.n_gates)}, target_in);
    rho.accumulate(psi, p);
  }
  return rho;
}

SwitchOutput run_switch(const SwitchLayout& layout,
                        const std::vector<GateSpec>& gates,
                        const ControlPrep& prep, const StateVector& target_in) {
  SwitchEngine engine(layout);
  if (const auto* mix = std::get_if<Mixture>(&prep))
    return engine.run_mixture(gates, *mix, target_in);
  return engine.run(gates, prep, target_in);
}

StateVector run_switch_pure(const SwitchLayout& layout,
                            const std::vector<GateSpec>& gates,
                            const ControlPrep& prep,
                            const StateVector& target_in) {
  return SwitchEngine(layout).run(gates, prep, target_in);
}

ComplexMatrix ordered_product(const std::vector<GateSpec>& gates,
                              const Permutation& order) {
  unsigned n_target = 0;
  for (const auto& g : gates)
    for (unsigned q : g.targets) n_target = std::max(n_target, q + 1);
  std::vector<ComplexMatrix> ops;
  for (unsigned slot = order.size(); slot-- > 0;) {
    const GateSpec& g = gates[order.gate_at_slot(slot)];
    ops.push_back(embed(gate_matrix(g), g.targets, n_target));
  }
  return compose(ops);
}

}  // namespace switchsim
