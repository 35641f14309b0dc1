#include <doctest.h>

#include <cmath>
#include <random>

#include "switchsim/gates.hpp"
#include "switchsim/matrix.hpp"
#include "switchsim/state.hpp"

using namespace switchsim;

namespace {

GateSpec random_single_qubit(std::mt19937_64& rng, unsigned q) {
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  return GateSpec::u3(ang(rng), ang(rng), ang(rng), q);
}

StateVector random_state(unsigned n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<cplx> amps(dim_of(n));
  double nrm = 0.0;
  for (auto& a : amps) {
    a = {d(rng), d(rng)};
    nrm += std::norm(a);
  }
  nrm = std::sqrt(nrm);
  for (auto& a : amps) a /= nrm;
  return StateVector::from_amplitudes(n, std::move(amps));
}

}  // namespace

TEST_CASE("compose multiplies right-to-left") {
  auto i2 = ComplexMatrix::identity(2);
  CHECK(compose({i2, i2}).max_abs_diff(i2) < 1e-15);
  auto a = gate_matrix(GateSpec::u3(0.3, 0.7, -0.2, 0));
  CHECK(compose({a}).max_abs_diff(a) < 1e-15);
  // RZ after RX on |0>: <sigma_z> = cos x regardless of the RZ angle.
  for (double x : {0.0, 0.4, 1.1, 2.9}) {
    for (double t : {0.0, 0.8, -1.3}) {
      auto u = compose({gate_matrix(GateSpec::rz(t, 0)),
                        gate_matrix(GateSpec::rx(x, 0))});
      StateVector psi(1);
      psi.apply_matrix(u, {0});
      CHECK(expectation(psi, pauli_z()) == doctest::Approx(std::cos(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("embed against brute-force basis relabeling") {
  // sigma_z on qubit 0 of 2: diag(1,-1,1,-1) in little-endian indexing.
  auto m = embed(pauli_z(), {0}, 2);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(m(i, i) == ((i & 1) ? cplx(-1.0) : cplx(1.0)));
  CHECK(embed(ComplexMatrix::identity(4), {1, 2}, 3)
            .max_abs_diff(ComplexMatrix::identity(8)) < 1e-15);

  auto sw = gate_matrix(GateSpec::swap_gate(0, 1));
  auto full = embed(sw, {0, 2}, 3);
  for (std::size_t i = 0; i < 8; ++i) {
    // Swapping bits 0 and 2 of the basis index.
    std::size_t j = (i & 2) | ((i & 1) << 2) | ((i >> 2) & 1);
    for (std::size_t k = 0; k < 8; ++k)
      CHECK(full(k, i) == (k == j ? cplx(1.0) : cplx(0.0)));
  }

  CHECK_THROWS_AS(embed(sw, {0, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed(sw, {0, 3}, 3), std::invalid_argument);
}

TEST_CASE("expectation values") {
  auto plus = StateVector::from_amplitudes(1, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  CHECK(expectation(plus, pauli_z()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(expectation(StateVector(1), pauli_z()) == doctest::Approx(1.0));
  for (double x : {0.0, 0.7, 1.9, -2.4}) {
    StateVector psi(1);
    apply_gate(psi, GateSpec::rx(x, 0));
    CHECK(expectation(psi, pauli_z()) == doctest::Approx(std::cos(x)).epsilon(1e-12));
  }
  ComplexMatrix not_herm(2, 2);
  not_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(expectation(StateVector(1), not_herm), std::invalid_argument);
}

TEST_CASE("reduced density") {
  auto plus = StateVector::from_amplitudes(1, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  auto prod = plus.tensor(StateVector(1));  // |0> low qubit, |+> high
  auto r = reduced_density(prod, {1});
  CHECK(std::abs(r.matrix()(0, 1) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r.matrix()(0, 0) - cplx(0.5)) < 1e-12);

  auto bell = StateVector::from_amplitudes(
      2, {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)});
  auto half = reduced_density(bell, {0});
  CHECK(half.matrix().max_abs_diff(ComplexMatrix::identity(2) * cplx(0.5)) < 1e-12);

  std::mt19937_64 rng(3);
  auto psi = random_state(3, rng);
  auto full = reduced_density(psi, {0, 1, 2});
  ComplexMatrix outer(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) outer(i, j) = psi[i] * std::conj(psi[j]);
  CHECK(full.matrix().max_abs_diff(outer) < 1e-12);

  CHECK_THROWS_AS(reduced_density(psi, {}), std::invalid_argument);
}

TEST_CASE("gate conventions and validation") {
  CHECK(gate_matrix(GateSpec::u3(0, 0, 0, 0)).max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
  // RX via U3: RX(x) = U3(x, -pi/2, pi/2).
  for (double x : {0.3, 1.2, -0.8}) {
    CHECK(gate_matrix(GateSpec::rx(x, 0))
              .max_abs_diff(gate_matrix(GateSpec::u3(x, -M_PI / 2, M_PI / 2, 0))) < 1e-12);
  }
  CHECK_THROWS_AS(validate_gate(GateSpec{GateKind::RX, {}, {0}, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_gate(GateSpec::cnot(1, 1)), std::invalid_argument);
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(validate_gate(GateSpec::custom_gate(bad, {0})),
                  std::invalid_argument);
}

TEST_CASE("unitarity, norm preservation, composition equivalence") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto g1 = random_single_qubit(rng, 0);
    auto g2 = random_single_qubit(rng, 0);
    CHECK(gate_matrix(g1).is_unitary(1e-10));
    auto psi = random_state(1, rng);
    auto psi2 = psi;
    apply_gate(psi2, g1);
    CHECK(psi2.norm() == doctest::Approx(1.0).epsilon(1e-10));
    apply_gate(psi2, g2);
    auto psi3 = psi;
    psi3.apply_matrix(compose({gate_matrix(g2), gate_matrix(g1)}), {0});
    for (std::size_t i = 0; i < psi3.dim(); ++i)
      CHECK(std::abs(psi3[i] - psi2[i]) < 1e-10);
  }
}

TEST_CASE("hermitian evolution matches rotation gates") {
  ComplexMatrix hx = pauli_x() * cplx(0.5);
  auto gen = EncodingGenerator::from_hermitian(hx);
  CHECK(gen.eigenvalues.size() == 2);
  CHECK(gen.eigenvalues[0] == doctest::Approx(-0.5));
  CHECK(gen.eigenvalues[1] == doctest::Approx(0.5));
  // H = V^dag diag V reconstruction.
  ComplexMatrix diag(2, 2);
  diag(0, 0) = gen.eigenvalues[0];
  diag(1, 1) = gen.eigenvalues[1];
  CHECK((gen.diagonalizer.adjoint() * diag * gen.diagonalizer).max_abs_diff(hx) < 1e-12);
  for (double x : {0.0, 0.9, 2.2}) {
    CHECK(hermitian_evolution(hx, x).max_abs_diff(gate_matrix(GateSpec::rx(x, 0))) < 1e-12);
  }
  ComplexMatrix not_herm(2, 2);
  not_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(EncodingGenerator::from_hermitian(not_herm), std::invalid_argument);
}

TEST_CASE("multi-qubit gate matrices") {
  // CNOT with local bit 0 as control: |1>|0> -> |1>|1> means index 1 -> 3.
  auto cn = gate_matrix(GateSpec::cnot(0, 1));
  CHECK(cn(3, 1) == cplx(1.0));
  CHECK(cn(1, 3) == cplx(1.0));
  CHECK(cn(0, 0) == cplx(1.0));
  auto cs = gate_matrix(GateSpec::cswap(0, 1, 2));
  // control set (bit 0): |1, a=1, b=0> = index 3 -> |1, a=0, b=1> = index 5.
  CHECK(cs(5, 3) == cplx(1.0));
  CHECK(cs(2, 2) == cplx(1.0));
  CHECK(cs.is_unitary(1e-12));
}

TEST_CASE("density matrix validation") {
  auto rho = DensityMatrix::from_state(StateVector(2));
  rho.validate();
  auto mix = DensityMatrix::zero(1);
  mix.accumulate(StateVector(1), 0.5);
  mix.accumulate(StateVector::basis(1, 1), 0.5);
  mix.validate();
  CHECK(expectation(mix, pauli_z()) == doctest::Approx(0.0));
  ComplexMatrix bad = ComplexMatrix::identity(2) * cplx(2.0);
  CHECK_THROWS(DensityMatrix(1, bad).validate());
}
