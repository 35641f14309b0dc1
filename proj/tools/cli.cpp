// Experiment runner: each command writes a self-describing run record
// (directory with a JSON `record` and CSV tables) and exits nonzero when an
// asserted tolerance fails.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>

#include "switchsim/learn.hpp"
#include "switchsim/spectra.hpp"
#include "switchsim/twoswitch.hpp"

using namespace switchsim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kArtifactVersion = "switchsim 1.0.0";

// Optimal parameter vectors reported by the study this reproduces.
const std::vector<double> kFixedFixture{1.6623, 0.8838, 1.5971};
const std::vector<double> kClassicalFixture{1.7567, 2.2360, 0.7842, 0.9630,
                                            0.2881, 0.7284, 1.8383, 0.8536,
                                            -0.0387, 0.0011, 0.4796, 0.7081};
const std::vector<double> kQuantumFixture{1.6628, 1.6813, 1.3400, 1.4326,
                                          1.5209, 0.0921, 0.5260, 0.9382,
                                          1.2003, 1.5877, -0.3781, -0.5879};

struct RecordWriter {
  fs::path dir;
  json record;

  explicit RecordWriter(const std::string& out_root, const std::string& name) {
    dir = fs::path(out_root) / name;
    fs::create_directories(dir / "tables");
    record["artifact_version"] = kArtifactVersion;
    record["name"] = name;
  }

  void csv(const std::string& name, const std::string& header,
           const std::vector<std::vector<double>>& rows) {
    std::ofstream f(dir / "tables" / (name + ".csv"));
    f << header << "\n";
    f.precision(17);
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i)
        f << (i ? "," : "") << r[i];
      f << "\n";
    }
  }

  void finish(double seconds, bool pass) {
    record["seconds"] = seconds;
    record["pass"] = pass;
    std::ofstream f(dir / "record");
    f << record.dump(2) << "\n";
  }
};

std::string out_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SWITCHSIM_OUT")) return env;
  return "runs";
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int cmd_two_switch(const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  RecordWriter rec(out, "two-switch");
  rec.record["config"] = {{"experiment", "two_switch_forms"}};
  TwoSwitchStudy study;
  double dev_f0 = 0, dev_f1 = 0, dev_cls = 0, dev_q = 0;
  std::vector<std::vector<double>> curve;
  for (int ix = 0; ix < 101; ++ix) {
    const double x = 2.0 * M_PI * ix / 100;
    for (int it = 0; it < 25; ++it) {
      const double th = -M_PI + 2.0 * M_PI * it / 24;
      auto var = GateSpec::rz(th, 0);
      const double cx = std::cos(x);
      const double f0 = study.fixed_output(x, var, 0);
      const double f1 = study.fixed_output(x, var, 1);
      const double fc = study.classical_output(x, var);
      const double fq = study.quantum_output(x, var);
      dev_f0 = std::max(dev_f0, std::abs(f0 - cx));
      dev_f1 = std::max(dev_f1, std::abs(f1 - cx));
      dev_cls = std::max(dev_cls, std::abs(fc - cx));
      const double q =
          ((3.0 + std::cos(th)) * cx + 1.0 - std::cos(th)) / 4.0;
      dev_q = std::max(dev_q, std::abs(fq - q));
      if (it == 12) curve.push_back({x, f0, f1, fc, fq});
    }
  }
  rec.csv("outputs_theta0", "x,fixed_first,fixed_second,classical,quantum", curve);
  rec.record["metrics"] = {{"dev_fixed_first", dev_f0},
                           {"dev_fixed_second", dev_f1},
                           {"dev_classical", dev_cls},
                           {"dev_quantum", dev_q}};
  const bool pass = dev_f0 < 1e-8 && dev_f1 < 1e-8 && dev_cls < 1e-8 && dev_q < 1e-8;
  rec.finish(elapsed(t0), pass);
  if (!pass) std::fprintf(stderr, "two-switch: closed-form deviation above 1e-8\n");
  return pass ? 0 : 1;
}

// Output of the order-controlled 3-gate model whose slots hold the encoding
// exp(-i x H) (H with eigenvalue gap 1 on an axis tilted off z and off the
// x-y plane) plus two variational gates; observable sigma_z.
double ordered_output(const std::vector<GateSpec>& var_gates,
                      const std::vector<cplx>& amps, double x, bool coherent) {
  const ComplexMatrix h = (pauli_x() + pauli_z()) * cplx(0.5 / std::sqrt(2.0));
  std::vector<GateSpec> gates{
      GateSpec::custom_gate(hermitian_evolution(h, x), {0})};
  gates.insert(gates.end(), var_gates.begin(), var_gates.end());
  std::vector<StateVector> states;
  for (std::size_t r = 0; r < 6; ++r) {
    StateVector psi(1);
    psi.apply_matrix(ordered_product(gates, Permutation::from_rank(r, 3)), {0});
    states.push_back(psi);
  }
  if (!coherent) {
    double e = 0.0;
    for (std::size_t a = 0; a < 6; ++a)
      e += std::norm(amps[a]) * expectation(states[a], pauli_z());
    return e;
  }
  cplx e = 0.0;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      StateVector z = states[a];
      z.apply_matrix(pauli_z(), {0});
      e += std::conj(amps[b]) * amps[a] * states[b].inner(z);
    }
  return e.real();
}

int cmd_fourier(const std::string& out, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  RecordWriter rec(out, "fourier");
  rec.record["config"] = {{"experiment", "fourier_scan"}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::vector<GateSpec> w;
  for (int k = 0; k < 2; ++k)
    w.push_back(GateSpec::u3(ang(rng), ang(rng), ang(rng), 0));
  std::vector<cplx> uniform(6, 1.0 / std::sqrt(6.0));

  std::vector<std::vector<double>> table;  // mode_id, freq, re, im
  std::vector<std::vector<double>> supports;
  bool ok = true;
  auto add = [&](int mode_id, const FourierSeries& s) {
    if (s.max_reality_violation() > 1e-9) ok = false;
    for (const auto& [freq, c] : s.terms)
      table.push_back({double(mode_id), freq, c.real(), c.imag()});
    std::vector<double> sup = s.support(1e-8);
    supports.push_back(sup);
  };
  for (std::size_t r = 0; r < 6; ++r) {
    std::vector<cplx> basis(6, 0.0);
    basis[r] = 1.0;
    add(int(r), dft_coefficients(
                    [&](double x) { return ordered_output(w, basis, x, false); }, 1));
  }
  add(6, dft_coefficients(
             [&](double x) { return ordered_output(w, uniform, x, false); }, 1));
  add(7, dft_coefficients(
             [&](double x) { return ordered_output(w, uniform, x, true); }, 1));
  for (const auto& sup : supports)
    if (sup != supports.front()) ok = false;

  auto p6 = random_start(seed + 1, 6);
  auto two_layer = dft_coefficients(
      [&](double x) { return re_uploading_forward(p6, 0.3, x); }, 2);
  auto sup2 = two_layer.support(1e-8);
  const bool reaches2 = !sup2.empty() && sup2.back() == 2.0 && sup2.front() == -2.0;
  if (!reaches2) ok = false;
  add(8, two_layer);

  rec.csv("coefficients", "mode,frequency,re,im", table);
  rec.record["metrics"] = {{"single_layer_support_equal", ok},
                           {"two_layer_reaches_pm2", reaches2}};
  rec.finish(elapsed(t0), ok);
  if (!ok) std::fprintf(stderr, "fourier: spectrum mismatch across modes\n");
  return ok ? 0 : 1;
}

OrderMode parse_mode(const std::string& s) {
  if (s == "fixed") return OrderMode::FixedOrder;
  if (s == "classical") return OrderMode::Classical;
  return OrderMode::Quantum;
}

void write_boundary_grid(RecordWriter& rec, const ThreeSwitchModel& model,
                         OrderMode mode, const ModelParams& params) {
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < 101; ++i)
    for (int j = 0; j < 101; ++j) {
      const double x1 = -1.0 + 2.0 * i / 100, x2 = -1.0 + 2.0 * j / 100;
      const double e = model.forward(mode, params, x1, x2);
      grid.push_back({x1, x2, e, double(classify(e))});
    }
  rec.csv("boundary_grid", "x1,x2,expectation,predicted", grid);
}

void write_predictions(RecordWriter& rec, const ThreeSwitchModel& model,
                       OrderMode mode, const ModelParams& params,
                       const std::vector<LabeledSample>& data) {
  std::vector<std::vector<double>> rows;
  for (const auto& s : data) {
    const double e = model.forward(mode, params, s.x1, s.x2);
    rows.push_back({s.x1, s.x2, double(s.label), e, double(classify(e))});
  }
  rec.csv("predictions", "x1,x2,label,expectation,predicted", rows);
}

int cmd_three_switch(const std::string& out, const std::string& mode_str,
                     bool train_flag, std::uint64_t seed, std::size_t budget,
                     std::size_t restarts) {
  auto t0 = std::chrono::steady_clock::now();
  const OrderMode mode = parse_mode(mode_str);
  RecordWriter rec(out, "three-switch-" + mode_str +
                            (train_flag ? "-train" : "-replay"));
  rec.record["config"] = {{"experiment", train_flag ? "three_switch_train"
                                                    : "three_switch_replay"},
                          {"mode", mode_str},
                          {"seed", seed},
                          {"budget", budget},
                          {"restarts", restarts}};
  ThreeSwitchModel model;
  auto test = generate_dataset(200, seed + 1000);
  bool pass = true;
  ModelParams params;

  if (!train_flag) {
    const std::vector<double>* fixture =
        mode == OrderMode::FixedOrder
            ? &kFixedFixture
            : (mode == OrderMode::Classical ? &kClassicalFixture : &kQuantumFixture);
    params = ModelParams::unflatten(mode, *fixture);
    const double acc = model.accuracy(mode, params, test);
    rec.record["metrics"]["test_accuracy"] = acc;
    rec.record["metrics"]["fixture"] = *fixture;
    // Only the fixed-order replay value is asserted; the entangler topology
    // of the preparation block is a completion, so the switch-mode replays
    // are reported without a pass bound.
    if (mode == OrderMode::FixedOrder) pass = acc >= 0.42 && acc <= 0.58;
  } else {
    // Restart selection uses training accuracy; the selected restart is
    // then scored once on the held-out test set.
    double best_train = -1.0;
    std::vector<double> accs;
    for (std::size_t r = 1; r <= restarts; ++r) {
      TrainConfig cfg;
      cfg.mode = mode;
      cfg.seed = seed;
      cfg.n_train = 200;
      cfg.budget = budget;
      cfg.initial_params = random_start(r, param_count(mode));
      auto res = train(cfg, model);
      accs.push_back(model.accuracy(mode, res.params, test));
      if (res.train_accuracy > best_train) {
        best_train = res.train_accuracy;
        params = res.params;
      }
    }
    const double best = model.accuracy(mode, params, test);
    rec.record["metrics"]["restart_test_accuracies"] = accs;
    rec.record["metrics"]["best_train_accuracy"] = best_train;
    rec.record["metrics"]["selected_test_accuracy"] = best;
    rec.record["metrics"]["best_params"] = params.flatten();
    if (mode != OrderMode::FixedOrder && best < 0.5) {
      rec.record["metrics"]["diverged"] = true;
      pass = false;
    }
  }

  write_boundary_grid(rec, model, mode, params);
  write_predictions(rec, model, mode, params, test);
  if (mode != OrderMode::FixedOrder) {
    // Ancilla diagnostics at a representative input.
    auto psi = model.final_state(params, 0.3, -0.4);
    auto probs = ancilla_probabilities(psi);
    std::vector<std::vector<double>> prows;
    for (std::size_t a = 0; a < probs.size(); ++a)
      prows.push_back({double(a), probs[a]});
    rec.csv("ancilla_probabilities", "ancilla_basis,probability", prows);
    auto rho = ancilla_density(psi);
    std::vector<std::vector<double>> drows;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        drows.push_back({double(i), double(j), rho.matrix()(i, j).real(),
                         rho.matrix()(i, j).imag()});
    rec.csv("ancilla_density", "row,col,re,im", drows);
  }
  rec.finish(elapsed(t0), pass);
  if (!pass) std::fprintf(stderr, "three-switch: asserted bound violated\n");
  return pass ? 0 : 1;
}

int cmd_reupload(const std::string& out, std::uint64_t seed, std::size_t budget,
                 std::size_t restarts) {
  auto t0 = std::chrono::steady_clock::now();
  RecordWriter rec(out, "reupload");
  rec.record["config"] = {{"experiment", "reuploading_baseline"},
                          {"seed", seed},
                          {"budget", budget},
                          {"restarts", restarts}};
  auto test = generate_dataset(200, seed + 1000);
  double best_train = -1.0;
  std::vector<double> best_params;
  std::vector<double> accs;
  for (std::size_t r = 1; r <= restarts; ++r) {
    TrainConfig cfg;
    cfg.seed = seed;
    cfg.n_train = 200;
    cfg.budget = budget;
    cfg.initial_params = random_start(r, 6);
    auto res = train_reuploading(cfg);
    accs.push_back(re_uploading_accuracy(res.params.gate_params, test));
    if (res.train_accuracy > best_train) {
      best_train = res.train_accuracy;
      best_params = res.params.gate_params;
    }
  }
  const double best = re_uploading_accuracy(best_params, test);
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < 101; ++i)
    for (int j = 0; j < 101; ++j) {
      const double x1 = -1.0 + 2.0 * i / 100, x2 = -1.0 + 2.0 * j / 100;
      const double e = re_uploading_forward(best_params, x1, x2);
      grid.push_back({x1, x2, e, double(classify(e))});
    }
  rec.csv("boundary_grid", "x1,x2,expectation,predicted", grid);
  rec.record["metrics"] = {{"restart_test_accuracies", accs},
                           {"best_train_accuracy", best_train},
                           {"selected_test_accuracy", best},
                           {"best_params", best_params}};
  rec.finish(elapsed(t0), true);
  return 0;
}

int cmd_selftest(const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  RecordWriter rec(out, "selftest");
  rec.record["config"] = {{"experiment", "selftest"}};
  json results = json::object();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    results[name] = ok ? "pass" : "fail";
    if (!ok) all = false;
  };
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  auto rand_gate = [&]() {
    return GateSpec::u3(ang(rng), ang(rng), ang(rng), 0);
  };

  // Unitarity and redundancy inertness of every constructed operator.
  bool unitary = true, inert = true;
  for (unsigned n : {2u, 3u}) {
    for (bool hist : {false, true}) {
      auto l = SwitchLayout::make(n, 1, hist);
      std::vector<ComplexMatrix> ops{build_u1(l), build_shift(l), build_final(l),
                                     build_un(l), build_ufinal(l)};
      if (hist) ops.push_back(build_exunion(l));
      std::vector<GateSpec> gates;
      for (unsigned k = 0; k < n; ++k) gates.push_back(rand_gate());
      ops.push_back(build_slot(l, gates));
      for (const auto& m : ops) unitary = unitary && m.is_unitary(1e-10);
      for (const auto& m : {build_u1(l), build_shift(l), build_final(l)})
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (l.in_effective(i >> l.n_c)) continue;
          for (std::size_t j = 0; j < m.cols(); ++j)
            inert = inert &&
                    std::abs(m(i, j) - (i == j ? cplx(1.0) : cplx(0.0))) < 1e-12;
        }
    }
  }
  check("operator_unitarity", unitary);
  check("redundancy_inertness", inert);

  // Permutation faithfulness, norm preservation and control round-trip for
  // N in {2, 3}.
  bool faithful = true, norms = true, roundtrip = true;
  for (unsigned n : {2u, 3u}) {
    auto l = SwitchLayout::make(n, 1, false);
    SwitchEngine eng(l);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<GateSpec> gates;
      for (unsigned k = 0; k < n; ++k) gates.push_back(rand_gate());
      for (std::size_t r = 0; r < l.n_orders(); ++r) {
        auto order = Permutation::from_rank(r, n);
        auto outst = eng.run(gates, BasisOrder{order}, StateVector(1));
        norms = norms && std::abs(outst.norm() - 1.0) < 1e-10;
        StateVector expect(1);
        expect.apply_matrix(ordered_product(gates, order), {0});
        auto rho = reduced_density(outst, {0});
        cplx f = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j)
            f += std::conj(expect[i]) * rho.matrix()(i, j) * expect[j];
        faithful = faithful && std::abs(1.0 - f.real()) < 1e-10;
        auto rc = reduced_density(outst, l.control_qubits());
        roundtrip = roundtrip && std::abs(rc.matrix()(0, 0) - cplx(1.0)) < 1e-10;
      }
    }
  }
  check("permutation_faithfulness", faithful);
  check("norm_preservation", norms);
  check("control_round_trip", roundtrip);

  // Mutation probe: dropping the second controlled-SWAP from the slot must
  // break faithfulness; a suite that still passes would not be testing
  // anything.
  {
    auto l = SwitchLayout::make(2, 1, false);
    std::vector<GateSpec> gates{rand_gate(), rand_gate()};
    auto parts = build_slot_parts(l, gates);
    auto mutated = parts.gate_layer * parts.controlled_swap;  // one swap dropped
    auto intact = parts.controlled_swap * parts.gate_layer * parts.controlled_swap;
    check("mutation_detected", mutated.max_abs_diff(intact) > 1e-3);
  }

  // Mixture and decomposition identities on the 2-switch study.
  {
    TwoSwitchStudy study;
    bool mix_ok = true, dec_ok = true, real_ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      auto var = rand_gate();
      const double x = ang(rng);
      const double mix = study.classical_output(x, var);
      const double direct = 0.5 * study.fixed_output(x, var, 0) +
                            0.5 * study.fixed_output(x, var, 1);
      mix_ok = mix_ok && std::abs(mix - direct) < 1e-10;
      const double dec = (study.fixed_output(x, var, 0) +
                          study.fixed_output(x, var, 1) +
                          study.cross_term(x, var)) /
                         4.0;
      dec_ok = dec_ok && std::abs(study.quantum_output(x, var) - dec) < 1e-10;
      auto s = dft_coefficients(
          [&](double xx) { return study.quantum_output(xx, var); }, 1);
      real_ok = real_ok && s.max_reality_violation() < 1e-9;
    }
    check("mixture_identity", mix_ok);
    check("decomposition_identity", dec_ok);
    check("fourier_reality_symmetry", real_ok);
  }

  // Dataset class balance.
  {
    bool balance = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto d = generate_dataset(200, seed);
      double pos = 0.0;
      for (const auto& s : d)
        if (s.label == 1) pos += 1.0 / 200.0;
      balance = balance && std::abs(pos - 0.5) <= 0.08;
    }
    check("dataset_class_balance", balance);
  }

  rec.record["results"] = results;
  rec.finish(elapsed(t0), all);
  for (auto& [k, v] : results.items())
    std::printf("%s: %s\n", k.c_str(), v.get<std::string>().c_str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-switch simulator and classifier experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_flag;
  std::uint64_t seed = 7;
  std::size_t budget = 2000, restarts = 10;
  app.add_option("--out", out_flag, "output root (default $SWITCHSIM_OUT or ./runs)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--budget", budget, "optimizer evaluation budget");
  app.add_option("--restarts", restarts, "training restarts");

  auto* two = app.add_subcommand("two-switch", "closed-form regression study");
  auto* fourier = app.add_subcommand("fourier", "Fourier coefficient scan");
  auto* three = app.add_subcommand("three-switch", "order-controlled classifier");
  std::string mode = "fixed";
  bool do_train = false, do_replay = false;
  three->add_option("--mode", mode, "fixed | classical | quantum")
      ->check(CLI::IsMember({"fixed", "classical", "quantum"}));
  three->add_flag("--train", do_train, "train instead of replaying fixtures");
  three->add_flag("--replay", do_replay, "replay the reported parameters (default)");
  auto* reup = app.add_subcommand("reupload", "two-layer re-uploading baseline");
  auto* self = app.add_subcommand("selftest", "invariant suite");

  CLI11_PARSE(app, argc, argv);
  const std::string out = out_root(out_flag);
  try {
    if (two->parsed()) return cmd_two_switch(out);
    if (fourier->parsed()) return cmd_fourier(out, seed);
    if (three->parsed())
      return cmd_three_switch(out, mode, do_train, seed, budget, restarts);
    if (reup->parsed()) return cmd_reupload(out, seed, budget, restarts);
    if (self->parsed()) return cmd_selftest(out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
