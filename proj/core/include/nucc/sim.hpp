#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nucc/builder.hpp"
#include "nucc/circuit.hpp"
#include "nucc/pauli.hpp"

namespace nucc {

/// Largest register the brute-force operator machinery accepts.
constexpr uint32_t kOracleQubitLimit = 16;

/// 2^n complex amplitudes, unit norm after every public operation.
class StateVector {
 public:
  explicit StateVector(uint32_t n_qubits);
  static StateVector basis_state(uint32_t n_qubits, uint64_t index);

  uint32_t n_qubits() const { return n_qubits_; }
  uint64_t dim() const { return uint64_t{1} << n_qubits_; }

  Complex& operator[](uint64_t index) { return amps_[index]; }
  const Complex& operator[](uint64_t index) const { return amps_[index]; }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm() const;
  void normalize();
  /// <this|other>.
  Complex inner(const StateVector& other) const;
  /// |<this|other>|^2.
  double fidelity(const StateVector& other) const;

 private:
  uint32_t n_qubits_;
  std::vector<Complex> amps_;
};

/// In-place unitary action of one gate.
void apply_gate(StateVector& state, const Gate& gate);

/// Applies an optional RY pre-rotation, projects onto `outcome`, and
/// renormalizes; returns the branch probability. An exactly unreachable
/// branch throws ZeroProbabilityError instead of renormalizing.
double measure_project(StateVector& state, uint32_t qubit, int outcome,
                       std::optional<double> pre_rotation = std::nullopt,
                       const std::string& label = "");

/// Post-selected execution outcome. Block grouping follows measurement
/// labels: everything before the last '.' names the block.
struct RunResult {
  StateVector final_state;  // system qubits only, ancillas sliced away
  double success_probability = 1.0;
  std::vector<double> per_block_probabilities;
  std::vector<std::string> block_labels;
};

/// Runs the circuit, projecting every measurement onto its desired outcome
/// and accumulating branch probabilities. Ancillas (per the circuit's
/// ancilla map) must end in known basis states; the returned state covers
/// the remaining system qubits.
RunResult run_postselected(const CircuitIR& circ, const StateVector& init);

/// Tally over repeated full executions with sampled measurement outcomes.
struct ShotRecord {
  uint64_t shots = 0;
  uint64_t successes = 0;
  std::map<std::string, uint64_t> outcome_histogram;

  ShotRecord& operator+=(const ShotRecord& other);
};

/// Samples every measurement from its Born probability, shot by shot; a shot
/// succeeds when every outcome equals its desired value. Deterministic for a
/// fixed seed.
ShotRecord run_sampled(const CircuitIR& circ, const StateVector& init,
                       uint64_t seed, uint64_t shots);

/// <psi|op|psi> for a Hermitian operator; the imaginary residual is checked
/// against 1e-10.
double expectation(const StateVector& state, const PauliTermSum& op);

/// op|psi>, not renormalized.
StateVector apply_operator(const StateVector& state, const PauliTermSum& op);

/// Brute-force product state prod_k (I + alpha_k T_k) |reference>, applied
/// through the occupation-basis operator images directly. This is the
/// independent oracle the circuit path is checked against. Throws
/// ZeroProbabilityError if the product annihilates the state.
StateVector oracle_product_state(uint64_t reference_occupation,
                                 std::span<const ExcitationTerm> blocks,
                                 uint32_t n_qubits);

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

/// Lowest eigenpair by restarted Lanczos iteration with full
/// reorthogonalization; residual ||Hv - Ev|| <= 1e-8 or ConvergenceError
/// after 10 * 2^n operator applications.
GroundState ground_state(const PauliTermSum& op);

}  // namespace nucc
