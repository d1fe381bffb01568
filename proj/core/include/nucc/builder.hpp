#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nucc/chem_io.hpp"
#include "nucc/circuit.hpp"
#include "nucc/jordan_wigner.hpp"

namespace nucc {

/// An n-body excitation a^+_{c1} a^+_{c2}... a_{a1} a_{a2}... with a real
/// amplitude. Index lists are strictly increasing and disjoint.
struct ExcitationTerm {
  std::vector<uint32_t> creations;
  std::vector<uint32_t> annihilations;
  double amplitude = 0.0;

  uint32_t body_count() const {
    return static_cast<uint32_t>(creations.size());
  }
  void validate(uint32_t n_system_qubits) const;

  /// Operator product with unit coefficient: creations ascending left to
  /// right, then annihilations ascending.
  FermionProduct to_fermion_product() const;

  std::string to_string() const;
  bool operator==(const ExcitationTerm&) const = default;
};

/// Control-qubit preparation angles for one block. The ancilla is prepared in
/// cos(theta/2)|0> + e^{i sign_phase} sin(theta/2)|1> and measured in the
/// basis RY(-theta) rotates to the computational one.
struct AngleSpec {
  double theta = 0.0;       // in [0, pi)
  double sign_phase = 0.0;  // 0 or pi

  bool operator==(const AngleSpec&) const = default;
};

/// theta = 2*atan(sqrt(|alpha|)), so tan^2(theta/2) = |alpha| and the
/// post-selected block state is exactly proportional to (I + alpha T)|psi>.
/// Negative amplitudes set sign_phase = pi; alpha = 0 gives an identity
/// block.
AngleSpec amplitude_to_angle(double alpha);

/// Qubit assignment for one excitation block: 2n+1 ancillas, one per ladder
/// factor plus the amplitude control.
struct BlockLayout {
  uint32_t amplitude_ancilla = 0;
  std::vector<uint32_t> creation_ancillas;
  std::vector<uint32_t> annihilation_ancillas;

  void validate(const ExcitationTerm& term, uint32_t n_qubits) const;
};

/// The single-ancilla ladder primitive: prepares the ancilla in |+>, applies
/// the phase-sandwiched X on the target, rotates the ancilla out through a
/// final phase gate and H, then measures. With select_creation the final
/// phase is S-dagger and outcome 0 applies (X - iY)/2 on the target; with it
/// unset the phase is S and outcome 0 applies (X + iY)/2.
CircuitIR build_fermionic_primitive(uint32_t target_qubit,
                                    uint32_t ancilla_qubit,
                                    bool select_creation,
                                    const std::string& label = "ferm");

/// One excitation block. Post-selecting every measurement on its desired
/// outcome maps |psi> to (I + alpha T)|psi> / ||.||, T being the
/// occupation-basis image of the term, Z strings included. Z strings are
/// emitted per (creation, annihilation) pair, pairing the k-th creation with
/// the k-th annihilation; the residual structural sign is folded into the
/// amplitude ancilla's phase.
CircuitIR build_excitation_block(const ExcitationTerm& term,
                                 const AngleSpec& angle,
                                 const BlockLayout& layout, uint32_t n_qubits,
                                 const std::string& label_prefix);

constexpr double kDefaultDropThreshold = 1e-8;

/// Ordered block list for a full state-preparation circuit.
struct StatePrepPlan {
  uint32_t n_system_qubits = 0;
  uint64_t reference_occupation = 0;
  std::vector<std::pair<ExcitationTerm, AngleSpec>> blocks;
  double drop_threshold = kDefaultDropThreshold;

  uint32_t max_body() const;
  std::vector<ExcitationTerm> terms() const;
};

/// One block per retained single and per retained unique double (the stored
/// i<j, a<b representative), singles first, each group sorted by
/// (annihilations, creations). Terms below the threshold are dropped. The
/// reference determinant occupies the lowest n_electrons spin orbitals.
StatePrepPlan plan_state_prep(const CCAmplitudes& amps,
                              double drop_threshold = kDefaultDropThreshold);

/// Full circuit: X gates establish the reference determinant, then the
/// blocks run sequentially. With reuse_ancillas one bank of 2*n_max+1
/// ancillas is shared, reset between blocks; otherwise each block gets fresh
/// ancillas. Every measurement post-selects outcome 0.
CircuitIR assemble_circuit(const StatePrepPlan& plan, bool reuse_ancillas);

}  // namespace nucc
