#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nucc/pauli.hpp"

namespace nucc {

/// Molecular one- and two-electron integrals over spatial orbitals, in
/// Hartree. Two-body integrals use chemists' notation (pq|rs) and obey the
/// 8-fold real-orbital symmetry.
struct MolecularIntegrals {
  uint32_t n_spatial_orbitals = 0;
  uint32_t n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  std::vector<double> one_body;  // [p * n + q]
  std::vector<double> two_body;  // [((p*n + q)*n + r)*n + s]

  explicit MolecularIntegrals(uint32_t n_spatial = 0, uint32_t n_elec = 0);

  double h(uint32_t p, uint32_t q) const;
  void set_h(uint32_t p, uint32_t q, double value);
  double g(uint32_t p, uint32_t q, uint32_t r, uint32_t s) const;
  /// Writes (pq|rs) and its 7 symmetry images.
  void set_g(uint32_t p, uint32_t q, uint32_t r, uint32_t s, double value);

  /// Checks h symmetry and the 8-fold g symmetry to 1e-10.
  void validate() const;
};

/// Parses the FCIDUMP subset: a "&FCI NORB=..,NELEC=..,MS2=.." header closed
/// by "&END" or "/", then whitespace-separated "value i j k l" records with
/// 1-based indices. (0,0,0,0) is the core energy, (i,j,0,0) one-body, all
/// nonzero two-body; orbital-energy records (i,0,0,0) are accepted and
/// ignored. ORBSYM/ISYM keys are accepted and unused.
MolecularIntegrals parse_fcidump(const std::string& text);

/// Inverse of parse_fcidump for round-tripping integrals to disk.
std::string emit_fcidump(const MolecularIntegrals& ints);

struct SingleAmplitude {
  uint32_t i = 0;  // occupied spin orbital
  uint32_t a = 0;  // virtual spin orbital
  double t = 0.0;
};

struct DoubleAmplitude {
  uint32_t i = 0, j = 0;  // occupied, stored with i < j
  uint32_t a = 0, b = 0;  // virtual, stored with a < b
  double t = 0.0;
};

/// Cluster amplitudes over spin orbitals, canonicalized so each double keeps
/// one representative (i<j, a<b) with antisymmetry signs folded into t.
struct CCAmplitudes {
  uint32_t n_spin_orbitals = 0;
  uint32_t n_electrons = 0;
  std::vector<SingleAmplitude> singles;
  std::vector<DoubleAmplitude> doubles;
};

/// Parses the JSON amplitude document:
///   {"n_spin_orbitals": N, "n_electrons": M,
///    "singles": [[i, a, t], ...], "doubles": [[i, j, a, b, t], ...]}
/// Indices are 0-based spin orbitals. Swapped index orders are canonicalized
/// with the fermionic sign flip; duplicate terms and occupied/virtual range
/// violations are errors.
CCAmplitudes parse_amplitudes(const std::string& text);

std::string emit_amplitudes(const CCAmplitudes& amps);

/// A qubit Hamiltonian with its reference determinant.
struct HamiltonianSpec {
  PauliTermSum qubit_hamiltonian;
  uint32_t n_qubits = 0;
  uint64_t reference_occupation = 0;
  std::optional<double> reference_energy;
  std::optional<double> cc_reference_energy;

  HamiltonianSpec() : qubit_hamiltonian(1) {}
  explicit HamiltonianSpec(PauliTermSum h);

  /// Hermiticity of the stored sum and popcount bookkeeping.
  void validate(std::optional<uint32_t> n_electrons = std::nullopt) const;
};

/// Second-quantized build, spin orbital index = 2*spatial + spin with spin-up
/// on even indices:
///   H = core + sum_pq h[p][q] a^+_ps a_qs
///            + 1/2 sum_pqrs (pq|rs) a^+_ps a^+_rt a_st a_qs
/// mapped through the occupation-basis ladder images. The reference
/// determinant occupies the lowest n_electrons spin orbitals.
HamiltonianSpec build_qubit_hamiltonian(const MolecularIntegrals& ints);

/// Parses "coefficient WORD" lines ('#' starts a comment; blank lines are
/// skipped). Coefficients are real or pure-imaginary ("0.5", "-1e-3", "0.5i").
/// Duplicate words merge; a non-Hermitian total is an error.
HamiltonianSpec parse_pauli_hamiltonian(const std::string& text);

}  // namespace nucc
