#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nucc/builder.hpp"

namespace nucc {

/// Inputs for a gate-count estimate. With no explicit excitation list, all
/// spin-preserving singles and doubles of the configuration are used.
struct ResourceQuery {
  uint32_t n_spin_orbitals = 0;
  uint32_t n_electrons = 0;
  std::vector<double> epsilons{0.1, 0.001};  // rotation-synthesis precision
  std::optional<std::vector<ExcitationTerm>> excitations;
  std::string name;

  void validate() const;
};

/// All spin-preserving singles (occupied -> virtual, same spin) and unique
/// spin-projection-conserving doubles (i<j, a<b) for a configuration whose
/// occupied block is the lowest n_electrons spin orbitals. Spin orbital
/// index = 2*spatial + spin, spin-up even.
std::vector<ExcitationTerm> enumerate_excitations(uint32_t n_spin_orbitals,
                                                  uint32_t n_electrons);

/// Per-term T cost of the measurement-based construction,
/// round(1.12 log2(1/eps) + 18 n + 10.6) for an n-body term.
long t_count_nonunitary(uint32_t n_body, double epsilon);

/// Per-term T cost of the trotterized unitary baseline,
/// round(2^(2n-1) (5.3 + 0.56 log2(1/eps))).
long t_count_uccsd(uint32_t n_body, double epsilon);

/// Two-qubit tally of the actually-built excitation blocks with controlled-S
/// fully decomposed; CZ counts as one CNOT-equivalent gate. Deterministic for
/// a fixed excitation set and always equal to the builder's census.
long cnot_count_nonunitary(const std::vector<ExcitationTerm>& excitations);

/// CNOT-ladder baseline: each n-body excitation expands to 2^(2n-1) Pauli
/// exponentials of weight w (string qubits included) costing 2(w-1) CNOTs
/// each, with no inter-string cancellation.
long cnot_count_uccsd(const std::vector<ExcitationTerm>& excitations);

struct ResourceReport {
  std::string name;
  uint32_t n_singles = 0;
  uint32_t n_doubles = 0;
  long cnot_nonunitary = 0;
  long cnot_uccsd = 0;
  std::vector<double> epsilons;
  std::vector<long> t_nonunitary;  // one entry per epsilon
  std::vector<long> t_uccsd;

  double cnot_ratio() const;
  double t_ratio(size_t epsilon_index) const;
};

ResourceReport report(const ResourceQuery& query);

/// One molecule of the benchmark dataset.
struct MoleculeConfig {
  std::string name;
  uint32_t n_spin_orbitals = 0;
  uint32_t n_electrons = 0;
};

/// The ten-molecule minimal-basis dataset used for resource comparisons.
const std::vector<MoleculeConfig>& dataset_molecules();

/// Previously reported gate counts for the same dataset, kept as reference
/// data for comparison output. T columns are at eps = 0.1 and eps = 0.001.
struct ReferenceCounts {
  std::string name;
  uint32_t n_singles = 0;
  uint32_t n_doubles = 0;
  long cnot_nonunitary = 0;
  long t_nonunitary_e1 = 0;
  long t_nonunitary_e3 = 0;
  long cnot_uccsd = 0;
  long t_uccsd_e1 = 0;
  long t_uccsd_e3 = 0;
};

const std::vector<ReferenceCounts>& published_gate_counts();

}  // namespace nucc
