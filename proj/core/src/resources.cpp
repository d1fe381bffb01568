#include "nucc/resources.hpp"

#include <algorithm>
#include <cmath>

#include "nucc/circuit.hpp"

namespace nucc {

void ResourceQuery::validate() const {
  if (n_electrons >= n_spin_orbitals) {
    throw ValidationError("need n_electrons < n_spin_orbitals");
  }
  if (epsilons.empty()) throw ValidationError("need at least one epsilon");
  for (const double eps : epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw ValidationError("epsilon must lie in (0, 1)");
    }
  }
}

std::vector<ExcitationTerm> enumerate_excitations(uint32_t n_spin_orbitals,
                                                  uint32_t n_electrons) {
  if (n_electrons >= n_spin_orbitals) {
    throw ValidationError("need n_electrons < n_spin_orbitals");
  }
  std::vector<ExcitationTerm> terms;
  // Singles: same spin, occupied to virtual.
  for (uint32_t i = 0; i < n_electrons; ++i) {
    for (uint32_t a = n_electrons; a < n_spin_orbitals; ++a) {
      if ((i & 1) != (a & 1)) continue;
      terms.push_back(ExcitationTerm{{a}, {i}, 0.0});
    }
  }
  // Doubles: unique pairs conserving the spin projection.
  for (uint32_t i = 0; i < n_electrons; ++i) {
    for (uint32_t j = i + 1; j < n_electrons; ++j) {
      for (uint32_t a = n_electrons; a < n_spin_orbitals; ++a) {
        for (uint32_t b = a + 1; b < n_spin_orbitals; ++b) {
          if ((i & 1) + (j & 1) != (a & 1) + (b & 1)) continue;
          terms.push_back(ExcitationTerm{{a, b}, {i, j}, 0.0});
        }
      }
    }
  }
  return terms;
}

long t_count_nonunitary(uint32_t n_body, double epsilon) {
  if (n_body < 1) throw ValidationError("excitation body count must be >= 1");
  const double value =
      1.12 * std::log2(1.0 / epsilon) + 18.0 * n_body + 10.6;
  return std::lround(value);
}

long t_count_uccsd(uint32_t n_body, double epsilon) {
  if (n_body < 1) throw ValidationError("excitation body count must be >= 1");
  const double rotations = std::ldexp(1.0, 2 * static_cast<int>(n_body) - 1);
  const double value = rotations * (5.3 + 0.56 * std::log2(1.0 / epsilon));
  return std::lround(value);
}

long cnot_count_nonunitary(const std::vector<ExcitationTerm>& excitations) {
  long total = 0;
  for (const ExcitationTerm& term : excitations) {
    uint32_t n_sys = 0;
    for (const uint32_t q : term.creations) n_sys = std::max(n_sys, q + 1);
    for (const uint32_t q : term.annihilations) n_sys = std::max(n_sys, q + 1);

    const uint32_t n_body = term.body_count();
    BlockLayout layout;
    layout.amplitude_ancilla = n_sys;
    for (uint32_t j = 0; j < n_body; ++j) {
      layout.creation_ancillas.push_back(n_sys + 1 + j);
    }
    for (uint32_t j = 0; j < n_body; ++j) {
      layout.annihilation_ancillas.push_back(n_sys + 1 + n_body + j);
    }
    const CircuitIR block =
        build_excitation_block(term, amplitude_to_angle(term.amplitude),
                               layout, n_sys + 2 * n_body + 1, "census");
    total += gate_census(block, /*decompose=*/true).cnot_equivalent;
  }
  return total;
}

long cnot_count_uccsd(const std::vector<ExcitationTerm>& excitations) {
  long total = 0;
  for (const ExcitationTerm& term : excitations) {
    const uint32_t n_body = term.body_count();
    // Pauli-string weight: every ladder index plus the string qubits, i.e.
    // non-factor qubits covered by an odd number of ladder strings.
    std::vector<uint32_t> indices;
    indices.insert(indices.end(), term.creations.begin(),
                   term.creations.end());
    indices.insert(indices.end(), term.annihilations.begin(),
                   term.annihilations.end());
    const uint32_t top = *std::max_element(indices.begin(), indices.end());
    long string_qubits = 0;
    for (uint32_t u = 0; u < top; ++u) {
      if (std::find(indices.begin(), indices.end(), u) != indices.end()) {
        continue;
      }
      int above = 0;
      for (const uint32_t q : indices) {
        if (q > u) ++above;
      }
      if (above & 1) ++string_qubits;
    }
    const long weight = 2L * n_body + string_qubits;
    const long strings = 1L << (2 * n_body - 1);
    total += strings * 2 * (weight - 1);
  }
  return total;
}

double ResourceReport::cnot_ratio() const {
  if (cnot_uccsd <= 0) throw ValidationError("ratio needs a positive baseline");
  return static_cast<double>(cnot_nonunitary) /
         static_cast<double>(cnot_uccsd);
}

double ResourceReport::t_ratio(size_t epsilon_index) const {
  if (epsilon_index >= epsilons.size()) {
    throw ValidationError("epsilon index out of range");
  }
  if (t_uccsd[epsilon_index] <= 0) {
    throw ValidationError("ratio needs a positive baseline");
  }
  return static_cast<double>(t_nonunitary[epsilon_index]) /
         static_cast<double>(t_uccsd[epsilon_index]);
}

ResourceReport report(const ResourceQuery& query) {
  query.validate();
  const std::vector<ExcitationTerm> excitations =
      query.excitations ? *query.excitations
                        : enumerate_excitations(query.n_spin_orbitals,
                                                query.n_electrons);

  ResourceReport out;
  out.name = query.name;
  out.epsilons = query.epsilons;
  for (const ExcitationTerm& term : excitations) {
    if (term.body_count() == 1) {
      ++out.n_singles;
    } else if (term.body_count() == 2) {
      ++out.n_doubles;
    }
  }
  out.cnot_nonunitary = cnot_count_nonunitary(excitations);
  out.cnot_uccsd = cnot_count_uccsd(excitations);
  for (const double eps : query.epsilons) {
    long t_nu = 0, t_u = 0;
    for (const ExcitationTerm& term : excitations) {
      t_nu += t_count_nonunitary(term.body_count(), eps);
      t_u += t_count_uccsd(term.body_count(), eps);
    }
    out.t_nonunitary.push_back(t_nu);
    out.t_uccsd.push_back(t_u);
  }
  return out;
}

const std::vector<MoleculeConfig>& dataset_molecules() {
  static const std::vector<MoleculeConfig> molecules{
      {"H2", 4, 2},    {"H3", 6, 3},    {"H4", 8, 4},   {"LiH", 12, 4},
      {"BeH2", 14, 6}, {"BH3", 16, 8},  {"NH3", 16, 10}, {"H2O", 14, 10},
      {"HF", 12, 10},  {"OH", 12, 9},
  };
  return molecules;
}

const std::vector<ReferenceCounts>& published_gate_counts() {
  static const std::vector<ReferenceCounts> counts{
      {"H2", 2, 1, 60, 120, 138, 48, 192, 264},
      {"H3", 4, 4, 98, 344, 392, 96, 640, 880},
      {"H4", 8, 18, 540, 1208, 1364, 672, 2560, 3520},
      {"LiH", 16, 76, 1444, 4496, 5048, 2848, 10240, 14080},
      {"BeH2", 24, 180, 1830, 10176, 11400, 2944, 23808, 32736},
      {"BH3", 32, 328, 4734, 18144, 20304, 8960, 43008, 59136},
      {"NH3", 30, 285, 6162, 15840, 17730, 14032, 37440, 51480},
      {"H2O", 20, 120, 1820, 6920, 7760, 3264, 16000, 22000},
      {"HF", 10, 25, 632, 1640, 1850, 816, 3520, 4840},
      {"OH", 13, 46, 644, 2834, 3188, 880, 6304, 8668},
  };
  return counts;
}

}  // namespace nucc
