#pragma once

#include <cstdint>
#include <vector>

#include "nucc/pauli.hpp"

namespace nucc {

/// One ladder operator: creation (dagger) or annihilation on a spin orbital.
struct LadderOp {
  uint32_t orbital = 0;
  bool dagger = false;
};

/// Ordered product of ladder operators times a scalar. Factors are listed in
/// operator order, i.e. factors.front() is the leftmost operator and acts
/// last on a ket.
struct FermionProduct {
  std::vector<LadderOp> factors;
  Complex coefficient = 1.0;

  static FermionProduct creation(uint32_t p) {
    return FermionProduct{{LadderOp{p, true}}, 1.0};
  }
  static FermionProduct annihilation(uint32_t q) {
    return FermionProduct{{LadderOp{q, false}}, 1.0};
  }
};

/// Occupation-basis image of a creation operator: a Z string below the
/// orbital followed by (X - iY)/2 on it. |1> means occupied, so the single
/// orbital image is |1><0|.
PauliTermSum jw_creation(uint32_t p, uint32_t n_qubits);

/// Adjoint image, (X + iY)/2 behind the same Z string.
PauliTermSum jw_annihilation(uint32_t q, uint32_t n_qubits);

/// Image of an ordered ladder-operator product: factor images multiplied with
/// the Pauli rules, like terms merged and pruned.
PauliTermSum jw_transform(const FermionProduct& prod, uint32_t n_qubits);

/// Total particle-number operator sum_p (I - Z_p) / 2.
PauliTermSum jw_number_operator(uint32_t n_qubits);

}  // namespace nucc
