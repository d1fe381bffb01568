#include "nucc/jordan_wigner.hpp"

namespace nucc {

namespace {

PauliTermSum jw_ladder(uint32_t p, uint32_t n_qubits, bool dagger) {
  if (p >= n_qubits) {
    throw ValidationError("spin-orbital index out of range for qubit count");
  }
  const uint64_t z_string = (uint64_t{1} << p) - 1;  // Z on every qubit below p

  PauliTermSum sum(n_qubits);
  PauliString x_part(n_qubits, uint64_t{1} << p, z_string);
  PauliString y_part(n_qubits, uint64_t{1} << p, z_string | (uint64_t{1} << p));
  sum.add(x_part, 0.5);
  sum.add(y_part, dagger ? Complex{0, -0.5} : Complex{0, 0.5});
  return sum;
}

}  // namespace

PauliTermSum jw_creation(uint32_t p, uint32_t n_qubits) {
  return jw_ladder(p, n_qubits, true);
}

PauliTermSum jw_annihilation(uint32_t q, uint32_t n_qubits) {
  return jw_ladder(q, n_qubits, false);
}

PauliTermSum jw_transform(const FermionProduct& prod, uint32_t n_qubits) {
  PauliTermSum result = PauliTermSum::identity(n_qubits, prod.coefficient);
  for (const LadderOp& op : prod.factors) {
    result = multiply(result, jw_ladder(op.orbital, n_qubits, op.dagger));
    if (result.empty()) break;  // nilpotency can zero the product early
  }
  result.prune();
  return result;
}

PauliTermSum jw_number_operator(uint32_t n_qubits) {
  PauliTermSum sum(n_qubits);
  sum.add(PauliString(n_qubits), 0.5 * n_qubits);
  for (uint32_t p = 0; p < n_qubits; ++p) {
    PauliString z(n_qubits, 0, uint64_t{1} << p);
    sum.add(z, -0.5);
  }
  return sum;
}

}  // namespace nucc
