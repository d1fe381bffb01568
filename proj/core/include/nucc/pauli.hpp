#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "nucc/errors.hpp"

namespace nucc {

using Complex = std::complex<double>;

/// Single-qubit Pauli symbols. The numeric value encodes the symplectic
/// (x, z) bit pair as x + 2z, so products reduce to XORs plus a phase table.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis with a global phase in {1, i, -1, -i}.
///
/// Qubit q's symbol lives in bit q of the x/z masks: (x,z) = (1,0) is X,
/// (0,1) is Z, (1,1) is Y. Qubit 0 is the least-significant bit of a
/// statevector index everywhere in this library.
class PauliString {
 public:
  static constexpr uint32_t kMaxQubits = 64;

  explicit PauliString(uint32_t n_qubits);
  PauliString(uint32_t n_qubits, uint64_t x_mask, uint64_t z_mask,
              int phase_power = 0);

  /// Parses a word like "XIZY"; leftmost character is qubit 0.
  static PauliString from_word(const std::string& word, int phase_power = 0);

  uint32_t n_qubits() const { return n_qubits_; }
  uint64_t x_mask() const { return x_mask_; }
  uint64_t z_mask() const { return z_mask_; }

  Pauli op(uint32_t qubit) const;
  void set_op(uint32_t qubit, Pauli p);

  /// Global phase is i^phase_power(), held exactly as an integer mod 4.
  int phase_power() const { return phase_power_; }
  Complex phase() const;

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  /// Number of non-identity symbols, Z-strings included.
  uint32_t weight() const;

  /// Word without the phase, qubit 0 first: e.g. "XIZY".
  std::string word() const;
  /// Phase-prefixed form, e.g. "-iXIZY".
  std::string to_string() const;

  bool same_word(const PauliString& other) const {
    return n_qubits_ == other.n_qubits_ && x_mask_ == other.x_mask_ &&
           z_mask_ == other.z_mask_;
  }
  bool operator==(const PauliString& other) const = default;

  friend PauliString operator*(const PauliString& a, const PauliString& b);

 private:
  uint32_t n_qubits_;
  uint64_t x_mask_;
  uint64_t z_mask_;
  int phase_power_;  // in {0, 1, 2, 3}
};

/// Weighted sum of phase-normalized Pauli strings.
///
/// Stored strings always carry phase +1; string phases are folded into the
/// coefficients, so no two keys differ only by phase. Coefficients whose
/// magnitude drops below the tolerance are erased when prune() runs (all
/// arithmetic entry points prune on exit).
class PauliTermSum {
 public:
  static constexpr double kDropTolerance = 1e-12;

  struct Word {
    uint64_t x = 0;
    uint64_t z = 0;
    auto operator<=>(const Word&) const = default;
  };
  using TermMap = std::map<Word, Complex>;

  explicit PauliTermSum(uint32_t n_qubits);

  static PauliTermSum zero(uint32_t n_qubits) { return PauliTermSum(n_qubits); }
  static PauliTermSum identity(uint32_t n_qubits, Complex coeff = 1.0);
  static PauliTermSum single(const PauliString& s, Complex coeff = 1.0);

  uint32_t n_qubits() const { return n_qubits_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  /// Adds coeff * s, folding the string's phase into the coefficient.
  void add(const PauliString& s, Complex coeff);
  void add(const PauliTermSum& other);
  void scale(Complex c);
  void prune(double tol = kDropTolerance);

  /// Coefficient of the (phase-normalized) word of s; 0 when absent.
  Complex coefficient(const PauliString& s) const;

  PauliTermSum adjoint() const;
  /// With phase-normalized keys every stored string is self-adjoint, so the
  /// sum is Hermitian exactly when all coefficients are real.
  bool is_hermitian(double tol = 1e-10) const;

  /// Sum of coefficient magnitudes (L1 norm over terms).
  double coefficient_norm() const;

  PauliTermSum& operator+=(const PauliTermSum& rhs);
  PauliTermSum& operator-=(const PauliTermSum& rhs);
  PauliTermSum& operator*=(Complex c);

  /// If *this == r * other termwise within tol, returns r. Empty sums are
  /// proportional to anything with r = 0 only when both are empty.
  std::optional<Complex> proportionality_factor(const PauliTermSum& other,
                                                double tol = 1e-9) const;

  bool approx_equal(const PauliTermSum& other, double tol = 1e-10) const;

  std::string to_string() const;

 private:
  uint32_t n_qubits_;
  TermMap terms_;
};

PauliTermSum multiply(const PauliTermSum& lhs, const PauliTermSum& rhs);

inline PauliTermSum operator*(const PauliTermSum& a, const PauliTermSum& b) {
  return multiply(a, b);
}
PauliTermSum operator+(PauliTermSum a, const PauliTermSum& b);
PauliTermSum operator-(PauliTermSum a, const PauliTermSum& b);
PauliTermSum operator*(Complex c, PauliTermSum a);

/// Dense 2^n x 2^n realization by Kronecker expansion; the verification
/// oracle for the symbolic algebra. Memory is 16 * 4^n bytes, so the guard
/// exists to catch accidental large instantiations.
Eigen::MatrixXcd to_dense_matrix(const PauliTermSum& op,
                                 uint32_t max_qubits = 16);

}  // namespace nucc
