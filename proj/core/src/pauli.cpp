#include "nucc/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace nucc {

namespace {

// Single-qubit product table, indexed by the x + 2z symbol codes
// (I=0, X=1, Z=2, Y=3). Each entry is the result symbol and the phase as a
// power of i: X*Z = -iY, Z*X = iY, X*Y = iZ, Y*X = -iZ, Y*Z = iX, Z*Y = -iX.
struct MulEntry {
  uint8_t sym;
  uint8_t ipow;
};
constexpr MulEntry kMul[4][4] = {
    {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
    {{1, 0}, {0, 0}, {3, 3}, {2, 1}},
    {{2, 0}, {3, 1}, {0, 0}, {1, 3}},
    {{3, 0}, {2, 3}, {1, 1}, {0, 0}},
};

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

uint64_t qubit_bit(uint32_t q) { return uint64_t{1} << q; }

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Z:
      return 'Z';
    case Pauli::Y:
      return 'Y';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw ParseError(std::string("invalid Pauli symbol '") + c + "'");
  }
}

PauliString::PauliString(uint32_t n_qubits)
    : n_qubits_(n_qubits), x_mask_(0), z_mask_(0), phase_power_(0) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw ValidationError("PauliString qubit count out of range");
  }
}

PauliString::PauliString(uint32_t n_qubits, uint64_t x_mask, uint64_t z_mask,
                         int phase_power)
    : n_qubits_(n_qubits),
      x_mask_(x_mask),
      z_mask_(z_mask),
      phase_power_(((phase_power % 4) + 4) % 4) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw ValidationError("PauliString qubit count out of range");
  }
  const uint64_t valid =
      n_qubits == 64 ? ~uint64_t{0} : (uint64_t{1} << n_qubits) - 1;
  if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
    throw ValidationError("Pauli mask touches qubits beyond n_qubits");
  }
}

PauliString PauliString::from_word(const std::string& word, int phase_power) {
  if (word.empty()) throw ParseError("empty Pauli word");
  PauliString s(static_cast<uint32_t>(word.size()));
  for (uint32_t q = 0; q < word.size(); ++q) {
    s.set_op(q, pauli_from_char(word[q]));
  }
  s.phase_power_ = ((phase_power % 4) + 4) % 4;
  return s;
}

Pauli PauliString::op(uint32_t qubit) const {
  if (qubit >= n_qubits_) throw ValidationError("qubit index out of range");
  const int x = (x_mask_ >> qubit) & 1;
  const int z = (z_mask_ >> qubit) & 1;
  return static_cast<Pauli>(x + 2 * z);
}

void PauliString::set_op(uint32_t qubit, Pauli p) {
  if (qubit >= n_qubits_) throw ValidationError("qubit index out of range");
  const auto code = static_cast<unsigned>(p);
  x_mask_ = (x_mask_ & ~qubit_bit(qubit)) |
            (static_cast<uint64_t>(code & 1) << qubit);
  z_mask_ = (z_mask_ & ~qubit_bit(qubit)) |
            (static_cast<uint64_t>((code >> 1) & 1) << qubit);
}

Complex PauliString::phase() const { return kIPowers[phase_power_]; }

uint32_t PauliString::weight() const {
  return static_cast<uint32_t>(std::popcount(x_mask_ | z_mask_));
}

std::string PauliString::word() const {
  std::string w(n_qubits_, 'I');
  for (uint32_t q = 0; q < n_qubits_; ++q) w[q] = pauli_char(op(q));
  return w;
}

std::string PauliString::to_string() const {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  return kPrefix[phase_power_] + word();
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_qubits_ != b.n_qubits_) {
    throw ValidationError("Pauli string qubit-count mismatch");
  }
  int ipow = a.phase_power_ + b.phase_power_;
  // Phase contributions arise only where both strings are non-identity and
  // differ, i.e. on the qubits of (xa^xb)|(za^zb) restricted to both supports.
  uint64_t active = (a.x_mask_ | a.z_mask_) & (b.x_mask_ | b.z_mask_);
  while (active) {
    const uint32_t q = static_cast<uint32_t>(std::countr_zero(active));
    active &= active - 1;
    const int sa = ((a.x_mask_ >> q) & 1) + 2 * ((a.z_mask_ >> q) & 1);
    const int sb = ((b.x_mask_ >> q) & 1) + 2 * ((b.z_mask_ >> q) & 1);
    ipow += kMul[sa][sb].ipow;
  }
  return PauliString(a.n_qubits_, a.x_mask_ ^ b.x_mask_, a.z_mask_ ^ b.z_mask_,
                     ipow);
}

PauliTermSum::PauliTermSum(uint32_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > PauliString::kMaxQubits) {
    throw ValidationError("PauliTermSum qubit count out of range");
  }
}

PauliTermSum PauliTermSum::identity(uint32_t n_qubits, Complex coeff) {
  PauliTermSum s(n_qubits);
  s.add(PauliString(n_qubits), coeff);
  return s;
}

PauliTermSum PauliTermSum::single(const PauliString& s, Complex coeff) {
  PauliTermSum sum(s.n_qubits());
  sum.add(s, coeff);
  return sum;
}

void PauliTermSum::add(const PauliString& s, Complex coeff) {
  if (s.n_qubits() != n_qubits_) {
    throw ValidationError("qubit-count mismatch in PauliTermSum::add");
  }
  const Word w{s.x_mask(), s.z_mask()};
  auto [it, inserted] = terms_.try_emplace(w, Complex{0, 0});
  it->second += coeff * s.phase();
  if (std::abs(it->second) < kDropTolerance) terms_.erase(it);
}

void PauliTermSum::add(const PauliTermSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw ValidationError("qubit-count mismatch in PauliTermSum::add");
  }
  for (const auto& [w, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, Complex{0, 0});
    it->second += c;
    if (std::abs(it->second) < kDropTolerance) terms_.erase(it);
  }
}

void PauliTermSum::scale(Complex c) {
  for (auto& [w, coeff] : terms_) coeff *= c;
  prune();
}

void PauliTermSum::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Complex PauliTermSum::coefficient(const PauliString& s) const {
  const auto it = terms_.find(Word{s.x_mask(), s.z_mask()});
  if (it == terms_.end()) return {0, 0};
  // The lookup is phase-normalized; undo the query string's own phase.
  return it->second / s.phase();
}

PauliTermSum PauliTermSum::adjoint() const {
  PauliTermSum out(n_qubits_);
  for (const auto& [w, c] : terms_) {
    // Phase-normalized strings are Hermitian, so only conjugation remains.
    out.terms_[w] = std::conj(c);
  }
  return out;
}

bool PauliTermSum::is_hermitian(double tol) const {
  for (const auto& [w, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

double PauliTermSum::coefficient_norm() const {
  double norm = 0;
  for (const auto& [w, c] : terms_) norm += std::abs(c);
  return norm;
}

PauliTermSum& PauliTermSum::operator+=(const PauliTermSum& rhs) {
  add(rhs);
  return *this;
}

PauliTermSum& PauliTermSum::operator-=(const PauliTermSum& rhs) {
  PauliTermSum neg = rhs;
  neg.scale(-1.0);
  add(neg);
  return *this;
}

PauliTermSum& PauliTermSum::operator*=(Complex c) {
  scale(c);
  return *this;
}

std::optional<Complex> PauliTermSum::proportionality_factor(
    const PauliTermSum& other, double tol) const {
  if (n_qubits_ != other.n_qubits_) return std::nullopt;
  if (terms_.size() != other.terms_.size()) return std::nullopt;
  if (terms_.empty()) return Complex{0, 0};
  std::optional<Complex> ratio;
  auto it = terms_.begin();
  auto jt = other.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return std::nullopt;
    const Complex r = it->second / jt->second;
    if (!ratio) {
      ratio = r;
    } else if (std::abs(r - *ratio) > tol) {
      return std::nullopt;
    }
  }
  return ratio;
}

bool PauliTermSum::approx_equal(const PauliTermSum& other, double tol) const {
  if (n_qubits_ != other.n_qubits_) return false;
  PauliTermSum diff = *this;
  diff -= other;
  diff.prune(tol);
  return diff.empty();
}

std::string PauliTermSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")*" << PauliString(n_qubits_, w.x, w.z).word();
  }
  if (first) os << "0";
  return os.str();
}

PauliTermSum multiply(const PauliTermSum& lhs, const PauliTermSum& rhs) {
  if (lhs.n_qubits() != rhs.n_qubits()) {
    throw ValidationError("qubit-count mismatch in PauliTermSum multiply");
  }
  PauliTermSum out(lhs.n_qubits());
  for (const auto& [wa, ca] : lhs.terms()) {
    const PauliString a(lhs.n_qubits(), wa.x, wa.z);
    for (const auto& [wb, cb] : rhs.terms()) {
      const PauliString b(rhs.n_qubits(), wb.x, wb.z);
      out.add(a * b, ca * cb);
    }
  }
  out.prune();
  return out;
}

PauliTermSum operator+(PauliTermSum a, const PauliTermSum& b) {
  a += b;
  return a;
}

PauliTermSum operator-(PauliTermSum a, const PauliTermSum& b) {
  a -= b;
  return a;
}

PauliTermSum operator*(Complex c, PauliTermSum a) {
  a.scale(c);
  return a;
}

Eigen::MatrixXcd to_dense_matrix(const PauliTermSum& op, uint32_t max_qubits) {
  const uint32_t n = op.n_qubits();
  if (n > max_qubits) {
    throw ValidationError("dense matrix dimension limit exceeded");
  }
  const uint64_t dim = uint64_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& [w, c] : op.terms()) {
    const int y_count = std::popcount(w.x & w.z);
    const Complex base = c * kIPowers[y_count & 3];
    for (uint64_t col = 0; col < dim; ++col) {
      const uint64_t row = col ^ w.x;
      const double sign = (std::popcount(col & w.z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          base * sign;
    }
  }
  return m;
}

}  // namespace nucc
