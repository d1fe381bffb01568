#include "nucc/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <Eigen/Dense>

namespace nucc {

namespace {

constexpr double kZeroBranchTol = 1e-14;
constexpr double kEigenResidualTol = 1e-8;
constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

struct Mat2 {
  Complex m00, m01, m10, m11;
};

Mat2 gate_matrix(GateKind kind, double angle) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::X:
    case GateKind::CNOT:
      return {0, 1, 1, 0};
    case GateKind::S:
      return {1, 0, 0, Complex{0, 1}};
    case GateKind::Sdg:
      return {1, 0, 0, Complex{0, -1}};
    case GateKind::T:
      return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::Tdg:
      return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
    case GateKind::RY:
    case GateKind::CRY: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      return {c, -s, s, c};
    }
    case GateKind::Phase:
      return {1, 0, 0, std::polar(1.0, angle)};
    case GateKind::CZ:
      return {1, 0, 0, -1};
    case GateKind::CS:
      return {1, 0, 0, Complex{0, 1}};
    case GateKind::CSdg:
      return {1, 0, 0, Complex{0, -1}};
  }
  throw ValidationError("unknown gate kind");
}

void apply_1q(std::span<Complex> amps, uint32_t target, uint64_t control_mask,
              const Mat2& m) {
  const uint64_t tbit = uint64_t{1} << target;
  const uint64_t dim = amps.size();
  for (uint64_t idx = 0; idx < dim; ++idx) {
    if ((idx & tbit) != 0) continue;
    if ((idx & control_mask) != control_mask) continue;
    const Complex a0 = amps[idx];
    const Complex a1 = amps[idx | tbit];
    amps[idx] = m.m00 * a0 + m.m01 * a1;
    amps[idx | tbit] = m.m10 * a0 + m.m11 * a1;
  }
}

/// Flattened term for fast repeated operator application.
struct FlatTerm {
  uint64_t x;
  uint64_t z;
  Complex base;  // coefficient times i^(number of Y symbols)
};

std::vector<FlatTerm> flatten(const PauliTermSum& op) {
  std::vector<FlatTerm> terms;
  terms.reserve(op.size());
  for (const auto& [w, c] : op.terms()) {
    const int y_count = std::popcount(w.x & w.z);
    terms.push_back({w.x, w.z, c * kIPowers[y_count & 3]});
  }
  return terms;
}

void apply_flat(const std::vector<FlatTerm>& terms,
                std::span<const Complex> in, std::span<Complex> out) {
  std::fill(out.begin(), out.end(), Complex{0, 0});
  const uint64_t dim = in.size();
  for (const FlatTerm& t : terms) {
    for (uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & t.z) & 1) ? -1.0 : 1.0;
      out[b ^ t.x] += t.base * sign * in[b];
    }
  }
}

std::string block_key(const std::string& label, size_t step_index) {
  if (label.empty()) return "m" + std::to_string(step_index);
  const auto dot = label.rfind('.');
  return dot == std::string::npos ? label : label.substr(0, dot);
}

}  // namespace

StateVector::StateVector(uint32_t n_qubits)
    : n_qubits_(n_qubits), amps_(uint64_t{1} << n_qubits, Complex{0, 0}) {
  if (n_qubits == 0 || n_qubits > 30) {
    throw ValidationError("statevector qubit count out of range");
  }
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(uint32_t n_qubits, uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw ValidationError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double sum = 0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n < kZeroBranchTol) {
    throw ZeroProbabilityError("cannot normalize a zero state", "");
  }
  const double inv = 1.0 / n;
  for (Complex& a : amps_) a *= inv;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw ValidationError("statevector size mismatch");
  }
  Complex sum{0, 0};
  for (uint64_t i = 0; i < dim(); ++i) {
    sum += std::conj(amps_[i]) * other.amps_[i];
  }
  return sum;
}

double StateVector::fidelity(const StateVector& other) const {
  return std::norm(inner(other));
}

void apply_gate(StateVector& state, const Gate& gate) {
  gate.validate(state.n_qubits());
  uint64_t control_mask = 0;
  for (const uint32_t c : gate.controls) control_mask |= uint64_t{1} << c;
  apply_1q(state.amplitudes(), gate.targets[0], control_mask,
           gate_matrix(gate.kind, gate.angle));
}

double measure_project(StateVector& state, uint32_t qubit, int outcome,
                       std::optional<double> pre_rotation,
                       const std::string& label) {
  if (qubit >= state.n_qubits()) {
    throw ValidationError("measured qubit out of range");
  }
  if (outcome != 0 && outcome != 1) {
    throw ValidationError("measurement outcome must be 0 or 1");
  }
  if (pre_rotation) {
    apply_gate(state, Gate::ry(qubit, *pre_rotation));
  }
  const uint64_t qbit = uint64_t{1} << qubit;
  auto amps = state.amplitudes();
  double p = 0;
  for (uint64_t idx = 0; idx < amps.size(); ++idx) {
    if (((idx & qbit) != 0) == (outcome == 1)) p += std::norm(amps[idx]);
  }
  if (p < kZeroBranchTol) {
    throw ZeroProbabilityError(
        "post-selected branch has zero probability" +
            (label.empty() ? std::string{} : " at " + label),
        label);
  }
  const double inv = 1.0 / std::sqrt(p);
  for (uint64_t idx = 0; idx < amps.size(); ++idx) {
    if (((idx & qbit) != 0) == (outcome == 1)) {
      amps[idx] *= inv;
    } else {
      amps[idx] = 0.0;
    }
  }
  return p;
}

namespace {

double qubit_one_probability(const StateVector& state, uint32_t qubit) {
  const uint64_t qbit = uint64_t{1} << qubit;
  double p = 0;
  for (uint64_t idx = 0; idx < state.dim(); ++idx) {
    if (idx & qbit) p += std::norm(state[idx]);
  }
  return p;
}

/// Reset requires a disentangled qubit in a known basis state.
void apply_reset(StateVector& state, uint32_t qubit) {
  const double p1 = qubit_one_probability(state, qubit);
  if (p1 > 1e-9 && p1 < 1.0 - 1e-9) {
    throw ValidationError("reset of an entangled or undetermined qubit");
  }
  if (p1 >= 1.0 - 1e-9) apply_gate(state, Gate::x(qubit));
}

}  // namespace

RunResult run_postselected(const CircuitIR& circ, const StateVector& init) {
  if (init.n_qubits() != circ.n_qubits()) {
    throw ValidationError("initial state width does not match circuit");
  }
  circ.validate();

  StateVector state = init;
  std::vector<std::string> block_order;
  std::map<std::string, double> block_probs;
  std::map<uint32_t, int> ancilla_bits;  // known post-measurement values
  double success = 1.0;

  const auto& steps = circ.steps();
  for (size_t si = 0; si < steps.size(); ++si) {
    const Step& step = steps[si];
    if (const auto* g = std::get_if<Gate>(&step)) {
      apply_gate(state, *g);
    } else if (const auto* m = std::get_if<MeasureOp>(&step)) {
      const double p = measure_project(state, m->qubit, m->desired_outcome,
                                       m->pre_rotation, m->label);
      success *= p;
      const std::string key = block_key(m->label, si);
      auto [it, inserted] = block_probs.try_emplace(key, 1.0);
      if (inserted) block_order.push_back(key);
      it->second *= p;
      ancilla_bits[m->qubit] = m->desired_outcome;
    } else if (const auto* r = std::get_if<ResetOp>(&step)) {
      apply_reset(state, r->qubit);
      ancilla_bits[r->qubit] = 0;
    }
  }

  // Slice the ancillas away at their known basis values.
  std::set<uint32_t> ancillas;
  for (const auto& [label, q] : circ.ancilla_map()) ancillas.insert(q);

  RunResult result{StateVector(1), success, {}, block_order};
  for (const std::string& key : block_order) {
    result.per_block_probabilities.push_back(block_probs.at(key));
  }

  if (ancillas.empty()) {
    result.final_state = std::move(state);
    return result;
  }

  uint64_t ancilla_value = 0;
  for (const uint32_t q : ancillas) {
    int bit;
    if (const auto it = ancilla_bits.find(q); it != ancilla_bits.end()) {
      bit = it->second;
    } else {
      const double p1 = qubit_one_probability(state, q);
      if (p1 > 1e-9 && p1 < 1.0 - 1e-9) {
        throw ValidationError("ancilla ends in an undetermined state");
      }
      bit = p1 >= 0.5 ? 1 : 0;
    }
    if (bit) ancilla_value |= uint64_t{1} << q;
  }

  std::vector<uint32_t> system;
  for (uint32_t q = 0; q < circ.n_qubits(); ++q) {
    if (!ancillas.count(q)) system.push_back(q);
  }
  if (system.empty()) {
    throw ValidationError("circuit has no system qubits to extract");
  }

  StateVector reduced(static_cast<uint32_t>(system.size()));
  reduced[0] = 0.0;
  for (uint64_t s = 0; s < reduced.dim(); ++s) {
    uint64_t full = ancilla_value;
    for (size_t k = 0; k < system.size(); ++k) {
      if ((s >> k) & 1) full |= uint64_t{1} << system[k];
    }
    reduced[s] = state[full];
  }
  reduced.normalize();
  result.final_state = std::move(reduced);
  return result;
}

ShotRecord& ShotRecord::operator+=(const ShotRecord& other) {
  shots += other.shots;
  successes += other.successes;
  for (const auto& [key, count] : other.outcome_histogram) {
    outcome_histogram[key] += count;
  }
  return *this;
}

ShotRecord run_sampled(const CircuitIR& circ, const StateVector& init,
                       uint64_t seed, uint64_t shots) {
  if (init.n_qubits() != circ.n_qubits()) {
    throw ValidationError("initial state width does not match circuit");
  }
  if (shots == 0) throw ValidationError("need at least one shot");
  circ.validate();

  std::mt19937_64 rng(seed);
  auto next_double = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  ShotRecord record;
  record.shots = shots;
  for (uint64_t shot = 0; shot < shots; ++shot) {
    StateVector state = init;
    std::string outcome_bits;
    bool all_desired = true;
    for (const Step& step : circ.steps()) {
      if (const auto* g = std::get_if<Gate>(&step)) {
        apply_gate(state, *g);
      } else if (const auto* m = std::get_if<MeasureOp>(&step)) {
        if (m->pre_rotation) {
          apply_gate(state, Gate::ry(m->qubit, *m->pre_rotation));
        }
        const double p1 = qubit_one_probability(state, m->qubit);
        const int outcome = next_double() < p1 ? 1 : 0;
        measure_project(state, m->qubit, outcome);
        outcome_bits += outcome ? '1' : '0';
        all_desired = all_desired && outcome == m->desired_outcome;
      } else if (const auto* r = std::get_if<ResetOp>(&step)) {
        apply_reset(state, r->qubit);
      }
    }
    ++record.outcome_histogram[outcome_bits];
    if (all_desired) ++record.successes;
  }
  return record;
}

double expectation(const StateVector& state, const PauliTermSum& op) {
  if (op.n_qubits() != state.n_qubits()) {
    throw ValidationError("operator width does not match state");
  }
  if (!op.is_hermitian(1e-10)) {
    throw ValidationError("expectation of a non-Hermitian operator");
  }
  const auto terms = flatten(op);
  const auto amps = state.amplitudes();
  Complex sum{0, 0};
  for (const FlatTerm& t : terms) {
    Complex acc{0, 0};
    for (uint64_t b = 0; b < amps.size(); ++b) {
      const double sign = (std::popcount(b & t.z) & 1) ? -1.0 : 1.0;
      acc += std::conj(amps[b ^ t.x]) * sign * amps[b];
    }
    sum += t.base * acc;
  }
  const double tol = 1e-10 * std::max(1.0, op.coefficient_norm());
  if (std::abs(sum.imag()) > tol) {
    throw ValidationError("expectation has a non-real residual");
  }
  return sum.real();
}

StateVector apply_operator(const StateVector& state, const PauliTermSum& op) {
  if (op.n_qubits() != state.n_qubits()) {
    throw ValidationError("operator width does not match state");
  }
  StateVector out(state.n_qubits());
  apply_flat(flatten(op), state.amplitudes(), out.amplitudes());
  return out;
}

StateVector oracle_product_state(uint64_t reference_occupation,
                                 std::span<const ExcitationTerm> blocks,
                                 uint32_t n_qubits) {
  if (n_qubits > kOracleQubitLimit) {
    throw ValidationError("oracle qubit limit exceeded");
  }
  StateVector state = StateVector::basis_state(n_qubits, reference_occupation);
  for (const ExcitationTerm& term : blocks) {
    term.validate(n_qubits);
    const PauliTermSum image =
        jw_transform(term.to_fermion_product(), n_qubits);
    const StateVector excited = apply_operator(state, image);
    auto amps = state.amplitudes();
    const auto exc = excited.amplitudes();
    for (uint64_t i = 0; i < amps.size(); ++i) {
      amps[i] += term.amplitude * exc[i];
    }
    const double norm = state.norm();
    if (norm < kZeroBranchTol) {
      throw ZeroProbabilityError(
          "product state annihilated at term " + term.to_string(),
          term.to_string());
    }
    state.normalize();
  }
  return state;
}

namespace {

double vec_norm(const std::vector<Complex>& v) {
  double sum = 0;
  for (const Complex& a : v) sum += std::norm(a);
  return std::sqrt(sum);
}

Complex vec_dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex sum{0, 0};
  for (size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

}  // namespace

GroundState ground_state(const PauliTermSum& op) {
  if (op.n_qubits() > kOracleQubitLimit) {
    throw ValidationError("eigensolver qubit limit exceeded");
  }
  if (!op.is_hermitian(1e-10)) {
    throw ValidationError("eigensolver needs a Hermitian operator");
  }
  const uint32_t n = op.n_qubits();
  const uint64_t dim = uint64_t{1} << n;
  const auto terms = flatten(op);

  const long matvec_cap = 10L * static_cast<long>(dim) + 64;
  long matvecs = 0;
  auto matvec = [&](const std::vector<Complex>& in, std::vector<Complex>& out) {
    ++matvecs;
    apply_flat(terms, in, out);
  };

  // Deterministic pseudo-random start mixes all symmetry sectors.
  std::mt19937_64 rng(0x6e75636365696bULL);
  std::vector<Complex> v0(dim);
  for (Complex& a : v0) {
    const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    a = Complex{re, im};
  }
  {
    const double nrm = vec_norm(v0);
    for (Complex& a : v0) a /= nrm;
  }

  const size_t m_max = std::min<uint64_t>(dim, dim > 4096 ? 48 : 128);
  std::vector<Complex> scratch(dim);

  double best_energy = 0;
  std::vector<Complex> best_vec;

  while (matvecs < matvec_cap) {
    std::vector<std::vector<Complex>> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v0);

    for (size_t j = 0; j < m_max; ++j) {
      matvec(basis[j], scratch);
      if (j > 0) {
        for (uint64_t i = 0; i < dim; ++i) {
          scratch[i] -= beta[j - 1] * basis[j - 1][i];
        }
      }
      const double a_j = vec_dot(basis[j], scratch).real();
      alpha.push_back(a_j);
      for (uint64_t i = 0; i < dim; ++i) scratch[i] -= a_j * basis[j][i];
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) {
          const Complex overlap = vec_dot(v, scratch);
          for (uint64_t i = 0; i < dim; ++i) scratch[i] -= overlap * v[i];
        }
      }
      const double b_j = vec_norm(scratch);
      if (b_j < 1e-12 || basis.size() == m_max || matvecs >= matvec_cap) {
        break;
      }
      beta.push_back(b_j);
      std::vector<Complex> next(dim);
      for (uint64_t i = 0; i < dim; ++i) next[i] = scratch[i] / b_j;
      basis.push_back(std::move(next));
    }

    const size_t m = alpha.size();
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (size_t j = 0; j < m; ++j) {
      tri(j, j) = alpha[j];
      if (j + 1 < m) {
        tri(j, j + 1) = beta[j];
        tri(j + 1, j) = beta[j];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::VectorXd y = solver.eigenvectors().col(0);

    std::vector<Complex> ritz(dim, Complex{0, 0});
    for (size_t j = 0; j < m; ++j) {
      for (uint64_t i = 0; i < dim; ++i) ritz[i] += y[j] * basis[j][i];
    }
    const double rn = vec_norm(ritz);
    for (Complex& a : ritz) a /= rn;

    matvec(ritz, scratch);
    double residual = 0;
    for (uint64_t i = 0; i < dim; ++i) {
      residual += std::norm(scratch[i] - evals[0] * ritz[i]);
    }
    residual = std::sqrt(residual);

    best_energy = evals[0];
    best_vec = ritz;
    if (residual <= kEigenResidualTol) {
      GroundState gs{best_energy, StateVector(n)};
      for (uint64_t i = 0; i < dim; ++i) gs.state[i] = best_vec[i];
      return gs;
    }
    v0 = std::move(ritz);
  }
  throw ConvergenceError("eigensolver hit its iteration cap before reaching "
                         "the residual tolerance");
}

}  // namespace nucc
