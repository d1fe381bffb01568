#include "nucc/builder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace nucc {

namespace {

constexpr double kPi = std::numbers::pi;

PauliTermSum ladder_structure(uint32_t orbital, bool creation,
                              uint32_t width) {
  // (X -+ iY)/2 on the orbital, no Z string; strings are emitted as
  // amplitude-controlled Z gates and accounted for separately.
  PauliTermSum sum(width);
  PauliString x(width, uint64_t{1} << orbital, 0);
  PauliString y(width, uint64_t{1} << orbital, uint64_t{1} << orbital);
  sum.add(x, 0.5);
  sum.add(y, creation ? Complex{0, -0.5} : Complex{0, 0.5});
  return sum;
}

}  // namespace

void ExcitationTerm::validate(uint32_t n_system_qubits) const {
  if (creations.empty() || creations.size() != annihilations.size()) {
    throw ValidationError("excitation needs equal nonzero index lists");
  }
  auto check_list = [&](const std::vector<uint32_t>& list) {
    for (size_t k = 0; k < list.size(); ++k) {
      if (list[k] >= n_system_qubits) {
        throw ValidationError("excitation index out of range");
      }
      if (k > 0 && list[k] <= list[k - 1]) {
        throw ValidationError("excitation indices must strictly increase");
      }
    }
  };
  check_list(creations);
  check_list(annihilations);
  std::set<uint32_t> all(creations.begin(), creations.end());
  for (const uint32_t q : annihilations) {
    if (!all.insert(q).second) {
      throw ValidationError("creation and annihilation indices overlap");
    }
  }
}

FermionProduct ExcitationTerm::to_fermion_product() const {
  FermionProduct prod;
  for (const uint32_t c : creations) prod.factors.push_back({c, true});
  for (const uint32_t a : annihilations) prod.factors.push_back({a, false});
  return prod;
}

std::string ExcitationTerm::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < annihilations.size(); ++k) {
    if (k) os << ",";
    os << annihilations[k];
  }
  os << ")->(";
  for (size_t k = 0; k < creations.size(); ++k) {
    if (k) os << ",";
    os << creations[k];
  }
  os << ") t=" << amplitude;
  return os.str();
}

AngleSpec amplitude_to_angle(double alpha) {
  if (!std::isfinite(alpha)) {
    throw ValidationError("amplitude must be finite");
  }
  AngleSpec spec;
  spec.theta = 2.0 * std::atan(std::sqrt(std::abs(alpha)));
  spec.sign_phase = alpha >= 0.0 ? 0.0 : kPi;
  return spec;
}

void BlockLayout::validate(const ExcitationTerm& term,
                           uint32_t n_qubits) const {
  const size_t n = term.creations.size();
  if (creation_ancillas.size() != n || annihilation_ancillas.size() != n) {
    throw ValidationError("layout needs one ancilla per ladder factor");
  }
  std::set<uint32_t> used;
  auto claim = [&](uint32_t q) {
    if (q >= n_qubits) throw ValidationError("layout index out of range");
    if (!used.insert(q).second) {
      throw ValidationError("layout qubit collision");
    }
  };
  claim(amplitude_ancilla);
  for (const uint32_t q : creation_ancillas) claim(q);
  for (const uint32_t q : annihilation_ancillas) claim(q);
  for (const uint32_t q : term.creations) claim(q);
  for (const uint32_t q : term.annihilations) claim(q);
}

CircuitIR build_fermionic_primitive(uint32_t target_qubit,
                                    uint32_t ancilla_qubit,
                                    bool select_creation,
                                    const std::string& label) {
  if (target_qubit == ancilla_qubit) {
    throw ValidationError("primitive needs distinct target and ancilla");
  }
  CircuitIR frag(std::max(target_qubit, ancilla_qubit) + 1);
  frag.set_ancilla(label, ancilla_qubit);
  frag.push(Gate::h(ancilla_qubit));
  frag.push(Gate::csdg(ancilla_qubit, target_qubit));
  frag.push(Gate::x(target_qubit));
  frag.push(Gate::cs(ancilla_qubit, target_qubit));
  // S-dagger makes outcome 0 select (X - iY)/2; S swaps the two branches.
  frag.push(select_creation ? Gate::sdg(ancilla_qubit)
                            : Gate::s(ancilla_qubit));
  frag.push(Gate::h(ancilla_qubit));
  frag.push(MeasureOp{ancilla_qubit, std::nullopt, 0, label});
  return frag;
}

CircuitIR build_excitation_block(const ExcitationTerm& term,
                                 const AngleSpec& angle,
                                 const BlockLayout& layout, uint32_t n_qubits,
                                 const std::string& label_prefix) {
  term.validate(n_qubits);
  layout.validate(term, n_qubits);

  const uint32_t n_body = term.body_count();
  struct Factor {
    uint32_t orbital;
    uint32_t ancilla;
    bool creation;
  };
  std::vector<Factor> factors;
  for (uint32_t k = 0; k < n_body; ++k) {
    factors.push_back({term.creations[k], layout.creation_ancillas[k], true});
  }
  for (uint32_t k = 0; k < n_body; ++k) {
    factors.push_back(
        {term.annihilations[k], layout.annihilation_ancillas[k], false});
  }

  // Z strings per (creation, annihilation) pair, k-th with k-th.
  std::vector<uint32_t> z_targets;
  for (uint32_t k = 0; k < n_body; ++k) {
    const uint32_t lo = std::min(term.creations[k], term.annihilations[k]);
    const uint32_t hi = std::max(term.creations[k], term.annihilations[k]);
    for (uint32_t u = lo + 1; u < hi; ++u) z_targets.push_back(u);
  }

  // The emitted ladder pieces realize the term's operator only up to a sign:
  // replay the system-qubit action symbolically and compare it with the
  // occupation-basis image to decide the ancilla phase.
  uint32_t width = 1;
  for (const Factor& f : factors) width = std::max(width, f.orbital + 1);
  for (const uint32_t u : z_targets) width = std::max(width, u + 1);
  PauliTermSum realized = PauliTermSum::identity(width);
  for (const Factor& f : factors) {
    realized = multiply(ladder_structure(f.orbital, f.creation, width),
                        realized);
  }
  for (const uint32_t u : z_targets) {
    realized = multiply(
        PauliTermSum::single(PauliString(width, 0, uint64_t{1} << u)),
        realized);
  }
  const PauliTermSum image = jw_transform(term.to_fermion_product(), width);
  const auto ratio = realized.proportionality_factor(image, 1e-9);
  if (!ratio || std::abs(std::abs(ratio->real()) - 1.0) > 1e-9 ||
      std::abs(ratio->imag()) > 1e-9) {
    throw ValidationError("block structure does not match operator image");
  }
  const bool flip = ratio->real() < 0.0;
  const double phi =
      flip ? (angle.sign_phase == 0.0 ? kPi : 0.0) : angle.sign_phase;

  CircuitIR frag(n_qubits);
  frag.set_ancilla(label_prefix + ".amp", layout.amplitude_ancilla);
  for (uint32_t k = 0; k < n_body; ++k) {
    frag.set_ancilla(label_prefix + ".c" + std::to_string(k),
                     layout.creation_ancillas[k]);
    frag.set_ancilla(label_prefix + ".a" + std::to_string(k),
                     layout.annihilation_ancillas[k]);
  }

  // Ancilla preparation.
  for (const Factor& f : factors) frag.push(Gate::h(f.ancilla));
  frag.push(Gate::ry(layout.amplitude_ancilla, angle.theta));
  if (phi != 0.0) frag.push(Gate::phase(layout.amplitude_ancilla, phi));

  // Opening phase sandwich.
  for (const Factor& f : factors) frag.push(Gate::csdg(f.ancilla, f.orbital));

  // Amplitude-controlled ladder core: X on each factor orbital, Z strings on
  // the paired intervals.
  for (const Factor& f : factors) {
    frag.push(Gate::cnot(layout.amplitude_ancilla, f.orbital));
  }
  for (const uint32_t u : z_targets) {
    frag.push(Gate::cz(layout.amplitude_ancilla, u));
  }

  // Closing phase sandwich.
  for (const Factor& f : factors) frag.push(Gate::cs(f.ancilla, f.orbital));

  // Outcome selection phases, applied only on the excitation branch so the
  // identity branch leaves every fermionic ancilla in |+>.
  for (const Factor& f : factors) {
    frag.push(f.creation ? Gate::csdg(layout.amplitude_ancilla, f.ancilla)
                         : Gate::cs(layout.amplitude_ancilla, f.ancilla));
  }

  // Readout: rotated basis on the amplitude ancilla, H basis on the rest.
  frag.push(MeasureOp{layout.amplitude_ancilla, -angle.theta, 0,
                      label_prefix + ".amp"});
  for (uint32_t k = 0; k < n_body; ++k) {
    frag.push(Gate::h(layout.creation_ancillas[k]));
    frag.push(MeasureOp{layout.creation_ancillas[k], std::nullopt, 0,
                        label_prefix + ".c" + std::to_string(k)});
  }
  for (uint32_t k = 0; k < n_body; ++k) {
    frag.push(Gate::h(layout.annihilation_ancillas[k]));
    frag.push(MeasureOp{layout.annihilation_ancillas[k], std::nullopt, 0,
                        label_prefix + ".a" + std::to_string(k)});
  }
  return frag;
}

uint32_t StatePrepPlan::max_body() const {
  uint32_t n = 0;
  for (const auto& [term, angle] : blocks) {
    n = std::max(n, term.body_count());
  }
  return n;
}

std::vector<ExcitationTerm> StatePrepPlan::terms() const {
  std::vector<ExcitationTerm> out;
  out.reserve(blocks.size());
  for (const auto& [term, angle] : blocks) out.push_back(term);
  return out;
}

StatePrepPlan plan_state_prep(const CCAmplitudes& amps,
                              double drop_threshold) {
  StatePrepPlan plan;
  plan.n_system_qubits = amps.n_spin_orbitals;
  plan.reference_occupation =
      amps.n_electrons == 0 ? 0 : ((uint64_t{1} << amps.n_electrons) - 1);
  plan.drop_threshold = drop_threshold;

  std::vector<ExcitationTerm> singles;
  for (const auto& s : amps.singles) {
    if (std::abs(s.t) < drop_threshold) continue;
    singles.push_back(ExcitationTerm{{s.a}, {s.i}, s.t});
  }
  std::vector<ExcitationTerm> doubles;
  for (const auto& d : amps.doubles) {
    if (std::abs(d.t) < drop_threshold) continue;
    doubles.push_back(ExcitationTerm{{d.a, d.b}, {d.i, d.j}, d.t});
  }
  auto by_indices = [](const ExcitationTerm& lhs, const ExcitationTerm& rhs) {
    if (lhs.annihilations != rhs.annihilations) {
      return lhs.annihilations < rhs.annihilations;
    }
    return lhs.creations < rhs.creations;
  };
  std::sort(singles.begin(), singles.end(), by_indices);
  std::sort(doubles.begin(), doubles.end(), by_indices);

  for (const auto& term : singles) {
    term.validate(plan.n_system_qubits);
    plan.blocks.emplace_back(term, amplitude_to_angle(term.amplitude));
  }
  for (const auto& term : doubles) {
    term.validate(plan.n_system_qubits);
    plan.blocks.emplace_back(term, amplitude_to_angle(term.amplitude));
  }
  return plan;
}

CircuitIR assemble_circuit(const StatePrepPlan& plan, bool reuse_ancillas) {
  const uint32_t n_sys = plan.n_system_qubits;
  if (n_sys == 0) throw ValidationError("plan has no system qubits");
  if (n_sys < 64 && (plan.reference_occupation >> n_sys) != 0) {
    throw ValidationError("reference occupation exceeds system register");
  }

  uint32_t n_ancilla = 0;
  if (reuse_ancillas) {
    const uint32_t n_max = plan.max_body();
    n_ancilla = n_max == 0 ? 0 : 2 * n_max + 1;
  } else {
    for (const auto& [term, angle] : plan.blocks) {
      n_ancilla += 2 * term.body_count() + 1;
    }
  }
  const uint32_t n_total = n_sys + n_ancilla;

  CircuitIR circ(n_total);
  for (uint32_t q = 0; q < n_sys; ++q) {
    if ((plan.reference_occupation >> q) & 1) circ.push(Gate::x(q));
  }

  uint32_t fresh_base = n_sys;
  for (size_t k = 0; k < plan.blocks.size(); ++k) {
    const auto& [term, angle] = plan.blocks[k];
    const uint32_t n_body = term.body_count();
    const uint32_t base = reuse_ancillas ? n_sys : fresh_base;

    BlockLayout layout;
    layout.amplitude_ancilla = base;
    for (uint32_t j = 0; j < n_body; ++j) {
      layout.creation_ancillas.push_back(base + 1 + j);
    }
    for (uint32_t j = 0; j < n_body; ++j) {
      layout.annihilation_ancillas.push_back(base + 1 + n_body + j);
    }

    const std::string prefix = "block" + std::to_string(k);
    circ.append(
        build_excitation_block(term, angle, layout, n_total, prefix));

    if (reuse_ancillas && k + 1 < plan.blocks.size()) {
      for (uint32_t j = 0; j <= 2 * n_body; ++j) {
        circ.push(ResetOp{base + j});
      }
    }
    if (!reuse_ancillas) fresh_base += 2 * n_body + 1;
  }

  circ.validate();
  return circ;
}

}  // namespace nucc
