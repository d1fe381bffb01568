#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nucc/errors.hpp"

namespace nucc {

enum class GateKind {
  H,
  X,
  S,
  Sdg,
  T,
  Tdg,
  RY,
  Phase,
  CNOT,
  CZ,
  CS,
  CSdg,
  CRY,
};

const char* gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);
bool gate_has_angle(GateKind kind);
bool gate_is_controlled(GateKind kind);

/// One unitary gate. Controls and targets are disjoint qubit sets;
/// single-qubit kinds carry exactly one target. Angles are radians.
struct Gate {
  GateKind kind;
  std::vector<uint32_t> targets;
  std::vector<uint32_t> controls;
  double angle = 0.0;

  static Gate h(uint32_t q) { return {GateKind::H, {q}, {}, 0.0}; }
  static Gate x(uint32_t q) { return {GateKind::X, {q}, {}, 0.0}; }
  static Gate s(uint32_t q) { return {GateKind::S, {q}, {}, 0.0}; }
  static Gate sdg(uint32_t q) { return {GateKind::Sdg, {q}, {}, 0.0}; }
  static Gate t(uint32_t q) { return {GateKind::T, {q}, {}, 0.0}; }
  static Gate tdg(uint32_t q) { return {GateKind::Tdg, {q}, {}, 0.0}; }
  static Gate ry(uint32_t q, double angle) {
    return {GateKind::RY, {q}, {}, angle};
  }
  static Gate phase(uint32_t q, double angle) {
    return {GateKind::Phase, {q}, {}, angle};
  }
  static Gate cnot(uint32_t control, uint32_t target) {
    return {GateKind::CNOT, {target}, {control}, 0.0};
  }
  static Gate cz(uint32_t control, uint32_t target) {
    return {GateKind::CZ, {target}, {control}, 0.0};
  }
  static Gate cs(uint32_t control, uint32_t target) {
    return {GateKind::CS, {target}, {control}, 0.0};
  }
  static Gate csdg(uint32_t control, uint32_t target) {
    return {GateKind::CSdg, {target}, {control}, 0.0};
  }
  static Gate cry(uint32_t control, uint32_t target, double angle) {
    return {GateKind::CRY, {target}, {control}, angle};
  }

  void validate(uint32_t n_qubits) const;
  bool operator==(const Gate&) const = default;
};

/// Mid-circuit measurement with the outcome the protocol post-selects on.
/// pre_rotation, when set, applies RY(angle) before the computational-basis
/// readout, realizing measurement in a rotated basis.
struct MeasureOp {
  uint32_t qubit = 0;
  std::optional<double> pre_rotation;
  int desired_outcome = 0;
  std::string label;

  void validate(uint32_t n_qubits) const;
  bool operator==(const MeasureOp&) const = default;
};

/// Reuse marker: returns an already-measured qubit to |0>. A measured qubit
/// may not be touched again without one.
struct ResetOp {
  uint32_t qubit = 0;
  bool operator==(const ResetOp&) const = default;
};

using Step = std::variant<Gate, MeasureOp, ResetOp>;

/// Ordered gate/measurement list over a fixed-width qubit register.
class CircuitIR {
 public:
  explicit CircuitIR(uint32_t n_qubits);

  uint32_t n_qubits() const { return n_qubits_; }
  const std::vector<Step>& steps() const { return steps_; }
  const std::map<std::string, uint32_t>& ancilla_map() const {
    return ancilla_map_;
  }

  void push(Gate g);
  void push(MeasureOp m);
  void push(ResetOp r);
  /// Appends a fragment acting on a register no wider than this one. The
  /// fragment's ancilla labels are merged.
  void append(const CircuitIR& fragment);
  void set_ancilla(const std::string& label, uint32_t qubit);

  size_t size() const { return steps_.size(); }

  /// Index bounds, control/target disjointness, and the measured-qubit rule:
  /// once measured, a qubit may only reappear after a ResetOp.
  void validate() const;

  bool operator==(const CircuitIR&) const = default;

 private:
  uint32_t n_qubits_;
  std::vector<Step> steps_;
  std::map<std::string, uint32_t> ancilla_map_;
};

/// Exact controlled-S (or controlled-S-dagger) over two CNOTs and three
/// T-class phases: T(c), CNOT, Tdg(t), CNOT, T(t), with adjoint phases when
/// dagger is set.
CircuitIR decompose_controlled_s(uint32_t control, uint32_t target,
                                 bool dagger);

/// Gate tallies. cnot_equivalent counts two-qubit gates with CZ worth one
/// CNOT; with decompose set, CS/CSdg expand to 2 CNOTs + 3 T-class gates and
/// CRY to 2 CNOTs + 2 rotations.
struct GateCensus {
  std::map<GateKind, long> by_kind;
  long cnot_equivalent = 0;
  long t_class = 0;
  long rotations = 0;
  long measurements = 0;

  GateCensus& operator+=(const GateCensus& other);
  bool operator==(const GateCensus&) const = default;
};

GateCensus gate_census(const CircuitIR& circ, bool decompose);

/// Line-oriented text form; doubles are printed with round-trip precision so
/// export/import is bit-exact.
std::string export_circuit_text(const CircuitIR& circ);
CircuitIR import_circuit_text(const std::string& text);

/// JSON document carrying steps and the ancilla map.
std::string export_circuit_json(const CircuitIR& circ);
CircuitIR import_circuit_json(const std::string& text);

}  // namespace nucc
