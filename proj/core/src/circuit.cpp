#include "nucc/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nucc {

namespace {

struct KindInfo {
  GateKind kind;
  const char* name;
  bool has_angle;
  bool controlled;
};

constexpr KindInfo kKinds[] = {
    {GateKind::H, "h", false, false},
    {GateKind::X, "x", false, false},
    {GateKind::S, "s", false, false},
    {GateKind::Sdg, "sdg", false, false},
    {GateKind::T, "t", false, false},
    {GateKind::Tdg, "tdg", false, false},
    {GateKind::RY, "ry", true, false},
    {GateKind::Phase, "phase", true, false},
    {GateKind::CNOT, "cnot", false, true},
    {GateKind::CZ, "cz", false, true},
    {GateKind::CS, "cs", false, true},
    {GateKind::CSdg, "csdg", false, true},
    {GateKind::CRY, "cry", true, true},
};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw ValidationError("unknown gate kind");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok, long line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + tok + "'", line_no);
  }
}

uint32_t parse_qubit(const std::string& tok, char prefix, long line_no) {
  if (tok.size() < 2 || tok[0] != prefix) {
    throw ParseError(std::string("expected ") + prefix + "<qubit>, got '" +
                         tok + "'",
                     line_no);
  }
  try {
    size_t used = 0;
    const unsigned long v = std::stoul(tok.substr(1), &used);
    if (used != tok.size() - 1) throw std::invalid_argument(tok);
    return static_cast<uint32_t>(v);
  } catch (const std::exception&) {
    throw ParseError("malformed qubit index '" + tok + "'", line_no);
  }
}

}  // namespace

const char* gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  throw ParseError("unknown gate name '" + name + "'");
}

bool gate_has_angle(GateKind kind) { return info(kind).has_angle; }

bool gate_is_controlled(GateKind kind) { return info(kind).controlled; }

void Gate::validate(uint32_t n_qubits) const {
  const KindInfo& k = info(kind);
  if (targets.size() != 1) {
    throw ValidationError("gate must carry exactly one target");
  }
  if (k.controlled ? controls.size() != 1 : !controls.empty()) {
    throw ValidationError(std::string("bad control count for gate ") + k.name);
  }
  for (const uint32_t q : targets) {
    if (q >= n_qubits) throw ValidationError("gate target out of range");
  }
  for (const uint32_t q : controls) {
    if (q >= n_qubits) throw ValidationError("gate control out of range");
    if (std::find(targets.begin(), targets.end(), q) != targets.end()) {
      throw ValidationError("gate control and target overlap");
    }
  }
}

void MeasureOp::validate(uint32_t n_qubits) const {
  if (qubit >= n_qubits) throw ValidationError("measure qubit out of range");
  if (desired_outcome != 0 && desired_outcome != 1) {
    throw ValidationError("desired outcome must be 0 or 1");
  }
  if (label.find_first_of(" \t\r\n") != std::string::npos) {
    throw ValidationError("measurement label may not contain whitespace");
  }
}

CircuitIR::CircuitIR(uint32_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > 64) {
    throw ValidationError("circuit qubit count out of range");
  }
}

void CircuitIR::push(Gate g) {
  g.validate(n_qubits_);
  steps_.push_back(std::move(g));
}

void CircuitIR::push(MeasureOp m) {
  m.validate(n_qubits_);
  steps_.push_back(std::move(m));
}

void CircuitIR::push(ResetOp r) {
  if (r.qubit >= n_qubits_) throw ValidationError("reset qubit out of range");
  steps_.push_back(r);
}

void CircuitIR::append(const CircuitIR& fragment) {
  if (fragment.n_qubits_ > n_qubits_) {
    throw ValidationError("fragment wider than target circuit");
  }
  for (const Step& s : fragment.steps_) steps_.push_back(s);
  for (const auto& [label, q] : fragment.ancilla_map_) {
    set_ancilla(label, q);
  }
}

void CircuitIR::set_ancilla(const std::string& label, uint32_t qubit) {
  if (qubit >= n_qubits_) throw ValidationError("ancilla index out of range");
  ancilla_map_[label] = qubit;
}

void CircuitIR::validate() const {
  std::set<uint32_t> measured;  // measured and not yet reset
  for (const Step& step : steps_) {
    if (const auto* g = std::get_if<Gate>(&step)) {
      g->validate(n_qubits_);
      for (const uint32_t q : g->targets) {
        if (measured.count(q)) {
          throw ValidationError("measured qubit reused without reset");
        }
      }
      for (const uint32_t q : g->controls) {
        if (measured.count(q)) {
          throw ValidationError("measured qubit reused without reset");
        }
      }
    } else if (const auto* m = std::get_if<MeasureOp>(&step)) {
      m->validate(n_qubits_);
      if (measured.count(m->qubit)) {
        throw ValidationError("measured qubit measured again without reset");
      }
      measured.insert(m->qubit);
    } else if (const auto* r = std::get_if<ResetOp>(&step)) {
      if (r->qubit >= n_qubits_) {
        throw ValidationError("reset qubit out of range");
      }
      measured.erase(r->qubit);
    }
  }
}

CircuitIR decompose_controlled_s(uint32_t control, uint32_t target,
                                 bool dagger) {
  if (control == target) {
    throw ValidationError("controlled-S needs distinct qubits");
  }
  CircuitIR frag(std::max(control, target) + 1);
  if (!dagger) {
    frag.push(Gate::t(control));
    frag.push(Gate::cnot(control, target));
    frag.push(Gate::tdg(target));
    frag.push(Gate::cnot(control, target));
    frag.push(Gate::t(target));
  } else {
    frag.push(Gate::tdg(control));
    frag.push(Gate::cnot(control, target));
    frag.push(Gate::t(target));
    frag.push(Gate::cnot(control, target));
    frag.push(Gate::tdg(target));
  }
  return frag;
}

GateCensus& GateCensus::operator+=(const GateCensus& other) {
  for (const auto& [kind, count] : other.by_kind) by_kind[kind] += count;
  cnot_equivalent += other.cnot_equivalent;
  t_class += other.t_class;
  rotations += other.rotations;
  measurements += other.measurements;
  return *this;
}

GateCensus gate_census(const CircuitIR& circ, bool decompose) {
  GateCensus census;
  for (const Step& step : circ.steps()) {
    if (const auto* m = std::get_if<MeasureOp>(&step)) {
      (void)m;
      ++census.measurements;
      continue;
    }
    const auto* g = std::get_if<Gate>(&step);
    if (g == nullptr) continue;  // resets carry no gates
    ++census.by_kind[g->kind];
    switch (g->kind) {
      case GateKind::CNOT:
      case GateKind::CZ:
        ++census.cnot_equivalent;
        break;
      case GateKind::CS:
      case GateKind::CSdg:
        if (decompose) {
          census.cnot_equivalent += 2;
          census.t_class += 3;
        } else {
          ++census.cnot_equivalent;
        }
        break;
      case GateKind::CRY:
        if (decompose) {
          census.cnot_equivalent += 2;
          census.rotations += 2;
        } else {
          ++census.cnot_equivalent;
          ++census.rotations;
        }
        break;
      case GateKind::T:
      case GateKind::Tdg:
        ++census.t_class;
        break;
      case GateKind::RY:
      case GateKind::Phase:
        ++census.rotations;
        break;
      default:
        break;
    }
  }
  return census;
}

std::string export_circuit_text(const CircuitIR& circ) {
  std::ostringstream os;
  os << "nucc-circuit 1\n";
  os << "qubits " << circ.n_qubits() << "\n";
  for (const auto& [label, q] : circ.ancilla_map()) {
    os << "ancilla " << label << " q" << q << "\n";
  }
  for (const Step& step : circ.steps()) {
    if (const auto* g = std::get_if<Gate>(&step)) {
      os << gate_name(g->kind);
      for (const uint32_t c : g->controls) os << " c" << c;
      for (const uint32_t t : g->targets) os << " t" << t;
      if (gate_has_angle(g->kind)) os << " " << format_double(g->angle);
      os << "\n";
    } else if (const auto* m = std::get_if<MeasureOp>(&step)) {
      os << "measure q" << m->qubit;
      if (m->pre_rotation) os << " ry=" << format_double(*m->pre_rotation);
      os << " want=" << m->desired_outcome;
      if (!m->label.empty()) os << " label=" << m->label;
      os << "\n";
    } else if (const auto* r = std::get_if<ResetOp>(&step)) {
      os << "reset q" << r->qubit << "\n";
    }
  }
  return os.str();
}

CircuitIR import_circuit_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty circuit document");
  ++line_no;
  if (line.rfind("nucc-circuit", 0) != 0) {
    throw ParseError("missing nucc-circuit header", line_no);
  }
  if (!std::getline(in, line)) throw ParseError("missing qubits line");
  ++line_no;
  std::istringstream qs(line);
  std::string kw;
  unsigned long n = 0;
  if (!(qs >> kw >> n) || kw != "qubits" || n == 0) {
    throw ParseError("malformed qubits line", line_no);
  }
  CircuitIR circ(static_cast<uint32_t>(n));

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "ancilla") {
      if (toks.size() != 3) throw ParseError("malformed ancilla line", line_no);
      circ.set_ancilla(toks[1], parse_qubit(toks[2], 'q', line_no));
      continue;
    }
    if (head == "reset") {
      if (toks.size() != 2) throw ParseError("malformed reset line", line_no);
      circ.push(ResetOp{parse_qubit(toks[1], 'q', line_no)});
      continue;
    }
    if (head == "measure") {
      if (toks.size() < 3) throw ParseError("malformed measure line", line_no);
      MeasureOp m;
      m.qubit = parse_qubit(toks[1], 'q', line_no);
      for (size_t k = 2; k < toks.size(); ++k) {
        const std::string& t = toks[k];
        if (t.rfind("ry=", 0) == 0) {
          m.pre_rotation = parse_double(t.substr(3), line_no);
        } else if (t.rfind("want=", 0) == 0) {
          m.desired_outcome = static_cast<int>(parse_double(t.substr(5),
                                                            line_no));
        } else if (t.rfind("label=", 0) == 0) {
          m.label = t.substr(6);
        } else {
          throw ParseError("unknown measure attribute '" + t + "'", line_no);
        }
      }
      circ.push(m);
      continue;
    }

    Gate g;
    g.kind = gate_kind_from_name(head);
    size_t k = 1;
    for (; k < toks.size() && toks[k][0] == 'c'; ++k) {
      g.controls.push_back(parse_qubit(toks[k], 'c', line_no));
    }
    for (; k < toks.size() && toks[k][0] == 't'; ++k) {
      g.targets.push_back(parse_qubit(toks[k], 't', line_no));
    }
    if (gate_has_angle(g.kind)) {
      if (k >= toks.size()) throw ParseError("missing gate angle", line_no);
      g.angle = parse_double(toks[k++], line_no);
    }
    if (k != toks.size()) throw ParseError("trailing gate tokens", line_no);
    try {
      circ.push(g);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return circ;
}

std::string export_circuit_json(const CircuitIR& circ) {
  nlohmann::json doc;
  doc["format"] = "nucc-circuit";
  doc["version"] = 1;
  doc["n_qubits"] = circ.n_qubits();
  doc["ancilla_map"] = nlohmann::json::object();
  for (const auto& [label, q] : circ.ancilla_map()) {
    doc["ancilla_map"][label] = q;
  }
  doc["steps"] = nlohmann::json::array();
  for (const Step& step : circ.steps()) {
    nlohmann::json s;
    if (const auto* g = std::get_if<Gate>(&step)) {
      s["op"] = "gate";
      s["kind"] = gate_name(g->kind);
      s["targets"] = g->targets;
      s["controls"] = g->controls;
      if (gate_has_angle(g->kind)) s["angle"] = g->angle;
    } else if (const auto* m = std::get_if<MeasureOp>(&step)) {
      s["op"] = "measure";
      s["qubit"] = m->qubit;
      if (m->pre_rotation) s["pre_rotation"] = *m->pre_rotation;
      s["desired_outcome"] = m->desired_outcome;
      s["label"] = m->label;
    } else if (const auto* r = std::get_if<ResetOp>(&step)) {
      s["op"] = "reset";
      s["qubit"] = r->qubit;
    }
    doc["steps"].push_back(std::move(s));
  }
  return doc.dump(2) + "\n";
}

CircuitIR import_circuit_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid circuit document: ") + e.what());
  }
  try {
    CircuitIR circ(doc.at("n_qubits").get<uint32_t>());
    for (const auto& [label, q] : doc.at("ancilla_map").items()) {
      circ.set_ancilla(label, q.get<uint32_t>());
    }
    for (const auto& s : doc.at("steps")) {
      const std::string op = s.at("op").get<std::string>();
      if (op == "gate") {
        Gate g;
        g.kind = gate_kind_from_name(s.at("kind").get<std::string>());
        g.targets = s.at("targets").get<std::vector<uint32_t>>();
        g.controls = s.at("controls").get<std::vector<uint32_t>>();
        if (s.contains("angle")) g.angle = s.at("angle").get<double>();
        circ.push(g);
      } else if (op == "measure") {
        MeasureOp m;
        m.qubit = s.at("qubit").get<uint32_t>();
        if (s.contains("pre_rotation")) {
          m.pre_rotation = s.at("pre_rotation").get<double>();
        }
        m.desired_outcome = s.at("desired_outcome").get<int>();
        m.label = s.at("label").get<std::string>();
        circ.push(m);
      } else if (op == "reset") {
        circ.push(ResetOp{s.at("qubit").get<uint32_t>()});
      } else {
        throw ParseError("unknown step op '" + op + "'");
      }
    }
    return circ;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit document: ") + e.what());
  }
}

}  // namespace nucc
