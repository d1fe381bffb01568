#include "nucc/chem_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nucc/jordan_wigner.hpp"

namespace nucc {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kDuplicateTol = 1e-10;

std::array<uint32_t, 4> canonical_g_index(uint32_t p, uint32_t q, uint32_t r,
                                          uint32_t s) {
  std::array<uint32_t, 4> best{p, q, r, s};
  const std::array<std::array<uint32_t, 4>, 8> images{{
      {p, q, r, s},
      {q, p, r, s},
      {p, q, s, r},
      {q, p, s, r},
      {r, s, p, q},
      {s, r, p, q},
      {r, s, q, p},
      {s, r, q, p},
  }};
  for (const auto& im : images) best = std::min(best, im);
  return best;
}

}  // namespace

MolecularIntegrals::MolecularIntegrals(uint32_t n_spatial, uint32_t n_elec)
    : n_spatial_orbitals(n_spatial),
      n_electrons(n_elec),
      one_body(static_cast<size_t>(n_spatial) * n_spatial, 0.0),
      two_body(static_cast<size_t>(n_spatial) * n_spatial * n_spatial *
                   n_spatial,
               0.0) {}

double MolecularIntegrals::h(uint32_t p, uint32_t q) const {
  return one_body[static_cast<size_t>(p) * n_spatial_orbitals + q];
}

void MolecularIntegrals::set_h(uint32_t p, uint32_t q, double value) {
  const auto n = n_spatial_orbitals;
  one_body[static_cast<size_t>(p) * n + q] = value;
  one_body[static_cast<size_t>(q) * n + p] = value;
}

double MolecularIntegrals::g(uint32_t p, uint32_t q, uint32_t r,
                             uint32_t s) const {
  const auto n = n_spatial_orbitals;
  return two_body[((static_cast<size_t>(p) * n + q) * n + r) * n + s];
}

void MolecularIntegrals::set_g(uint32_t p, uint32_t q, uint32_t r, uint32_t s,
                               double value) {
  const auto n = n_spatial_orbitals;
  const std::array<std::array<uint32_t, 4>, 8> images{{
      {p, q, r, s},
      {q, p, r, s},
      {p, q, s, r},
      {q, p, s, r},
      {r, s, p, q},
      {s, r, p, q},
      {r, s, q, p},
      {s, r, q, p},
  }};
  for (const auto& im : images) {
    two_body[((static_cast<size_t>(im[0]) * n + im[1]) * n + im[2]) * n +
             im[3]] = value;
  }
}

void MolecularIntegrals::validate() const {
  const auto n = n_spatial_orbitals;
  for (uint32_t p = 0; p < n; ++p) {
    for (uint32_t q = 0; q < n; ++q) {
      if (std::abs(h(p, q) - h(q, p)) > kSymmetryTol) {
        throw ValidationError("one-body integrals not symmetric");
      }
      for (uint32_t r = 0; r < n; ++r) {
        for (uint32_t s = 0; s < n; ++s) {
          const double v = g(p, q, r, s);
          if (std::abs(v - g(q, p, r, s)) > kSymmetryTol ||
              std::abs(v - g(p, q, s, r)) > kSymmetryTol ||
              std::abs(v - g(r, s, p, q)) > kSymmetryTol) {
            throw ValidationError("two-body integrals violate 8-fold symmetry");
          }
        }
      }
    }
  }
}

namespace {

struct FcidumpHeader {
  long norb = -1;
  long nelec = -1;
  long ms2 = 0;
};

FcidumpHeader parse_fcidump_header(const std::string& header, long line_no) {
  FcidumpHeader out;
  // Strip whitespace, then read comma-separated KEY=VALUE pieces. Bare
  // numeric pieces are continuations of list values (ORBSYM) and are skipped.
  std::string flat;
  for (const char c : header) {
    if (!std::isspace(static_cast<unsigned char>(c))) flat += c;
  }
  std::stringstream ss(flat);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos) continue;
    std::string key = piece.substr(0, eq);
    std::transform(key.begin(), key.end(), key.begin(), ::toupper);
    const std::string value = piece.substr(eq + 1);
    if (key != "NORB" && key != "NELEC" && key != "MS2") continue;
    long parsed = 0;
    try {
      size_t used = 0;
      parsed = std::stol(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("malformed header value for " + key, line_no);
    }
    if (key == "NORB") out.norb = parsed;
    if (key == "NELEC") out.nelec = parsed;
    if (key == "MS2") out.ms2 = parsed;
  }
  if (out.norb < 1) throw ParseError("header missing valid NORB", line_no);
  if (out.nelec < 0) throw ParseError("header missing valid NELEC", line_no);
  return out;
}

}  // namespace

MolecularIntegrals parse_fcidump(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long line_no = 0;

  // Header: everything from &FCI through &END or a bare '/'.
  std::string header;
  bool header_done = false;
  bool header_seen = false;
  while (!header_done && std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    const auto first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    trimmed = trimmed.substr(first);
    if (!header_seen) {
      if (trimmed.rfind("&FCI", 0) != 0) {
        throw ParseError("expected &FCI header", line_no);
      }
      header_seen = true;
      trimmed = trimmed.substr(4);
    }
    std::string upper = trimmed;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    const auto end_pos = std::min(upper.find("&END"), upper.find('/'));
    if (end_pos != std::string::npos) {
      header += trimmed.substr(0, end_pos);
      header_done = true;
    } else {
      header += trimmed;
      header += ',';
    }
  }
  if (!header_seen || !header_done) {
    throw ParseError("unterminated FCIDUMP header", line_no);
  }

  const FcidumpHeader hdr = parse_fcidump_header(header, line_no);
  MolecularIntegrals ints(static_cast<uint32_t>(hdr.norb),
                          static_cast<uint32_t>(hdr.nelec));
  ints.ms2 = static_cast<int>(hdr.ms2);

  std::set<std::array<uint32_t, 4>> seen_g;
  std::set<std::array<uint32_t, 2>> seen_h;
  bool seen_core = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 5) {
      throw ParseError("expected 'value i j k l' record", line_no);
    }
    double value = 0;
    long idx[4];
    try {
      size_t used = 0;
      value = std::stod(tokens[0], &used);
      if (used != tokens[0].size()) throw std::invalid_argument(tokens[0]);
      for (int k = 0; k < 4; ++k) {
        idx[k] = std::stol(tokens[k + 1], &used);
        if (used != tokens[k + 1].size())
          throw std::invalid_argument(tokens[k + 1]);
      }
    } catch (const std::exception&) {
      throw ParseError("non-numeric record field", line_no);
    }
    for (int k = 0; k < 4; ++k) {
      if (idx[k] < 0 || idx[k] > hdr.norb) {
        throw ParseError("orbital index outside declared NORB range", line_no);
      }
    }
    const bool z1 = idx[0] == 0, z2 = idx[1] == 0, z3 = idx[2] == 0,
               z4 = idx[3] == 0;
    if (z1 && z2 && z3 && z4) {
      if (seen_core && std::abs(ints.core_energy - value) > kDuplicateTol) {
        throw ParseError("conflicting duplicate core-energy record", line_no);
      }
      ints.core_energy = value;
      seen_core = true;
    } else if (!z1 && !z2 && z3 && z4) {
      const uint32_t p = static_cast<uint32_t>(idx[0] - 1);
      const uint32_t q = static_cast<uint32_t>(idx[1] - 1);
      const std::array<uint32_t, 2> key{std::min(p, q), std::max(p, q)};
      if (seen_h.count(key) && std::abs(ints.h(p, q) - value) > kDuplicateTol) {
        throw ParseError("conflicting duplicate one-body record", line_no);
      }
      ints.set_h(p, q, value);
      seen_h.insert(key);
    } else if (!z1 && z2 && z3 && z4) {
      // Orbital-energy record: accepted, unused.
      continue;
    } else if (!z1 && !z2 && !z3 && !z4) {
      const uint32_t p = static_cast<uint32_t>(idx[0] - 1);
      const uint32_t q = static_cast<uint32_t>(idx[1] - 1);
      const uint32_t r = static_cast<uint32_t>(idx[2] - 1);
      const uint32_t s = static_cast<uint32_t>(idx[3] - 1);
      const auto key = canonical_g_index(p, q, r, s);
      if (seen_g.count(key) &&
          std::abs(ints.g(p, q, r, s) - value) > kDuplicateTol) {
        throw ParseError("conflicting duplicate two-body record", line_no);
      }
      ints.set_g(p, q, r, s, value);
      seen_g.insert(key);
    } else {
      throw ParseError("unsupported record index pattern", line_no);
    }
  }

  ints.validate();
  return ints;
}

std::string emit_fcidump(const MolecularIntegrals& ints) {
  std::ostringstream os;
  os << "&FCI NORB=" << ints.n_spatial_orbitals
     << ",NELEC=" << ints.n_electrons << ",MS2=" << ints.ms2 << ",\n&END\n";
  char buf[64];
  const auto n = ints.n_spatial_orbitals;
  auto put = [&](double v, uint32_t i, uint32_t j, uint32_t k, uint32_t l) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf << " " << i << " " << j << " " << k << " " << l << "\n";
  };
  for (uint32_t p = 0; p < n; ++p) {
    for (uint32_t q = 0; q < n; ++q) {
      for (uint32_t r = 0; r < n; ++r) {
        for (uint32_t s = 0; s < n; ++s) {
          const double v = ints.g(p, q, r, s);
          if (v == 0.0) continue;
          if (canonical_g_index(p, q, r, s) !=
              std::array<uint32_t, 4>{p, q, r, s}) {
            continue;
          }
          put(v, p + 1, q + 1, r + 1, s + 1);
        }
      }
    }
  }
  for (uint32_t p = 0; p < n; ++p) {
    for (uint32_t q = p; q < n; ++q) {
      const double v = ints.h(p, q);
      if (v != 0.0) put(v, p + 1, q + 1, 0, 0);
    }
  }
  put(ints.core_energy, 0, 0, 0, 0);
  return os.str();
}

namespace {

void check_amplitude_ranges(const CCAmplitudes& amps, uint32_t occ1,
                            uint32_t virt1, const char* what) {
  if (occ1 >= amps.n_electrons) {
    throw ParseError(std::string(what) +
                     ": occupied index >= n_electrons: " + std::to_string(occ1));
  }
  if (virt1 < amps.n_electrons || virt1 >= amps.n_spin_orbitals) {
    throw ParseError(std::string(what) + ": virtual index out of range: " +
                     std::to_string(virt1));
  }
}

}  // namespace

CCAmplitudes parse_amplitudes(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid amplitude document: ") + e.what());
  }
  CCAmplitudes amps;
  try {
    amps.n_spin_orbitals = doc.at("n_spin_orbitals").get<uint32_t>();
    amps.n_electrons = doc.at("n_electrons").get<uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("amplitude document header: ") + e.what());
  }
  if (amps.n_electrons > amps.n_spin_orbitals) {
    throw ParseError("n_electrons exceeds n_spin_orbitals");
  }

  std::set<std::array<uint32_t, 2>> seen_singles;
  std::set<std::array<uint32_t, 4>> seen_doubles;

  if (doc.contains("singles")) {
    for (const auto& rec : doc.at("singles")) {
      if (!rec.is_array() || rec.size() != 3) {
        throw ParseError("singles record must be [i, a, t]");
      }
      SingleAmplitude s;
      s.i = rec[0].get<uint32_t>();
      s.a = rec[1].get<uint32_t>();
      s.t = rec[2].get<double>();
      check_amplitude_ranges(amps, s.i, s.a, "singles");
      if (!seen_singles.insert({s.i, s.a}).second) {
        throw ParseError("duplicate singles term (" + std::to_string(s.i) +
                         ", " + std::to_string(s.a) + ")");
      }
      amps.singles.push_back(s);
    }
  }
  if (doc.contains("doubles")) {
    for (const auto& rec : doc.at("doubles")) {
      if (!rec.is_array() || rec.size() != 5) {
        throw ParseError("doubles record must be [i, j, a, b, t]");
      }
      DoubleAmplitude d;
      d.i = rec[0].get<uint32_t>();
      d.j = rec[1].get<uint32_t>();
      d.a = rec[2].get<uint32_t>();
      d.b = rec[3].get<uint32_t>();
      d.t = rec[4].get<double>();
      if (d.i == d.j || d.a == d.b) {
        throw ParseError("doubles record repeats an index");
      }
      // Canonical representative i<j, a<b; each swap flips the sign.
      if (d.i > d.j) {
        std::swap(d.i, d.j);
        d.t = -d.t;
      }
      if (d.a > d.b) {
        std::swap(d.a, d.b);
        d.t = -d.t;
      }
      check_amplitude_ranges(amps, d.i, d.a, "doubles");
      check_amplitude_ranges(amps, d.j, d.b, "doubles");
      if (!seen_doubles.insert({d.i, d.j, d.a, d.b}).second) {
        throw ParseError("duplicate doubles term");
      }
      amps.doubles.push_back(d);
    }
  }
  return amps;
}

std::string emit_amplitudes(const CCAmplitudes& amps) {
  nlohmann::json doc;
  doc["n_spin_orbitals"] = amps.n_spin_orbitals;
  doc["n_electrons"] = amps.n_electrons;
  doc["singles"] = nlohmann::json::array();
  for (const auto& s : amps.singles) {
    doc["singles"].push_back({s.i, s.a, s.t});
  }
  doc["doubles"] = nlohmann::json::array();
  for (const auto& d : amps.doubles) {
    doc["doubles"].push_back({d.i, d.j, d.a, d.b, d.t});
  }
  return doc.dump(2) + "\n";
}

HamiltonianSpec::HamiltonianSpec(PauliTermSum h)
    : qubit_hamiltonian(std::move(h)) {
  n_qubits = qubit_hamiltonian.n_qubits();
}

void HamiltonianSpec::validate(std::optional<uint32_t> n_electrons) const {
  if (qubit_hamiltonian.n_qubits() != n_qubits) {
    throw ValidationError("HamiltonianSpec qubit-count mismatch");
  }
  if (!qubit_hamiltonian.is_hermitian(1e-10)) {
    throw ValidationError("qubit Hamiltonian is not Hermitian");
  }
  if (n_qubits < 64 && (reference_occupation >> n_qubits) != 0) {
    throw ValidationError("reference occupation touches unknown qubits");
  }
  if (n_electrons &&
      static_cast<uint32_t>(std::popcount(reference_occupation)) !=
          *n_electrons) {
    throw ValidationError("reference occupation has wrong particle count");
  }
}

HamiltonianSpec build_qubit_hamiltonian(const MolecularIntegrals& ints) {
  const uint32_t n_spatial = ints.n_spatial_orbitals;
  const uint32_t n_so = 2 * n_spatial;
  if (ints.n_electrons > n_so) {
    throw ValidationError("more electrons than spin orbitals");
  }
  ints.validate();

  PauliTermSum h_sum(n_so);
  h_sum.add(PauliString(n_so), ints.core_energy);

  for (uint32_t p = 0; p < n_spatial; ++p) {
    for (uint32_t q = 0; q < n_spatial; ++q) {
      const double v = ints.h(p, q);
      if (v == 0.0) continue;
      for (uint32_t spin = 0; spin < 2; ++spin) {
        FermionProduct prod{{LadderOp{2 * p + spin, true},
                             LadderOp{2 * q + spin, false}},
                            v};
        h_sum.add(jw_transform(prod, n_so));
      }
    }
  }

  for (uint32_t p = 0; p < n_spatial; ++p) {
    for (uint32_t q = 0; q < n_spatial; ++q) {
      for (uint32_t r = 0; r < n_spatial; ++r) {
        for (uint32_t s = 0; s < n_spatial; ++s) {
          const double v = ints.g(p, q, r, s);
          if (v == 0.0) continue;
          for (uint32_t sp = 0; sp < 2; ++sp) {
            for (uint32_t tau = 0; tau < 2; ++tau) {
              const uint32_t o1 = 2 * p + sp;
              const uint32_t o2 = 2 * r + tau;
              const uint32_t o3 = 2 * s + tau;
              const uint32_t o4 = 2 * q + sp;
              if (o1 == o2 || o3 == o4) continue;  // nilpotent, zero term
              FermionProduct prod{{LadderOp{o1, true}, LadderOp{o2, true},
                                   LadderOp{o3, false}, LadderOp{o4, false}},
                                  0.5 * v};
              h_sum.add(jw_transform(prod, n_so));
            }
          }
        }
      }
    }
  }
  h_sum.prune();

  HamiltonianSpec spec(std::move(h_sum));
  spec.reference_occupation =
      ints.n_electrons == 0 ? 0 : ((uint64_t{1} << ints.n_electrons) - 1);
  spec.validate(ints.n_electrons);
  return spec;
}

namespace {

Complex parse_coefficient(const std::string& tok, long line_no) {
  std::string body = tok;
  bool imaginary = false;
  if (!body.empty() && (body.back() == 'i' || body.back() == 'j')) {
    imaginary = true;
    body.pop_back();
    if (body.empty() || body == "+" || body == "-") body += "1";
  }
  double value = 0;
  try {
    size_t used = 0;
    value = std::stod(body, &used);
    if (used != body.size()) throw std::invalid_argument(body);
  } catch (const std::exception&) {
    throw ParseError("malformed coefficient '" + tok + "'", line_no);
  }
  return imaginary ? Complex{0, value} : Complex{value, 0};
}

}  // namespace

HamiltonianSpec parse_pauli_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  std::optional<PauliTermSum> sum;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string coeff_tok, word_tok, extra;
    if (!(ls >> coeff_tok)) continue;  // blank line
    if (!(ls >> word_tok) || (ls >> extra)) {
      throw ParseError("expected 'coefficient WORD'", line_no);
    }
    const Complex coeff = parse_coefficient(coeff_tok, line_no);
    PauliString word(1);
    try {
      word = PauliString::from_word(word_tok);
    } catch (const ParseError& e) {
      throw ParseError(std::string("malformed Pauli word: ") + e.what(),
                       line_no);
    }
    if (!sum) {
      sum.emplace(word.n_qubits());
    } else if (word.n_qubits() != sum->n_qubits()) {
      throw ParseError("inconsistent Pauli word length", line_no);
    }
    sum->add(word, coeff);
  }
  if (!sum) throw ParseError("empty Pauli Hamiltonian file");

  HamiltonianSpec spec(std::move(*sum));
  if (!spec.qubit_hamiltonian.is_hermitian(1e-10)) {
    throw ValidationError("Pauli Hamiltonian is not Hermitian");
  }
  return spec;
}

}  // namespace nucc
