// Copyright 2026 The nqsvmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nqsvmc/operators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nqsvmc {

namespace {

constexpr double kDropTolerance = 1e-14;
constexpr Complex kImag{0.0, 1.0};

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::vector<std::pair<int, Pauli>> f, Complex coeff)
    : factors(std::move(f)), coefficient(coeff) {
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i].first == factors[i + 1].first) {
      throw std::invalid_argument("duplicate site index in Pauli string");
    }
  }
  for (const auto& [site, op] : factors) {
    if (site < 0) throw std::invalid_argument("negative site index in Pauli string");
  }
}

int PauliString::max_site() const {
  return factors.empty() ? -1 : factors.back().first;
}

namespace {

// Single-site product table: sigma_a sigma_b.
void multiply_single(Pauli a, Pauli b, Complex& phase, bool& is_identity, Pauli& out) {
  if (a == b) {
    is_identity = true;
    return;
  }
  is_identity = false;
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // XY=iZ, YZ=iX, ZX=iY and the reversed orders pick up a minus sign.
  out = static_cast<Pauli>(3 - ia - ib);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  phase *= cyclic ? kImag : -kImag;
}

}  // namespace

PauliString operator*(const PauliString& lhs, const PauliString& rhs) {
  std::vector<std::pair<int, Pauli>> out;
  out.reserve(lhs.factors.size() + rhs.factors.size());
  Complex coeff = lhs.coefficient * rhs.coefficient;
  std::size_t i = 0, j = 0;
  while (i < lhs.factors.size() || j < rhs.factors.size()) {
    if (j == rhs.factors.size() ||
        (i < lhs.factors.size() && lhs.factors[i].first < rhs.factors[j].first)) {
      out.push_back(lhs.factors[i++]);
    } else if (i == lhs.factors.size() || rhs.factors[j].first < lhs.factors[i].first) {
      out.push_back(rhs.factors[j++]);
    } else {
      bool identity = false;
      Pauli op = Pauli::X;
      multiply_single(lhs.factors[i].second, rhs.factors[j].second, coeff, identity, op);
      if (!identity) out.emplace_back(lhs.factors[i].first, op);
      ++i;
      ++j;
    }
  }
  PauliString result;
  result.factors = std::move(out);
  result.coefficient = coeff;
  return result;
}

PauliHamiltonian::PauliHamiltonian(int n_sites, std::vector<PauliString> terms)
    : n_sites_(n_sites) {
  if (n_sites <= 0) throw std::invalid_argument("Hamiltonian needs n_sites > 0");
  for (const auto& t : terms) {
    if (t.max_site() >= n_sites) {
      throw std::invalid_argument("Pauli string touches site >= n_sites");
    }
  }
  // Canonicalize: merge identical factor sets, drop negligible coefficients.
  std::sort(terms.begin(), terms.end(), [](const PauliString& a, const PauliString& b) {
    return a.factors < b.factors;
  });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().same_factors(t)) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const PauliString& t) {
    return std::abs(t.coefficient) < kDropTolerance;
  });
}

bool PauliHamiltonian::is_hermitian(double tol) const {
  // Every Pauli string is Hermitian, so the sum is Hermitian iff all merged
  // coefficients are real.
  for (const auto& t : terms_) {
    if (std::abs(t.coefficient.imag()) > tol * std::max(1.0, std::abs(t.coefficient))) {
      return false;
    }
  }
  return true;
}

double PauliHamiltonian::norm_bound() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

std::vector<ConnectedEntry> PauliHamiltonian::connected_states(
    const SpinConfiguration& x) const {
  std::map<std::uint64_t, std::pair<SpinConfiguration, Complex>> acc;
  for (const auto& term : terms_) {
    // <x|term|x'> is nonzero only for x' = x flipped on the X/Y support.
    SpinConfiguration xp = x;
    for (const auto& [site, op] : term.factors) {
      if (op != Pauli::Z) xp.flip(site);
    }
    Complex element = term.coefficient;
    for (const auto& [site, op] : term.factors) {
      if (op == Pauli::Z) {
        element *= static_cast<double>(xp[site]);
      } else if (op == Pauli::Y) {
        element *= kImag * static_cast<double>(xp[site]);
      }
    }
    auto [it, inserted] = acc.try_emplace(xp.packed(), xp, element);
    if (!inserted) it->second.second += element;
  }
  std::vector<ConnectedEntry> out;
  out.reserve(acc.size());
  for (auto& [key, entry] : acc) {
    if (std::abs(entry.second) >= kDropTolerance) {
      out.push_back({std::move(entry.first), entry.second});
    }
  }
  return out;
}

std::vector<ConnectedEntry> PauliHamiltonian::offdiagonal_connected(
    const SpinConfiguration& x) const {
  auto entries = connected_states(x);
  const std::uint64_t self = x.packed();
  std::erase_if(entries, [self](const ConnectedEntry& e) { return e.state.packed() == self; });
  return entries;
}

PauliHamiltonian build_tfi(int n_sites, double h) {
  if (n_sites < 2) throw std::domain_error("TFI chain needs N >= 2");
  std::vector<PauliString> terms;
  terms.reserve(static_cast<std::size_t>(2 * n_sites));
  for (int i = 0; i < n_sites; ++i) {
    terms.emplace_back(
        std::vector<std::pair<int, Pauli>>{{i, Pauli::Z}, {(i + 1) % n_sites, Pauli::Z}},
        Complex{-1.0, 0.0});
    if (h != 0.0) {
      terms.emplace_back(std::vector<std::pair<int, Pauli>>{{i, Pauli::X}},
                         Complex{-h, 0.0});
    }
  }
  return PauliHamiltonian(n_sites, std::move(terms));
}

PauliHamiltonian build_j1j2(int n_sites, double j2) {
  if (n_sites < 4 || n_sites % 2 != 0) {
    throw std::domain_error("J1J2 chain needs even N >= 4");
  }
  if (j2 < 0) throw std::domain_error("J1J2 coupling j2 must be >= 0");
  std::vector<PauliString> terms;
  const Pauli flavors[] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (int i = 0; i < n_sites; ++i) {
    for (Pauli p : flavors) {
      terms.emplace_back(
          std::vector<std::pair<int, Pauli>>{{i, p}, {(i + 1) % n_sites, p}},
          Complex{1.0, 0.0});
      if (j2 != 0.0) {
        terms.emplace_back(
            std::vector<std::pair<int, Pauli>>{{i, p}, {(i + 2) % n_sites, p}},
            Complex{j2, 0.0});
      }
    }
  }
  return PauliHamiltonian(n_sites, std::move(terms));
}

PauliHamiltonian marshall_transform(const PauliHamiltonian& h) {
  if (h.n_sites() % 2 != 0) throw std::domain_error("Marshall rotation needs even N");
  std::vector<PauliString> terms = h.terms();
  for (auto& t : terms) {
    int flipped = 0;
    for (const auto& [site, op] : t.factors) {
      if (site % 2 == 1 && op != Pauli::Z) ++flipped;
    }
    if (flipped % 2 == 1) t.coefficient = -t.coefficient;
  }
  return PauliHamiltonian(h.n_sites(), std::move(terms));
}

namespace {

// Jordan-Wigner ladder operator as a 2-string Pauli sum.
std::vector<PauliString> jw_ladder(int mode, bool dagger) {
  std::vector<std::pair<int, Pauli>> tail;
  tail.reserve(static_cast<std::size_t>(mode) + 1);
  for (int i = 0; i < mode; ++i) tail.emplace_back(i, Pauli::Z);

  auto x_part = tail;
  x_part.emplace_back(mode, Pauli::X);
  auto y_part = tail;
  y_part.emplace_back(mode, Pauli::Y);

  const Complex y_coeff = dagger ? Complex{0.0, 0.5} : Complex{0.0, -0.5};
  return {PauliString(std::move(x_part), Complex{0.5, 0.0}),
          PauliString(std::move(y_part), y_coeff)};
}

std::vector<PauliString> multiply_sums(const std::vector<PauliString>& a,
                                       const std::vector<PauliString>& b) {
  std::vector<PauliString> out;
  out.reserve(a.size() * b.size());
  for (const auto& s : a) {
    for (const auto& t : b) out.push_back(s * t);
  }
  return out;
}

}  // namespace

PauliHamiltonian jordan_wigner(int modes, const std::vector<FermionTerm>& terms) {
  if (modes <= 0) throw std::invalid_argument("jordan_wigner needs modes > 0");
  std::vector<PauliString> total;
  for (const auto& term : terms) {
    if (term.creation.size() > 2 || term.annihilation.size() > 2) {
      throw std::domain_error("jordan_wigner supports one- and two-body terms only");
    }
    for (int m : term.creation) {
      if (m < 0 || m >= modes) throw std::invalid_argument("fermion mode out of range");
    }
    for (int m : term.annihilation) {
      if (m < 0 || m >= modes) throw std::invalid_argument("fermion mode out of range");
    }
    std::vector<PauliString> prod{PauliString({}, term.coefficient)};
    for (int m : term.creation) prod = multiply_sums(prod, jw_ladder(m, true));
    for (int m : term.annihilation) prod = multiply_sums(prod, jw_ladder(m, false));
    total.insert(total.end(), prod.begin(), prod.end());
  }
  return PauliHamiltonian(modes, std::move(total));
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line_no, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

PauliHamiltonian parse_pauli_text(std::istream& in, const std::string& origin,
                                  bool require_hermitian) {
  std::vector<PauliString> terms;
  int declared_sites = -1;
  int max_site = -1;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();  // CRLF input
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    if (tok == "sites") {
      if (declared_sites != -1) parse_fail(origin, line_no, "duplicate 'sites' header");
      if (!(ls >> declared_sites) || declared_sites <= 0) {
        parse_fail(origin, line_no, "expected positive integer after 'sites'");
      }
      continue;
    }

    if (tok.front() != '(' || tok.back() != ')') {
      parse_fail(origin, line_no, "term must start with a coefficient in parentheses");
    }
    const std::string body = tok.substr(1, tok.size() - 2);
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream cs(body);
    if (!(cs >> re)) parse_fail(origin, line_no, "bad coefficient '" + body + "'");
    if (cs >> comma) {
      if (comma != ',' || !(cs >> im)) parse_fail(origin, line_no, "bad coefficient '" + body + "'");
    }

    std::vector<std::pair<int, Pauli>> factors;
    while (ls >> tok) {
      if (tok.size() < 2) parse_fail(origin, line_no, "bad factor '" + tok + "'");
      Pauli op;
      switch (std::toupper(static_cast<unsigned char>(tok[0]))) {
        case 'X': op = Pauli::X; break;
        case 'Y': op = Pauli::Y; break;
        case 'Z': op = Pauli::Z; break;
        default: parse_fail(origin, line_no, "unknown Pauli '" + tok + "'");
      }
      int site = -1;
      try {
        std::size_t used = 0;
        site = std::stoi(tok.substr(1), &used);
        if (used != tok.size() - 1) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        parse_fail(origin, line_no, "bad site index in '" + tok + "'");
      }
      if (site < 0) parse_fail(origin, line_no, "negative site index in '" + tok + "'");
      factors.emplace_back(site, op);
      max_site = std::max(max_site, site);
    }
    try {
      terms.emplace_back(std::move(factors), Complex{re, im});
    } catch (const std::exception& e) {
      parse_fail(origin, line_no, e.what());
    }
  }
  if (terms.empty()) throw std::runtime_error(origin + ": no Hamiltonian terms found");
  const int n_sites = declared_sites > 0 ? declared_sites : max_site + 1;
  if (max_site >= n_sites) {
    throw std::runtime_error(origin + ": term site index exceeds declared 'sites'");
  }
  PauliHamiltonian h(n_sites, std::move(terms));
  if (require_hermitian && !h.is_hermitian()) {
    throw std::runtime_error(origin + ": Hamiltonian is not Hermitian (pass allow flag to override)");
  }
  return h;
}

PauliHamiltonian load_pauli_file(const std::filesystem::path& path, bool require_hermitian) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file: " + path.string());
  return parse_pauli_text(in, path.string(), require_hermitian);
}

std::string serialize_pauli(const PauliHamiltonian& h) {
  std::ostringstream out;
  out.precision(17);
  out << "sites " << h.n_sites() << "\n";
  for (const auto& t : h.terms()) {
    out << "(" << t.coefficient.real();
    if (t.coefficient.imag() != 0.0) out << "," << t.coefficient.imag();
    out << ")";
    for (const auto& [site, op] : t.factors) out << " " << pauli_char(op) << site;
    out << "\n";
  }
  return out.str();
}

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h) {
  const int n = h.n_sites();
  if (n > 12) throw std::length_error("dense_matrix limited to 12 sites");
  const Eigen::Index dim = Eigen::Index{1} << n;

  Eigen::Matrix2cd X, Y, Z, I;
  X << 0, 1, 1, 0;
  Y << 0, Complex{0, -1}, Complex{0, 1}, 0;
  Z << 1, 0, 0, -1;
  I.setIdentity();

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    // Site 0 is the most significant factor of the basis index, so it must be
    // the outermost Kronecker factor; build from the last site inward.
    for (int site = n - 1; site >= 0; --site) {
      const Eigen::Matrix2cd* op = &I;
      auto it = std::find_if(term.factors.begin(), term.factors.end(),
                             [site](const auto& f) { return f.first == site; });
      if (it != term.factors.end()) {
        switch (it->second) {
          case Pauli::X: op = &X; break;
          case Pauli::Y: op = &Y; break;
          case Pauli::Z: op = &Z; break;
        }
      }
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = (*op)(r, c) * m;
        }
      }
      m = std::move(next);
    }
    total += term.coefficient * m;
  }
  return total;
}

}  // namespace nqsvmc
