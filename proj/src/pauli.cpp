#include "vbe/pauli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vbe {

namespace {

std::uint64_t width_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require_same_width(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": qubit count mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

PauliString::PauliString(int n) : PauliString(n, 0, 0) {}

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z) : n_(n), x_(x), z_(z) {
  if (n < 0 || n > kMaxPauliQubits) {
    throw std::invalid_argument("PauliString: unsupported qubit count " + std::to_string(n));
  }
  if ((x | z) & ~width_mask(n)) {
    throw std::invalid_argument("PauliString: mask exceeds qubit count");
  }
}

PauliString PauliString::parse(std::string_view letters) {
  const int n = static_cast<int>(letters.size());
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (letters[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("PauliString::parse: bad letter in '" +
                                    std::string(letters) + "'");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n, int qubit, char letter) {
  std::string s(n, 'I');
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("PauliString::single: qubit out of range");
  s[qubit] = letter;
  return parse(s);
}

char PauliString::letter(int qubit) const {
  const std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - qubit);
  const bool bx = x_ & bit, bz = z_ & bit;
  if (bx) return bz ? 'Y' : 'X';
  return bz ? 'Z' : 'I';
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::commutes_with(const PauliString& o) const {
  return (std::popcount((x_ & o.z_) ^ (z_ & o.x_)) & 1) == 0;
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

PauliString PauliString::from_index(int n, std::uint64_t index) {
  return PauliString(n, index >> n, index & width_mask(n));
}

std::uint64_t PauliString::sort_key() const {
  // Two bits per qubit, qubit 0 in the highest pair: I=0, X=1, Y=2, Z=3.
  std::uint64_t key = 0;
  for (int q = 0; q < n_; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - q);
    const bool bx = x_ & bit, bz = z_ & bit;
    const std::uint64_t code = bx ? (bz ? 2 : 1) : (bz ? 3 : 0);
    key = (key << 2) | code;
  }
  return key;
}

std::strong_ordering PauliString::operator<=>(const PauliString& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  return sort_key() <=> o.sort_key();
}

PhasedString mul_strings(const PauliString& p, const PauliString& q) {
  require_same_width(p.num_qubits(), q.num_qubits(), "mul_strings");
  // (i^a X^x1 Z^z1)(i^b X^x2 Z^z2) = i^{a+b} (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
  const std::uint64_t x = p.x() ^ q.x();
  const std::uint64_t z = p.z() ^ q.z();
  const int yp = std::popcount(p.x() & p.z());
  const int yq = std::popcount(q.x() & q.z());
  const int yr = std::popcount(x & z);
  const int sign = std::popcount(p.z() & q.x());
  return {i_power(yp + yq - yr + 2 * sign), PauliString(p.num_qubits(), x, z)};
}

PauliSum::PauliSum(const PauliString& s, Complex c) : n_(s.num_qubits()) { add_term(s, c); }

PauliSum PauliSum::identity(int n, Complex c) { return PauliSum(PauliString(n), c); }

Complex PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void PauliSum::check_width(int n) const { require_same_width(n_, n, "PauliSum"); }

void PauliSum::add_term(const PauliString& s, Complex c) {
  check_width(s.num_qubits());
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneTolerance) terms_.erase(it);
}

void PauliSum::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

double PauliSum::norm() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, std::conj(c));
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_width(other.n_);
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_width(other.n_);
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto& [p, v] : terms_) v *= c;
  prune();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.n_, b.n_, "PauliSum product");
  PauliSum out(a.n_);
  for (const auto& [p, cp] : a.terms_) {
    for (const auto& [q, cq] : b.terms_) {
      const auto r = mul_strings(p, q);
      auto [it, inserted] = out.terms_.try_emplace(r.string, r.phase * cp * cq);
      if (!inserted) it->second += r.phase * cp * cq;
    }
  }
  out.prune();
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.num_qubits(), b.num_qubits(), "commutator");
  PauliSum out(a.num_qubits());
  std::map<PauliString, Complex> acc;
  for (const auto& [p, cp] : a.terms()) {
    for (const auto& [q, cq] : b.terms()) {
      if (p.commutes_with(q)) continue;
      const auto r = mul_strings(p, q);
      acc[r.string] += 2.0 * r.phase * cp * cq;
    }
  }
  for (const auto& [s, c] : acc) out.add_term(s, c);
  return out;
}

void apply_string(const PauliString& s, ComplexMatrix& m) {
  const int n = s.num_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (m.rows() != dim) throw std::invalid_argument("apply_string: row count mismatch");
  const std::uint64_t x = s.x(), z = s.z();
  const Complex base = i_power(std::popcount(x & z));
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Complex* v = m.col(col).data();
    if (x == 0) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (std::popcount(static_cast<std::uint64_t>(r) & z) & 1) v[r] = -v[r];
      }
      if (base != Complex(1.0)) {
        for (Eigen::Index r = 0; r < dim; ++r) v[r] *= base;
      }
      continue;
    }
    // Output row r receives input row r ^ x; handle each swapped pair once.
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Eigen::Index t = r ^ static_cast<Eigen::Index>(x);
      if (t < r) continue;
      const double sr = (std::popcount(static_cast<std::uint64_t>(r) & z) & 1) ? -1.0 : 1.0;
      const double st = (std::popcount(static_cast<std::uint64_t>(t) & z) & 1) ? -1.0 : 1.0;
      const Complex vr = v[r], vt = v[t];
      v[t] = base * sr * vr;
      v[r] = base * st * vt;
    }
  }
}

ComplexMatrix to_dense(const PauliString& s) {
  const int n = s.num_qubits();
  if (n > kMaxDenseQubits) throw std::invalid_argument("to_dense: too many qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  const Complex base = i_power(std::popcount(s.x() & s.z()));
  for (Eigen::Index c = 0; c < dim; ++c) {
    const double sign = (std::popcount(static_cast<std::uint64_t>(c) & s.z()) & 1) ? -1.0 : 1.0;
    m(c ^ static_cast<Eigen::Index>(s.x()), c) = base * sign;
  }
  return m;
}

ComplexMatrix to_dense(const PauliSum& s) {
  const int n = s.num_qubits();
  if (n > kMaxDenseQubits) throw std::invalid_argument("to_dense: too many qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& [p, coeff] : s.terms()) {
    const Complex base = coeff * i_power(std::popcount(p.x() & p.z()));
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double sign = (std::popcount(static_cast<std::uint64_t>(c) & p.z()) & 1) ? -1.0 : 1.0;
      m(c ^ static_cast<Eigen::Index>(p.x()), c) += base * sign;
    }
  }
  return m;
}

PauliSum from_dense(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("from_dense: matrix is not square");
  const int n = exact_log2(static_cast<std::size_t>(m.rows()));
  if (n > kMaxDenseQubits) throw std::invalid_argument("from_dense: too many qubits");
  const Eigen::Index dim = m.rows();
  PauliSum out(n);
  // coefficient = Tr(P^dagger M) / 2^n
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (2 * n)); ++idx) {
    const PauliString p = PauliString::from_index(n, idx);
    const Complex base = std::conj(i_power(std::popcount(p.x() & p.z())));
    Complex tr = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double sign = (std::popcount(static_cast<std::uint64_t>(c) & p.z()) & 1) ? -1.0 : 1.0;
      tr += sign * m(c ^ static_cast<Eigen::Index>(p.x()), c);
    }
    out.add_term(p, base * tr / static_cast<double>(dim));
  }
  return out;
}

bool rank_extend(const std::vector<PauliSum>& basis, const PauliSum& candidate) {
  const double cnorm = candidate.norm();
  if (cnorm == 0.0) return false;
  // Orthonormalize the basis (modified Gram-Schmidt over string-indexed
  // coefficient maps), then measure what is left of the candidate.
  std::vector<PauliSum> ortho;
  ortho.reserve(basis.size());
  auto project_out = [](PauliSum& v, const std::vector<PauliSum>& onto) {
    for (const auto& u : onto) {
      Complex dot = 0.0;
      for (const auto& [p, c] : u.terms()) dot += std::conj(c) * v.coefficient(p);
      if (dot != Complex(0.0)) v -= u * dot;
    }
  };
  for (const auto& b : basis) {
    require_same_width(b.num_qubits(), candidate.num_qubits(), "rank_extend");
    PauliSum v = b;
    const double bnorm = v.norm();
    if (bnorm == 0.0) continue;
    project_out(v, ortho);
    project_out(v, ortho);
    const double r = v.norm();
    if (r > kRankTolerance * bnorm) ortho.push_back(v * Complex(1.0 / r));
  }
  PauliSum v = candidate;
  project_out(v, ortho);
  project_out(v, ortho);
  return v.norm() > kRankTolerance * cnorm;
}

bool pairwise_commuting(const PauliSum& s) {
  const auto& t = s.terms();
  for (auto a = t.begin(); a != t.end(); ++a) {
    for (auto b = std::next(a); b != t.end(); ++b) {
      if (!a->first.commutes_with(b->first)) return false;
    }
  }
  return true;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<PauliSum> parse_pauli_sums(std::string_view text) {
  std::vector<PauliSum> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int width = -1;
  bool open = false;
  PauliSum current;
  int lineno = 0;
  auto flush = [&] {
    if (open) out.push_back(current);
    open = false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "---") {
      flush();
      continue;
    }
    std::istringstream ls(t);
    double re = 0.0, im = 0.0;
    std::string letters, extra;
    if (!(ls >> re >> im >> letters) || (ls >> extra)) {
      throw std::invalid_argument("Pauli sum line " + std::to_string(lineno) +
                                  ": expected '<re> <im> <letters>'");
    }
    const PauliString p = PauliString::parse(letters);
    if (width < 0) width = p.num_qubits();
    if (p.num_qubits() != width) {
      throw std::invalid_argument("Pauli sum line " + std::to_string(lineno) +
                                  ": inconsistent string length");
    }
    if (!open) {
      current = PauliSum(width);
      open = true;
    }
    current.add_term(p, Complex(re, im));
  }
  flush();
  return out;
}

PauliSum parse_pauli_sum(std::string_view text) {
  auto sums = parse_pauli_sums(text);
  if (sums.size() != 1) {
    throw std::invalid_argument("expected exactly one Pauli sum, found " +
                                std::to_string(sums.size()));
  }
  return sums.front();
}

std::string format_pauli_sum(const PauliSum& s) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& [p, c] : s.terms()) os << c.real() << ' ' << c.imag() << ' ' << p.str() << '\n';
  return os.str();
}

std::string pauli_sum_literal(const PauliSum& s) {
  if (s.empty()) return "0";
  std::ostringstream os;
  os << std::setprecision(12);
  bool first = true;
  for (const auto& [p, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0) {
      os << c.real();
    } else if (c.real() == 0.0) {
      os << c.imag() << 'i';
    } else {
      os << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    }
    os << '*' << p.str();
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PauliString& s) { return os << s.str(); }
std::ostream& operator<<(std::ostream& os, const PauliSum& s) { return os << pauli_sum_literal(s); }

}  // namespace vbe
