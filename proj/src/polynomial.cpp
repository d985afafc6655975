#include "polypart/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polypart {

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (std::uint32_t e : exps_) d += e;
  return d;
}

double Monomial::value_at(std::span<const double> x) const {
  double v = 1.0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    for (std::uint32_t e = 0; e < exps_[i]; ++e) v *= x[i];
  return v;
}

std::string Monomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!first) out << ' ';
    out << 'x' << (i + 1);
    if (exps_[i] > 1) out << '^' << exps_[i];
    first = false;
  }
  if (first) out << '1';
  return out.str();
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const std::uint32_t da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exponents() > b.exponents();  // lexicographically larger first
}

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add_term(Monomial(std::vector<std::uint32_t>(static_cast<std::size_t>(n), 0)), c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("variable index out of range");
  std::vector<std::uint32_t> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  Polynomial p(n);
  p.add_term(Monomial(std::move(e)), 1.0);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // grlex order puts the highest total degree last
  return static_cast<int>(terms_.rbegin()->first.degree());
}

void Polynomial::add_term(const Monomial& m, double coeff) {
  if (m.dim() != n_) throw std::invalid_argument("monomial dimension mismatch");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  double acc = 0.0;
  for (const auto& [mono, coeff] : terms_) acc += coeff * mono.value_at(x);
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.n_ != n_) throw std::invalid_argument("polynomial dimension mismatch");
  Polynomial out = *this;
  for (const auto& [mono, coeff] : other.terms_) out.add_term(mono, coeff);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.n_ != n_) throw std::invalid_argument("polynomial dimension mismatch");
  Polynomial out(n_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      std::vector<std::uint32_t> e(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i)
        e[static_cast<std::size_t>(i)] = ma.exponent(i) + mb.exponent(i);
      out.add_term(Monomial(std::move(e)), ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(n_);
  for (const auto& [mono, coeff] : terms_) out.add_term(mono, -coeff);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    if (!first) out << " + ";
    out << coeff;
    if (!mono.is_constant()) out << '*' << mono.to_string();
    first = false;
  }
  return out.str();
}

Sign sign_region(const Polynomial& p, std::span<const double> x, double tau) {
  if (tau < 0.0) throw std::invalid_argument("tau must be non-negative");
  const double v = p.evaluate(x);
  if (v > tau) return Sign::Pos;
  if (v < -tau) return Sign::Neg;
  return Sign::Zero;
}

std::vector<Monomial> monomial_basis(int n, int delta) {
  if (n < 1 || delta < 0) throw std::invalid_argument("monomial_basis requires n >= 1, delta >= 0");
  std::vector<Monomial> out;
  std::vector<std::uint32_t> current(static_cast<std::size_t>(n), 0);
  // enumerate exponent vectors with sum <= delta, then impose grlex order
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n) {
      out.emplace_back(current);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      current[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(e);
      self(self, pos + 1, remaining - e);
    }
    current[static_cast<std::size_t>(pos)] = 0;
  };
  rec(rec, 0, delta);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

Point veronese_lift(std::span<const double> x, std::span<const Monomial> monos) {
  Point out;
  out.reserve(monos.size());
  for (const Monomial& m : monos) {
    if (m.is_constant()) throw std::invalid_argument("lift monomials must be non-constant");
    out.push_back(m.value_at(x));
  }
  return out;
}

}  // namespace polypart
