// Sparse real multivariate polynomials with a fixed graded-lex monomial order.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace polypart {

using Point = std::vector<double>;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : exps_(std::move(exponents)) {}

  int dim() const { return static_cast<int>(exps_.size()); }
  std::uint32_t degree() const;
  std::uint32_t exponent(int i) const { return exps_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_constant() const { return degree() == 0; }
  double value_at(std::span<const double> x) const;
  std::string to_string() const;  // "x1^2 x3"

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

// Graded lexicographic order: lower total degree first; within a degree the
// lexicographically larger exponent vector comes first, so x1 precedes x2.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

enum class Sign { Neg, Zero, Pos };

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}
  static Polynomial constant(int n, double c);
  static Polynomial variable(int n, int i);  // x_{i+1}, zero-based i

  int dim() const { return n_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, double, GrlexLess>& terms() const { return terms_; }

  // Accumulates into the term map; exact zero coefficients are dropped.
  void add_term(const Monomial& m, double coeff);
  double coefficient(const Monomial& m) const;

  double evaluate(std::span<const double> x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;

  std::string to_string() const;

 private:
  int n_ = 0;
  std::map<Monomial, double, GrlexLess> terms_;
};

// Pos when p(x) > tau, Neg when p(x) < -tau, Zero inside the band.
Sign sign_region(const Polynomial& p, std::span<const double> x, double tau);

// All monomials of total degree <= delta in n variables, graded-lex order,
// constant first; C(delta + n, n) entries.
std::vector<Monomial> monomial_basis(int n, int delta);

// Coordinate i of the result is the value of monos[i] at x. Every monomial
// must be non-constant.
Point veronese_lift(std::span<const double> x, std::span<const Monomial> monos);

}  // namespace polypart
