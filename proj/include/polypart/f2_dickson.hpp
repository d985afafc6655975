// Exact polynomial algebra over F_2: the top Dickson polynomial, monomial
// ideal reduction, and the surviving-witness obstruction check.
#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace polypart {

inline constexpr std::size_t kDefaultTermBudget = 10'000'000;

// Multivariate polynomial over the two-element field, stored as the set of
// exponent vectors with coefficient 1. Addition is symmetric difference.
class F2Poly {
 public:
  using Term = std::vector<std::uint32_t>;

  F2Poly() = default;
  explicit F2Poly(int nvars) : nvars_(nvars) {}
  static F2Poly one(int nvars);
  static F2Poly variable(int nvars, int i);
  // Sum of the variables u_i with bit i-? set in mask (bit k <-> u_{k+1}).
  static F2Poly linear_form(int nvars, std::uint32_t mask);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::set<Term>& terms() const { return terms_; }
  bool contains(const Term& t) const { return terms_.count(t) != 0; }
  int degree() const;  // -1 for zero

  void toggle(Term t);  // add a single term mod 2

  F2Poly operator+(const F2Poly& other) const;
  F2Poly multiply(const F2Poly& other, std::size_t term_budget) const;
  F2Poly operator*(const F2Poly& other) const { return multiply(other, kDefaultTermBudget); }
  // Frobenius: squaring doubles every exponent vector, cross terms cancel.
  F2Poly square(std::size_t term_budget = kDefaultTermBudget) const;
  // Square-and-multiply, squarings via the Frobenius shortcut.
  F2Poly power(unsigned e, std::size_t term_budget = kDefaultTermBudget) const;

  bool operator==(const F2Poly&) const = default;

  std::string to_string() const;  // "u2^2 u1 + u2 u1^2"

 private:
  int nvars_ = 0;
  std::set<Term> terms_;
};

// The ideal <u_1^{e_1}, ..., u_s^{e_s}>; generator ell is u_ell^{e_ell}.
struct MonomialIdeal {
  std::vector<std::uint64_t> thresholds;  // e_1..e_s, each >= 1
  // Index ideal of the product of spheres: e_ell = j 2^(ell-1) + 1.
  static MonomialIdeal sphere_product_index(int s, int j);
};

// q = prod over nonzero alpha in {0,1}^s of (alpha_1 u_1 + ... + alpha_s u_s),
// built by sequential multiplication; homogeneous of degree 2^s - 1.
F2Poly dickson_product(int s, int max_s = 6,
                       std::size_t term_budget = kDefaultTermBudget);

// The same polynomial as the symmetric sum over permutations pi of
// u_{pi(1)}^{2^(s-1)} u_{pi(2)}^{2^(s-2)} ... u_{pi(s)}; s! terms.
F2Poly dickson_symmetric(int s);

// Deletes every term with some exponent >= the matching threshold; exact
// normal form modulo a monomial ideal, zero iff p lies in the ideal.
F2Poly reduce_mod_ideal(const F2Poly& p, const MonomialIdeal& ideal);

struct ObstructionReport {
  int s = 0;
  int j = 0;
  bool nonzero = false;          // q^j does not reduce to zero
  bool witness_present = false;  // the monomial u_s^{j 2^(s-1)} ... u_1^j survives
  std::size_t surviving_terms = 0;
  F2Poly::Term witness;
  F2Poly reduced;
};

// Computes q^j and reduces it modulo the sphere-product index ideal.
ObstructionReport obstruction_check(int s, int j,
                                    std::size_t term_budget = kDefaultTermBudget);

}  // namespace polypart
