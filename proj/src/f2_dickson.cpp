#include "polypart/f2_dickson.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "polypart/errors.hpp"

namespace polypart {

F2Poly F2Poly::one(int nvars) {
  F2Poly p(nvars);
  p.toggle(Term(static_cast<std::size_t>(nvars), 0));
  return p;
}

F2Poly F2Poly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::invalid_argument("variable index out of range");
  Term t(static_cast<std::size_t>(nvars), 0);
  t[static_cast<std::size_t>(i)] = 1;
  F2Poly p(nvars);
  p.toggle(std::move(t));
  return p;
}

F2Poly F2Poly::linear_form(int nvars, std::uint32_t mask) {
  F2Poly p(nvars);
  for (int i = 0; i < nvars; ++i)
    if (mask & (1u << i)) p.toggle([&] {
      Term t(static_cast<std::size_t>(nvars), 0);
      t[static_cast<std::size_t>(i)] = 1;
      return t;
    }());
  return p;
}

int F2Poly::degree() const {
  int best = -1;
  for (const Term& t : terms_) {
    const auto d = std::accumulate(t.begin(), t.end(), std::uint64_t{0});
    best = std::max(best, static_cast<int>(d));
  }
  return best;
}

void F2Poly::toggle(Term t) {
  if (static_cast<int>(t.size()) != nvars_)
    throw std::invalid_argument("term variable count mismatch");
  auto it = terms_.find(t);
  if (it == terms_.end())
    terms_.insert(std::move(t));
  else
    terms_.erase(it);
}

F2Poly F2Poly::operator+(const F2Poly& other) const {
  if (other.nvars_ != nvars_)
    throw std::invalid_argument("F2 polynomial variable count mismatch");
  F2Poly out = *this;
  for (const Term& t : other.terms_) out.toggle(t);
  return out;
}

F2Poly F2Poly::multiply(const F2Poly& other, std::size_t term_budget) const {
  if (other.nvars_ != nvars_)
    throw std::invalid_argument("F2 polynomial variable count mismatch");
  if (term_count() * other.term_count() > term_budget * 8)
    throw Error(ErrorKind::Budget, "F2 multiply exceeds term budget");
  F2Poly out(nvars_);
  Term sum(static_cast<std::size_t>(nvars_));
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) {
      for (int i = 0; i < nvars_; ++i)
        sum[static_cast<std::size_t>(i)] =
            a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
      out.toggle(sum);
      if (out.term_count() > term_budget)
        throw Error(ErrorKind::Budget, "F2 multiply exceeds term budget");
    }
  }
  return out;
}

F2Poly F2Poly::square(std::size_t term_budget) const {
  if (term_count() > term_budget)
    throw Error(ErrorKind::Budget, "F2 square exceeds term budget");
  F2Poly out(nvars_);
  for (const Term& t : terms_) {
    Term d(t);
    for (auto& e : d) e *= 2;
    out.terms_.insert(std::move(d));  // doubling is injective, no cancellation
  }
  return out;
}

F2Poly F2Poly::power(unsigned e, std::size_t term_budget) const {
  F2Poly result = F2Poly::one(nvars_);
  F2Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result.multiply(base, term_budget);
    e >>= 1u;
    if (e > 0) base = base.square(term_budget);
  }
  return result;
}

std::string F2Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first_term = true;
  for (const Term& t : terms_) {
    if (!first_term) out << " + ";
    bool first_var = true;
    // print highest-index variable first, matching u_s^{...} ... u_1^{...}
    for (int i = nvars_ - 1; i >= 0; --i) {
      const auto e = t[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (!first_var) out << ' ';
      out << 'u' << (i + 1);
      if (e > 1) out << '^' << e;
      first_var = false;
    }
    if (first_var) out << '1';
    first_term = false;
  }
  return out.str();
}

MonomialIdeal MonomialIdeal::sphere_product_index(int s, int j) {
  if (s < 1 || j < 1) throw std::invalid_argument("ideal requires s, j >= 1");
  MonomialIdeal ideal;
  ideal.thresholds.reserve(static_cast<std::size_t>(s));
  for (int ell = 1; ell <= s; ++ell)
    ideal.thresholds.push_back((static_cast<std::uint64_t>(j) << (ell - 1)) + 1);
  return ideal;
}

F2Poly dickson_product(int s, int max_s, std::size_t term_budget) {
  if (s < 1) throw std::invalid_argument("dickson_product requires s >= 1");
  if (s > max_s)
    throw Error(ErrorKind::Budget, "dickson_product: s exceeds configured cap");
  F2Poly q = F2Poly::one(s);
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask)
    q = q.multiply(F2Poly::linear_form(s, mask), term_budget);
  return q;
}

F2Poly dickson_symmetric(int s) {
  if (s < 1) throw std::invalid_argument("dickson_symmetric requires s >= 1");
  F2Poly q(s);
  std::vector<int> perm(static_cast<std::size_t>(s));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    F2Poly::Term t(static_cast<std::size_t>(s), 0);
    for (int pos = 0; pos < s; ++pos)
      t[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] =
          1u << (s - 1 - pos);
    q.toggle(std::move(t));  // all s! exponent vectors are distinct
  } while (std::next_permutation(perm.begin(), perm.end()));
  return q;
}

F2Poly reduce_mod_ideal(const F2Poly& p, const MonomialIdeal& ideal) {
  if (ideal.thresholds.size() != static_cast<std::size_t>(p.nvars()))
    throw std::invalid_argument("ideal variable count mismatch");
  F2Poly out(p.nvars());
  for (const F2Poly::Term& t : p.terms()) {
    bool killed = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= ideal.thresholds[i]) {
        killed = true;
        break;
      }
    }
    if (!killed) out.toggle(t);
  }
  return out;
}

ObstructionReport obstruction_check(int s, int j, std::size_t term_budget) {
  if (s < 1 || j < 1) throw std::invalid_argument("obstruction_check requires s, j >= 1");
  ObstructionReport report;
  report.s = s;
  report.j = j;
  const F2Poly q = dickson_product(s, /*max_s=*/6, term_budget);
  const F2Poly qj = q.power(static_cast<unsigned>(j), term_budget);
  const MonomialIdeal ideal = MonomialIdeal::sphere_product_index(s, j);
  report.reduced = reduce_mod_ideal(qj, ideal);
  report.nonzero = !report.reduced.is_zero();
  report.witness.resize(static_cast<std::size_t>(s));
  for (int ell = 1; ell <= s; ++ell)
    report.witness[static_cast<std::size_t>(ell - 1)] =
        static_cast<std::uint32_t>(j) << (ell - 1);
  report.witness_present = report.reduced.contains(report.witness);
  report.surviving_terms = report.reduced.term_count();
  return report;
}

}  // namespace polypart
