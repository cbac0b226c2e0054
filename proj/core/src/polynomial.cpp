#include "msh/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace msh {

// ---------------------------------------------------------------- PolyRing

namespace {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("h" + std::to_string(i + 1));
  return names;
}

}  // namespace

PolyRing::PolyRing(int variable_count) : PolyRing(variable_count, default_names(variable_count)) {}

PolyRing::PolyRing(int variable_count, std::vector<std::string> names)
    : variable_count_(variable_count), names_(std::move(names)) {
  if (variable_count_ < 1 || variable_count_ > kMaxVariables) {
    throw std::invalid_argument("polynomial ring supports 1.." + std::to_string(kMaxVariables) +
                                " variables, got " + std::to_string(variable_count_));
  }
  if (static_cast<int>(names_.size()) != variable_count_) {
    throw std::invalid_argument("variable name count does not match variable count");
  }
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw std::invalid_argument("variable names must be distinct");
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::from_exponents(std::span<const int> exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw std::invalid_argument("too many exponents for a monomial");
  }
  std::uint32_t packed = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > 255) {
      throw std::invalid_argument("monomial exponent out of range");
    }
    packed |= static_cast<std::uint32_t>(exponents[i]) << (8 * (kMaxVariables - 1 - i));
  }
  return Monomial(packed);
}

Monomial Monomial::variable(int index) {
  if (index < 0 || index >= kMaxVariables) throw std::invalid_argument("variable index out of range");
  return Monomial(1u << (8 * (kMaxVariables - 1 - index)));
}

int Monomial::total_exponent() const {
  int s = 0;
  for (int i = 0; i < kMaxVariables; ++i) s += exponent(i);
  return s;
}

std::vector<int> Monomial::exponents(int variable_count) const {
  std::vector<int> e(variable_count);
  for (int i = 0; i < variable_count; ++i) e[i] = exponent(i);
  return e;
}

Monomial Monomial::operator*(Monomial rhs) const {
  std::uint32_t packed = 0;
  for (int i = 0; i < kMaxVariables; ++i) {
    const int e = exponent(i) + rhs.exponent(i);
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    packed |= static_cast<std::uint32_t>(e) << (8 * (kMaxVariables - 1 - i));
  }
  return Monomial(packed);
}

bool Monomial::divides(Monomial other) const {
  for (int i = 0; i < kMaxVariables; ++i) {
    if (exponent(i) > other.exponent(i)) return false;
  }
  return true;
}

Monomial Monomial::quotient(Monomial other) const {
  // this / other
  std::uint32_t packed = 0;
  for (int i = 0; i < kMaxVariables; ++i) {
    const int e = exponent(i) - other.exponent(i);
    if (e < 0) throw std::invalid_argument("monomial quotient is not a monomial");
    packed |= static_cast<std::uint32_t>(e) << (8 * (kMaxVariables - 1 - i));
  }
  return Monomial(packed);
}

Monomial Monomial::without(int index) const {
  return Monomial(packed_ & ~(0xFFu << (8 * (kMaxVariables - 1 - index))));
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial(), constant);
}

Polynomial Polynomial::term(Monomial m, const Rational& coefficient) {
  Polynomial p;
  if (!coefficient.is_zero()) p.terms_.emplace(m, coefficient);
  return p;
}

Polynomial Polynomial::variable(int index) { return term(Monomial::variable(index)); }

Rational Polynomial::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational() : it->second;
}

bool Polynomial::contains_variable(int index) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.exponent(index) != 0; });
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.total_exponent();
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.total_exponent() == d; });
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Polynomial::add_term(Monomial m, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial Polynomial::times(Monomial m) const {
  Polynomial r;
  for (const auto& [mm, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, c);
  return r;
}

std::string Polynomial::str(const PolyRing& ring) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    if (first) {
      if (coeff.sign() < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff.sign() < 0 ? " - " : " + ");
      if (coeff.sign() < 0) coeff = -coeff;
    }
    first = false;
    const bool constant = m.total_exponent() == 0;
    if (constant) {
      os << coeff;
      continue;
    }
    if (!coeff.is_one()) os << coeff << "*";
    bool first_var = true;
    for (int i = 0; i < ring.variable_count(); ++i) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << ring.variable_names()[i];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

std::string Polynomial::str() const {
  int n = 1;
  for (const auto& [m, c] : terms_) {
    for (int i = 0; i < kMaxVariables; ++i) {
      if (m.exponent(i) != 0) n = std::max(n, i + 1);
    }
  }
  return str(PolyRing(n));
}

// -------------------------------------------------------------- LinearForm

LinearForm::LinearForm(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty() || coefficients_.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw std::invalid_argument("linear form has unsupported variable count");
  }
  pivot_ = -1;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (!coefficients_[i].is_zero()) {
      pivot_ = static_cast<int>(i);
      break;
    }
  }
  if (pivot_ < 0) throw std::invalid_argument("zero linear form");
}

LinearForm LinearForm::from_ints(std::initializer_list<std::int64_t> coefficients) {
  std::vector<Rational> c;
  for (auto v : coefficients) c.emplace_back(v);
  return LinearForm(std::move(c));
}

Polynomial LinearForm::as_polynomial() const {
  Polynomial p;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    p.add_term(Monomial::variable(static_cast<int>(i)), coefficients_[i]);
  }
  return p;
}

LinearForm LinearForm::primitive() const {
  mpz_class lcm_den = 1;
  for (const auto& c : coefficients_) {
    const mpq_class q = c.to_mpq();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : coefficients_) {
    const mpq_class q = c.to_mpq() * lcm_den;
    ints.push_back(q.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (ints[pivot_] < 0) g = -g;
  std::vector<Rational> out;
  for (const auto& v : ints) out.emplace_back(mpq_class(v / g));
  return LinearForm(std::move(out));
}

bool LinearForm::proportional_to(const LinearForm& other) const {
  if (other.coefficients_.size() != coefficients_.size() || other.pivot_ != pivot_) return false;
  const Rational ratio = other.coefficients_[pivot_] / coefficients_[pivot_];
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] * ratio != other.coefficients_[i]) return false;
  }
  return true;
}

std::string LinearForm::str(const PolyRing& ring) const { return as_polynomial().str(ring); }

// ------------------------------------------------------------- DegreeSlice

namespace {

void enumerate_monomials(int n, int var, int remaining, int excluded, std::vector<int>& exps,
                         std::vector<Monomial>& out) {
  if (var == n - 1) {
    if (var == excluded && remaining > 0) return;
    exps[var] = remaining;
    out.push_back(Monomial::from_exponents(exps));
    exps[var] = 0;
    return;
  }
  const int top = var == excluded ? 0 : remaining;
  for (int e = top; e >= 0; --e) {
    exps[var] = e;
    enumerate_monomials(n, var + 1, remaining - e, excluded, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

DegreeSlice::DegreeSlice(int variable_count, int degree, int excluded_variable)
    : degree_(degree), excluded_(excluded_variable) {
  if (variable_count < 1 || variable_count > kMaxVariables) {
    throw std::invalid_argument("degree slice: unsupported variable count");
  }
  if (degree < 0 || degree % 2 != 0) return;
  std::vector<int> exps(variable_count, 0);
  enumerate_monomials(variable_count, 0, degree / 2, excluded_variable, exps, monomials_);
}

int DegreeSlice::index_of(Monomial m) const {
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m, LexDescending{});
  if (it == monomials_.end() || *it != m) return -1;
  return static_cast<int>(it - monomials_.begin());
}

const DegreeSlice& degree_slice(int variable_count, int degree, int excluded_variable) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<DegreeSlice>> cache;
  if (degree < 0 || degree % 2 != 0) degree = -1;
  const auto key = std::make_tuple(variable_count, degree, excluded_variable);
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<DegreeSlice>(variable_count, degree, excluded_variable);
  return *slot;
}

std::vector<Monomial> graded_component_basis(const PolyRing& ring, int degree) {
  if (degree % 2 != 0) {
    throw std::invalid_argument("odd degree has empty basis by convention violation");
  }
  if (degree < 0) throw std::invalid_argument("negative degree");
  return degree_slice(ring.variable_count(), degree).monomials();
}

// ----------------------------------------------------------- LinearReducer

LinearReducer::LinearReducer(LinearForm form) : form_(std::move(form)) {
  auto sub = std::make_unique<Polynomial>();
  const int p = form_.pivot();
  const Rational lead = form_.coefficients()[p];
  for (int i = 0; i < form_.variable_count(); ++i) {
    if (i == p) continue;
    sub->add_term(Monomial::variable(i), -form_.coefficients()[i] / lead);
  }
  powers_.push_back(std::make_unique<Polynomial>(Rational(1)));
  powers_.push_back(std::move(sub));
}

const Polynomial& LinearReducer::substitution_power(int k) const {
  std::lock_guard lock(mutex_);
  while (static_cast<int>(powers_.size()) <= k) {
    auto next = std::make_unique<Polynomial>(*powers_.back() * *powers_[1]);
    powers_.push_back(std::move(next));
  }
  return *powers_[k];
}

Polynomial LinearReducer::reduce(const Polynomial& p) const {
  const int pivot = form_.pivot();
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    const int k = m.exponent(pivot);
    if (k == 0) {
      out.add_term(m, c);
      continue;
    }
    const Monomial rest = m.without(pivot);
    for (const auto& [sm, sc] : substitution_power(k).terms()) out.add_term(sm * rest, sc * c);
  }
  return out;
}

Polynomial reduce_mod_linear(const Polynomial& p, const std::vector<Rational>& form) {
  return LinearReducer(LinearForm(form)).reduce(p);
}

Polynomial reduce_mod_linear(const Polynomial& p, const LinearForm& form) {
  return LinearReducer(form).reduce(p);
}

std::optional<Polynomial> divide_by_linear(const Polynomial& p, const LinearForm& form) {
  const int pivot = form.pivot();
  const Rational lead = form.coefficients()[pivot];
  const Polynomial ell = form.as_polynomial();
  const Monomial xp = Monomial::variable(pivot);
  Polynomial rem = p;
  Polynomial quotient;
  while (!rem.is_zero()) {
    // Term with the highest pivot exponent; ties broken by the map order.
    auto best = rem.terms().begin();
    for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it) {
      if (it->first.exponent(pivot) > best->first.exponent(pivot)) best = it;
    }
    if (best->first.exponent(pivot) == 0) return std::nullopt;
    const Polynomial q = Polynomial::term(best->first.quotient(xp), best->second / lead);
    quotient += q;
    rem -= ell * q;
  }
  return quotient;
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
  // Lex order: the first term of the map is the leading one.
  const auto [lead_m, lead_c] = *q.terms().begin();
  Polynomial rem = p;
  Polynomial quotient;
  while (!rem.is_zero()) {
    const auto [m, c] = *rem.terms().begin();
    if (!lead_m.divides(m)) return std::nullopt;
    const Polynomial t = Polynomial::term(m.quotient(lead_m), c / lead_c);
    quotient += t;
    rem -= q * t;
  }
  return quotient;
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(1);
  bool negate = false;
  Polynomial prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial();
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto q = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        if (!q) throw std::logic_error("determinant: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Polynomial();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace msh
