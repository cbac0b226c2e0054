#include "msh/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace msh {
namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

bool fits(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z != kMin;
}

mpq_class small_to_mpq(std::int64_t num, std::int64_t den) {
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), num);
  mpz_set_si(q.get_den_mpz_t(), den);
  return q;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (num == kMin || den == kMin) {
    mpq_class q = small_to_mpq(num, 1) / small_to_mpq(den, 1);
    assign_big(std::move(q));
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(abs64(num), den);
  num_ = num / g;
  den_ = den / g;
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    big_ = std::make_unique<mpq_class>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  q.canonicalize();
  if (fits(q.get_num()) && fits(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto check_digits = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && part[0] == '-') i = 1;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!check_digits(num, true) || !check_digits(den, false)) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  mpq_class q;
  q.get_num().set_str(num, 10);
  q.get_den().set_str(den, 10);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r;
  r.assign_big(std::move(q));
  return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.assign_big(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != kMin) {
        num_ = s;
        return *this;
      }
    } else {
      // Knuth 4.5.1: reduce by g = gcd(b, d) before multiplying out.
      const std::int64_t g = std::gcd(den_, rhs.den_);
      const std::int64_t b_g = den_ / g;
      const std::int64_t d_g = rhs.den_ / g;
      std::int64_t t1, t2, t, den;
      if (!__builtin_mul_overflow(num_, d_g, &t1) &&
          !__builtin_mul_overflow(rhs.num_, b_g, &t2) &&
          !__builtin_add_overflow(t1, t2, &t) && t != kMin) {
        const std::int64_t g2 = std::gcd(abs64(t), g);
        if (!__builtin_mul_overflow(b_g, rhs.den_ / g2, &den)) {
          num_ = t / g2;
          den_ = t == 0 ? 1 : den;
          return *this;
        }
      }
    }
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const std::int64_t g1 = std::gcd(abs64(num_), rhs.den_);
    const std::int64_t g2 = std::gcd(abs64(rhs.num_), den_);
    std::int64_t n, d;
    if (!__builtin_mul_overflow(num_ / g1, rhs.num_ / g2, &n) && n != kMin &&
        !__builtin_mul_overflow(den_ / g2, rhs.den_ / g1, &d)) {
      num_ = n;
      den_ = d;
      return *this;
    }
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  if (!rhs.big_) {
    Rational inv;
    inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inv.den_ = abs64(rhs.num_);
    return *this *= inv;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical forms: a spilled value never fits inline.
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::int64_t Rational::to_int64() const {
  if (big_ || den_ != 1) throw std::domain_error("rational is not a machine integer: " + str());
  return num_;
}

mpq_class Rational::to_mpq() const { return big_ ? *big_ : small_to_mpq(num_, den_); }

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace msh
