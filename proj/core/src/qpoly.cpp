#include "msh/qpoly.hpp"

#include <ostream>

#include <cstdlib>
#include <sstream>

namespace msh {

QPoly QPoly::monomial(int exponent, std::int64_t c) {
  QPoly p;
  p.add(exponent, c);
  return p;
}

std::int64_t QPoly::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

int QPoly::degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

int QPoly::low_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }

std::int64_t QPoly::eval_at_one() const {
  std::int64_t s = 0;
  for (const auto& [e, c] : coeffs_) s += c;
  return s;
}

void QPoly::add(int exponent, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
  for (const auto& [e, c] : rhs.coeffs_) add(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) {
  for (const auto& [e, c] : rhs.coeffs_) add(e, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) r.add(ea + eb, ca * cb);
  }
  return r;
}

QPoly QPoly::shifted(int by) const {
  QPoly r;
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + by, c);
  return r;
}

std::string QPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    std::int64_t mag = c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag < 0) mag = -mag;
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << p.str(); }

}  // namespace msh
