#include "msh/hecke.hpp"

#include <algorithm>

namespace msh {
namespace {

using Coeffs = std::vector<std::int64_t>;

void add_shifted(Coeffs& acc, const Coeffs& p, int shift, std::int64_t factor) {
  if (p.empty() || factor == 0) return;
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += factor * p[i];
}

void trim(Coeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

KLTable::KLTable(const CoxeterGroup& group) : n_(group.size()) {
  length_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) length_[i] = group.length(i);
  table_.assign(n_ * n_, {});
  table_[0] = {1};
  // mu_list[v]: elements z < v with mu(z, v) != 0.
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> mu_list(n_);

  for (std::size_t w = 1; w < n_; ++w) {
    const std::size_t s = static_cast<std::size_t>(group.element(w).word.back());
    const std::size_t v = group.right_multiply(w, s);
    for (std::size_t x = 0; x < n_; ++x) {
      if (!group.bruhat_leq(x, w)) continue;
      if (x == w) {
        table_[x * n_ + w] = {1};
        continue;
      }
      const std::size_t xs = group.right_multiply(x, s);
      const int c = length_[xs] < length_[x] ? 1 : 0;
      Coeffs p;
      add_shifted(p, coeffs(xs, v), 1 - c, 1);
      add_shifted(p, coeffs(x, v), c, 1);
      for (const auto& [z, m] : mu_list[v]) {
        const std::size_t zs = group.right_multiply(z, s);
        if (length_[zs] >= length_[z]) continue;
        if (!group.bruhat_leq(x, z)) continue;
        add_shifted(p, coeffs(x, z), (length_[w] - length_[z]) / 2, -m);
      }
      trim(p);
      table_[x * n_ + w] = std::move(p);
    }
    for (std::size_t z = 0; z < n_; ++z) {
      if (z == w || !group.bruhat_leq(z, w)) continue;
      const std::int64_t m = mu(z, w);
      if (m != 0) mu_list[w].emplace_back(z, m);
    }
  }
}

QPoly KLTable::polynomial(std::size_t x, std::size_t w) const {
  QPoly q;
  const auto& c = coeffs(x, w);
  for (std::size_t i = 0; i < c.size(); ++i) q.add(static_cast<int>(i), c[i]);
  return q;
}

std::int64_t KLTable::mu(std::size_t x, std::size_t w) const {
  const int d = length_[w] - length_[x] - 1;
  if (d < 0 || d % 2 != 0) return 0;
  const auto& c = coeffs(x, w);
  const std::size_t k = static_cast<std::size_t>(d / 2);
  return k < c.size() ? c[k] : 0;
}

std::int64_t KLTable::eval_at_one(std::size_t x, std::size_t w) const {
  std::int64_t s = 0;
  for (auto v : coeffs(x, w)) s += v;
  return s;
}

}  // namespace msh
