#include "msh/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace msh {

std::optional<CartanType> parse_cartan_type(std::string_view text) {
  if (text == "A" || text == "a") return CartanType::A;
  if (text == "B" || text == "b") return CartanType::B;
  if (text == "C" || text == "c") return CartanType::C;
  if (text == "D" || text == "d") return CartanType::D;
  if (text == "G" || text == "g" || text == "G2" || text == "g2") return CartanType::G;
  return std::nullopt;
}

char cartan_letter(CartanType type) {
  switch (type) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::C: return 'C';
    case CartanType::D: return 'D';
    case CartanType::G: return 'G';
  }
  return '?';
}

namespace {

IntMatrix cartan_for(CartanType type, int n) {
  IntMatrix c(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  switch (type) {
    case CartanType::A:
    case CartanType::B:
    case CartanType::C:
      for (int i = 0; i + 1 < n; ++i) c[i][i + 1] = c[i + 1][i] = -1;
      if (type == CartanType::B) c[n - 1][n - 2] = -2;
      if (type == CartanType::C) c[n - 2][n - 1] = -2;
      break;
    case CartanType::D:
      for (int i = 0; i + 2 < n - 1; ++i) c[i][i + 1] = c[i + 1][i] = -1;
      c[n - 3][n - 2] = c[n - 2][n - 3] = -1;
      c[n - 3][n - 1] = c[n - 1][n - 3] = -1;
      break;
    case CartanType::G:
      // alpha_1 short.
      c[0][1] = -3;
      c[1][0] = -1;
      break;
  }
  return c;
}

bool supported(CartanType type, int rank) {
  switch (type) {
    case CartanType::A: return rank >= 1 && rank <= 4;
    case CartanType::B:
    case CartanType::C: return rank >= 2 && rank <= 4;
    case CartanType::D: return rank >= 3 && rank <= 4;
    case CartanType::G: return rank == 2;
  }
  return false;
}

}  // namespace

RootSystem RootSystem::build(CartanType type, int rank) {
  if (!supported(type, rank)) {
    throw std::invalid_argument(std::string("unsupported root system ") + cartan_letter(type) +
                                std::to_string(rank) +
                                " (supported: A1-A4, B2-B4, C2-C4, D3-D4, G2)");
  }
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.cartan_ = cartan_for(type, rank);
  const IntMatrix& c = rs.cartan_;

  auto weight_of = [&](const IntVec& root) {
    IntVec w(rank, 0);
    for (int k = 0; k < rank; ++k)
      for (int j = 0; j < rank; ++j) w[k] += c[k][j] * root[j];
    return w;
  };

  std::set<IntVec> seen;
  std::deque<std::size_t> queue;
  for (int i = 0; i < rank; ++i) {
    PositiveRoot r;
    r.root.assign(rank, 0);
    r.root[i] = 1;
    r.coroot = r.root;
    r.weight = weight_of(r.root);
    seen.insert(r.root);
    rs.positive_.push_back(r);
    queue.push_back(rs.positive_.size() - 1);
  }
  while (!queue.empty()) {
    const PositiveRoot cur = rs.positive_[queue.front()];
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      int pr = 0;  // <beta, coroot_i>
      int pc = 0;  // <alpha_i, beta^vee>
      for (int j = 0; j < rank; ++j) {
        pr += cur.root[j] * c[i][j];
        pc += cur.coroot[j] * c[j][i];
      }
      PositiveRoot next = cur;
      next.root[i] -= pr;
      next.coroot[i] -= pc;
      if (std::any_of(next.root.begin(), next.root.end(), [](int v) { return v < 0; })) continue;
      if (!seen.insert(next.root).second) continue;
      next.weight = weight_of(next.root);
      rs.positive_.push_back(next);
      queue.push_back(rs.positive_.size() - 1);
    }
  }
  for (std::size_t i = 0; i < rs.positive_.size(); ++i) {
    IntVec neg = rs.positive_[i].weight;
    for (int& v : neg) v = -v;
    rs.by_weight_[rs.positive_[i].weight] = {i, 1};
    rs.by_weight_[neg] = {i, -1};
  }
  RationalMatrix cm(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) cm(i, j) = c[i][j];
  LinearSolver solver(cm);
  rs.cartan_inverse_ = RationalMatrix(rank, rank);
  for (int k = 0; k < rank; ++k) {
    Vector e(rank);
    e[k] = 1;
    const Vector col = *solver.solve(e);
    for (int i = 0; i < rank; ++i) rs.cartan_inverse_(i, k) = col[i];
  }
  return rs;
}

std::string RootSystem::name() const { return std::string(1, cartan_letter(type_)) + std::to_string(rank_); }

Weight RootSystem::rho() const { return Weight(rank_, Rational(1)); }

Rational RootSystem::pair(const Weight& lambda, std::size_t root) const {
  Rational s;
  const IntVec& cv = positive_[root].coroot;
  for (int j = 0; j < rank_; ++j) {
    if (cv[j] != 0) s += lambda[j] * Rational(cv[j]);
  }
  return s;
}

Weight RootSystem::reflect(const Weight& lambda, std::size_t root) const {
  const Rational p = pair(lambda, root);
  Weight out = lambda;
  for (int k = 0; k < rank_; ++k) out[k] -= p * Rational(positive_[root].weight[k]);
  return out;
}

std::optional<std::pair<std::size_t, int>> RootSystem::find_root(const IntVec& weight_coords) const {
  auto it = by_weight_.find(weight_coords);
  if (it == by_weight_.end()) return std::nullopt;
  return it->second;
}

Vector RootSystem::simple_root_coordinates(const Weight& lambda) const {
  return cartan_inverse_.apply(lambda);
}

std::vector<std::size_t> integral_positive_roots(const RootSystem& rs, const Weight& lambda) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
    if (rs.pair(lambda, i).is_integer()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> subsystem_base(const RootSystem& rs, const std::vector<std::size_t>& positive) {
  std::set<IntVec> members;
  for (auto i : positive) members.insert(rs.positive_roots()[i].root);
  std::vector<std::size_t> base;
  for (auto b : positive) {
    const IntVec& beta = rs.positive_roots()[b].root;
    bool decomposable = false;
    for (auto g : positive) {
      if (g == b) continue;
      IntVec diff = beta;
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= rs.positive_roots()[g].root[k];
      if (members.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) base.push_back(b);
  }
  return base;
}

// ------------------------------------------------------------ CoxeterGroup

namespace {

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix p(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) p[i][j] += a[i][k] * b[k][j];
    }
  return p;
}

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

CoxeterGroup::CoxeterGroup(const RootSystem& rs, std::vector<std::size_t> positive_subsystem,
                           std::size_t cap)
    : rs_(rs), positive_(std::move(positive_subsystem)) {
  std::sort(positive_.begin(), positive_.end());
  generators_ = subsystem_base(rs_, positive_);
  const int n = rs_.rank();
  std::vector<IntMatrix> gens;
  for (auto r : generators_) {
    const PositiveRoot& pr = rs_.positive_roots()[r];
    IntMatrix m = identity_matrix(n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) m[k][j] -= pr.weight[k] * pr.coroot[j];
    gens.push_back(std::move(m));
  }

  elements_.push_back({identity_matrix(n), {}, 0});
  index_[elements_[0].action] = 0;
  for (std::size_t w = 0; w < elements_.size(); ++w) {
    right_.emplace_back(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s) {
      IntMatrix prod = matmul(elements_[w].action, gens[s]);
      auto it = index_.find(prod);
      if (it == index_.end()) {
        if (elements_.size() >= cap) {
          throw std::length_error("Weyl group exceeds the configured cap of " + std::to_string(cap) +
                                  " elements");
        }
        WeylElement e;
        e.action = prod;
        e.word = elements_[w].word;
        e.word.push_back(static_cast<int>(s));
        e.length = elements_[w].length + 1;
        it = index_.emplace(std::move(prod), elements_.size()).first;
        elements_.push_back(std::move(e));
      }
      right_[w][s] = it->second;
    }
  }

  left_.assign(elements_.size(), std::vector<std::size_t>(gens.size()));
  for (std::size_t w = 0; w < elements_.size(); ++w)
    for (std::size_t s = 0; s < gens.size(); ++s)
      left_[w][s] = index_.at(matmul(gens[s], elements_[w].action));

  for (std::size_t w = 0; w < elements_.size(); ++w) {
    if (elements_[w].length > elements_[longest_].length) longest_ = w;
  }

  const std::size_t size = elements_.size();
  bruhat_.assign(size, std::vector<bool>(size, false));
  bruhat_[0][0] = true;
  for (std::size_t y = 1; y < size; ++y) {
    const std::size_t s = static_cast<std::size_t>(elements_[y].word.back());
    const std::size_t ys = right_[y][s];
    for (std::size_t x = 0; x < size; ++x) {
      const std::size_t xs = right_[x][s];
      bruhat_[x][y] = elements_[xs].length < elements_[x].length ? bruhat_[xs][ys] : bruhat_[x][ys];
    }
  }
}

CoxeterGroup CoxeterGroup::weyl(const RootSystem& rs, std::size_t cap) {
  std::vector<std::size_t> all(rs.positive_roots().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return CoxeterGroup(rs, std::move(all), cap);
}

std::string CoxeterGroup::name(std::size_t i) const {
  const auto& w = elements_[i].word;
  if (w.empty()) return "e";
  std::string s;
  for (int g : w) s += "s" + std::to_string(g + 1);
  return s;
}

std::optional<std::size_t> CoxeterGroup::find(std::string_view name) const {
  if (name == "e") return 0;
  std::size_t w = 0;
  std::size_t pos = 0;
  if (name.empty()) return std::nullopt;
  while (pos < name.size()) {
    if (name[pos] != 's') return std::nullopt;
    ++pos;
    std::size_t start = pos;
    while (pos < name.size() && name[pos] >= '0' && name[pos] <= '9') ++pos;
    if (start == pos) return std::nullopt;
    const int g = std::stoi(std::string(name.substr(start, pos - start))) - 1;
    if (g < 0 || static_cast<std::size_t>(g) >= generators_.size()) return std::nullopt;
    w = right_[w][g];
  }
  return w;
}

std::optional<std::size_t> CoxeterGroup::find(const IntMatrix& action) const {
  auto it = index_.find(action);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CoxeterGroup::multiply(std::size_t a, std::size_t b) const {
  for (int s : elements_[b].word) a = right_[a][s];
  return a;
}

std::size_t CoxeterGroup::inverse(std::size_t a) const {
  std::size_t w = 0;
  const auto& word = elements_[a].word;
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = right_[w][*it];
  return w;
}

int CoxeterGroup::inversion_count(std::size_t w) const {
  const IntMatrix& m = elements_[w].action;
  const int n = rs_.rank();
  int count = 0;
  for (auto r : positive_) {
    const IntVec& beta = rs_.positive_roots()[r].weight;
    IntVec image(n, 0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) image[k] += m[k][j] * beta[j];
    auto found = rs_.find_root(image);
    if (!found) throw std::logic_error("Weyl group element does not permute the roots");
    if (found->second < 0) ++count;
  }
  return count;
}

Weight CoxeterGroup::act(std::size_t w, const Weight& lambda) const {
  const IntMatrix& m = elements_[w].action;
  const int n = rs_.rank();
  Weight out(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (m[k][j] != 0) out[k] += Rational(m[k][j]) * lambda[j];
    }
  return out;
}

Weight CoxeterGroup::dot(std::size_t w, const Weight& lambda) const {
  Weight shifted = lambda;
  const Weight rho = rs_.rho();
  for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] += rho[k];
  Weight out = act(w, shifted);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= rho[k];
  return out;
}

// ----------------------------------------------------------------- weights

bool weight_leq(const RootSystem& rs, const Weight& mu, const Weight& nu) {
  Weight diff = nu;
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= mu[k];
  const Vector c = rs.simple_root_coordinates(diff);
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x.is_integer() && x.sign() >= 0; });
}

bool is_antidominant(const RootSystem& rs, const Weight& lambda) {
  Weight shifted = lambda;
  for (auto& x : shifted) x += Rational(1);
  for (auto r : integral_positive_roots(rs, lambda)) {
    if (rs.pair(shifted, r).sign() > 0) return false;
  }
  return true;
}

Weight antidominant_representative(const RootSystem& rs, const Weight& lambda) {
  const auto base = subsystem_base(rs, integral_positive_roots(rs, lambda));
  Weight cur = lambda;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto b : base) {
      Weight shifted = cur;
      for (auto& x : shifted) x += Rational(1);
      if (rs.pair(shifted, b).sign() > 0) {
        shifted = rs.reflect(shifted, b);
        for (auto& x : shifted) x -= Rational(1);
        cur = shifted;
        changed = true;
      }
    }
  }
  return cur;
}

Orbit orbit_and_stabilizer(const CoxeterGroup& group, const Weight& lambda) {
  const RootSystem& rs = group.root_system();
  if (!is_antidominant(rs, lambda)) {
    throw std::invalid_argument("weight " + format_weight(lambda) +
                                " is not antidominant for its integral root system; use the "
                                "antidominant representative " +
                                format_weight(antidominant_representative(rs, lambda)));
  }
  Orbit orbit;
  std::map<Weight, std::size_t> seen;
  for (std::size_t w = 0; w < group.size(); ++w) {
    Weight mu = group.dot(w, lambda);
    if (mu == lambda) orbit.stabilizer.push_back(w);
    if (seen.emplace(mu, orbit.weights.size()).second) {
      orbit.representatives.push_back(w);
      orbit.weights.push_back(std::move(mu));
    }
  }
  if (orbit.weights.size() * orbit.stabilizer.size() != group.size()) {
    throw std::logic_error("orbit-stabilizer count mismatch");
  }
  return orbit;
}

std::string format_weight(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ", ";
    os << w[i];
  }
  os << ")";
  return os.str();
}

Weight parse_weight(std::string_view text) {
  Weight w;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    w.push_back(Rational::parse(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return w;
}

}  // namespace msh
