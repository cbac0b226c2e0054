#include "msh/graded.hpp"

#include <stdexcept>

namespace msh {

GradedFree::GradedFree(int variable_count, std::vector<int> shifts, Modulus modulus)
    : GradedFree(variable_count, shifts, std::vector<Modulus>(shifts.size(), modulus)) {
  common_excluded_ = modulus ? modulus->pivot() : -1;
}

GradedFree::GradedFree(int variable_count, std::vector<int> shifts, std::vector<Modulus> moduli)
    : nvars_(variable_count), shifts_(std::move(shifts)), moduli_(std::move(moduli)) {
  if (moduli_.size() != shifts_.size()) throw std::invalid_argument("one modulus per generator expected");
  for (int s : shifts_) {
    if (s % 2 != 0) throw std::invalid_argument("generator shifts must be even");
  }
  common_excluded_ = -1;
  if (!moduli_.empty() && moduli_[0]) {
    common_excluded_ = moduli_[0]->pivot();
    for (const auto& m : moduli_)
      if (!m || m->form() != moduli_[0]->form()) common_excluded_ = -1;
  }
}

GradedFree GradedFree::direct_sum(int variable_count, const std::vector<GradedFree>& parts) {
  std::vector<int> shifts;
  std::vector<Modulus> moduli;
  for (const auto& p : parts) {
    shifts.insert(shifts.end(), p.shifts().begin(), p.shifts().end());
    moduli.insert(moduli.end(), p.moduli().begin(), p.moduli().end());
  }
  return GradedFree(variable_count, std::move(shifts), std::move(moduli));
}

const DegreeSlice& GradedFree::slice(std::size_t generator, int degree) const {
  const auto& m = moduli_[generator];
  return degree_slice(nvars_, degree - shifts_[generator], m ? m->pivot() : -1);
}

std::size_t GradedFree::dim(int degree) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < shifts_.size(); ++j) n += slice(j, degree).size();
  return n;
}

std::size_t GradedFree::offset(std::size_t generator, int degree) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < generator; ++j) n += slice(j, degree).size();
  return n;
}

Vector GradedFree::encode(const std::vector<Polynomial>& components, int degree) const {
  if (components.size() != shifts_.size()) throw std::invalid_argument("component count mismatch");
  Vector v(dim(degree));
  std::size_t base = 0;
  for (std::size_t j = 0; j < shifts_.size(); ++j) {
    const DegreeSlice& sl = slice(j, degree);
    const Polynomial p = moduli_[j] ? moduli_[j]->reduce(components[j]) : components[j];
    for (const auto& [m, c] : p.terms()) {
      const int idx = sl.index_of(m);
      if (idx < 0) throw std::invalid_argument("component has wrong degree for its generator");
      v[base + idx] = c;
    }
    base += sl.size();
  }
  return v;
}

std::vector<Polynomial> GradedFree::decode(const Vector& coords, int degree) const {
  std::vector<Polynomial> out(shifts_.size());
  std::size_t base = 0;
  for (std::size_t j = 0; j < shifts_.size(); ++j) {
    const DegreeSlice& sl = slice(j, degree);
    for (std::size_t k = 0; k < sl.size(); ++k) {
      if (!coords[base + k].is_zero()) out[j].add_term(sl.monomials()[k], coords[base + k]);
    }
    base += sl.size();
  }
  if (base != coords.size()) throw std::invalid_argument("coordinate vector has wrong length");
  return out;
}

Vector GradedFree::multiply_monomial(const Vector& coords, int degree, Monomial m) const {
  const int target = degree + m.degree();
  Vector out(dim(target));
  std::size_t base = 0;
  std::size_t tbase = 0;
  for (std::size_t j = 0; j < shifts_.size(); ++j) {
    const DegreeSlice& sl = slice(j, degree);
    const DegreeSlice& tl = slice(j, target);
    for (std::size_t k = 0; k < sl.size(); ++k) {
      const Rational& c = coords[base + k];
      if (c.is_zero()) continue;
      const Monomial prod = sl.monomials()[k] * m;
      const int idx = tl.index_of(prod);
      if (idx >= 0) {
        out[tbase + idx] += c;
        continue;
      }
      const Polynomial red = moduli_[j]->reduce(Polynomial::term(prod, c));
      for (const auto& [rm, rc] : red.terms()) out[tbase + tl.index_of(rm)] += rc;
    }
    base += sl.size();
    tbase += tl.size();
  }
  return out;
}

Vector GradedFree::multiply_variable(const Vector& coords, int degree, int variable) const {
  return multiply_monomial(coords, degree, Monomial::variable(variable));
}

Vector GradedFree::basis_element(std::size_t generator, Monomial u) const {
  const int degree = shifts_[generator] + u.degree();
  std::vector<Polynomial> comps(shifts_.size());
  comps[generator] = Polynomial::term(u);
  return encode(comps, degree);
}

QPoly GradedFree::graded_rank() const {
  QPoly q;
  for (int s : shifts_) q.add(s / 2, 1);
  return q;
}

std::size_t free_dimension(int variable_count, const std::vector<int>& shifts, int degree,
                           int excluded_variable) {
  std::size_t n = 0;
  for (int s : shifts) n += degree_slice(variable_count, degree - s, excluded_variable).size();
  return n;
}

std::vector<Vector> MinimalGenerators::add_degree(int degree, const std::vector<Vector>& candidates) {
  Subspace sp(ambient_.dim(degree));
  if (degree_ == degree - 2) {
    for (const auto& b : current_) {
      for (int i = 0; i < ambient_.variable_count(); ++i) {
        if (i == ambient_.excluded_variable()) continue;
        sp.insert(ambient_.multiply_variable(b, degree_, i));
      }
    }
  }
  std::vector<Vector> fresh;
  for (const auto& c : candidates) {
    if (sp.insert(c)) fresh.push_back(c);
  }
  current_ = sp.basis();
  degree_ = degree;
  return fresh;
}

}  // namespace msh
