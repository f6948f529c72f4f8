// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/line_bundles.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qbundle {

namespace {

void enumerate_exponents(int slots_left, int degree_left, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (slots_left == 1) {
    prefix.push_back(degree_left);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = degree_left; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_exponents(slots_left - 1, degree_left - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis monomial_basis(int n, int l) {
  if (n < 0) throw std::invalid_argument("monomial_basis: n must be >= 0");
  MonomialBasis basis{n, l, {}};
  if (l < 0) return basis;  // no global sections in negative degree
  std::vector<int> prefix;
  enumerate_exponents(n + 1, l, prefix, basis.exponents);
  return basis;
}

GlobalSection GlobalSection::monomial(int n, const std::vector<int>& exponent) {
  int l = 0;
  for (int e : exponent) l += e;
  GlobalSection s{monomial_basis(n, l), {}};
  s.coefficients = Vec::Zero(static_cast<Eigen::Index>(s.basis.size()));
  auto it = std::find(s.basis.exponents.begin(), s.basis.exponents.end(), exponent);
  if (it == s.basis.exponents.end())
    throw std::invalid_argument("GlobalSection::monomial: bad exponent tuple");
  s.coefficients(it - s.basis.exponents.begin()) = Complex{1.0, 0.0};
  return s;
}

Complex tau_transition(const AffinePoint& p, int k, PicardClass cls) {
  if (k == p.chart) return Complex{1.0, 0.0};
  if (!in_overlap(p, k)) {
    throw OverlapUndefined("line-bundle transition undefined: target coordinate vanishes");
  }
  return ipow(p.coords(p.slot_of(k)), cls.l);
}

Complex tau_transition_unitary(const AffinePoint& p, int k, PicardClass cls) {
  Complex t = tau_transition(p, k, cls);
  return t / std::abs(t);
}

Complex section_local(const GlobalSection& s, const AffinePoint& p) {
  if (s.basis.n != p.n())
    throw std::invalid_argument("section_local: dimension mismatch");
  HomogeneousPoint Z = p.lift();
  Complex value{0.0, 0.0};
  for (std::size_t m = 0; m < s.basis.size(); ++m) {
    Complex term = s.coefficients(static_cast<Eigen::Index>(m));
    if (term == Complex{0.0, 0.0}) continue;
    for (int i = 0; i <= s.basis.n; ++i) {
      term *= ipow(Z.coords(i), s.basis.exponents[m][i]);
    }
    value += term;
  }
  return value;
}

double section_transition_residual(const GlobalSection& s, const AffinePoint& p,
                                   int k) {
  Complex f_j = section_local(s, p);
  AffinePoint q = transition_coords(p, k);
  Complex f_k = section_local(s, q);
  Complex t = tau_transition(p, k, PicardClass{s.basis.l});
  return std::abs(f_j - t * f_k);
}

void to_json(nlohmann::json& j, const GlobalSection& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.coefficients.size(); ++i) {
    coeffs.push_back({s.coefficients(i).real(), s.coefficients(i).imag()});
  }
  j = nlohmann::json{{"n", s.basis.n}, {"l", s.basis.l}, {"coefficients", coeffs}};
}

void from_json(const nlohmann::json& j, GlobalSection& s) {
  s.basis = monomial_basis(j.at("n").get<int>(), j.at("l").get<int>());
  const auto& coeffs = j.at("coefficients");
  if (coeffs.size() != s.basis.size())
    throw std::invalid_argument("GlobalSection: coefficient count does not match basis");
  s.coefficients = Vec::Zero(static_cast<Eigen::Index>(s.basis.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    s.coefficients(static_cast<Eigen::Index>(i)) =
        Complex{coeffs[i][0].get<double>(), coeffs[i][1].get<double>()};
  }
}

}  // namespace qbundle
