#include "dsuq/pce.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace dsuq {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-root initial guess, then Newton on L_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<double> legendre_values(int order, double x) {
  std::vector<double> v(static_cast<std::size_t>(order) + 1);
  v[0] = 1.0;
  if (order >= 1) v[1] = x;
  for (int k = 2; k <= order; ++k)
    v[k] = ((2.0 * k - 1.0) * x * v[k - 1] - (k - 1.0) * v[k - 2]) / k;
  return v;
}

PCEBasis PCEBasis::build(int dims, int order, std::size_t max_terms) {
  if (dims < 1) throw std::invalid_argument("basis needs at least one dimension");
  if (order < 1 || order > kMaxPceOrder)
    throw std::invalid_argument("expansion order must be in [1, " +
                                std::to_string(kMaxPceOrder) + "]");

  PCEBasis b;
  b.dims_ = dims;
  b.order_ = order;

  // graded order: all multi-indices of total degree g, g = 0..order
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  const auto emit = [&](auto&& self, int d, int remaining) -> void {
    if (d == dims - 1) {
      idx[static_cast<std::size_t>(d)] = remaining;
      b.index_set_.push_back(idx);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      idx[static_cast<std::size_t>(d)] = v;
      self(self, d + 1, remaining - v);
    }
  };
  for (int g = 0; g <= order; ++g) emit(emit, 0, g);
  if (b.index_set_.size() > max_terms)
    throw std::length_error("basis size " + std::to_string(b.index_set_.size()) +
                            " exceeds cap " + std::to_string(max_terms));

  b.unit_pos_.assign(static_cast<std::size_t>(dims), 0);
  b.norm_sq_.reserve(b.index_set_.size());
  b.total_deg_.reserve(b.index_set_.size());
  for (std::size_t k = 0; k < b.index_set_.size(); ++k) {
    double ns = 1.0;
    int total = 0, unit_dim = -1;
    for (int d = 0; d < dims; ++d) {
      const int a = b.index_set_[k][static_cast<std::size_t>(d)];
      ns /= 2.0 * a + 1.0;
      total += a;
      if (a == 1) unit_dim = d;
    }
    b.norm_sq_.push_back(ns);
    b.total_deg_.push_back(total);
    if (total == 1) b.unit_pos_[static_cast<std::size_t>(unit_dim)] = k;
  }

  // one-dimensional triple table by quadrature exact for degree 3*order
  const int nq = 3 * order / 2 + 2;
  std::vector<double> xq, wq;
  gauss_legendre(nq, xq, wq);
  const int n1 = order + 1;
  b.triple_1d_.assign(static_cast<std::size_t>(n1) * n1 * n1, 0.0);
  for (int q = 0; q < nq; ++q) {
    const auto lv = legendre_values(order, xq[q]);
    const double w = 0.5 * wq[q];  // normalized measure on [-1, 1]
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n1; ++k)
          b.triple_1d_[(static_cast<std::size_t>(i) * n1 + j) * n1 + k] +=
              w * lv[i] * lv[j] * lv[k];
  }
  for (double& t : b.triple_1d_)  // parity/triangle zeros, up to roundoff
    if (std::abs(t) < 1e-14) t = 0.0;

  b.products_ = std::make_unique<Products>();
  return b;
}

void PCEBasis::build_products() const {
  const std::size_t P = index_set_.size();

  // Position lookup keyed by a hash of the nonzero digits (dim, degree), with the
  // bucket verified against the actual multi-index, so collisions cannot misfile.
  const auto digit_mix = [](std::uint64_t h, int d, int k) {
    h ^= (static_cast<std::uint64_t>(d) << 32) | static_cast<std::uint64_t>(k);
    h *= 0x9e3779b97f4a7c15ULL;
    h ^= h >> 29;
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> position;
  position.reserve(2 * P);
  for (std::size_t k = 0; k < P; ++k) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (int d = 0; d < dims_; ++d) {
      const int a = index_set_[k][static_cast<std::size_t>(d)];
      if (a != 0) h = digit_mix(h, d, a);
    }
    position[h].push_back(static_cast<std::uint32_t>(k));
  }

  // For each factor pair (a, b), the one-dimensional factors are nonzero exactly
  // when |a_d - b_d| <= k_d <= a_d + b_d with a_d + b_d + k_d even, so admissible
  // third indices are enumerated directly over the dims where a_d + b_d > 0
  // instead of scanning the whole basis.
  auto& terms = products_->terms;
  std::vector<int> active, klo, khi, lo_suffix;
  std::vector<std::pair<int, int>> digits;  // candidate's nonzero (dim, degree)
  for (std::size_t a = 0; a < P; ++a) {
    const auto& ia = index_set_[a];
    for (std::size_t bb = 0; bb < P; ++bb) {
      const auto& ib = index_set_[bb];
      active.clear();
      klo.clear();
      khi.clear();
      int min_total = 0;
      for (int d = 0; d < dims_; ++d) {
        const int i = ia[static_cast<std::size_t>(d)], j = ib[static_cast<std::size_t>(d)];
        if (i + j == 0) continue;
        active.push_back(d);
        klo.push_back(std::abs(i - j));
        khi.push_back(i + j);
        min_total += std::abs(i - j);
      }
      if (min_total > order_) continue;
      lo_suffix.assign(active.size() + 1, 0);
      for (std::size_t i = active.size(); i-- > 0;) lo_suffix[i] = lo_suffix[i + 1] + klo[i];

      digits.clear();
      const auto emit_candidates = [&](auto&& self, std::size_t i, int total) -> void {
        if (i == active.size()) {
          std::uint64_t h = 0x243f6a8885a308d3ULL;
          for (const auto& [d, k] : digits) h = digit_mix(h, d, k);
          const auto bucket = position.find(h);
          if (bucket == position.end()) return;
          for (const std::uint32_t c : bucket->second) {
            if (total_deg_[c] != total) continue;
            bool match = true;
            for (const auto& [d, k] : digits)
              match = match && index_set_[c][static_cast<std::size_t>(d)] == k;
            if (!match) continue;
            const double t = triple(a, bb, c);
            if (t != 0.0)
              terms.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(bb), c,
                               t / norm_sq_[c]});
            break;
          }
          return;
        }
        const int cap = order_ - total - lo_suffix[i + 1];
        for (int k = klo[i]; k <= khi[i] && k <= cap; k += 2) {
          if (k != 0) digits.emplace_back(active[i], k);
          self(self, i + 1, total + k);
          if (k != 0) digits.pop_back();
        }
      };
      emit_candidates(emit_candidates, 0, 0);
    }
  }
  // Terms grouped by output coefficient; ties keep the (a, b) enumeration order,
  // so the accumulation sequence in multiply() is deterministic.
  std::stable_sort(terms.begin(), terms.end(),
                   [](const ProductTerm& x, const ProductTerm& y) { return x.c < y.c; });
  terms.shrink_to_fit();
}

std::size_t PCEBasis::unit_index(int d) const {
  if (d < 0 || d >= dims_) throw std::out_of_range("dimension out of range");
  return unit_pos_[static_cast<std::size_t>(d)];
}

double PCEBasis::triple(std::size_t a, std::size_t b, std::size_t c) const {
  const auto& ia = index_set_.at(a);
  const auto& ib = index_set_.at(b);
  const auto& ic = index_set_.at(c);
  double t = 1.0;
  for (int d = 0; d < dims_; ++d) {
    t *= triple_1d(ia[static_cast<std::size_t>(d)], ib[static_cast<std::size_t>(d)],
                   ic[static_cast<std::size_t>(d)]);
    if (t == 0.0) return 0.0;
  }
  return t;
}

void PCEBasis::multiply(std::span<const double> u, std::span<const double> v,
                        std::span<double> out) const {
  const std::size_t P = index_set_.size();
  if (u.size() != P || v.size() != P || out.size() != P)
    throw std::invalid_argument("coefficient vector length does not match basis");
  ensure_products();
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& t : products_->terms) out[t.c] += t.value * u[t.a] * v[t.b];
}

double PCEBasis::evaluate(std::span<const double> coeffs, std::span<const double> xi) const {
  if (coeffs.size() != index_set_.size())
    throw std::invalid_argument("coefficient vector length does not match basis");
  if (xi.size() != static_cast<std::size_t>(dims_))
    throw std::invalid_argument("evaluation point dimension mismatch");
  std::vector<std::vector<double>> lv;
  lv.reserve(xi.size());
  for (double x : xi) lv.push_back(legendre_values(order_, x));
  double acc = 0.0;
  for (std::size_t k = 0; k < index_set_.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    double p = coeffs[k];
    for (int d = 0; d < dims_; ++d)
      p *= lv[static_cast<std::size_t>(d)]
             [static_cast<std::size_t>(index_set_[k][static_cast<std::size_t>(d)])];
    acc += p;
  }
  return acc;
}

std::vector<double> PCEBasis::constant_coeffs(double value) const {
  std::vector<double> c(index_set_.size(), 0.0);
  c[0] = value;
  return c;
}

std::vector<double> PCEBasis::affine_coeffs(double mid, double half, int d) const {
  std::vector<double> c(index_set_.size(), 0.0);
  c[0] = mid;
  c[unit_index(d)] = half;
  return c;
}

}  // namespace dsuq
