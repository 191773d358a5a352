#include "dsuq/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dsuq/moment_dynamics.hpp"  // binomial

namespace dsuq {
namespace {

void check_degrees(const std::vector<int>& degrees) {
  if (degrees.empty()) throw std::invalid_argument("polynomial needs at least one dimension");
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("per-dimension degree must be >= 0");
    if (d > kMaxBernsteinDegree)
      throw std::length_error("per-dimension degree " + std::to_string(d) + " exceeds cap " +
                              std::to_string(kMaxBernsteinDegree));
  }
}

// Monomial coefficients of L_k: 2^-k sum_j (-1)^j C(k,j) C(2k-2j,k) x^{k-2j}.
// All binomials involved are exact in double for k <= kMaxPceOrder.
const std::vector<double>& legendre_monomial(int k) {
  static std::vector<std::vector<double>> cache;
  if (static_cast<int>(cache.size()) <= k) {
    for (int m = static_cast<int>(cache.size()); m <= k; ++m) {
      std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
      const double scale = std::ldexp(1.0, -m);
      for (int j = 0; 2 * j <= m; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        c[static_cast<std::size_t>(m - 2 * j)] =
            scale * sign * binomial(m, j) * binomial(2 * m - 2 * j, m);
      }
      cache.push_back(std::move(c));
    }
  }
  return cache[static_cast<std::size_t>(k)];
}

}  // namespace

TensorPoly::TensorPoly(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  check_degrees(degrees_);
  strides_.assign(degrees_.size(), 1);
  std::size_t total = 1;
  for (int d = static_cast<int>(degrees_.size()) - 1; d >= 0; --d) {
    strides_[static_cast<std::size_t>(d)] = total;
    total *= static_cast<std::size_t>(degrees_[static_cast<std::size_t>(d)]) + 1;
  }
  c_.assign(total, 0.0);
}

std::size_t TensorPoly::flat_index(std::span<const int> powers) const {
  if (powers.size() != degrees_.size())
    throw std::invalid_argument("power tuple dimension mismatch");
  std::size_t f = 0;
  for (std::size_t d = 0; d < powers.size(); ++d) {
    if (powers[d] < 0 || powers[d] > degrees_[d])
      throw std::out_of_range("monomial power outside the coefficient grid");
    f += static_cast<std::size_t>(powers[d]) * strides_[d];
  }
  return f;
}

double TensorPoly::evaluate(std::span<const double> x) const {
  if (x.size() != degrees_.size())
    throw std::invalid_argument("evaluation point dimension mismatch");
  const auto eval = [&](auto&& self, int d, std::size_t base) -> double {
    const int n = degrees_[static_cast<std::size_t>(d)];
    const std::size_t s = strides_[static_cast<std::size_t>(d)];
    const bool last = d == dims() - 1;
    double acc = last ? c_[base + static_cast<std::size_t>(n) * s]
                      : self(self, d + 1, base + static_cast<std::size_t>(n) * s);
    for (int j = n - 1; j >= 0; --j) {
      const double term =
          last ? c_[base + static_cast<std::size_t>(j) * s]
               : self(self, d + 1, base + static_cast<std::size_t>(j) * s);
      acc = acc * x[static_cast<std::size_t>(d)] + term;
    }
    return acc;
  };
  return eval(eval, 0, 0);
}

TensorPoly TensorPoly::multiply(const TensorPoly& a, const TensorPoly& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("operand dimension mismatch");
  std::vector<int> deg(a.degrees_);
  for (std::size_t d = 0; d < deg.size(); ++d) deg[d] += b.degrees_[d];
  TensorPoly out(deg);

  std::vector<int> pa(a.degrees_.size(), 0), pb(b.degrees_.size(), 0);
  const auto advance = [](std::vector<int>& p, const std::vector<int>& lim) {
    for (std::size_t d = p.size(); d-- > 0;) {
      if (++p[d] <= lim[d]) return true;
      p[d] = 0;
    }
    return false;
  };
  std::size_t ia = 0;
  do {
    const double ca = a.c_[ia++];
    if (ca == 0.0) {
      continue;
    }
    std::fill(pb.begin(), pb.end(), 0);
    std::size_t ib = 0;
    do {
      const double cb = b.c_[ib++];
      if (cb == 0.0) continue;
      std::size_t f = 0;
      for (std::size_t d = 0; d < pa.size(); ++d)
        f += static_cast<std::size_t>(pa[d] + pb[d]) * out.strides_[d];
      out.c_[f] += ca * cb;
    } while (advance(pb, b.degrees_));
  } while (advance(pa, a.degrees_));
  return out;
}

TensorPoly TensorPoly::subtract(const TensorPoly& a, const TensorPoly& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("operand dimension mismatch");
  std::vector<int> deg(a.degrees_);
  for (std::size_t d = 0; d < deg.size(); ++d) deg[d] = std::max(deg[d], b.degrees_[d]);
  TensorPoly out = a.embedded(deg);
  const TensorPoly be = b.embedded(deg);
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= be.c_[i];
  return out;
}

TensorPoly TensorPoly::embedded(const std::vector<int>& degrees) const {
  if (degrees.size() != degrees_.size())
    throw std::invalid_argument("embedding dimension mismatch");
  for (std::size_t d = 0; d < degrees.size(); ++d)
    if (degrees[d] < degrees_[d])
      throw std::invalid_argument("embedding cannot lower a degree");
  TensorPoly out(degrees);
  std::vector<int> p(degrees_.size(), 0);
  std::size_t i = 0;
  bool more = true;
  while (more) {
    std::size_t f = 0;
    for (std::size_t d = 0; d < p.size(); ++d)
      f += static_cast<std::size_t>(p[d]) * out.strides_[d];
    out.c_[f] = c_[i++];
    more = false;
    for (std::size_t d = p.size(); d-- > 0;) {
      if (++p[d] <= degrees_[d]) {
        more = true;
        break;
      }
      p[d] = 0;
    }
  }
  return out;
}

void TensorPoly::substitute_affine(int dim, double scale, double shift) {
  const int N = degrees_.at(static_cast<std::size_t>(dim));
  const std::size_t s = strides_[static_cast<std::size_t>(dim)];
  // out_m = sum_{n>=m} C(n,m) scale^m shift^{n-m} in_n, per line along dim
  std::vector<double> M(static_cast<std::size_t>(N + 1) * (N + 1), 0.0);
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= n; ++m)
      M[static_cast<std::size_t>(m) * (N + 1) + n] =
          binomial(n, m) * std::pow(scale, m) * std::pow(shift, n - m);

  std::vector<double> line(static_cast<std::size_t>(N) + 1);
  const std::size_t ext = static_cast<std::size_t>(N) + 1;
  for (std::size_t base = 0; base < c_.size(); ++base) {
    if ((base / s) % ext != 0) continue;  // visit each line once, at power 0
    for (int j = 0; j <= N; ++j) line[static_cast<std::size_t>(j)] = c_[base + j * s];
    for (int m = 0; m <= N; ++m) {
      double acc = 0.0;
      for (int n = m; n <= N; ++n)
        acc += M[static_cast<std::size_t>(m) * (N + 1) + n] * line[static_cast<std::size_t>(n)];
      c_[base + static_cast<std::size_t>(m) * s] = acc;
    }
  }
}

TensorPoly legendre_to_monomial(std::span<const double> coeffs, const PCEBasis& basis) {
  if (coeffs.size() != basis.size())
    throw std::invalid_argument("coefficient vector length does not match basis");
  TensorPoly out(std::vector<int>(static_cast<std::size_t>(basis.dims()), basis.order()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    const auto& mi = basis.index(k);
    const auto add = [&](auto&& self, int d, std::size_t base, double factor) -> void {
      const auto& mono = legendre_monomial(mi[static_cast<std::size_t>(d)]);
      for (std::size_t pw = 0; pw < mono.size(); ++pw) {
        if (mono[pw] == 0.0) continue;
        const std::size_t f = base + pw * out.stride(d);
        if (d == basis.dims() - 1)
          out[f] += factor * mono[pw];
        else
          self(self, d + 1, f, factor * mono[pw]);
      }
    };
    add(add, 0, 0, coeffs[k]);
  }
  return out;
}

std::vector<double> bernstein_coefficients(const TensorPoly& unit_poly) {
  TensorPoly work = unit_poly;
  for (int dim = 0; dim < work.dims(); ++dim) {
    const int N = work.degrees()[static_cast<std::size_t>(dim)];
    const std::size_t s = work.stride(dim);
    std::vector<double> G(static_cast<std::size_t>(N + 1) * (N + 1), 0.0);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= i; ++j)
        G[static_cast<std::size_t>(i) * (N + 1) + j] = binomial(i, j) / binomial(N, j);

    std::vector<double> line(static_cast<std::size_t>(N) + 1);
    const std::size_t ext = static_cast<std::size_t>(N) + 1;
    for (std::size_t base = 0; base < work.size(); ++base) {
      if ((base / s) % ext != 0) continue;
      for (int j = 0; j <= N; ++j) line[static_cast<std::size_t>(j)] = work[base + j * s];
      for (int i = N; i >= 0; --i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j)
          acc += G[static_cast<std::size_t>(i) * (N + 1) + j] * line[static_cast<std::size_t>(j)];
        work[base + static_cast<std::size_t>(i) * s] = acc;
      }
    }
  }
  return work.coeffs();
}

Interval bernstein_range(const TensorPoly& unit_poly) {
  const auto b = bernstein_coefficients(unit_poly);
  const auto [lo, hi] = std::minmax_element(b.begin(), b.end());
  return Interval(*lo, *hi);
}

Interval enclose_range(const TensorPoly& sym_cube_poly, int subdivision) {
  if (subdivision < 1) throw std::invalid_argument("subdivision count must be >= 1");
  TensorPoly unit = sym_cube_poly;
  for (int d = 0; d < unit.dims(); ++d) unit.substitute_affine(d, 2.0, -1.0);  // x = 2u - 1
  if (subdivision == 1) return bernstein_range(unit);

  const int r = unit.dims();
  double lo = 0.0, hi = 0.0;
  bool first = true;
  std::vector<int> cell(static_cast<std::size_t>(r), 0);
  while (true) {
    TensorPoly piece = unit;
    for (int d = 0; d < r; ++d)
      piece.substitute_affine(d, 1.0 / subdivision,
                              static_cast<double>(cell[static_cast<std::size_t>(d)]) / subdivision);
    const Interval rng = bernstein_range(piece);
    lo = first ? rng.lo() : std::min(lo, rng.lo());
    hi = first ? rng.hi() : std::max(hi, rng.hi());
    first = false;
    std::size_t d = cell.size();
    bool done = true;
    while (d-- > 0) {
      if (++cell[d] < subdivision) {
        done = false;
        break;
      }
      cell[d] = 0;
    }
    if (done) break;
  }
  return Interval(lo, hi);
}

Interval enclose_range(std::span<const double> pce_coeffs, const PCEBasis& basis,
                       int subdivision) {
  return enclose_range(legendre_to_monomial(pce_coeffs, basis), subdivision);
}

}  // namespace dsuq
