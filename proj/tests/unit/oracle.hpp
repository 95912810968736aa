#pragma once

// Brute-force references that share no code with the library: direct O(N^2)
// Fourier sums on one-dimensional grids and the cutoff profiles written out
// from their definitions.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

struct Line {
  int n;
  int m;
  double half() const { return 12.0 * std::numbers::pi * m; }
  double x(int i) const { return -half() + i * (2.0 * half() / n); }
  double xi(int k) const { return k / (12.0 * m); }
};

// c_k = (1/N) sum_i f(x_i) exp(-i x_i xi_k), k = -N/2 .. N/2-1 (index k + N/2).
inline std::vector<cplx> dft(const Line& g, const std::vector<double>& f) {
  std::vector<cplx> c(g.n);
  for (int k = -g.n / 2; k < g.n / 2; ++k) {
    cplx acc = 0.0;
    for (int i = 0; i < g.n; ++i) acc += f[i] * std::polar(1.0, -g.x(i) * g.xi(k));
    c[k + g.n / 2] = acc / static_cast<double>(g.n);
  }
  return c;
}

inline std::vector<double> idft(const Line& g, const std::vector<cplx>& c) {
  std::vector<double> f(g.n, 0.0);
  for (int k = -g.n / 2; k < g.n / 2; ++k) {
    const cplx ck = c[k + g.n / 2];
    if (ck == cplx(0.0)) continue;
    for (int i = 0; i < g.n; ++i) f[i] += (ck * std::polar(1.0, g.x(i) * g.xi(k))).real();
  }
  return f;
}

inline std::vector<cplx> multiply(const Line& g, std::vector<cplx> c, const std::function<cplx(double)>& sym) {
  for (int k = -g.n / 2; k < g.n / 2; ++k) c[k + g.n / 2] *= sym(g.xi(k));
  return c;
}

inline double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return psi(t) / (psi(t) + psi(1.0 - t));
}
inline double chi(double r) { return step((4.0 / 3.0 - r) / (4.0 / 3.0 - 0.75)); }
inline double phi(double r) { return chi(r / 2.0) - chi(r); }
inline double block_weight(int j, double r) {
  return j < 0 ? chi(r) : phi(r / std::exp2(j));
}

}  // namespace oracle
