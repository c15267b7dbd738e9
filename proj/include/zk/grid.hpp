#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zk {

struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Periodic rectangular grid on [-L1,L1) x [-L2,L2), N1 x N2 samples.
// Wavenumbers are in radians per unit length: k1[m] = pi*m'/L1 with
// m' the signed mode index.
struct Grid {
  double L1 = 0, L2 = 0;
  int N1 = 0, N2 = 0;
  double dx1 = 0, dx2 = 0;
  std::vector<double> k1, k2;

  Grid() = default;
  Grid(double L1_, double L2_, int N1_, int N2_);

  double x1(int i) const { return -L1 + i * dx1; }
  double x2(int j) const { return -L2 + j * dx2; }
  std::size_t size() const { return std::size_t(N1) * N2; }

  // lengths compared with tolerance: the binary header stores them as f32
  bool same(const Grid& o) const {
    return N1 == o.N1 && N2 == o.N2 && std::fabs(L1 - o.L1) <= 1e-6 * L1 &&
           std::fabs(L2 - o.L2) <= 1e-6 * L2;
  }
};

struct Field2D {
  Grid grid;
  std::vector<double> v;  // row-major, index i1*N2 + i2

  Field2D() = default;
  explicit Field2D(const Grid& g) : grid(g), v(g.size(), 0.0) {}

  double& at(int i1, int i2) { return v[std::size_t(i1) * grid.N2 + i2]; }
  double at(int i1, int i2) const { return v[std::size_t(i1) * grid.N2 + i2]; }
  bool finite() const;
};

// Half-spectrum from the real-to-complex transform: N1 x (N2/2+1),
// unnormalized (inverse divides by N1*N2).
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> c;

  Spectrum() = default;
  explicit Spectrum(const Grid& g)
      : grid(g), c(std::size_t(g.N1) * (g.N2 / 2 + 1)) {}

  int cols() const { return grid.N2 / 2 + 1; }
  std::complex<double>& at(int i1, int i2) {
    return c[std::size_t(i1) * cols() + i2];
  }
  std::complex<double> at(int i1, int i2) const {
    return c[std::size_t(i1) * cols() + i2];
  }
};

Spectrum fft(const Field2D& f);
Field2D ifft(const Spectrum& s);

Field2D derivative(const Field2D& f, int axis, int order);
Field2D laplacian(const Field2D& f);
double integrate(const Field2D& f);
double inner(const Field2D& a, const Field2D& b);   // integrate(a*b)
double l2norm2(const Field2D& f);                   // ||f||_2^2
double h1norm2(const Field2D& f);                   // ||f||_2^2 + ||grad f||_2^2
double supnorm(const Field2D& f);
double spectral_energy(const Spectrum& s);          // Parseval partner of l2norm2

void dealias(Spectrum& s);  // 2/3-rule on each axis

Field2D operator+(const Field2D& a, const Field2D& b);
Field2D operator-(const Field2D& a, const Field2D& b);
Field2D operator*(double c, const Field2D& a);
Field2D multiply(const Field2D& a, const Field2D& b);  // pointwise

// Translation by (s1,s2) via the exact Fourier phase shift.
Field2D translate(const Field2D& f, double s1, double s2);

}  // namespace zk
