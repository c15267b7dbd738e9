#include "zk/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace zk {

Grid::Grid(double L1_, double L2_, int N1_, int N2_)
    : L1(L1_), L2(L2_), N1(N1_), N2(N2_) {
  if (N1 < 8 || N2 < 8 || N1 % 2 || N2 % 2)
    throw std::invalid_argument("Grid: N1,N2 must be even and >= 8");
  if (L1 <= 0 || L2 <= 0) throw std::invalid_argument("Grid: L1,L2 > 0");
  dx1 = 2 * L1 / N1;
  dx2 = 2 * L2 / N2;
  k1.resize(N1);
  k2.resize(N2);
  for (int m = 0; m < N1; ++m) {
    int s = (m <= N1 / 2) ? m : m - N1;
    k1[m] = M_PI * s / L1;
  }
  for (int m = 0; m < N2; ++m) {
    int s = (m <= N2 / 2) ? m : m - N2;
    k2[m] = M_PI * s / L2;
  }
}

bool Field2D::finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

namespace {

struct Plans {
  fftw_plan fwd = nullptr, bwd = nullptr;
};

// fftw planning is not thread-safe; new-array execution is.
std::mutex plan_mutex;

Plans& plans_for(int N1, int N2) {
  static std::map<std::pair<int, int>, Plans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find({N1, N2});
  if (it != cache.end()) return it->second;
  Plans p;
  std::vector<double> re(std::size_t(N1) * N2);
  std::vector<std::complex<double>> co(std::size_t(N1) * (N2 / 2 + 1));
  // FFTW_ESTIMATE keeps the algorithm choice deterministic across runs.
  p.fwd = fftw_plan_dft_r2c_2d(N1, N2, re.data(),
                               reinterpret_cast<fftw_complex*>(co.data()),
                               FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_c2r_2d(N1, N2,
                               reinterpret_cast<fftw_complex*>(co.data()),
                               re.data(), FFTW_ESTIMATE);
  return cache.emplace(std::make_pair(N1, N2), p).first->second;
}

}  // namespace

Spectrum fft(const Field2D& f) {
  Spectrum s(f.grid);
  std::vector<double> tmp(f.v);  // r2c input is not preserved in general
  Plans& p = plans_for(f.grid.N1, f.grid.N2);
  fftw_execute_dft_r2c(p.fwd, tmp.data(),
                       reinterpret_cast<fftw_complex*>(s.c.data()));
  return s;
}

Field2D ifft(const Spectrum& s) {
  Field2D f(s.grid);
  std::vector<std::complex<double>> tmp(s.c);  // c2r destroys input
  Plans& p = plans_for(s.grid.N1, s.grid.N2);
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                       f.v.data());
  double scale = 1.0 / (double(s.grid.N1) * s.grid.N2);
  for (double& x : f.v) x *= scale;
  return f;
}

Field2D derivative(const Field2D& f, int axis, int order) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  Spectrum s = fft(f);
  const Grid& g = s.grid;
  const int cols = s.cols();
  const bool odd = order % 2;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    for (int i2 = 0; i2 < cols; ++i2) {
      double k = (axis == 1) ? g.k1[i1] : g.k2[i2];
      // the Nyquist mode has no well-defined sign for odd derivatives
      if (odd && ((axis == 1 && i1 == g.N1 / 2) || (axis == 2 && i2 == g.N2 / 2)))
        k = 0;
      std::complex<double> m = std::pow(std::complex<double>(0, k), order);
      s.at(i1, i2) *= m;
    }
  }
  return ifft(s);
}

Field2D laplacian(const Field2D& f) {
  Spectrum s = fft(f);
  const Grid& g = s.grid;
  const int cols = s.cols();
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < cols; ++i2)
      s.at(i1, i2) *= -(g.k1[i1] * g.k1[i1] + g.k2[i2] * g.k2[i2]);
  return ifft(s);
}

double integrate(const Field2D& f) {
  double sum = 0;
  for (double x : f.v) sum += x;
  return sum * f.grid.dx1 * f.grid.dx2;
}

double inner(const Field2D& a, const Field2D& b) {
  if (!a.grid.same(b.grid)) throw GridMismatch("inner: grid mismatch");
  double sum = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) sum += a.v[i] * b.v[i];
  return sum * a.grid.dx1 * a.grid.dx2;
}

double l2norm2(const Field2D& f) { return inner(f, f); }

double h1norm2(const Field2D& f) {
  Spectrum s = fft(f);
  const Grid& g = s.grid;
  const int cols = s.cols();
  double sum = 0;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    for (int i2 = 0; i2 < cols; ++i2) {
      double w = (i2 == 0 || i2 == g.N2 / 2) ? 1.0 : 2.0;
      double k2 = g.k1[i1] * g.k1[i1] + g.k2[i2] * g.k2[i2];
      sum += w * (1 + k2) * std::norm(s.at(i1, i2));
    }
  }
  return sum * g.dx1 * g.dx2 / (double(g.N1) * g.N2);
}

double supnorm(const Field2D& f) {
  double m = 0;
  for (double x : f.v) m = std::max(m, std::fabs(x));
  return m;
}

double spectral_energy(const Spectrum& s) {
  const Grid& g = s.grid;
  const int cols = s.cols();
  double sum = 0;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    for (int i2 = 0; i2 < cols; ++i2) {
      double w = (i2 == 0 || i2 == g.N2 / 2) ? 1.0 : 2.0;
      sum += w * std::norm(s.at(i1, i2));
    }
  }
  return sum * g.dx1 * g.dx2 / (double(g.N1) * g.N2);
}

void dealias(Spectrum& s) {
  const Grid& g = s.grid;
  const int cols = s.cols();
  const double kc1 = (2.0 / 3.0) * M_PI * (g.N1 / 2) / g.L1;
  const double kc2 = (2.0 / 3.0) * M_PI * (g.N2 / 2) / g.L2;
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < cols; ++i2)
      if (std::fabs(g.k1[i1]) > kc1 || std::fabs(g.k2[i2]) > kc2)
        s.at(i1, i2) = 0;
}

Field2D operator+(const Field2D& a, const Field2D& b) {
  if (!a.grid.same(b.grid)) throw GridMismatch("+: grid mismatch");
  Field2D r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
  return r;
}

Field2D operator-(const Field2D& a, const Field2D& b) {
  if (!a.grid.same(b.grid)) throw GridMismatch("-: grid mismatch");
  Field2D r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= b.v[i];
  return r;
}

Field2D operator*(double c, const Field2D& a) {
  Field2D r = a;
  for (double& x : r.v) x *= c;
  return r;
}

Field2D multiply(const Field2D& a, const Field2D& b) {
  if (!a.grid.same(b.grid)) throw GridMismatch("multiply: grid mismatch");
  Field2D r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] *= b.v[i];
  return r;
}

Field2D translate(const Field2D& f, double s1, double s2) {
  Spectrum s = fft(f);
  const Grid& g = s.grid;
  const int cols = s.cols();
  for (int i1 = 0; i1 < g.N1; ++i1) {
    for (int i2 = 0; i2 < cols; ++i2) {
      double ph = -(g.k1[i1] * s1 + g.k2[i2] * s2);
      s.at(i1, i2) *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  return ifft(s);
}

}  // namespace zk
