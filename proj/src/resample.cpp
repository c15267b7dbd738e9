#include "zk/resample.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace zk {

namespace {

using cd = std::complex<double>;

std::mutex plan_mutex;

struct Plans1D {
  fftw_plan fwd = nullptr, bwd = nullptr;
};

// in-place 1D c2c plans keyed by length, FFTW_ESTIMATE for
// run-to-run determinism
Plans1D& plans_for(int M) {
  static std::unordered_map<int, Plans1D> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  Plans1D p;
  std::vector<cd> buf(M);
  auto* b = reinterpret_cast<fftw_complex*>(buf.data());
  p.fwd = fftw_plan_dft_1d(M, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_1d(M, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(M, p).first->second;
}

void run_plan(fftw_plan p, std::vector<cd>& buf) {
  auto* b = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(p, b, b);
}

int next_pow2(int n) {
  int m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Evaluates F_j = sum_{mu=-N/2}^{N/2-1} a[mu+N/2] e^{2 pi i alpha mu j / N}
// for j = 0..N-1 by Bluestein's identity mu*j = (mu^2+j^2-(j-mu)^2)/2.
struct FracFFT {
  int N, M;
  std::vector<cd> kernel_hat, chirp;  // chirp[m] = e^{i pi alpha m^2 / N}

  FracFFT(int N_, double alpha) : N(N_), M(next_pow2(2 * N_)) {
    chirp.resize(2 * N);
    for (int m = 0; m < 2 * N; ++m) {
      // reduce alpha*m^2 mod 2N before multiplying by pi/N to keep
      // the phase argument small
      double r = std::fmod(alpha * double(m) * double(m), 2.0 * N);
      chirp[m] = std::polar(1.0, M_PI * r / N);
    }
    // kernel w_d = e^{-i pi alpha d^2/N} at every offset d = j - mu that
    // occurs for j in [0,N) and mu in [-N/2, N/2), stored cyclically
    std::vector<cd> w(M, cd(0, 0));
    for (int d = -(N / 2) + 1; d < 3 * N / 2; ++d)
      w[(d + M) % M] = std::conj(chirp[std::abs(d)]);
    run_plan(plans_for(M).fwd, w);
    kernel_hat = std::move(w);
  }

  void execute(const std::vector<cd>& a, std::vector<cd>& out) const {
    std::vector<cd> buf(M, cd(0, 0));
    for (int m = 0; m < N; ++m) {
      int mu = m - N / 2;
      buf[m] = a[m] * (mu >= 0 ? chirp[mu] : chirp[-mu]);
    }
    run_plan(plans_for(M).fwd, buf);
    for (int m = 0; m < M; ++m) buf[m] *= kernel_hat[m];
    run_plan(plans_for(M).bwd, buf);
    out.resize(N);
    // storage index m corresponds to mu = m - N/2, so F_j sits at
    // cyclic position j + N/2 of the convolution
    for (int j = 0; j < N; ++j)
      out[j] = chirp[j] * buf[j + N / 2] / double(M);
  }
};

}  // namespace

Field2D resample_scaled(const Field2D& u, double lambda, double x1) {
  const Grid& g = u.grid;
  const int N1 = g.N1, N2 = g.N2;
  Spectrum s = fft(u);

  // full complex spectrum, normalized; signed mode index m' = m - N/2
  // maps array index m to frequency pi*m'/L
  auto full = [&](int m1, int m2) -> cd {
    if (m2 <= N2 / 2) return s.at(m1, m2);
    return std::conj(s.at((N1 - m1) % N1, N2 - m2));
  };

  FracFFT f2(N2, lambda), f1(N1, lambda);

  // pass 1: fractional inverse along axis 2 for every spectral row m1
  std::vector<std::vector<cd>> mid(N1, std::vector<cd>(N2));
  std::vector<cd> a(N2), out;
  const double norm = 1.0 / (double(N1) * N2);
  for (int m1 = 0; m1 < N1; ++m1) {
    for (int idx = 0; idx < N2; ++idx) {
      int mu = idx - N2 / 2;               // signed mode
      int m2 = (mu + N2) % N2;             // storage index
      // the stored coefficient is the continuum one times (-1)^mu (the
      // grid starts at -L), so the boundary phase reduces to mu(lambda-1)
      double ph = M_PI * std::fmod(double(mu) * (lambda - 1.0), 2.0);
      a[idx] = full(m1, m2) * norm * std::polar(1.0, -ph);
    }
    f2.execute(a, out);
    for (int j = 0; j < N2; ++j) mid[m1][j] = out[j];
  }

  // pass 2: fractional inverse along axis 1, with the x1 shift phase
  Field2D v(g);
  std::vector<cd> b(N1);
  for (int j2 = 0; j2 < N2; ++j2) {
    for (int idx = 0; idx < N1; ++idx) {
      int mu = idx - N1 / 2;
      int m1 = (mu + N1) % N1;
      double k = M_PI * mu / g.L1;
      double ph = M_PI * std::fmod(double(mu) * (lambda - 1.0), 2.0) - k * x1;
      b[idx] = mid[m1][j2] * std::polar(1.0, -ph);
    }
    f1.execute(b, out);
    for (int j1 = 0; j1 < N1; ++j1) v.at(j1, j2) = lambda * out[j1].real();
  }
  return v;
}

}  // namespace zk
