#include "onebit/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace onebit {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("DenseMatrix: entry count does not match rows*cols");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix& DenseMatrix::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void multiply(const DenseMatrix& m, std::span<const double> x, std::span<double> out) {
  assert(x.size() == m.cols() && out.size() == m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), x);
}

Vector multiply(const DenseMatrix& m, std::span<const double> x) {
  Vector out(m.rows());
  multiply(m, x, out);
  return out;
}

void multiply_transpose(const DenseMatrix& m, std::span<const double> u, std::span<double> out) {
  assert(u.size() == m.rows() && out.size() == m.cols());
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t n = m.cols();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double ui = u[i];
    if (ui == 0.0) continue;
    const double* r = m.row(i).data();
    double* o = out.data();
    for (std::size_t j = 0; j < n; ++j) o[j] += ui * r[j];
  }
}

Vector multiply_transpose(const DenseMatrix& m, std::span<const double> u) {
  Vector out(m.cols());
  multiply_transpose(m, u, out);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  // Four partial sums: lets the compiler keep independent accumulators
  // without reassociation flags, and stays deterministic.
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const std::size_t n = a.size();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += a[j] * b[j];
    s1 += a[j + 1] * b[j + 1];
    s2 += a[j + 2] * b[j + 2];
    s3 += a[j + 3] * b[j + 3];
  }
  for (; j < n; ++j) s0 += a[j] * b[j];
  return (s0 + s1) + (s2 + s3);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double norm_inf(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

double distance2(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = a;
  std::uint64_t h = splitmix64(state);
  state = h ^ (b + 0x632BE59BD9B4E019ULL);
  return splitmix64(state);
}

RngStream RngStream::child(std::uint64_t index) const {
  return {mix_seed(master_seed, stream_index), index};
}

Rng::Rng(RngStream stream) {
  std::uint64_t state = mix_seed(stream.master_seed, stream.stream_index);
  for (auto& w : s_) w = splitmix64(state);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::size_t Rng::below(std::size_t bound) {
  assert(bound > 0);
  // Lemire's multiply-shift with rejection.
  const std::uint64_t b = bound;
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * b;
  auto low = static_cast<std::uint64_t>(m);
  if (low < b) {
    const std::uint64_t threshold = (0 - b) % b;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * b;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

DenseMatrix gaussian(RngStream stream, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("gaussian: empty shape");
  Rng rng(stream);
  DenseMatrix m(rows, cols);
  for (double& v : m.entries()) v = rng.normal();
  return m;
}

Vector gaussian_vector(RngStream stream, std::size_t n) {
  Rng rng(stream);
  Vector v(n);
  for (double& e : v) e = rng.normal();
  return v;
}

double spectral_norm(const DenseMatrix& m, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");
  if (m.empty() || norm_inf(m.entries()) == 0.0)
    throw std::invalid_argument("spectral_norm: matrix is zero");

  Vector v = gaussian_vector({0x5EC7'2A1Full, 0}, m.cols());
  double nv = norm2(v);
  for (double& e : v) e /= nv;

  Vector mv(m.rows());
  Vector w(m.cols());
  double sigma = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    multiply(m, v, mv);
    const double estimate = norm2(mv);  // ‖Mv‖ with ‖v‖ = 1: Rayleigh quotient of MᵀM, square-rooted
    if (!std::isfinite(estimate)) throw NumericalFailure("spectral_norm: non-finite iterate");
    multiply_transpose(m, mv, w);
    nv = norm2(w);
    if (nv == 0.0) {
      // v landed in the null space; restart from a different direction.
      v = gaussian_vector({0x5EC7'2A1Full, it + 1}, m.cols());
      nv = norm2(v);
      for (double& e : v) e /= nv;
      continue;
    }
    for (std::size_t j = 0; j < w.size(); ++j) v[j] = w[j] / nv;
    if (it > 0 && std::abs(estimate - sigma) <= tol * estimate) {
      // One more application sharpens the quotient; the last w/‖w‖ is the
      // improved direction.
      multiply(m, v, mv);
      return std::max(estimate, norm2(mv));
    }
    sigma = estimate;
  }
  throw NonConvergence("spectral_norm: power iteration did not converge", sigma);
}

}  // namespace onebit
