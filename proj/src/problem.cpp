#include "onebit/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace onebit {

bool ConstraintSetC::contains(std::span<const double> z, double tol) {
  return !z.empty() && residual(z) <= tol;
}

double ConstraintSetC::residual(std::span<const double> z) {
  if (z.empty()) return std::numeric_limits<double>::infinity();
  double r = std::abs(z.back() - 1.0);
  for (std::size_t i = 0; i + 1 < z.size(); ++i) r = std::max(r, -z[i]);
  return r;
}

NormalizeMode default_normalize_mode(std::size_t m, std::size_t n) {
  return std::min(m, n) <= 2000 ? NormalizeMode::exact : NormalizeMode::bound;
}

Instance generate_instance(std::size_t n, std::size_t m, std::size_t s, std::uint64_t seed) {
  return generate_instance(n, m, s, seed, default_normalize_mode(m, n));
}

Instance generate_instance(std::size_t n, std::size_t m, std::size_t s, std::uint64_t seed,
                          NormalizeMode mode) {
  if (n == 0 || m == 0) throw std::invalid_argument("generate_instance: n and m must be positive");
  if (s < 1 || s > n) throw std::invalid_argument("generate_instance: need 1 <= s <= n");

  Instance inst;
  inst.seed = seed;
  inst.sparsity = s;
  inst.normalize = mode;
  inst.phi = gaussian({seed, 0}, m, n);

  // Partial Fisher-Yates picks a uniformly random support.
  Rng rng({seed, 1});
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < s; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
  inst.x_true.assign(n, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    double v = rng.normal();
    while (v == 0.0) v = rng.normal();
    inst.x_true[perm[i]] = v;
  }

  inst.y = one_bit_measure(inst.phi, inst.x_true);
  rebuild_b(inst);
  return inst;
}

void rebuild_b(Instance& inst) {
  auto [b_hat, scale] = normalize_b(build_b(inst.phi, inst.y), inst.normalize);
  inst.b = std::move(b_hat);
  inst.b_scale = scale;
}

Vector one_bit_measure(const DenseMatrix& phi, std::span<const double> x) {
  if (x.size() != phi.cols()) throw std::invalid_argument("one_bit_measure: dimension mismatch");
  Vector y = multiply(phi, x);
  for (double& v : y) v = v >= 0.0 ? 1.0 : -1.0;
  return y;
}

DenseMatrix build_b(const DenseMatrix& phi, std::span<const double> y) {
  if (y.size() != phi.rows()) throw std::invalid_argument("build_b: dimension mismatch");
  const std::size_t m = phi.rows(), n = phi.cols();
  DenseMatrix b(m + 1, n);
  auto last = b.row(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (y[i] != 1.0 && y[i] != -1.0) throw std::invalid_argument("build_b: y must be ±1");
    auto src = phi.row(i);
    auto dst = b.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      dst[j] = y[i] * src[j];
      last[j] += dst[j];
    }
  }
  return b;
}

double norm_bound(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw std::invalid_argument("norm_bound: m and n must be positive");
  return std::sqrt(static_cast<double>(m + 1)) *
         (std::sqrt(static_cast<double>(n)) + std::sqrt(static_cast<double>(m)));
}

NormalizedB normalize_b(const DenseMatrix& b, NormalizeMode mode) {
  const double scale =
      mode == NormalizeMode::exact ? spectral_norm(b) : norm_bound(b.rows() - 1, b.cols());
  DenseMatrix b_hat = b;
  b_hat *= 1.0 / scale;
  return {std::move(b_hat), scale};
}

std::size_t violations(const DenseMatrix& phi, std::span<const double> y, std::span<const double> x) {
  if (y.size() != phi.rows() || x.size() != phi.cols())
    throw std::invalid_argument("violations: dimension mismatch");
  std::size_t count = 0;
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    const double sign = dot(phi.row(i), x) >= 0.0 ? 1.0 : -1.0;
    if (sign != y[i]) ++count;
  }
  return count;
}

double snr_db(std::span<const double> x_ref, std::span<const double> x_est) {
  if (x_ref.size() != x_est.size()) throw std::invalid_argument("snr_db: dimension mismatch");
  const double na = norm2(x_ref), nb = norm2(x_est);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("snr_db: zero vector");
  double d2 = 0.0;
  for (std::size_t i = 0; i < x_ref.size(); ++i) {
    const double d = x_ref[i] / na - x_est[i] / nb;
    d2 += d * d;
  }
  if (d2 == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(d2);
}

Support support(std::span<const double> x, double delta_rel) {
  if (delta_rel < 0.0) throw std::invalid_argument("support: delta_rel must be nonnegative");
  Support s;
  const double cut = delta_rel * norm_inf(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > cut) s.indices.push_back(i);
  s.count = s.indices.size();
  return s;
}

namespace {

constexpr const char* kMagic = "onebit-instance";
constexpr int kVersion = 1;

void write_double(std::ostream& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, end - buf);
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::runtime_error("read_instance: bad number '" + tok + "'");
  return v;
}

void write_values(std::ostream& out, std::span<const double> v, std::size_t per_line) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    write_double(out, v[i]);
    out << ((i + 1) % per_line == 0 || i + 1 == v.size() ? '\n' : ' ');
  }
}

std::vector<double> read_values(std::istream& in, std::size_t count) {
  std::vector<double> v(count);
  std::string tok;
  for (auto& e : v) {
    if (!(in >> tok)) throw std::runtime_error("read_instance: truncated data");
    e = parse_double(tok);
  }
  return v;
}

void expect(std::istream& in, const std::string& key) {
  std::string tok;
  if (!(in >> tok) || tok != key)
    throw std::runtime_error("read_instance: expected '" + key + "', got '" + tok + "'");
}

}  // namespace

void write_instance(std::ostream& out, const Instance& inst) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "dims " << inst.m() << ' ' << inst.n() << ' ' << inst.sparsity << '\n';
  out << "seed " << inst.seed << '\n';
  out << "normalize " << (inst.normalize == NormalizeMode::exact ? "exact" : "bound") << '\n';
  out << "phi\n";
  write_values(out, inst.phi.entries(), inst.n());
  out << "x_true\n";
  write_values(out, inst.x_true, inst.n());
  out << "y\n";
  write_values(out, inst.y, inst.m());
}

Instance read_instance(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic || version != kVersion)
    throw std::runtime_error("read_instance: not an instance file");
  Instance inst;
  std::size_t m = 0, n = 0;
  expect(in, "dims");
  in >> m >> n >> inst.sparsity;
  expect(in, "seed");
  in >> inst.seed;
  expect(in, "normalize");
  std::string mode;
  in >> mode;
  if (!in || m == 0 || n == 0) throw std::runtime_error("read_instance: bad header");
  if (mode == "exact")
    inst.normalize = NormalizeMode::exact;
  else if (mode == "bound")
    inst.normalize = NormalizeMode::bound;
  else
    throw std::runtime_error("read_instance: unknown normalize mode '" + mode + "'");
  expect(in, "phi");
  inst.phi = DenseMatrix(m, n, read_values(in, m * n));
  expect(in, "x_true");
  inst.x_true = read_values(in, n);
  expect(in, "y");
  inst.y = read_values(in, m);
  rebuild_b(inst);
  return inst;
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_instance(out, inst);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_instance(in);
}

}  // namespace onebit
