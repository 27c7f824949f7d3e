#include "random.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace gbw {

namespace {

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(r >> 64);
  lo = static_cast<std::uint64_t>(r);
}

inline Philox4x64::Counter round(const Philox4x64::Counter& c, const Philox4x64::Key& k) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kM0, c[0], hi0, lo0);
  mulhilo(kM1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x64::Counter Philox4x64::block(Counter ctr, Key key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    ctr = round(ctr, key);
  }
  return ctr;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

std::uint64_t Rng::next_u64() {
  if (used_ == 4) {
    buf_ = Philox4x64::block(ctr_, key_);
    for (auto& w : ctr_)
      if (++w != 0) break;
    used_ = 0;
  }
  return buf_[used_++];
}

double Rng::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2 * uniform() - 1;
    v = 2 * uniform() - 1;
    s = u * u + v * v;
  } while (s >= 1 || s == 0);
  double f = std::sqrt(-2 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0) || !(rate > 0))
    fail(ErrorKind::InvalidArgument, "gamma needs positive shape and rate");
  if (shape < 1) {
    double g = gamma(shape + 1, 1.0);
    return g * std::pow(uniform(), 1 / shape) / rate;
  }
  // Marsaglia and Tsang
  const double d = shape - 1.0 / 3, c = 1 / std::sqrt(9 * d);
  for (;;) {
    double x = normal(), v = 1 + c * x;
    if (v <= 0) continue;
    v = v * v * v;
    double u = uniform();
    if (u < 1 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1 - v + std::log(v))) return d * v / rate;
  }
}

double Rng::chi_square(double df) { return 2 * gamma(df / 2, 1.0); }

namespace {

double gig_mode(double lambda, double omega) {
  if (lambda >= 1) return (std::sqrt((lambda - 1) * (lambda - 1) + omega * omega) + (lambda - 1)) / omega;
  return omega / (std::sqrt((1 - lambda) * (1 - lambda) + omega * omega) + (1 - lambda));
}

// Ratio of uniforms without mode shift (Dagpunar / Lehner).
double rou_noshift(Rng& rng, double lambda, double omega) {
  const double t = 0.5 * (lambda - 1), s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1 / xm);
  const double ym = ((lambda + 1) + std::sqrt((lambda + 1) * (lambda + 1) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1) * std::log(ym) - s * (ym + 1 / ym) - nc);
  for (;;) {
    double u = um * rng.uniform(), v = rng.uniform();
    double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1 / x) - nc) return x;
  }
}

// Ratio of uniforms with mode shift; bounding rectangle from the cubic's roots.
double rou_shift(Rng& rng, double lambda, double omega) {
  const double t = 0.5 * (lambda - 1), s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1 / xm);
  const double a = -(2 * (lambda + 1) / omega + xm);
  const double b = 2 * (lambda - 1) * xm / omega - 1;
  const double c = xm;
  const double p = b - a * a / 3;
  const double q = 2 * a * a * a / 27 - a * b / 3 + c;
  const double fi = std::acos(-q / (2 * std::sqrt(-(p * p * p) / 27)));
  const double fak = 2 * std::sqrt(-p / 3);
  const double y1 = fak * std::cos(fi / 3) - a / 3;
  const double y2 = fak * std::cos(fi / 3 + 4.0 / 3 * M_PI) - a / 3;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1 / y2) - nc);
  for (;;) {
    double u = uminus + rng.uniform() * (uplus - uminus), v = rng.uniform();
    double x = u / v + xm;
    if (x <= 0) continue;
    if (std::log(v) <= t * std::log(x) - s * (x + 1 / x) - nc) return x;
  }
}

// Three-region hat: constant, polynomial and exponential pieces (0 <= lambda < 1, small omega).
double three_region(Rng& rng, double lambda, double omega) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1 - lambda);
  const double k0 = std::exp((lambda - 1) * std::log(xm) - 0.5 * omega * (xm + 1 / xm));
  double area[3];
  double k1, k2;
  area[0] = k0 * x0;
  if (x0 >= 2 / omega) {
    k1 = 0;
    area[1] = 0;
    k2 = std::pow(x0, lambda - 1);
    area[2] = k2 * 2 * std::exp(-omega * x0 / 2) / omega;
  } else {
    k1 = std::exp(-omega);
    area[1] = lambda == 0 ? k1 * std::log(2 / (omega * omega))
                          : k1 / lambda * (std::pow(2 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2 / omega, lambda - 1);
    area[2] = k2 * 2 * std::exp(-1.0) / omega;
  }
  const double total = area[0] + area[1] + area[2];
  for (;;) {
    double v = total * rng.uniform();
    double x, hx;
    if (v <= area[0]) {
      x = x0 * v / area[0];
      hx = k0;
    } else if ((v -= area[0]) <= area[1]) {
      if (lambda == 0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1 / lambda);
        hx = k1 * std::pow(x, lambda - 1);
      }
    } else {
      v -= area[1];
      const double lo = x0 > 2 / omega ? x0 : 2 / omega;
      x = -2 / omega * std::log(std::exp(-omega / 2 * lo) - omega / (2 * k2) * v);
      hx = k2 * std::exp(-omega / 2 * x);
    }
    double u = rng.uniform() * hx;
    if (std::log(u) <= (lambda - 1) * std::log(x) - omega / 2 * (x + 1 / x)) return x;
  }
}

}  // namespace

double Rng::gig(double lambda, double chi, double psi) {
  if (!(psi > 0) || !(chi >= 0) || !std::isfinite(lambda) || !std::isfinite(chi) || !std::isfinite(psi))
    fail(ErrorKind::InvalidArgument, "improper GIG parameters");
  if (chi == 0) {
    if (!(lambda > 0)) fail(ErrorKind::InvalidArgument, "improper GIG parameters: chi = 0 needs lambda > 0");
    return gamma(lambda, psi / 2);
  }
  const double lam = std::abs(lambda);
  const double alpha = std::sqrt(chi / psi), omega = std::sqrt(chi * psi);
  double x;
  if (lam > 2 || omega > 3)
    x = rou_shift(*this, lam, omega);
  else if (lam >= 1 - 2.25 * omega * omega || omega > 0.2)
    x = rou_noshift(*this, lam, omega);
  else
    x = three_region(*this, lam, omega);
  return lambda < 0 ? alpha / x : alpha * x;
}

}  // namespace gbw
