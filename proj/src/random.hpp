#pragma once

#include <array>
#include <cstdint>

namespace gbw {

// Philox4x64-10 (Salmon et al.), counter-based so that every (seed, stream)
// pair gives an independent, platform-independent sequence.
struct Philox4x64 {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;
  static Counter block(Counter ctr, Key key);
};

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform();  // open interval (0, 1)
  double normal();
  double exponential();
  double gamma(double shape, double rate);
  double chi_square(double df);
  // density proportional to x^(lambda-1) exp(-(psi x + chi / x) / 2)
  double gig(double lambda, double chi, double psi);

 private:
  Philox4x64::Key key_;
  Philox4x64::Counter ctr_{};
  Philox4x64::Counter buf_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0;
};

}  // namespace gbw
