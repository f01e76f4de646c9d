// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace lopa {

// Counter-based random stream. Every (seed, node, round, draw) tuple names an
// independent stream, so per-node work can be scheduled on any thread without
// changing the numbers. SplitMix64 state transition, Box-Muller normals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on (0,1); never returns 0 exactly
  double uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // uniform integer in [0, n)
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return z ^ (z >> 33);
}
}  // namespace detail

inline RngStream make_stream(std::uint64_t seed, std::uint64_t node,
                             std::uint64_t round, std::uint64_t draw) {
  std::uint64_t h = detail::mix64(seed + 0x632be59bd9b4e019ULL);
  h = detail::mix64(h ^ (node + 0x9e3779b97f4a7c15ULL));
  h = detail::mix64(h ^ (round + 0xd1b54a32d192ed03ULL));
  h = detail::mix64(h ^ (draw + 0x8cb92ba72f3d8dd7ULL));
  return RngStream(h);
}

// Draw slots used by the optimizer; one slot per random variable per round.
enum DrawSlot : std::uint64_t {
  kDrawInnerGrad = 0,   // xi_{i,1}: grad_theta g
  kDrawHessian = 1,     // xi_{i,2}: hess_theta g
  kDrawJacobian = 2,    // xi_{i,3}: jac_xtheta g
  kDrawGradFTheta = 3,  // varsigma_{i,1}: grad_theta f
  kDrawGradFX = 4,      // varsigma_{i,2}: grad_x f
  kDrawInitX = 9,       // shared x^0 (node index 0)
  kDrawQloopInnerBase = 100,     // + t for the t-th inner SGD step
  kDrawQloopHessianBase = 4096,  // + t for the t-th Hessian action
};

}  // namespace lopa
