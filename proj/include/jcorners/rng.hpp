// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).  The key is
// derived from (seed, stream) so chains get independent substreams.

#ifndef JCORNERS_RNG_HPP
#define JCORNERS_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace jc {

class Philox4x32 {
 public:
  using result_type = std::uint64_t;

  Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0,1), 53-bit resolution.
  double uniform01();

  std::uint64_t counter() const { return ctr_; }

  // Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t ctr_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int used_ = 4;
};

}  // namespace jc

#endif
