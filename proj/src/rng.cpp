// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/rng.hpp"

namespace jc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// splitmix64 finalizer, used only to spread (seed, stream) into the key
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream) : stream_(stream) {
  const std::uint64_t k = mix64(seed);
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> x, std::array<std::uint32_t, 2> key) {
  std::uint32_t k0 = key[0];
  std::uint32_t k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, x[0], hi0, lo0);
    mulhilo(kMul1, x[2], hi1, lo1);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return x;
}

void Philox4x32::refill() {
  buf_ = block({static_cast<std::uint32_t>(ctr_), static_cast<std::uint32_t>(ctr_ >> 32),
                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
               key_);
  ++ctr_;
  used_ = 0;
}

Philox4x32::result_type Philox4x32::operator()() {
  if (used_ > 2) refill();
  const std::uint64_t v = (static_cast<std::uint64_t>(buf_[used_]) << 32) | buf_[used_ + 1];
  used_ += 2;
  return v;
}

double Philox4x32::uniform01() {
  std::uint64_t bits;
  do {
    bits = (*this)() >> 11;
  } while (bits == 0);
  return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace jc
