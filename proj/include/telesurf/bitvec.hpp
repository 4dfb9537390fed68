// Copyright 2026 telesurf Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELESURF_BITVEC_HPP
#define TELESURF_BITVEC_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace telesurf {

/// Packed bit vector with word-level XOR/AND kernels.
///
/// Used for error patterns, syndromes and Pauli x/z rows; the hot loops of
/// the simulators run directly on the 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  BitVec& operator^=(const BitVec& o) {
    for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  size_t popcount() const {
    size_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  /// Parity of the AND with another vector (symplectic half-product).
  bool and_parity(const BitVec& o) const {
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && words_ == o.words_; }

  std::vector<size_t> ones() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < n_; ++i)
      if (get(i)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  static BitVec from_string(const std::string& s) {
    BitVec v(s.size());
    for (size_t i = 0; i < s.size(); ++i)
      if (s[i] == '1') v.set(i, true);
    return v;
  }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace telesurf

#endif  // TELESURF_BITVEC_HPP
