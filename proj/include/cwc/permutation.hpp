// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cwc {

// Permutation of {0..ell-1}. Text formats speak 1-based, everything in
// memory is 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int ell) : img_(static_cast<size_t>(ell)) {
    if (ell <= 0) throw std::invalid_argument("permutation degree must be positive");
    for (int i = 0; i < ell; ++i) img_[static_cast<size_t>(i)] = i;
  }

  static Permutation identity(int ell) { return Permutation(ell); }

  static Permutation from_images(std::vector<int> images) {
    const int ell = static_cast<int>(images.size());
    if (ell == 0) throw std::invalid_argument("empty permutation");
    std::vector<char> seen(static_cast<size_t>(ell), 0);
    for (int x : images) {
      if (x < 0 || x >= ell || seen[static_cast<size_t>(x)]) {
        throw std::invalid_argument("images do not form a bijection");
      }
      seen[static_cast<size_t>(x)] = 1;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
  }

  // Swaps a and b, fixes everything else. a == b gives the identity.
  static Permutation transposition(int ell, int a, int b) {
    Permutation p(ell);
    if (a < 0 || a >= ell || b < 0 || b >= ell) throw std::invalid_argument("transposition point out of range");
    p.img_[static_cast<size_t>(a)] = b;
    p.img_[static_cast<size_t>(b)] = a;
    return p;
  }

  int degree() const { return static_cast<int>(img_.size()); }

  int apply(int i) const {
    if (i < 0 || i >= degree()) throw std::out_of_range("permutation point out of range");
    return img_[static_cast<size_t>(i)];
  }
  int operator()(int i) const { return apply(i); }

  Permutation inverse() const {
    Permutation p(degree());
    for (int i = 0; i < degree(); ++i) p.img_[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
    return p;
  }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[static_cast<size_t>(i)] != i) return false;
    return true;
  }

  const std::vector<int>& images() const { return img_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.img_ <=> b.img_;
  }

 private:
  std::vector<int> img_;
};

// Walk-order composition: apply `first`, then `second`.
inline Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.degree() != second.degree()) throw std::invalid_argument("composing permutations of different degrees");
  std::vector<int> img(static_cast<size_t>(first.degree()));
  for (int i = 0; i < first.degree(); ++i) img[static_cast<size_t>(i)] = second.apply(first.apply(i));
  return Permutation::from_images(std::move(img));
}

inline uint64_t hash_value(const Permutation& p) {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(p.degree());
  for (int x : p.images()) {
    h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// All ell! permutations in lexicographic order of their image vectors.
inline std::vector<Permutation> all_permutations(int ell) {
  std::vector<int> img(static_cast<size_t>(ell));
  for (int i = 0; i < ell; ++i) img[static_cast<size_t>(i)] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace cwc
