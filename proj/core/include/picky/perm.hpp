#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picky/numtheory.hpp"

namespace picky {

/// A point of the permuted set. Points are 0-based internally; every text or
/// JSON interface uses 1-based points.
using Point = std::uint32_t;

/// Bijection of {0, ..., n-1}. Products act left to right: (a * b)[i] == b[a[i]].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);

  /// Validates that `images` (0-based) is a bijection; throws InputError if not.
  static Permutation from_images(std::vector<Point> images);
  /// Same as from_images but with 1-based image lists, as in the JSON format.
  static Permutation from_one_based(std::span<const long long> images);
  /// Parses cycle notation such as "(1,2,3)(4,5)"; whitespace is ignored and
  /// "()" is the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }
  std::vector<long long> one_based() const;

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  std::uint64_t order() const;
  /// Smallest point not fixed, or degree() for the identity.
  Point first_moved() const;

  std::string to_cycles() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation& operator*=(const Permutation& b);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Lexicographic on image sequences; this is the canonical element order.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// x^g = g^-1 x g.
Permutation conjugate(const Permutation& x, const Permutation& g);
/// [a, b] = a^-1 b^-1 a b.
Permutation commutator(const Permutation& a, const Permutation& b);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Permutation group given by generators, with a stabilizer chain built by
/// deterministic Schreier-Sims. Values are immutable and cheap to copy.
class PermutationGroup {
 public:
  /// Trivial group of degree 0.
  PermutationGroup();
  /// Throws InputError when a generator has the wrong degree.
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators);
  static PermutationGroup trivial(std::size_t degree);

  std::size_t degree() const;
  const std::vector<Permutation>& generators() const;
  const Integer& order() const;
  /// Order as a machine integer; throws CapacityError beyond 2^63.
  std::uint64_t size() const;
  bool is_trivial() const { return size() == 1; }

  /// Throws InputError on degree mismatch.
  bool contains(const Permutation& g) const;
  bool contains(const PermutationGroup& h) const;
  /// Equality of element sets.
  bool same_elements(const PermutationGroup& other) const;

  /// All elements in lexicographic order; computed once and cached. Throws
  /// CapacityError when the group is too large to enumerate.
  const std::vector<Permutation>& elements() const;

  const std::vector<Point>& base() const;
  /// Orbit length of the base point at each level; their product is the order.
  std::vector<std::size_t> transversal_sizes() const;

  /// Sifts g through the chain; the residue is the identity iff g is a member.
  Permutation sift(const Permutation& g) const;

  /// Stable text key: degree, sorted generator image lists and order.
  std::string cache_key() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

inline constexpr std::uint64_t kMaxEnumeratedOrder = 2'000'000;

}  // namespace picky
