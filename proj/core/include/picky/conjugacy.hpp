#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "picky/perm.hpp"

namespace picky {

/// Conjugacy classes of a permutation group. Classes are ordered by their
/// representative, which is the lexicographically least element of the class;
/// class 0 is therefore the identity.
class ConjugacyData {
 public:
  explicit ConjugacyData(const PermutationGroup& group);

  const PermutationGroup& group() const;
  std::size_t class_count() const;
  const std::vector<Permutation>& representatives() const;
  const std::vector<std::uint64_t>& sizes() const;
  std::uint64_t centralizer_order(std::size_t k) const;
  /// Element order of the representatives.
  const std::vector<std::uint64_t>& element_orders() const;
  std::uint64_t exponent() const;

  /// Throws InputError when g is not in the group.
  std::size_t class_of(const Permutation& g) const;
  std::optional<std::size_t> find_class(const Permutation& g) const;

  /// Class of rep_k^s; s may be negative or exceed the exponent.
  std::size_t power_class(std::size_t k, long long s) const;
  /// power_map(s)[k] == power_class(k, s); s is taken modulo the exponent.
  const std::vector<std::size_t>& power_map(long long s) const;
  std::size_t inverse_class(std::size_t k) const { return power_class(k, -1); }

  std::vector<Permutation> class_elements(std::size_t k) const;
  /// Class id of each element of group().elements(), index aligned.
  std::span<const std::uint32_t> element_classes() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace picky
