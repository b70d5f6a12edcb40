#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "picky/conjugacy.hpp"
#include "picky/cyclo.hpp"
#include "picky/perm.hpp"

namespace picky {

class CharacterTable;
using TablePtr = std::shared_ptr<const CharacterTable>;

/// Function on the conjugacy classes of a table's group, indexed like
/// table->classes(). Irreducible characters, restrictions, inductions and
/// decomposition remainders are all values of this type.
class ClassFunction {
 public:
  ClassFunction() = default;
  /// Throws InputError when the value count differs from the class count.
  ClassFunction(TablePtr table, std::vector<Cyclotomic> values);
  static ClassFunction zero(TablePtr table);

  const TablePtr& table() const { return table_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t k) const { return values_[k]; }
  /// Value at the identity.
  const Cyclotomic& degree() const { return values_.front(); }
  bool is_zero() const;

  friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator*(const Cyclotomic& s, const ClassFunction& a);
  /// Pointwise product.
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
  friend bool operator==(const ClassFunction& a, const ClassFunction& b);

 private:
  TablePtr table_;
  std::vector<Cyclotomic> values_;
};

/// Exact table of irreducible characters. Rows are sorted by degree, then by
/// canonical_less on the value sequence; columns follow ConjugacyData.
class CharacterTable : public std::enable_shared_from_this<CharacterTable> {
 public:
  /// Dixon's method: class matrices over F_l, l the least prime with
  /// l = 1 mod exponent and l^2 > 4|G|, eigenspaces split by the class matrices
  /// in index order, values lifted from power maps. Throws CapacityError
  /// beyond kMaxTableClasses classes or kMaxTableOrder elements.
  static TablePtr compute(const PermutationGroup& g);

  /// Table from known rows, e.g. a cache file. Rows are validated by both
  /// orthogonality relations; throws InputError on failure.
  static TablePtr from_rows(const PermutationGroup& g, std::vector<std::vector<Cyclotomic>> rows);

  const PermutationGroup& group() const { return classes_.group(); }
  const ConjugacyData& classes() const { return classes_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::vector<Cyclotomic>>& rows() const { return rows_; }
  const Cyclotomic& value(std::size_t chi, std::size_t k) const { return rows_[chi][k]; }
  std::uint64_t degree(std::size_t chi) const;
  std::vector<std::uint64_t> degrees() const;
  ClassFunction irreducible(std::size_t chi) const;
  ClassFunction trivial() const { return irreducible(0); }
  /// The prime used by Dixon's method, or 0 for tables loaded from rows.
  std::uint64_t lifting_prime() const { return prime_; }

  /// Index of f among the irreducibles, if it is one.
  std::optional<std::size_t> find_irreducible(const ClassFunction& f) const;

 private:
  friend TablePtr table_from_json(const PermutationGroup& g, const nlohmann::json& j);
  CharacterTable(ConjugacyData classes, std::vector<std::vector<Cyclotomic>> rows, std::uint64_t prime);

  ConjugacyData classes_;
  std::vector<std::vector<Cyclotomic>> rows_;
  std::uint64_t prime_ = 0;
};

inline constexpr std::size_t kMaxTableClasses = 200;
inline constexpr std::uint64_t kMaxTableOrder = 200'000;

/// Smallest prime l with l = 1 mod exponent and l^2 > 4 order.
std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t exponent);

/// Process-wide memoized table for g, keyed by g.cache_key(). With a cache
/// directory (argument, else $PICKY_CACHE when set), tables are also read from
/// and written to disk.
TablePtr character_table(const PermutationGroup& g, const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// Both orthogonality relations, sum of squared degrees, and degrees dividing |G|.
bool verify_orthogonality(const CharacterTable& t);

/// chi(g). Throws InputError when g is outside the table's group.
Cyclotomic value_at(const ClassFunction& chi, const Permutation& g);

/// <a, b> = 1/|G| sum_k |C_k| a(k) conj(b(k)). Throws InputError when the
/// functions live on different tables.
Cyclotomic inner_value(const ClassFunction& a, const ClassFunction& b);
/// inner_value as a rational; throws InputError when it is not rational.
Rational inner(const ClassFunction& a, const ClassFunction& b);
/// Multiplicity of each irreducible of a's table in a.
std::vector<Rational> decompose(const ClassFunction& a);
/// Sum of mult[i] * chi_i.
ClassFunction compose(const TablePtr& table, const std::vector<Rational>& mult);
/// True when every multiplicity is a non-negative integer.
bool is_character(const ClassFunction& a);
bool is_irreducible(const ClassFunction& a);

/// Class of G containing each class representative of H. Throws InputError unless H <= G.
std::vector<std::size_t> class_fusion(const CharacterTable& h, const CharacterTable& g);
/// chi restricted to the group of `h`. Throws InputError unless it is a subgroup.
ClassFunction restrict(const ClassFunction& chi, const TablePtr& h);
/// delta^G(g) = sum over a right transversal t of delta(t g t^-1), with delta
/// extended by zero off H.
ClassFunction induce(const ClassFunction& delta, const TablePtr& g);
/// delta^G(h) = 1/|M| sum over k in K with k h k^-1 in H of delta(k h k^-1),
/// M = K n H. Requires K normal in G and G = KH (else InputError).
Cyclotomic induced_value_diamond(const ClassFunction& delta, const PermutationGroup& g, const PermutationGroup& k,
                                 const Permutation& h);

/// theta^g(k) = theta(g k g^-1) for g normalizing the group of theta.
ClassFunction conjugate_character(const ClassFunction& theta, const Permutation& g);
/// Permutation of the irreducibles of t induced by conjugation with g.
std::vector<std::size_t> irreducible_action(const CharacterTable& t, const Permutation& g);
/// { g in G : theta^g = theta }. G must normalize the group of theta.
PermutationGroup stabilizer_of_character(const PermutationGroup& g, const ClassFunction& theta);
/// Indices of the irreducibles of `g` lying over theta, a character of a normal subgroup.
std::vector<std::size_t> irr_over(const TablePtr& g, const ClassFunction& theta);

/// {"key", "degree", "order", "classes": [{"rep", "size"}], "power_maps": {"p": [...]},
///  "lifting_prime", "values": [[cyclotomic, ...], ...]}.
nlohmann::json table_to_json(const CharacterTable& t);
/// Rebuilds the table of g from table_to_json output; throws InputError when
/// the document does not describe g (class data differ or orthogonality fails).
TablePtr table_from_json(const PermutationGroup& g, const nlohmann::json& j);
/// File name used in a cache directory for g.
std::string table_cache_name(const PermutationGroup& g);

}  // namespace picky
