#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picky/chartab.hpp"
#include "picky/cyclo.hpp"
#include "picky/perm.hpp"
#include "picky/picky.hpp"

namespace picky {

/// (chi(1)_p, chi(x)) for a character not vanishing at x.
struct MatchKey {
  std::uint64_t degree_p_part = 1;
  Cyclotomic value;

  friend bool operator==(const MatchKey&, const MatchKey&) = default;
};
/// Degree part first, then canonical_less on the value.
bool key_less(const MatchKey& a, const MatchKey& b);
/// Sorted keys of the given irreducibles of t at x.
std::vector<MatchKey> match_keys(const CharacterTable& t, const std::vector<std::size_t>& chars, const Permutation& x,
                                 std::uint64_t p, int sign = 1);

/// Irreducibles of t not vanishing at x, in table order.
std::vector<std::size_t> irr_x(const CharacterTable& t, const Permutation& x);

enum class Mode { kGlobal, kPerChar, kBlockwise, kAll };
/// "global", "perchar", "blockwise", "all"; throws InputError otherwise.
Mode parse_mode(const std::string& s);
std::string mode_name(Mode m);

struct CheckOptions {
  Mode mode = Mode::kAll;
  /// Runs with p = 2 are refused unless set, and are marked exploratory.
  bool allow_p2 = false;
  /// Iterate over every L with K/L a chief factor instead of the first one.
  bool all_chief_factors = false;
  std::string group_id;
};

/// One theta in Delta for one choice of L.
struct BlockResult {
  std::size_t chief_factor = 0;  ///< index of L among the candidates tried
  std::size_t theta = 0;  ///< index in Irr(K)
  std::size_t phi = 0;  ///< index in Irr(C)
  long long e = 0;  ///< [theta_C, phi]
  int predicted_sign = 1;  ///< sign congruent to e mod p
  bool theta_invariant_in_g = false;  ///< G_theta == G
  std::vector<std::size_t> g_block;  ///< Irr(G|theta), indices in Irr(G)
  std::vector<std::size_t> h_block;  ///< Irr(H|phi), indices in Irr(H)
  std::vector<std::size_t> g_slice;  ///< g_block n Irr^x(G)
  std::vector<std::size_t> h_slice;  ///< h_block n Irr^x(H)
  bool sizes_match = false;
  bool degree_parts_match = false;
  /// Signs s with keys of g_slice equal to the s-scaled keys of h_slice.
  std::vector<int> realized_signs;
  bool matches_predicted = false;
};

struct BlockwiseData {
  bool computed = false;
  std::uint64_t k_order = 0;
  std::vector<std::uint64_t> l_orders;  ///< one per chief factor tried
  std::size_t chief_factor_candidates = 0;
  std::vector<std::uint64_t> h_orders;
  std::vector<std::uint64_t> c_orders;
  std::vector<BlockResult> blocks;
  /// Every member of Irr^x(G) and Irr^x(H) lies in exactly one slice, per L.
  bool decomposition_ok = true;
};

struct VerificationReport {
  std::string group_id;
  std::uint64_t group_order = 0;
  std::uint64_t prime = 0;
  Permutation element;
  PickyCertificate certificate;
  Mode mode = Mode::kAll;
  bool exploratory = false;
  bool sylow_normal = false;
  std::size_t irr_x_group = 0;
  std::size_t irr_x_normalizer = 0;
  std::vector<MatchKey> group_keys;
  std::vector<MatchKey> normalizer_keys;
  bool sizes_match = false;
  bool degree_parts_match = false;
  bool global_checked = false;
  std::vector<int> global_signs;  ///< every s in {1, -1} for which a global-sign bijection exists
  bool per_char_checked = false;
  bool per_char_exists = false;
  std::vector<int> per_char_signs;  ///< signs on the edges of the matching found, sorted
  BlockwiseData blockwise;
  /// Per-character signs succeed while no single sign does.
  bool sign_discrepancy = false;
  std::vector<std::string> violations;
  /// Failed checks of an exploratory (p = 2) run; these are not violations.
  std::vector<std::string> exploratory_failures;
  double seconds = 0;
};

/// Runs the requested matching modes for the picky p-element x of the
/// p-solvable group G. Throws InputError when p is not prime, p = 2 without
/// the override, x is not a picky p-element or G is not p-solvable. Failures of
/// checked statements are recorded in report.violations.
VerificationReport check_theorem_A(const PermutationGroup& g, std::uint64_t p, const Permutation& x,
                                   const CheckOptions& options = {});

struct ConstituentStructure {
  std::vector<std::size_t> thetas;  ///< x-invariant constituents of chi|_N, indices in Irr(N)
  bool single_orbit = false;  ///< one N_G(P)-orbit
};
/// x-invariant constituents of chi|_N for chi in Irr^x(G) (index into the
/// table of G). Raises TheoremViolation when there are none or they span
/// several N_G(P)-orbits; InputError when x is not picky, chi(x) = 0 or N is
/// not normal.
ConstituentStructure invariant_constituent_structure(const PermutationGroup& g, const PermutationGroup& n,
                                                     std::uint64_t p, const Permutation& x, std::size_t chi);

/// The block of theta (an x-invariant irreducible of K, index into its table)
/// for H = L N_G(P), P the Sylow subgroup containing x. Throws InputError
/// unless L <= K are normal in G with K/L a p'-group, PK is normal, xL is
/// picky in G/L and C_{K/L}(x) = C/L.
BlockResult blockwise_instance_check(const PermutationGroup& g, const PermutationGroup& k, const PermutationGroup& l,
                                     std::uint64_t p, const Permutation& x, std::size_t theta);

/// Report document; `seconds` is written only when include_timing is set, so
/// files stay byte-stable across runs.
nlohmann::json report_to_json(const VerificationReport& r, bool include_timing = false);

/// 0 when no violations were recorded, 2 otherwise.
int report_exit_code(const VerificationReport& r);

}  // namespace picky
