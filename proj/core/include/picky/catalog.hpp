#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "picky/perm.hpp"

namespace picky {

/// Named constructors:
///   Cn (n >= 1), Sn and An (1 <= n <= 6), Dn (dihedral of order 2n, 3 <= n <= 20),
///   Q8, A4, SL(2,3), GL(2,3), F20 = C5:C4, F21 = C7:C3,
///   3^1+2 (extraspecial of exponent 3), 3^1+2:2 (extended by an involution
///   inverting the central quotient), and prod:X,Y,... for direct products.
/// Names are case-sensitive. Throws UnknownGroupError for anything else.
PermutationGroup named_group(std::string_view name);

/// {"degree": n, "generators": [[i1, ..., in], ...]} with 1-based image lists.
PermutationGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const PermutationGroup& g);

/// A path to a readable JSON group file, or a named constructor.
PermutationGroup load_group(std::string_view source);

/// Disjoint direct product acting on the union of the point sets.
PermutationGroup direct_product(const PermutationGroup& a, const PermutationGroup& b);

/// Representative names for documentation and sweeps.
std::vector<std::string> catalog_names();

}  // namespace picky
