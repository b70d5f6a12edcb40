#include "picky/catalog.hpp"

#include <array>
#include <optional>
#include <charconv>
#include <filesystem>
#include <fstream>

#include "picky/errors.hpp"

namespace picky {

namespace {

Permutation cycle_perm(std::size_t degree, std::string_view cycles) { return Permutation::from_cycles(degree, cycles); }

PermutationGroup cyclic(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermutationGroup(n, {Permutation::from_images(std::move(img))});
}

PermutationGroup symmetric(std::size_t n) {
  if (n <= 1) return PermutationGroup::trivial(n);
  if (n == 2) return cyclic(2);
  return PermutationGroup(n, {cyclic(n).generators()[0], cycle_perm(n, "(1,2)")});
}

PermutationGroup alternating(std::size_t n) {
  if (n <= 2) return PermutationGroup::trivial(n);
  // 3-cycles (1,2,k) generate A_n.
  std::vector<Permutation> gens;
  for (std::size_t k = 3; k <= n; ++k) gens.push_back(cycle_perm(n, "(1,2," + std::to_string(k) + ")"));
  return PermutationGroup(n, std::move(gens));
}

PermutationGroup dihedral(std::size_t n) {
  std::vector<Point> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
  return PermutationGroup(n, {cyclic(n).generators()[0], Permutation::from_images(std::move(refl))});
}

// 2x2 matrices over F_3 acting on the 8 nonzero column vectors.
using Mat3 = std::array<int, 4>;  // row-major a b / c d

std::vector<std::array<int, 2>> nonzero_vectors_f3() {
  std::vector<std::array<int, 2>> v;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x != 0 || y != 0) v.push_back({x, y});
    }
  }
  return v;
}

Permutation matrix_action(const Mat3& m) {
  auto vecs = nonzero_vectors_f3();
  auto index = [&](int x, int y) {
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (vecs[i][0] == x && vecs[i][1] == y) return static_cast<Point>(i);
    }
    throw Error("internal: vector not found");
  };
  std::vector<Point> img;
  for (const auto& v : vecs) {
    int x = ((m[0] * v[0] + m[1] * v[1]) % 3 + 3) % 3;
    int y = ((m[2] * v[0] + m[3] * v[1]) % 3 + 3) % 3;
    img.push_back(index(x, y));
  }
  return Permutation::from_images(std::move(img));
}

PermutationGroup quaternion8() {
  return PermutationGroup(8, {matrix_action({0, -1, 1, 0}), matrix_action({1, 1, 1, -1})});
}

PermutationGroup sl23() {
  return PermutationGroup(8, {matrix_action({0, -1, 1, 0}), matrix_action({1, 1, 1, -1}), matrix_action({1, 1, 0, 1})});
}

PermutationGroup gl23() {
  return PermutationGroup(8, {matrix_action({0, -1, 1, 0}), matrix_action({1, 1, 1, -1}), matrix_action({1, 1, 0, 1}),
                              matrix_action({-1, 0, 0, 1})});
}

// x -> a x + b on F_q for a in the subgroup generated by `mult`.
PermutationGroup affine_line(std::size_t q, std::size_t mult) {
  std::vector<Point> shift(q), scale(q);
  for (std::size_t x = 0; x < q; ++x) {
    shift[x] = static_cast<Point>((x + 1) % q);
    scale[x] = static_cast<Point>((x * mult) % q);
  }
  return PermutationGroup(q, {Permutation::from_images(std::move(shift)), Permutation::from_images(std::move(scale))});
}

// Affine maps v -> M v + t on F_3^2; points are the 9 vectors, index 3x + y.
Permutation affine_plane(const Mat3& m, std::array<int, 2> t) {
  std::vector<Point> img(9);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      int nx = ((m[0] * x + m[1] * y + t[0]) % 3 + 3) % 3;
      int ny = ((m[2] * x + m[3] * y + t[1]) % 3 + 3) % 3;
      img[static_cast<std::size_t>(3 * x + y)] = static_cast<Point>(3 * nx + ny);
    }
  }
  return Permutation::from_images(std::move(img));
}

PermutationGroup extraspecial27(bool with_involution) {
  std::vector<Permutation> gens{affine_plane({1, 0, 0, 1}, {1, 0}), affine_plane({1, 0, 0, 1}, {0, 1}),
                                affine_plane({1, 1, 0, 1}, {0, 0})};
  // diag(1,-1) centralizes the centre and inverts the central quotient.
  if (with_involution) gens.push_back(affine_plane({1, 0, 0, -1}, {0, 0}));
  return PermutationGroup(9, std::move(gens));
}

std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<PermutationGroup> simple_named(std::string_view name) {
  if (name == "Q8") return quaternion8();
  if (name == "A4") return alternating(4);
  if (name == "SL(2,3)") return sl23();
  if (name == "GL(2,3)") return gl23();
  if (name == "F20") return affine_line(5, 2);
  if (name == "F21") return affine_line(7, 2);
  if (name == "3^1+2") return extraspecial27(false);
  if (name == "3^1+2:2") return extraspecial27(true);
  if (name.size() < 2) return std::nullopt;
  auto n = parse_index(name.substr(1));
  if (!n) return std::nullopt;
  switch (name[0]) {
    case 'C':
      if (*n >= 1 && *n <= 10000) return cyclic(*n);
      break;
    case 'S':
      if (*n >= 1 && *n <= 6) return symmetric(*n);
      break;
    case 'A':
      if (*n >= 1 && *n <= 6) return alternating(*n);
      break;
    case 'D':
      if (*n >= 3 && *n <= 20) return dihedral(*n);
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace

PermutationGroup direct_product(const PermutationGroup& a, const PermutationGroup& b) {
  const std::size_t da = a.degree(), db = b.degree(), d = da + db;
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<Point> img(d);
    for (std::size_t i = 0; i < d; ++i) img[i] = i < da ? g[static_cast<Point>(i)] : static_cast<Point>(i);
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  for (const auto& g : b.generators()) {
    std::vector<Point> img(d);
    for (std::size_t i = 0; i < d; ++i) {
      img[i] = i < da ? static_cast<Point>(i) : static_cast<Point>(da + g[static_cast<Point>(i - da)]);
    }
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return PermutationGroup(d, std::move(gens));
}

PermutationGroup named_group(std::string_view name) {
  if (name.starts_with("prod:")) {
    std::string_view rest = name.substr(5);
    std::optional<PermutationGroup> acc;
    // Split on commas that are not inside parentheses, so "prod:SL(2,3),C2" works.
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i < rest.size() && rest[i] == '(') ++depth;
      if (i < rest.size() && rest[i] == ')') --depth;
      if (i == rest.size() || (rest[i] == ',' && depth == 0)) {
        auto part = named_group(rest.substr(start, i - start));
        acc = acc ? direct_product(*acc, part) : part;
        start = i + 1;
      }
    }
    if (!acc) throw UnknownGroupError("empty product '" + std::string(name) + "'");
    return *acc;
  }
  if (auto g = simple_named(name)) return *g;
  throw UnknownGroupError("unknown group '" + std::string(name) + "'");
}

PermutationGroup group_from_json(const nlohmann::json& j) {
  try {
    auto degree = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators")) {
      auto images = g.get<std::vector<long long>>();
      if (images.size() != degree) throw InputError("generator length differs from the degree");
      gens.push_back(Permutation::from_one_based(images));
    }
    return PermutationGroup(degree, std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group JSON: ") + e.what());
  }
}

nlohmann::json group_to_json(const PermutationGroup& g) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& x : g.generators()) gens.push_back(x.one_based());
  return {{"degree", g.degree()}, {"generators", std::move(gens)}};
}

PermutationGroup load_group(std::string_view source) {
  std::filesystem::path path{std::string(source)};
  std::error_code ec;
  if (source.ends_with(".json") || std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read group file '" + std::string(source) + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError("cannot parse '" + std::string(source) + "': " + e.what());
    }
    return group_from_json(j);
  }
  return named_group(source);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("C" + std::to_string(n));
  for (const char* s : {"S3", "S4", "A4", "A5", "Q8", "SL(2,3)", "GL(2,3)", "F20", "F21", "3^1+2", "3^1+2:2"}) {
    names.emplace_back(s);
  }
  for (int n = 4; n <= 20; ++n) names.push_back("D" + std::to_string(n));
  return names;
}

}  // namespace picky
