#include "oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

namespace oracle {

Elements closure(std::size_t degree, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation(degree)};
  std::deque<Permutation> todo{Permutation(degree)};
  while (!todo.empty()) {
    Permutation x = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      Permutation y = x * g;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::size_t index_of(const Elements& elems, const Permutation& g) {
  auto it = std::lower_bound(elems.begin(), elems.end(), g);
  if (it == elems.end() || *it != g) throw std::logic_error("oracle: element not in group");
  return static_cast<std::size_t>(it - elems.begin());
}

std::vector<std::vector<std::size_t>> classes(const Elements& elems) {
  std::vector<int> cls(elems.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (cls[i] >= 0) continue;
    std::set<std::size_t> orbit;
    for (const auto& g : elems) orbit.insert(index_of(elems, g.inverse() * elems[i] * g));
    for (auto j : orbit) cls[j] = static_cast<int>(out.size());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::vector<std::uint64_t> sorted_class_sizes(const Elements& elems) {
  std::vector<std::uint64_t> sizes;
  for (const auto& c : classes(elems)) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<Elements> normal_subgroups(const Elements& elems) {
  auto cls = classes(elems);
  const std::size_t r = cls.size();
  if (r > 20) throw std::logic_error("oracle: too many classes for subset enumeration");
  std::vector<Elements> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (r - 1)); ++mask) {
    std::vector<bool> in(elems.size(), false);
    Elements sub;
    for (std::size_t k = 0; k < r; ++k) {
      if (k == 0 || (mask >> (k - 1)) & 1) {
        for (auto i : cls[k]) {
          in[i] = true;
          sub.push_back(elems[i]);
        }
      }
    }
    if (elems.size() % sub.size() != 0) continue;
    bool closed = true;
    for (std::size_t a = 0; a < sub.size() && closed; ++a) {
      for (std::size_t b = 0; b < sub.size() && closed; ++b) closed = in[index_of(elems, sub[a] * sub[b])];
    }
    if (!closed) continue;
    std::sort(sub.begin(), sub.end());
    out.push_back(std::move(sub));
  }
  return out;
}

Elements normalizer(const Elements& g, const Elements& h) {
  Elements out;
  for (const auto& x : g) {
    bool ok = std::all_of(h.begin(), h.end(), [&](const Permutation& y) {
      return std::binary_search(h.begin(), h.end(), x.inverse() * y * x);
    });
    if (ok) out.push_back(x);
  }
  return out;
}

Elements centralizer(const Elements& g, const Permutation& x) {
  Elements out;
  for (const auto& y : g) {
    if (x * y == y * x) out.push_back(y);
  }
  return out;
}

std::size_t sylows_containing(const Elements& g, const Elements& one_sylow, const Permutation& x) {
  std::set<Elements> conjugates;
  for (const auto& t : g) {
    Elements c;
    for (const auto& y : one_sylow) c.push_back(t.inverse() * y * t);
    std::sort(c.begin(), c.end());
    conjugates.insert(std::move(c));
  }
  std::size_t count = 0;
  for (const auto& c : conjugates) count += std::binary_search(c.begin(), c.end(), x) ? 1 : 0;
  return count;
}

NumericTable burnside_table(const Elements& elems) {
  NumericTable t;
  t.classes = classes(elems);
  const std::size_t r = t.classes.size();
  const auto n = static_cast<double>(elems.size());
  std::vector<std::size_t> class_of(elems.size());
  for (std::size_t k = 0; k < r; ++k) {
    for (auto i : t.classes[k]) class_of[i] = k;
  }
  // a[j][i][k] = #{(u, v) : u in C_j, v in C_i, u v = g_k}
  std::vector<std::vector<std::vector<double>>> a(r, std::vector<std::vector<double>>(r, std::vector<double>(r, 0)));
  for (std::size_t k = 0; k < r; ++k) {
    const Permutation& gk = elems[t.classes[k][0]];
    for (std::size_t ui = 0; ui < elems.size(); ++ui) {
      std::size_t vi = index_of(elems, elems[ui].inverse() * gk);
      a[class_of[ui]][class_of[vi]][k] += 1;
    }
  }
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(0.5, 1.5);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t j = 0; j < r; ++j) {
    double c = coef(rng);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) += c * a[j][i][k];
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  const auto vecs = solver.eigenvectors();
  for (Eigen::Index e = 0; e < vecs.cols(); ++e) {
    std::vector<std::complex<double>> w(r);
    for (std::size_t k = 0; k < r; ++k) w[k] = vecs(static_cast<Eigen::Index>(k), e) / vecs(0, e);
    double s = 0;
    for (std::size_t k = 0; k < r; ++k) s += std::norm(w[k]) / static_cast<double>(t.classes[k].size());
    double d = std::sqrt(n / s);
    std::vector<std::complex<double>> row(r);
    for (std::size_t k = 0; k < r; ++k) row[k] = d * w[k] / static_cast<double>(t.classes[k].size());
    t.rows.push_back(std::move(row));
    t.degrees.push_back(std::lround(d));
  }
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < r; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return t.degrees[x] < t.degrees[y]; });
  NumericTable sorted{t.classes, {}, {}};
  for (auto i : order) {
    sorted.rows.push_back(t.rows[i]);
    sorted.degrees.push_back(t.degrees[i]);
  }
  return sorted;
}

std::complex<double> to_complex(const picky::Cyclotomic& c) {
  std::complex<double> out = 0;
  const double n = static_cast<double>(c.conductor());
  for (std::size_t i = 0; i < c.coefficients().size(); ++i) {
    out += c.coefficients()[i].get_d() * std::polar(1.0, 2 * M_PI * static_cast<double>(i) / n);
  }
  return out;
}

std::vector<long> character_degrees(const Elements& elems) { return burnside_table(elems).degrees; }

}  // namespace oracle
