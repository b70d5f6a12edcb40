#include "picky/conjugacy.hpp"

#include <numeric>
#include <string>
#include <unordered_map>

#include "picky/errors.hpp"

namespace picky {

struct ConjugacyData::Impl {
  PermutationGroup group;
  std::vector<Permutation> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> orders;
  std::uint64_t exponent = 1;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;  // element -> position
  std::vector<std::uint32_t> element_class;
  std::vector<std::vector<std::size_t>> power_maps;  // s = 0 .. exponent-1
};

ConjugacyData::ConjugacyData(const PermutationGroup& group) {
  auto impl = std::make_shared<Impl>();
  impl->group = group;
  const auto& elems = group.elements();
  impl->index.reserve(elems.size() * 2);
  for (std::size_t i = 0; i < elems.size(); ++i) impl->index.emplace(elems[i], static_cast<std::uint32_t>(i));

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  impl->element_class.assign(elems.size(), kUnset);
  std::vector<Permutation> gen_invs;
  for (const auto& g : group.generators()) gen_invs.push_back(g.inverse());

  // Elements are sorted, so the first unvisited element is the least of its class.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (impl->element_class[i] != kUnset) continue;
    auto cls = static_cast<std::uint32_t>(impl->reps.size());
    impl->reps.push_back(elems[i]);
    std::vector<std::uint32_t> orbit{static_cast<std::uint32_t>(i)};
    impl->element_class[i] = cls;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const auto& y = elems[orbit[k]];
      for (std::size_t g = 0; g < gen_invs.size(); ++g) {
        auto pos = impl->index.at(gen_invs[g] * y * group.generators()[g]);
        if (impl->element_class[pos] == kUnset) {
          impl->element_class[pos] = cls;
          orbit.push_back(pos);
        }
      }
    }
    impl->sizes.push_back(orbit.size());
    impl->orders.push_back(elems[i].order());
    impl->exponent = std::lcm(impl->exponent, impl->orders.back());
  }

  impl->power_maps.resize(impl->exponent);
  for (std::uint64_t s = 0; s < impl->exponent; ++s) {
    auto& map = impl->power_maps[s];
    map.resize(impl->reps.size());
    for (std::size_t k = 0; k < impl->reps.size(); ++k) {
      map[k] = impl->element_class[impl->index.at(impl->reps[k].pow(static_cast<long long>(s)))];
    }
  }
  impl_ = std::move(impl);
}

const PermutationGroup& ConjugacyData::group() const { return impl_->group; }
std::size_t ConjugacyData::class_count() const { return impl_->reps.size(); }
const std::vector<Permutation>& ConjugacyData::representatives() const { return impl_->reps; }
const std::vector<std::uint64_t>& ConjugacyData::sizes() const { return impl_->sizes; }

std::uint64_t ConjugacyData::centralizer_order(std::size_t k) const {
  return impl_->group.size() / impl_->sizes.at(k);
}

const std::vector<std::uint64_t>& ConjugacyData::element_orders() const { return impl_->orders; }
std::uint64_t ConjugacyData::exponent() const { return impl_->exponent; }

std::optional<std::size_t> ConjugacyData::find_class(const Permutation& g) const {
  auto it = impl_->index.find(g);
  if (it == impl_->index.end()) return std::nullopt;
  return impl_->element_class[it->second];
}

std::size_t ConjugacyData::class_of(const Permutation& g) const {
  if (g.degree() != impl_->group.degree()) throw InputError("element degree does not match the group");
  auto k = find_class(g);
  if (!k) throw InputError("element " + g.to_cycles() + " is not in the group");
  return *k;
}

std::size_t ConjugacyData::power_class(std::size_t k, long long s) const {
  auto e = static_cast<long long>(impl_->exponent);
  long long r = ((s % e) + e) % e;
  return impl_->power_maps[static_cast<std::size_t>(r)].at(k);
}

const std::vector<std::size_t>& ConjugacyData::power_map(long long s) const {
  auto e = static_cast<long long>(impl_->exponent);
  long long r = ((s % e) + e) % e;
  return impl_->power_maps[static_cast<std::size_t>(r)];
}

std::vector<Permutation> ConjugacyData::class_elements(std::size_t k) const {
  std::vector<Permutation> out;
  const auto& elems = impl_->group.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (impl_->element_class[i] == k) out.push_back(elems[i]);
  }
  return out;
}

std::span<const std::uint32_t> ConjugacyData::element_classes() const { return impl_->element_class; }

}  // namespace picky
