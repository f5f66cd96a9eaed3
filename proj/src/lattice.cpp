#include "hyperarr/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "hyperarr/error.hpp"
#include "hyperarr/parallel.hpp"

namespace hyperarr {

Flat closure(const Arrangement& a, const Subspace& x) {
  if (x.ambient() != a.ambient() || x.order() != a.field_order())
    throw DomainError("closure: subspace does not live in the arrangement's space");
  Flat out{Subspace::whole(a.ambient(), a.field_order()), Bitset(a.size()), 0, {}};
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (!x.lies_in(a[h])) continue;
    out.support.set(h);
    if (!out.subspace.lies_in(a[h])) {
      out.subspace = intersect(out.subspace, a[h]);
      out.basis.push_back(static_cast<std::uint32_t>(h));
    }
  }
  out.rank = out.subspace.codim();
  return out;
}

std::span<const Flat> IntersectionLattice::level(std::size_t k) const {
  if (k + 1 >= level_begin_.size()) throw DomainError("lattice level out of range");
  return std::span(flats_).subspan(level_begin_[k], level_begin_[k + 1] - level_begin_[k]);
}

std::vector<std::size_t> IntersectionLattice::level_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k + 1 < level_begin_.size(); ++k)
    out.push_back(level_begin_[k + 1] - level_begin_[k]);
  return out;
}

std::optional<FlatId> IntersectionLattice::find(const Bitset& support) const {
  auto it = index_.find(support);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FlatId> IntersectionLattice::find(const Subspace& x, const Arrangement& a) const {
  Flat c = closure(a, x);
  if (!(c.subspace == x)) return std::nullopt;
  return find(c.support);
}

FlatId IntersectionLattice::join(FlatId x, FlatId y) const {
  FlatId cur = x;
  for (std::uint32_t h : flats_[y].basis) cur = cover(cur, h);
  return cur;
}

FlatId IntersectionLattice::meet(FlatId x, FlatId y) const {
  auto it = index_.find(flats_[x].support & flats_[y].support);
  if (it == index_.end()) throw InternalError("meet: support intersection is not a flat");
  return it->second;
}

bool IntersectionLattice::below(FlatId x, FlatId y) const {
  return x != y && flats_[x].support.subset_of(flats_[y].support);
}

void IntersectionLattice::reindex() {
  index_.clear();
  index_.reserve(flats_.size());
  for (std::size_t i = 0; i < flats_.size(); ++i)
    index_.emplace(flats_[i].support, static_cast<FlatId>(i));
}

namespace {

struct Candidate {
  Flat flat;
  std::vector<std::size_t> added;  // hyperplanes outside the parent's support
};

// Distinct covers of `parent`, in order of their smallest new hyperplane.
// local[h] receives the candidate index for every h outside the support.
std::vector<Candidate> covers_of(const Arrangement& a, const Flat& parent,
                                 std::vector<std::int32_t>& local) {
  const std::size_t n = a.size();
  std::vector<Candidate> out;
  local.assign(n, -1);
  for (std::size_t h = 0; h < n; ++h) {
    if (parent.support.test(h) || local[h] >= 0) continue;
    Candidate c;
    c.flat.subspace = intersect(parent.subspace, a[h]);
    c.flat.support = parent.support;
    c.flat.support.set(h);
    c.flat.rank = parent.rank + 1;
    c.flat.basis = parent.basis;
    c.flat.basis.push_back(static_cast<std::uint32_t>(h));
    c.added.push_back(h);
    local[h] = static_cast<std::int32_t>(out.size());
    // An earlier unmapped g cannot lie in this cover: its own cover would
    // coincide with this one and would already have claimed h.
    for (std::size_t g = h + 1; g < n; ++g) {
      if (parent.support.test(g) || local[g] >= 0) continue;
      if (c.flat.subspace.lies_in(a[g])) {
        c.flat.support.set(g);
        c.added.push_back(g);
        local[g] = static_cast<std::int32_t>(out.size());
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

IntersectionLattice build_lattice(const Arrangement& a, const LatticeOptions& opts) {
  const std::size_t n = a.size();
  IntersectionLattice lat;
  lat.ambient_ = a.ambient();
  lat.order_ = a.field_order();
  lat.hyperplanes_ = n;
  lat.flats_.push_back(Flat{Subspace::whole(a.ambient(), a.field_order()), Bitset(n), 0, {}});
  lat.level_begin_ = {0, 1};

  for (;;) {
    const std::size_t begin = lat.level_begin_[lat.level_begin_.size() - 2];
    const std::size_t end = lat.flats_.size();
    const std::size_t count = end - begin;

    std::vector<std::vector<Candidate>> found(count);
    std::vector<std::vector<std::int32_t>> local(count);
    parallel_for(count, opts.threads, [&](std::size_t i) {
      found[i] = covers_of(a, lat.flats_[begin + i], local[i]);
    });

    // Deterministic merge: parents in level order, covers in local order.
    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    std::vector<Flat> next;
    std::vector<std::vector<std::size_t>> global(count);  // local -> next index
    for (std::size_t i = 0; i < count; ++i) {
      for (auto& c : found[i]) {
        auto [it, inserted] = seen.try_emplace(c.flat.support, next.size());
        if (inserted) next.push_back(std::move(c.flat));
        global[i].push_back(it->second);
      }
      found[i].clear();
    }

    std::vector<std::size_t> order(next.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return next[x].support < next[y].support;
    });
    std::vector<FlatId> final_id(next.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      final_id[order[pos]] = static_cast<FlatId>(end + pos);

    lat.up_.resize(end * n);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t f = begin + i;
      for (std::size_t h = 0; h < n; ++h) {
        const std::int32_t l = local[i][h];
        lat.up_[f * n + h] = l < 0 ? static_cast<FlatId>(f)
                                   : final_id[global[i][static_cast<std::size_t>(l)]];
      }
    }

    if (next.empty()) break;
    if (end + next.size() > opts.max_flats)
      throw LimitError("lattice exceeds --max-flats=" + std::to_string(opts.max_flats) +
                       " at rank " + std::to_string(lat.level_begin_.size() - 1));
    for (std::size_t idx : order) lat.flats_.push_back(std::move(next[idx]));
    lat.level_begin_.push_back(lat.flats_.size());
  }
  lat.reindex();
  return lat;
}

}  // namespace hyperarr
