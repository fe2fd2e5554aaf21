#include "snapcx/complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

#include "snapcx/errors.hpp"
#include "snapcx/schedule.hpp"

namespace snapcx {

std::size_t simplex_cap_from_env() {
  if (const char* env = std::getenv("SNAPCX_MAX_SIMPLICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSimplexCap;
}

bool is_simplex_of(const RoundCounter& r, const Witness& sigma) {
  if (!is_witness_structure(sigma)) return false;
  if (sigma.support() != r.support()) return false;
  const ProcessSet a = sigma.active();
  for (int q : sigma.support()) {
    const int len = sigma.trace(q).size();
    const int rounds = r.count(q);
    if (a.contains(q) ? len != rounds + 1 : len > rounds + 1) return false;
  }
  return true;
}

std::vector<Witness> facets_of(const RoundCounter& r) {
  if (r.support().empty()) {
    throw InvalidInput("facets need a nonempty support");
  }
  std::vector<Witness> out;
  for (const Schedule& s : enumerate_schedules(r)) out.push_back(to_facet(s, r));
  std::sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

Complex Complex::build(const RoundCounter& r, BuildOptions options) {
  if (r.support().empty()) {
    if (!options.allow_empty_support) {
      throw InvalidInput("cannot build a complex over an empty support");
    }
    Complex k;
    k.simplices_.push_back(Witness({Row{}}));
    k.dims_.push_back(-1);
    k.dim_offsets_ = {0, 1};
    k.index_.emplace(k.simplices_[0], 0);
    k.face_offsets_ = {0, 0};
    k.coface_offsets_ = {0, 0};
    return k;
  }
  const int top = r.support().size() - 1;
  const std::uint64_t facet_count = count_schedules(r);
  if (facet_count > options.max_simplices) {
    throw CapExceeded("complex for " + r.to_text() + " has " +
                      std::to_string(facet_count) +
                      " facets, above the simplex cap of " +
                      std::to_string(options.max_simplices));
  }

  // levels[d + 1] holds the simplices of dimension d.
  std::vector<std::vector<Witness>> levels(static_cast<std::size_t>(top) + 2);
  levels[top + 1] = facets_of(r);
  std::size_t total = levels[top + 1].size();
  for (int d = top; d >= 0; --d) {
    auto ghosts = kernels::single_ghosts(levels[d + 1], options.exec);
    std::unordered_set<Witness, WitnessHash> next;
    for (auto& list : ghosts) {
      for (auto& face : list) next.insert(std::move(face));
    }
    total += next.size();
    if (total > options.max_simplices) {
      throw CapExceeded("complex for " + r.to_text() +
                        " exceeds the simplex cap of " +
                        std::to_string(options.max_simplices));
    }
    levels[d].assign(next.begin(), next.end());
    std::sort(levels[d].begin(), levels[d].end(),
              [](const Witness& a, const Witness& b) {
                return canonical_key(a) < canonical_key(b);
              });
  }

  Complex k;
  k.counter_ = r;
  k.top_dim_ = top;
  k.dim_offsets_.push_back(0);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (auto& s : levels[i]) {
      k.simplices_.push_back(std::move(s));
      k.dims_.push_back(static_cast<int>(i) - 1);
    }
    k.dim_offsets_.push_back(k.simplices_.size());
  }
  k.index_.reserve(k.simplices_.size());
  for (SimplexId id = 0; id < k.simplices_.size(); ++id) {
    k.index_.emplace(k.simplices_[id], id);
  }
  for (std::size_t id = k.dim_offsets_[top + 1]; id < k.dim_offsets_[top + 2];
       ++id) {
    k.facets_.push_back(static_cast<SimplexId>(id));
  }

  auto ghosts = kernels::single_ghosts(k.simplices_, options.exec);
  k.face_offsets_.assign(k.simplices_.size() + 1, 0);
  for (std::size_t id = 0; id < ghosts.size(); ++id) {
    k.face_offsets_[id + 1] = k.face_offsets_[id] + ghosts[id].size();
  }
  k.face_ids_.resize(k.face_offsets_.back());
  for (std::size_t id = 0; id < ghosts.size(); ++id) {
    std::size_t pos = k.face_offsets_[id];
    for (const Witness& face : ghosts[id]) {
      auto it = k.index_.find(face);
      if (it == k.index_.end()) {
        throw VerificationFailure("face " + canonical_key(face) +
                                  " missing from the face closure");
      }
      k.face_ids_[pos++] = it->second;
    }
  }

  std::vector<std::size_t> degree(k.simplices_.size() + 1, 0);
  for (SimplexId f : k.face_ids_) ++degree[f + 1];
  k.coface_offsets_.assign(k.simplices_.size() + 1, 0);
  for (std::size_t i = 0; i < k.simplices_.size(); ++i) {
    k.coface_offsets_[i + 1] = k.coface_offsets_[i] + degree[i + 1];
  }
  k.coface_ids_.resize(k.coface_offsets_.back());
  std::vector<std::size_t> fill(k.coface_offsets_.begin(),
                                k.coface_offsets_.end() - 1);
  for (SimplexId id = 0; id < k.simplices_.size(); ++id) {
    for (SimplexId f : k.faces(id)) k.coface_ids_[fill[f]++] = id;
  }
  return k;
}

std::optional<SimplexId> Complex::find(const Witness& sigma) const {
  auto it = index_.find(sigma);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SimplexId Complex::id_of(const Witness& sigma) const {
  auto id = find(sigma);
  if (!id) {
    throw InvalidInput(canonical_key(sigma) + " is not a simplex of P(" +
                       counter_.to_text() + ")");
  }
  return *id;
}

std::span<const SimplexId> Complex::faces(SimplexId id) const {
  return {face_ids_.data() + face_offsets_[id],
          face_offsets_[id + 1] - face_offsets_[id]};
}

std::span<const SimplexId> Complex::cofaces(SimplexId id) const {
  return {coface_ids_.data() + coface_offsets_[id],
          coface_offsets_[id + 1] - coface_offsets_[id]};
}

std::ranges::iota_view<SimplexId, SimplexId> Complex::of_dim(int d) const {
  if (d < -1 || d > top_dim_) return {SimplexId{0}, SimplexId{0}};
  return {static_cast<SimplexId>(dim_offsets_[d + 1]),
          static_cast<SimplexId>(dim_offsets_[d + 2])};
}

std::vector<std::size_t> Complex::f_vector() const {
  std::vector<std::size_t> f;
  for (int d = 0; d <= top_dim_; ++d) {
    f.push_back(dim_offsets_[d + 2] - dim_offsets_[d + 1]);
  }
  return f;
}

std::vector<SimplexId> Complex::all_faces(SimplexId id) const {
  std::vector<SimplexId> out;
  for (const Witness& f : snapcx::all_faces(simplices_[id])) {
    out.push_back(id_of(f));
  }
  return out;
}

std::vector<SimplexId> Complex::vertices(SimplexId id) const {
  std::vector<SimplexId> out;
  for (const Witness& v : vertices_of(simplices_[id])) out.push_back(id_of(v));
  return out;
}

}  // namespace snapcx
