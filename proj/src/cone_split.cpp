#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "snapcx/complex.hpp"
#include "snapcx/errors.hpp"

namespace snapcx {

namespace {

// σ with p taken out of row 0. p is passive, so its trace is {0} and it only
// ever sits in W_0 or G_0.
Witness drop_from_row0(const Witness& sigma, ProcessId p) {
  Witness out = sigma;
  out.rows[0].w.erase(p);
  out.rows[0].g.erase(p);
  return out;
}

using Image = std::pair<std::string, bool>;

}  // namespace

ConeCertificate cone_split(const RoundCounter& r, ProcessId p,
                           BuildOptions options) {
  if (!r.passive().contains(p)) {
    throw InvalidInput("cone_split: process " + std::to_string(p) +
                       " is not passive in " + r.to_text());
  }
  ConeCertificate cert;
  cert.counter = r;
  cert.apex_process = p;
  const ProcessSet rest = r.support() - ProcessSet::singleton(p);
  cert.apex = Witness({{ProcessSet::singleton(p), rest}});

  const Complex k = Complex::build(r, options);

  // Base complex P(r \ p); with an empty support it is the empty simplex only.
  std::vector<Witness> base_simplices;
  std::optional<Complex> base;
  if (rest.empty()) {
    base_simplices.push_back(Witness({Row{}}));
  } else {
    base.emplace(Complex::build(without(r, ProcessSet::singleton(p)), options));
    base_simplices = base->simplices();
  }
  std::set<std::string> base_keys;
  for (const Witness& b : base_simplices) base_keys.insert(canonical_key(b));

  std::vector<Image> image(k.size());
  std::set<Image> seen;
  bool injective = true, lands = true, dims = true;
  for (SimplexId id = 0; id < k.size(); ++id) {
    const Witness& sigma = k.simplex(id);
    const Witness b = drop_from_row0(sigma, p);
    const bool apex = sigma.active().contains(p);
    image[id] = {canonical_key(b), apex};
    cert.pairing.push_back({canonical_key(sigma), image[id].first, apex});
    if (!base_keys.contains(image[id].first)) {
      lands = false;
      if (cert.failure.empty())
        cert.failure = canonical_key(sigma) + " maps outside P(r \\ p)";
    }
    if (!seen.insert(image[id]).second) injective = false;
    if (sigma.dim() != b.dim() + (apex ? 1 : 0)) dims = false;
  }
  cert.bijective = lands && injective && seen.size() == 2 * base_keys.size();
  if (!cert.bijective && cert.failure.empty())
    cert.failure = "pairing is not a bijection onto the join";
  cert.dimension_preserving = dims;

  // Codimension-one faces of (β, a) in the join: (β, false) when a holds,
  // and (β', a) for every codimension-one face β' of β.
  auto join_faces = [&](const Witness& beta, bool apex) {
    std::set<Image> out;
    if (apex) out.insert({canonical_key(beta), false});
    for (int q : beta.active())
      out.insert({canonical_key(ghost(beta, ProcessSet::singleton(q))), apex});
    return out;
  };
  bool faces_ok = true;
  for (SimplexId id = 0; id < k.size() && faces_ok; ++id) {
    std::set<Image> mapped;
    for (SimplexId f : k.faces(id)) mapped.insert(image[f]);
    const Witness b = drop_from_row0(k.simplex(id), p);
    if (mapped != join_faces(b, image[id].second)) {
      faces_ok = false;
      if (cert.failure.empty())
        cert.failure = "face relation differs at " + canonical_key(k.simplex(id));
    }
  }
  cert.face_preserving = faces_ok;
  return cert;
}

}  // namespace snapcx
