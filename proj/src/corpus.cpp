#include "fibrep/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "fibrep/standard.hpp"

namespace fibrep {

namespace {

bool leq(const FiniteCategory& p, ObjId a, ObjId b) { return !p.hom(a, b).empty(); }

// Objects in an order compatible with the relation (fewest predecessors first
// is enough for a poset: x < y implies |down(x)| < |down(y)|).
std::vector<ObjId> linear_extension(const FiniteCategory& p) {
  std::vector<ObjId> order(p.num_objects());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](ObjId a, ObjId b) { return p.incoming(a).size() < p.incoming(b).size(); });
  return order;
}

}  // namespace

CategoryPtr Corpus::poset(int max_objects, double density) {
  std::uniform_int_distribution<int> size(1, max_objects);
  std::bernoulli_distribution edge(density);
  const int n = size(rng_);
  const std::string prefix = "p" + std::to_string(counter_++) + "_";
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng_);
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng_)) rel.emplace_back(names[perm[i]], names[perm[j]]);
  return poset_category(names, rel);
}

CategoryPtr Corpus::poset_with_minimum(int max_objects, double density) {
  auto base = poset(std::max(1, max_objects - 1), density);
  std::vector<std::string> names{base->object_ids()};
  const std::string bottom = "bot" + std::to_string(counter_++);
  std::vector<std::pair<std::string, std::string>> rel;
  for (MorId m = 0; m < static_cast<MorId>(base->num_morphisms()); ++m)
    if (!base->is_identity(m)) rel.emplace_back(base->object_id(base->dom(m)), base->object_id(base->cod(m)));
  for (const auto& x : names) rel.emplace_back(bottom, x);
  names.insert(names.begin(), bottom);
  return poset_category(names, rel);
}

Functor Corpus::monotone_functor(CategoryPtr source, CategoryPtr target) {
  const auto& s = *source;
  const auto& t = *target;
  const auto order = linear_extension(s);
  std::vector<ObjId> image(s.num_objects(), kNone);
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool stuck = false;
    for (ObjId x : order) {
      std::vector<ObjId> options;
      for (ObjId y = 0; y < static_cast<ObjId>(t.num_objects()); ++y) {
        bool ok = true;
        for (MorId m : s.incoming(x))
          if (s.dom(m) != x && !leq(t, image[s.dom(m)], y)) ok = false;
        if (ok) options.push_back(y);
      }
      if (options.empty()) {
        stuck = true;
        break;
      }
      image[x] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
    }
    if (!stuck) return fibrep::monotone_functor(source, target, image);
  }
  std::fill(image.begin(), image.end(), 0);
  return fibrep::monotone_functor(source, target, image);
}

NatTransformation Corpus::transformation_from(const Functor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  const auto order = linear_extension(s);
  std::vector<ObjId> image(s.num_objects(), kNone);
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool stuck = false;
    for (ObjId x : order) {
      std::vector<ObjId> options;
      for (ObjId y = 0; y < static_cast<ObjId>(t.num_objects()); ++y) {
        bool ok = leq(t, f.obj(x), y);
        for (MorId m : s.incoming(x))
          if (s.dom(m) != x && !leq(t, image[s.dom(m)], y)) ok = false;
        if (ok) options.push_back(y);
      }
      if (options.empty()) {
        stuck = true;
        break;
      }
      image[x] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
    }
    if (!stuck) return poset_transformation(f, fibrep::monotone_functor(f.source, f.target, image));
  }
  return identity_transformation(f);
}

std::vector<NamedFunctor> standard_functors() {
  auto star = terminal_category();
  auto interval = interval_category();
  auto two = discrete_category({"a", "b"});
  auto square = square_boundary_category();
  return {
      {"id_*", identity_functor(star)},
      {"id_I", identity_functor(interval)},
      {"I->*", fibrep::monotone_functor(interval, star, {0, 0})},
      {"discrete-2->I", fibrep::monotone_functor(two, interval, {0, 1})},
      {"square-boundary inclusion", fibrep::monotone_functor(two, square, {0, 1})},
  };
}

std::vector<NamedFunctor> functor_corpus(std::uint64_t seed, int extra, int max_objects) {
  auto out = standard_functors();
  Corpus corpus(seed);
  for (int k = 0; k < extra; ++k) {
    auto c = corpus.poset(max_objects);
    auto d = corpus.poset(max_objects);
    out.push_back({"random-" + std::to_string(k), corpus.monotone_functor(c, d)});
  }
  return out;
}

}  // namespace fibrep
