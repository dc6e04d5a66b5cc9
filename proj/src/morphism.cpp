#include "quasiortho/morphism.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace quasiortho {

std::string TagSet::to_string() const {
  static constexpr std::pair<Tag, const char*> kNames[] = {
      {Tag::Permutation, "Permutation"},
      {Tag::Automorphism, "Automorphism"},
      {Tag::AntiAutomorphism, "AntiAutomorphism"},
      {Tag::Inner, "Inner"},
  };
  std::string out;
  for (auto [tag, name] : kNames) {
    if (!has(tag)) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out.empty() ? "none" : out;
}

namespace {

void check_shape(const FiniteGroup& g, std::span<const Element> map) {
  if (map.size() != g.order()) {
    throw MorphismError(MorphismError::Code::Malformed, "map has " + std::to_string(map.size()) +
                                                            " entries, group order is " +
                                                            std::to_string(g.order()));
  }
  for (auto v : map) {
    if (v >= g.order()) {
      throw MorphismError(MorphismError::Code::Malformed,
                          "map entry " + std::to_string(v) + " is out of range");
    }
  }
}

void check_cap(const FiniteGroup& g) {
  if (g.order() > kMaxEnumerationOrder) {
    throw MorphismError(MorphismError::Code::OrderCapExceeded,
                        "enumeration is limited to groups of order <= 64, got " + std::to_string(g.order()));
  }
}

bool reverses(const FiniteGroup& g, std::span<const Element> map) noexcept {
  const auto n = g.order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
      if (map[g.op(ex, ey)] != g.op(map[ey], map[ex])) return false;
    }
  }
  return true;
}

Map conjugation_map(const FiniteGroup& g, Element a) {
  Map m(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) m[x] = g.conjugate(a, static_cast<Element>(x));
  return m;
}

// Subgroup generators chosen greedily in index order.
std::vector<Element> greedy_generators(const FiniteGroup& g) {
  const auto n = g.order();
  std::vector<Element> gens;
  std::vector<char> in_sub(n, 0);
  in_sub[g.identity()] = 1;
  for (std::size_t x = 0; x < n; ++x) {
    if (in_sub[x]) continue;
    gens.push_back(static_cast<Element>(x));
    std::fill(in_sub.begin(), in_sub.end(), 0);
    std::vector<Element> frontier{g.identity()};
    in_sub[g.identity()] = 1;
    while (!frontier.empty()) {
      const auto y = frontier.back();
      frontier.pop_back();
      for (auto h : gens) {
        const auto z = g.op(y, h);
        if (!in_sub[z]) {
          in_sub[z] = 1;
          frontier.push_back(z);
        }
      }
    }
  }
  return gens;
}

constexpr Element kUnset = 0xFFFF;

// Extends the images of gens[0..k) to the subgroup they generate. Fails on an
// inconsistent or non-injective extension.
bool extend(const FiniteGroup& g, std::span<const Element> gens, std::span<const Element> images,
            Map& m, std::vector<char>& used) {
  std::fill(m.begin(), m.end(), kUnset);
  std::fill(used.begin(), used.end(), 0);
  m[g.identity()] = g.identity();
  used[g.identity()] = 1;
  std::vector<Element> frontier{g.identity()};
  while (!frontier.empty()) {
    const auto x = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto y = g.op(x, gens[i]);
      const auto v = g.op(m[x], images[i]);
      if (m[y] == kUnset) {
        if (used[v]) return false;
        m[y] = v;
        used[v] = 1;
        frontier.push_back(y);
      } else if (m[y] != v) {
        return false;
      }
    }
  }
  return true;
}

void backtrack(const FiniteGroup& g, std::span<const Element> gens, std::vector<Element>& images,
               Map& scratch, std::vector<char>& used, std::vector<Map>& out) {
  const auto n = g.order();
  if (images.size() == gens.size()) {
    if (!extend(g, gens, images, scratch, used)) return;
    if (is_homomorphism(g, scratch)) out.push_back(scratch);
    return;
  }
  const auto target_order = g.element_order(gens[images.size()]);
  for (std::size_t y = 0; y < n; ++y) {
    const auto ey = static_cast<Element>(y);
    if (g.element_order(ey) != target_order) continue;
    images.push_back(ey);
    if (extend(g, gens.first(images.size()), images, scratch, used)) {
      backtrack(g, gens, images, scratch, used, out);
    }
    images.pop_back();
  }
}

}  // namespace

bool is_bijection(std::span<const Element> map, std::size_t n) noexcept {
  if (map.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (auto v : map) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool is_homomorphism(const FiniteGroup& g, std::span<const Element> map) noexcept {
  const auto n = g.order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
      if (map[g.op(ex, ey)] != g.op(map[ex], map[ey])) return false;
    }
  }
  return true;
}

bool is_automorphism(const FiniteGroup& g, std::span<const Element> map) {
  check_shape(g, map);
  return is_bijection(map, g.order()) && is_homomorphism(g, map);
}

bool is_antiautomorphism(const FiniteGroup& g, std::span<const Element> map) {
  check_shape(g, map);
  return is_bijection(map, g.order()) && reverses(g, map);
}

Morphism classify(const FiniteGroup& g, Map map) {
  check_shape(g, map);
  TagSet tags;
  std::optional<Element> witness;
  if (is_bijection(map, g.order())) {
    tags.add(Tag::Permutation);
    if (is_homomorphism(g, map)) {
      tags.add(Tag::Automorphism);
      for (std::size_t a = 0; a < g.order(); ++a) {
        const auto ea = static_cast<Element>(a);
        bool match = true;
        for (std::size_t x = 0; x < g.order() && match; ++x) {
          match = map[x] == g.conjugate(ea, static_cast<Element>(x));
        }
        if (match) {
          tags.add(Tag::Inner);
          witness = ea;
          break;
        }
      }
    }
    if (reverses(g, map)) tags.add(Tag::AntiAutomorphism);
  }
  return Morphism(std::move(map), tags, witness);
}

std::vector<Morphism> enumerate_automorphisms(const FiniteGroup& g) {
  check_cap(g);
  const auto n = g.order();
  std::vector<Map> found;
  if (n <= 8) {
    std::vector<Element> others;
    for (std::size_t x = 0; x < n; ++x)
      if (x != g.identity()) others.push_back(static_cast<Element>(x));
    std::vector<Element> images = others;
    Map m(n);
    do {
      m[g.identity()] = g.identity();
      for (std::size_t i = 0; i < others.size(); ++i) m[others[i]] = images[i];
      if (is_homomorphism(g, m)) found.push_back(m);
    } while (std::next_permutation(images.begin(), images.end()));
  } else {
    const auto gens = greedy_generators(g);
    std::vector<Element> images;
    Map scratch(n);
    std::vector<char> used(n);
    backtrack(g, gens, images, scratch, used, found);
  }
  std::sort(found.begin(), found.end());
  std::vector<Morphism> out;
  out.reserve(found.size());
  for (auto& m : found) out.push_back(classify(g, std::move(m)));
  return out;
}

std::vector<Morphism> enumerate_antiautomorphisms(const FiniteGroup& g) {
  const auto auts = enumerate_automorphisms(g);
  std::vector<Map> maps;
  maps.reserve(auts.size());
  for (const auto& phi : auts) {
    Map m(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) m[x] = g.inverse(phi(static_cast<Element>(x)));
    maps.push_back(std::move(m));
  }
  std::sort(maps.begin(), maps.end());
  std::vector<Morphism> out;
  out.reserve(maps.size());
  for (auto& m : maps) out.push_back(classify(g, std::move(m)));
  return out;
}

std::vector<Morphism> enumerate_inner_automorphisms(const FiniteGroup& g) {
  std::vector<std::pair<Map, Element>> seen;
  for (std::size_t a = 0; a < g.order(); ++a) {
    auto m = conjugation_map(g, static_cast<Element>(a));
    const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto& p) { return p.first == m; });
    if (!dup) seen.emplace_back(std::move(m), static_cast<Element>(a));
  }
  std::sort(seen.begin(), seen.end());
  std::vector<Morphism> out;
  out.reserve(seen.size());
  const TagSet tags{Tag::Permutation, Tag::Automorphism, Tag::Inner};
  for (auto& [m, a] : seen) {
    TagSet t = tags;
    if (reverses(g, m)) t.add(Tag::AntiAutomorphism);
    out.emplace_back(std::move(m), t, a);
  }
  return out;
}

Morphism inner(const FiniteGroup& g, Element a) {
  auto m = conjugation_map(g, a);
  TagSet tags{Tag::Permutation, Tag::Automorphism, Tag::Inner};
  if (reverses(g, m)) tags.add(Tag::AntiAutomorphism);
  return Morphism(std::move(m), tags, a);
}

Morphism inversion(const FiniteGroup& g) {
  Map m(g.inverses().begin(), g.inverses().end());
  return classify(g, std::move(m));
}

Morphism identity_morphism(const FiniteGroup& g) {
  Map m(g.order());
  std::iota(m.begin(), m.end(), Element{0});
  return classify(g, std::move(m));
}

Morphism compose(const FiniteGroup& g, const Morphism& f, const Morphism& h) {
  check_shape(g, f.values());
  check_shape(g, h.values());
  Map m(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) m[x] = f(h(static_cast<Element>(x)));
  return classify(g, std::move(m));
}

Morphism invert(const FiniteGroup& g, const Morphism& f) {
  check_shape(g, f.values());
  if (!is_bijection(f.values(), g.order())) {
    throw MorphismError(MorphismError::Code::Malformed, "cannot invert a non-bijective map");
  }
  Map m(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) m[f(static_cast<Element>(x))] = static_cast<Element>(x);
  return classify(g, std::move(m));
}

Morphism right_translation(const FiniteGroup& g, Element c) {
  Map m(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) m[x] = g.op(static_cast<Element>(x), c);
  return classify(g, std::move(m));
}

std::string format_map(std::span<const Element> map) {
  std::ostringstream out;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (i) out << ' ';
    out << map[i];
  }
  return out.str();
}

}  // namespace quasiortho
