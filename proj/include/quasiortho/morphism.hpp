#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quasiortho/group.hpp"

namespace quasiortho {

enum class Tag : std::uint8_t {
  Permutation = 1,
  Automorphism = 2,
  AntiAutomorphism = 4,
  Inner = 8,
};

class TagSet {
 public:
  constexpr TagSet() = default;
  constexpr TagSet(std::initializer_list<Tag> tags) {
    for (auto t : tags) bits_ |= static_cast<std::uint8_t>(t);
  }

  constexpr bool has(Tag t) const noexcept { return (bits_ & static_cast<std::uint8_t>(t)) != 0; }
  constexpr bool contains(TagSet other) const noexcept { return (bits_ & other.bits_) == other.bits_; }
  constexpr TagSet& add(Tag t) noexcept {
    bits_ |= static_cast<std::uint8_t>(t);
    return *this;
  }
  constexpr bool operator==(const TagSet&) const = default;

  /// e.g. "Permutation|Automorphism"; "none" when empty.
  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

/// A total map on the elements of a group together with the classes it was
/// verified to belong to. The image array is shared, so copies are cheap.
class Morphism {
 public:
  Morphism() = default;
  Morphism(Map map, TagSet tags, std::optional<Element> witness = std::nullopt)
      : map_(std::make_shared<const Map>(std::move(map))), tags_(tags), witness_(witness) {}

  const Map& map() const noexcept { return *map_; }
  std::span<const Element> values() const noexcept { return *map_; }
  Element operator()(Element x) const noexcept { return (*map_)[x]; }
  std::size_t size() const noexcept { return map_ ? map_->size() : 0; }

  TagSet tags() const noexcept { return tags_; }
  bool has(Tag t) const noexcept { return tags_.has(t); }
  /// The conjugating element a for J_a; set only when tagged Inner.
  std::optional<Element> witness() const noexcept { return witness_; }

  friend bool operator==(const Morphism& a, const Morphism& b) { return a.map() == b.map(); }

 private:
  std::shared_ptr<const Map> map_;
  TagSet tags_;
  std::optional<Element> witness_;
};

bool is_bijection(std::span<const Element> map, std::size_t n) noexcept;
bool is_homomorphism(const FiniteGroup& g, std::span<const Element> map) noexcept;
bool is_automorphism(const FiniteGroup& g, std::span<const Element> map);
bool is_antiautomorphism(const FiniteGroup& g, std::span<const Element> map);

/// Verifies `map` against every class and returns it with the tags that hold.
/// Inner is tagged with the smallest conjugating element.
Morphism classify(const FiniteGroup& g, Map map);

/// Aut(g) in lexicographic order of the image arrays. Orders above 8 use
/// backtracking over images of a greedily chosen generating set.
std::vector<Morphism> enumerate_automorphisms(const FiniteGroup& g);
/// { I o phi : phi in Aut(g) }, sorted the same way.
std::vector<Morphism> enumerate_antiautomorphisms(const FiniteGroup& g);
/// Distinct inner automorphisms, each with its smallest witness. Works up to
/// the full group order limit, unlike the enumerations above.
std::vector<Morphism> enumerate_inner_automorphisms(const FiniteGroup& g);

inline constexpr std::size_t kMaxEnumerationOrder = 64;

Morphism inner(const FiniteGroup& g, Element a);
Morphism inversion(const FiniteGroup& g);
Morphism identity_morphism(const FiniteGroup& g);

/// f o h, i.e. x -> f(h(x)).
Morphism compose(const FiniteGroup& g, const Morphism& f, const Morphism& h);
Morphism invert(const FiniteGroup& g, const Morphism& f);

/// Right translation x -> x + c.
Morphism right_translation(const FiniteGroup& g, Element c);

/// Space separated image list, e.g. "0 2 4 1 3".
std::string format_map(std::span<const Element> map);

}  // namespace quasiortho
