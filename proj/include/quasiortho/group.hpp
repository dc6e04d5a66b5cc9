#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quasiortho/error.hpp"

namespace quasiortho {

/// Dense element index in [0, n).
using Element = std::uint16_t;

/// A total map on [0, n), stored as the image array.
using Map = std::vector<Element>;

/// Square table given row by row; row = left operand.
using TableRows = std::vector<std::vector<Element>>;

inline constexpr std::size_t kMaxGroupOrder = 128;

/// A finite group stored as its Cayley table, written additively:
/// `op(x, y)` is x + y and `inverse(x)` is -x.
///
/// Immutable after construction, so instances can be shared freely between
/// threads.
class FiniteGroup {
 public:
  /// Validates `rows` and builds the group. Checks run in the order
  /// square shape, entry range, Latin property, associativity, identity, so
  /// a Latin square that fails associativity is reported as such even when
  /// it also lacks an identity.
  static FiniteGroup from_cayley_table(const TableRows& rows, std::string label = {});

  std::size_t order() const noexcept { return order_; }
  Element op(Element x, Element y) const noexcept { return table_[std::size_t{x} * order_ + y]; }
  Element inverse(Element x) const noexcept { return inverse_[x]; }
  Element identity() const noexcept { return identity_; }
  const std::string& label() const noexcept { return label_; }
  bool is_abelian() const noexcept { return abelian_; }

  /// x - y, i.e. x + (-y).
  Element sub(Element x, Element y) const noexcept { return op(x, inverse_[y]); }
  /// a + x - a.
  Element conjugate(Element a, Element x) const noexcept { return op(op(a, x), inverse_[a]); }
  std::size_t element_order(Element x) const noexcept;

  std::span<const Element> table() const noexcept { return table_; }
  std::span<const Element> inverses() const noexcept { return inverse_; }
  TableRows rows() const;

  FiniteGroup with_label(std::string label) const;

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  bool abelian_ = true;
  std::string label_;
};

/// Z_n with x + y = (x + y) mod n.
FiniteGroup cyclic_group(std::size_t n);

/// S_n for 1 <= n <= 5: permutations of {0..n-1} in lexicographic one-line
/// order, with op(p, q) = p o q (apply q first).
FiniteGroup symmetric_group(std::size_t n);

/// D_n for n >= 3: indices 0..n-1 are r^i, indices n..2n-1 are s r^i.
FiniteGroup dihedral_group(std::size_t n);

/// Q_8 from its literal Cayley table; indices are 1, i, j, k, -1, -i, -j, -k.
FiniteGroup quaternion_group();

/// Componentwise product; the pair (a, b) has index a * |h| + b.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Parses labels such as "Z5", "S3", "D4", "Q8" and products "Z2xZ4".
FiniteGroup group_from_spec(std::string_view spec);

/// Reads the Cayley-table text format: first non-comment line is n, then n
/// rows of n integers. Lines starting with '#' are comments.
TableRows read_table(std::istream& in);

/// Writes the same format. `header` lines are emitted as '#' comments first.
void write_table(std::ostream& out, std::span<const Element> flat, std::size_t n,
                 std::string_view header = {});

}  // namespace quasiortho
