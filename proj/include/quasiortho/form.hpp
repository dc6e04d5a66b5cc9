#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasiortho/morphism.hpp"

namespace quasiortho {

enum class FormClass {
  LeftLinear,
  RightLinear,
  LeftAlinear,
  RightAlinear,
  Linear,
  LeftLinearRightAlinear,
  LeftAlinearRightLinear,
  Alinear,
  TQuasigroup,
};

enum class ConstantPosition { Middle, Right };

/// What a form component must be verified as.
enum class ComponentKind { Automorphism, AntiAutomorphism, Permutation };

struct ClassShape {
  ComponentKind left;
  ComponentKind right;
};

ClassShape shape_of(FormClass cls) noexcept;
bool is_one_sided(FormClass cls) noexcept;

std::string_view to_string(FormClass cls) noexcept;
/// Accepts the enumerator name or a lower-case alias such as "linear",
/// "left-linear", "lin-alin" or "t".
std::optional<FormClass> parse_form_class(std::string_view text);

std::string_view to_string(ConstantPosition pos) noexcept;

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A quasigroup operation written through group components:
///
///   F(x, y) = L(x) + c + R(y)    (Middle)
///   F(x, y) = L(x) + R(y) + c    (Right)
///
/// and x.y = F(x, y), or x.y = F(y, x) when `transposed` is set.
/// Alinear components are stored as the anti-automorphism itself.
struct QuasigroupForm {
  GroupPtr group;
  FormClass cls = FormClass::Linear;
  Morphism left;
  Morphism right;
  Element constant = 0;
  ConstantPosition position = ConstantPosition::Right;
  bool transposed = false;

  const FiniteGroup& g() const noexcept { return *group; }
};

/// Checks component tags against the class and the carrier requirements.
QuasigroupForm make_form(GroupPtr group, FormClass cls, Morphism left, Morphism right, Element constant = 0,
                         ConstantPosition position = ConstantPosition::Right, bool transposed = false);

/// Same components, other class. The tags must satisfy the new class.
QuasigroupForm reclass(const QuasigroupForm& form, FormClass cls);

/// x.y for the form, without materializing.
Element form_apply(const QuasigroupForm& form, Element x, Element y) noexcept;

/// An n x n Latin square over element indices.
struct Quasigroup {
  std::size_t order = 0;
  std::vector<Element> table;
  std::shared_ptr<const QuasigroupForm> provenance;

  Element at(Element x, Element y) const noexcept { return table[std::size_t{x} * order + y]; }
  friend bool operator==(const Quasigroup& a, const Quasigroup& b) {
    return a.order == b.order && a.table == b.table;
  }

  static Quasigroup from_rows(const TableRows& rows);
};

bool is_latin_square(std::span<const Element> table, std::size_t n) noexcept;

Quasigroup materialize(const QuasigroupForm& form);

/// Equivalent form with the constant moved; the table is unchanged.
QuasigroupForm normalize_constant(const QuasigroupForm& form, ConstantPosition target);

/// Moves the constant into the plain-permutation component of a one-sided
/// form, leaving the identity as constant.
QuasigroupForm absorb_constant(const QuasigroupForm& form);

/// Same table with the transposition flag flipped by swapping the roles of
/// the components. Requires an abelian carrier.
QuasigroupForm untranspose(const QuasigroupForm& form);

/// Human readable single line, e.g. "Linear L=[0 2 4 1 3] R=[...] c=1 (right)".
std::string describe(const QuasigroupForm& form);

}  // namespace quasiortho
