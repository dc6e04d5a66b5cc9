#include "quasiortho/form.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace quasiortho {

namespace {

struct ClassInfo {
  FormClass cls;
  std::string_view name;
  ClassShape shape;
  std::array<std::string_view, 3> aliases;
};

constexpr auto A = ComponentKind::Automorphism;
constexpr auto N = ComponentKind::AntiAutomorphism;
constexpr auto P = ComponentKind::Permutation;

constexpr std::array<ClassInfo, 9> kClasses{{
    {FormClass::LeftLinear, "LeftLinear", {A, P}, {"left-linear", "ll", ""}},
    {FormClass::RightLinear, "RightLinear", {P, A}, {"right-linear", "rl", ""}},
    {FormClass::LeftAlinear, "LeftAlinear", {N, P}, {"left-alinear", "la", ""}},
    {FormClass::RightAlinear, "RightAlinear", {P, N}, {"right-alinear", "ra", ""}},
    {FormClass::Linear, "Linear", {A, A}, {"linear", "lin", ""}},
    {FormClass::LeftLinearRightAlinear, "LeftLinearRightAlinear", {A, N}, {"lin-alin", "linalin", ""}},
    {FormClass::LeftAlinearRightLinear, "LeftAlinearRightLinear", {N, A}, {"alin-lin", "alinlin", ""}},
    {FormClass::Alinear, "Alinear", {N, N}, {"alinear", "alin", ""}},
    {FormClass::TQuasigroup, "TQuasigroup", {A, A}, {"t", "t-quasigroup", "tquasigroup"}},
}};

const ClassInfo& info(FormClass cls) noexcept {
  return kClasses[static_cast<std::size_t>(cls)];
}

Tag required_tag(ComponentKind k) noexcept {
  switch (k) {
    case ComponentKind::Automorphism: return Tag::Automorphism;
    case ComponentKind::AntiAutomorphism: return Tag::AntiAutomorphism;
    case ComponentKind::Permutation: return Tag::Permutation;
  }
  return Tag::Permutation;
}

std::string_view kind_name(ComponentKind k) noexcept {
  switch (k) {
    case ComponentKind::Automorphism: return "an automorphism";
    case ComponentKind::AntiAutomorphism: return "an anti-automorphism";
    case ComponentKind::Permutation: return "a permutation";
  }
  return "";
}

void check_component(const FiniteGroup& g, const Morphism& m, ComponentKind kind, std::string_view side,
                     FormClass cls) {
  if (m.size() != g.order()) {
    throw FormError(FormError::Code::Malformed,
                    std::string(side) + " map has " + std::to_string(m.size()) + " entries, group order is " +
                        std::to_string(g.order()));
  }
  if (!m.has(required_tag(kind))) {
    throw FormError(FormError::Code::TagMismatch, std::string(side) + " map of a " +
                                                      std::string(to_string(cls)) + " form must be " +
                                                      std::string(kind_name(kind)) + ", got tags " +
                                                      m.tags().to_string());
  }
}

FormClass mirror(FormClass cls) noexcept {
  switch (cls) {
    case FormClass::LeftLinear: return FormClass::RightLinear;
    case FormClass::RightLinear: return FormClass::LeftLinear;
    case FormClass::LeftAlinear: return FormClass::RightAlinear;
    case FormClass::RightAlinear: return FormClass::LeftAlinear;
    case FormClass::LeftLinearRightAlinear: return FormClass::LeftAlinearRightLinear;
    case FormClass::LeftAlinearRightLinear: return FormClass::LeftLinearRightAlinear;
    default: return cls;
  }
}

Morphism map_each(const FiniteGroup& g, const Morphism& m, auto&& fn) {
  Map out(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) out[x] = fn(m(static_cast<Element>(x)));
  return classify(g, std::move(out));
}

}  // namespace

ClassShape shape_of(FormClass cls) noexcept { return info(cls).shape; }

bool is_one_sided(FormClass cls) noexcept {
  const auto s = shape_of(cls);
  return s.left == ComponentKind::Permutation || s.right == ComponentKind::Permutation;
}

std::string_view to_string(FormClass cls) noexcept { return info(cls).name; }

std::optional<FormClass> parse_form_class(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& ci : kClasses) {
    if (text == ci.name) return ci.cls;
    for (auto alias : ci.aliases) {
      if (!alias.empty() && lower == alias) return ci.cls;
    }
  }
  return std::nullopt;
}

std::string_view to_string(ConstantPosition pos) noexcept {
  return pos == ConstantPosition::Middle ? "middle" : "right";
}

QuasigroupForm make_form(GroupPtr group, FormClass cls, Morphism left, Morphism right, Element constant,
                         ConstantPosition position, bool transposed) {
  if (!group) throw FormError(FormError::Code::Malformed, "form has no carrier group");
  const auto& g = *group;
  if (constant >= g.order()) {
    throw FormError(FormError::Code::Malformed, "constant " + std::to_string(constant) + " is out of range");
  }
  if (cls == FormClass::TQuasigroup && !g.is_abelian()) {
    throw FormError(FormError::Code::NonAbelianCarrier,
                    "a T-quasigroup needs an abelian carrier, " + g.label() + " is not abelian");
  }
  const auto shape = shape_of(cls);
  check_component(g, left, shape.left, "left", cls);
  check_component(g, right, shape.right, "right", cls);
  return QuasigroupForm{std::move(group), cls, std::move(left), std::move(right), constant, position, transposed};
}

QuasigroupForm reclass(const QuasigroupForm& form, FormClass cls) {
  return make_form(form.group, cls, form.left, form.right, form.constant, form.position, form.transposed);
}

Element form_apply(const QuasigroupForm& form, Element x, Element y) noexcept {
  const auto& g = form.g();
  if (form.transposed) std::swap(x, y);
  const auto lx = form.left(x), ry = form.right(y);
  return form.position == ConstantPosition::Middle ? g.op(g.op(lx, form.constant), ry)
                                                   : g.op(g.op(lx, ry), form.constant);
}

bool is_latin_square(std::span<const Element> table, std::size_t n) noexcept {
  if (table.size() != n * n) return false;
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++stamp;
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = table[r * n + c];
      if (v >= n || seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++stamp;
    for (std::size_t r = 0; r < n; ++r) {
      const auto v = table[r * n + c];
      if (seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  return true;
}

Quasigroup Quasigroup::from_rows(const TableRows& rows) {
  Quasigroup q;
  q.order = rows.size();
  for (const auto& r : rows) {
    if (r.size() != q.order) throw FormError(FormError::Code::Malformed, "quasigroup table is not square");
    q.table.insert(q.table.end(), r.begin(), r.end());
  }
  if (q.order == 0 || !is_latin_square(q.table, q.order)) {
    throw FormError(FormError::Code::NotLatin, "table is not a Latin square");
  }
  return q;
}

Quasigroup materialize(const QuasigroupForm& form) {
  const auto n = form.g().order();
  Quasigroup q;
  q.order = n;
  q.table.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      q.table[x * n + y] = form_apply(form, static_cast<Element>(x), static_cast<Element>(y));
  if (!is_latin_square(q.table, n)) {
    throw FormError(FormError::Code::NotLatin, "form does not produce a Latin square: " + describe(form));
  }
  q.provenance = std::make_shared<const QuasigroupForm>(form);
  return q;
}

QuasigroupForm normalize_constant(const QuasigroupForm& form, ConstantPosition target) {
  if (form.position == target) return form;
  QuasigroupForm out = form;
  out.position = target;
  const auto& g = form.g();
  // L x + c + R y = L x + J_c R y + c
  const Element a = target == ConstantPosition::Right ? form.constant : g.inverse(form.constant);
  out.right = map_each(g, form.right, [&](Element v) { return g.conjugate(a, v); });
  return out;
}

QuasigroupForm absorb_constant(const QuasigroupForm& form) {
  if (!is_one_sided(form.cls)) {
    throw FormError(FormError::Code::NotAbsorbable,
                    std::string(to_string(form.cls)) + " forms cannot absorb their constant");
  }
  const auto& g = form.g();
  const Element c = form.constant;
  if (c == g.identity()) return form;
  const auto shape = shape_of(form.cls);
  QuasigroupForm out;
  if (shape.right == ComponentKind::Permutation) {
    out = normalize_constant(form, ConstantPosition::Right);
    out.right = map_each(g, out.right, [&](Element v) { return g.op(v, c); });
  } else {
    out = normalize_constant(form, ConstantPosition::Middle);
    out.left = map_each(g, out.left, [&](Element v) { return g.op(v, c); });
  }
  out.constant = g.identity();
  out.position = form.position;
  return out;
}

QuasigroupForm untranspose(const QuasigroupForm& form) {
  if (!form.g().is_abelian()) {
    throw FormError(FormError::Code::NonAbelianCarrier,
                    "swapping components needs an abelian carrier, " + form.g().label() + " is not abelian");
  }
  QuasigroupForm out = form;
  std::swap(out.left, out.right);
  out.cls = mirror(form.cls);
  out.transposed = !form.transposed;
  return out;
}

std::string describe(const QuasigroupForm& form) {
  std::string out(to_string(form.cls));
  out += " L=[" + format_map(form.left.values()) + "]";
  out += " R=[" + format_map(form.right.values()) + "]";
  out += " c=" + std::to_string(form.constant) + " (" + std::string(to_string(form.position)) + ")";
  if (form.transposed) out += " transposed";
  return out;
}

}  // namespace quasiortho
