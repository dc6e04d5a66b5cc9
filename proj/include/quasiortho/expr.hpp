#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "quasiortho/morphism.hpp"

namespace quasiortho {

/// A pointwise expression over maps of a group, written additively.
///
///   Sum[f, g]     x -> f(x) + g(x), terms added left to right
///   Negate(f)     x -> -f(x)
///   Compose(f, g) x -> f(g(x))
///
/// `*` composes, `+` appends to a sum, unary `-` negates and `f - g` is
/// Sum[f, Negate(g)]. Trees are immutable and share subtrees.
class MorphismExpr {
 public:
  enum class Kind { Atom, Identity, Inversion, Inner, InnerInverse, Compose, Inverse, Sum, Negate };

  static MorphismExpr atom(Morphism m, std::string name = {});
  static MorphismExpr identity();
  static MorphismExpr inversion();
  static MorphismExpr inner(Element a);
  static MorphismExpr inner_inverse(Element a);
  static MorphismExpr compose(MorphismExpr f, MorphismExpr h);
  static MorphismExpr inverse(MorphismExpr f);
  static MorphismExpr sum(std::vector<MorphismExpr> terms);
  static MorphismExpr negate(MorphismExpr f);

  Kind kind() const noexcept;
  const std::vector<MorphismExpr>& children() const noexcept;
  /// Atom payload; null for other kinds.
  const Morphism* morphism() const noexcept;
  /// Conjugating element of Inner / InnerInverse.
  Element element() const noexcept;
  const std::string& name() const noexcept;

  MorphismExpr inv() const { return inverse(*this); }

  friend MorphismExpr operator*(MorphismExpr f, MorphismExpr h) { return compose(std::move(f), std::move(h)); }
  friend MorphismExpr operator+(MorphismExpr f, MorphismExpr h);
  friend MorphismExpr operator-(MorphismExpr f) { return negate(std::move(f)); }
  friend MorphismExpr operator-(MorphismExpr f, MorphismExpr h) { return std::move(f) + negate(std::move(h)); }

  struct Node;

 private:
  explicit MorphismExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Reusable buffers for repeated evaluation on one thread.
class ExprScratch {
 public:
  Element* acquire(std::size_t n);
  void release() noexcept { --depth_; }

 private:
  std::vector<std::vector<Element>> pool_;
  std::size_t depth_ = 0;
};

Map eval(const FiniteGroup& g, const MorphismExpr& e);
void eval_into(const FiniteGroup& g, const MorphismExpr& e, std::span<Element> out, ExprScratch& scratch);

bool is_permutation_expr(const FiniteGroup& g, const MorphismExpr& e);

/// ASCII rendering, e.g. "-(phi^-1 beta) + psi^-1 delta".
std::string to_string(const MorphismExpr& e);

}  // namespace quasiortho
