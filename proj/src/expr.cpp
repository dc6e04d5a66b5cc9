#include "quasiortho/expr.hpp"

#include <algorithm>
#include <numeric>

namespace quasiortho {

struct MorphismExpr::Node {
  Kind kind;
  std::vector<MorphismExpr> children;
  Morphism morphism;
  Element element = 0;
  std::string name;
};

namespace {

bool is_leaf(const MorphismExpr& e) {
  switch (e.kind()) {
    case MorphismExpr::Kind::Atom:
    case MorphismExpr::Kind::Identity:
    case MorphismExpr::Kind::Inversion:
    case MorphismExpr::Kind::Inner:
    case MorphismExpr::Kind::InnerInverse:
      return true;
    default:
      return false;
  }
}

}  // namespace

MorphismExpr MorphismExpr::atom(Morphism m, std::string name) {
  return MorphismExpr(std::make_shared<const Node>(Node{Kind::Atom, {}, std::move(m), 0, std::move(name)}));
}

MorphismExpr MorphismExpr::identity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Identity, {}, {}, 0, {}});
  return MorphismExpr(node);
}

MorphismExpr MorphismExpr::inversion() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Inversion, {}, {}, 0, {}});
  return MorphismExpr(node);
}

MorphismExpr MorphismExpr::inner(Element a) {
  return MorphismExpr(std::make_shared<const Node>(Node{Kind::Inner, {}, {}, a, {}}));
}

MorphismExpr MorphismExpr::inner_inverse(Element a) {
  return MorphismExpr(std::make_shared<const Node>(Node{Kind::InnerInverse, {}, {}, a, {}}));
}

MorphismExpr MorphismExpr::compose(MorphismExpr f, MorphismExpr h) {
  return MorphismExpr(
      std::make_shared<const Node>(Node{Kind::Compose, {std::move(f), std::move(h)}, {}, 0, {}}));
}

MorphismExpr MorphismExpr::inverse(MorphismExpr f) {
  return MorphismExpr(std::make_shared<const Node>(Node{Kind::Inverse, {std::move(f)}, {}, 0, {}}));
}

MorphismExpr MorphismExpr::sum(std::vector<MorphismExpr> terms) {
  if (terms.empty()) throw ExprError("empty sum", "Sum[]");
  return MorphismExpr(std::make_shared<const Node>(Node{Kind::Sum, std::move(terms), {}, 0, {}}));
}

MorphismExpr MorphismExpr::negate(MorphismExpr f) {
  return MorphismExpr(std::make_shared<const Node>(Node{Kind::Negate, {std::move(f)}, {}, 0, {}}));
}

MorphismExpr operator+(MorphismExpr f, MorphismExpr h) {
  std::vector<MorphismExpr> terms;
  if (f.kind() == MorphismExpr::Kind::Sum) {
    terms = f.children();
  } else {
    terms.push_back(std::move(f));
  }
  if (h.kind() == MorphismExpr::Kind::Sum) {
    terms.insert(terms.end(), h.children().begin(), h.children().end());
  } else {
    terms.push_back(std::move(h));
  }
  return MorphismExpr::sum(std::move(terms));
}

MorphismExpr::Kind MorphismExpr::kind() const noexcept { return node_->kind; }
const std::vector<MorphismExpr>& MorphismExpr::children() const noexcept { return node_->children; }
const Morphism* MorphismExpr::morphism() const noexcept {
  return node_->kind == Kind::Atom ? &node_->morphism : nullptr;
}
Element MorphismExpr::element() const noexcept { return node_->element; }
const std::string& MorphismExpr::name() const noexcept { return node_->name; }

Element* ExprScratch::acquire(std::size_t n) {
  if (depth_ == pool_.size()) pool_.emplace_back();
  auto& buf = pool_[depth_++];
  if (buf.size() < n) buf.resize(n);
  return buf.data();
}

namespace {

struct Lease {
  ExprScratch& scratch;
  Element* data;
  Lease(ExprScratch& s, std::size_t n) : scratch(s), data(s.acquire(n)) {}
  ~Lease() { scratch.release(); }
  Lease(const Lease&) = delete;
  Lease& operator=(const Lease&) = delete;
};

struct Evaluator {
  const FiniteGroup& g;
  ExprScratch& scratch;
  std::size_t n;

  Element leaf(const MorphismExpr& e, Element x) const {
    switch (e.kind()) {
      case MorphismExpr::Kind::Atom: return (*e.morphism())(x);
      case MorphismExpr::Kind::Identity: return x;
      case MorphismExpr::Kind::Inversion: return g.inverse(x);
      case MorphismExpr::Kind::Inner: return g.conjugate(e.element(), x);
      case MorphismExpr::Kind::InnerInverse: return g.conjugate(g.inverse(e.element()), x);
      default: return x;
    }
  }

  void check_atom(const MorphismExpr& e) const {
    const auto* m = e.morphism();
    if (m->size() != n) {
      throw ExprError("atom size does not match group order " + std::to_string(n), to_string(e));
    }
    for (auto v : m->values()) {
      if (v >= n) throw ExprError("atom entry out of range", to_string(e));
    }
  }

  void run(const MorphismExpr& e, Element* out) {
    using K = MorphismExpr::Kind;
    switch (e.kind()) {
      case K::Atom:
        check_atom(e);
        std::copy(e.morphism()->values().begin(), e.morphism()->values().end(), out);
        return;
      case K::Identity:
      case K::Inversion:
      case K::Inner:
      case K::InnerInverse:
        for (std::size_t x = 0; x < n; ++x) out[x] = leaf(e, static_cast<Element>(x));
        return;
      case K::Compose: {
        const auto& f = e.children()[0];
        run(e.children()[1], out);
        if (is_leaf(f)) {
          if (f.kind() == K::Atom) check_atom(f);
          for (std::size_t x = 0; x < n; ++x) out[x] = leaf(f, out[x]);
          return;
        }
        Lease outer(scratch, n);
        run(f, outer.data);
        for (std::size_t x = 0; x < n; ++x) out[x] = outer.data[out[x]];
        return;
      }
      case K::Inverse: {
        Lease inner(scratch, n);
        run(e.children()[0], inner.data);
        std::fill(out, out + n, Element{0xFFFF});
        for (std::size_t x = 0; x < n; ++x) {
          if (out[inner.data[x]] != 0xFFFF) {
            throw ExprError("inverse of a non-bijective map", to_string(e.children()[0]));
          }
          out[inner.data[x]] = static_cast<Element>(x);
        }
        return;
      }
      case K::Sum: {
        const auto& terms = e.children();
        run(terms[0], out);
        if (terms.size() == 1) return;
        Lease term(scratch, n);
        for (std::size_t i = 1; i < terms.size(); ++i) {
          run(terms[i], term.data);
          for (std::size_t x = 0; x < n; ++x) out[x] = g.op(out[x], term.data[x]);
        }
        return;
      }
      case K::Negate:
        run(e.children()[0], out);
        for (std::size_t x = 0; x < n; ++x) out[x] = g.inverse(out[x]);
        return;
    }
  }
};

// Binding strength used to decide parentheses: sums bind loosest, then
// negation, then composition.
int precedence(const MorphismExpr& e) {
  switch (e.kind()) {
    case MorphismExpr::Kind::Sum: return 0;
    case MorphismExpr::Kind::Negate: return 1;
    case MorphismExpr::Kind::Compose: return 2;
    default: return 3;
  }
}

std::string wrap(const MorphismExpr& e, int min_prec) {
  auto s = to_string(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

void eval_into(const FiniteGroup& g, const MorphismExpr& e, std::span<Element> out, ExprScratch& scratch) {
  if (out.size() != g.order()) throw ExprError("output buffer has the wrong size", to_string(e));
  Evaluator{g, scratch, g.order()}.run(e, out.data());
}

Map eval(const FiniteGroup& g, const MorphismExpr& e) {
  ExprScratch scratch;
  Map out(g.order());
  eval_into(g, e, out, scratch);
  return out;
}

bool is_permutation_expr(const FiniteGroup& g, const MorphismExpr& e) {
  return is_bijection(eval(g, e), g.order());
}

std::string to_string(const MorphismExpr& e) {
  using K = MorphismExpr::Kind;
  switch (e.kind()) {
    case K::Atom: return e.name().empty() ? "[" + format_map(e.morphism()->values()) + "]" : e.name();
    case K::Identity: return "e";
    case K::Inversion: return "I";
    case K::Inner: return "J_" + std::to_string(e.element());
    case K::InnerInverse: return "J_" + std::to_string(e.element()) + "^-1";
    case K::Compose: return wrap(e.children()[0], 2) + " " + wrap(e.children()[1], 2);
    case K::Inverse: return wrap(e.children()[0], 3) + "^-1";
    case K::Negate: return "-" + wrap(e.children()[0], 2);
    case K::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        const auto& t = e.children()[i];
        if (i == 0) {
          out = wrap(t, 1);
        } else if (t.kind() == K::Negate) {
          out += " - " + wrap(t.children()[0], 2);
        } else {
          out += " + " + wrap(t, 1);
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace quasiortho
