#include "quasiortho/parastrophe.hpp"

namespace quasiortho {

namespace {

using Positions = std::array<int, 3>;

// Coordinate k of the new triple is coordinate p[k] of the old one.
constexpr std::array<Positions, 6> kPositions{{
    {0, 1, 2},
    {1, 0, 2},
    {2, 1, 0},
    {0, 2, 1},
    {1, 2, 0},
    {2, 0, 1},
}};

ParastropheLabel from_positions(const Positions& p) noexcept {
  for (std::size_t i = 0; i < kPositions.size(); ++i) {
    if (kPositions[i] == p) return static_cast<ParastropheLabel>(i);
  }
  return ParastropheLabel::e;
}

const Positions& positions(ParastropheLabel s) noexcept { return kPositions[static_cast<std::size_t>(s)]; }

Morphism realize(const FiniteGroup& g, const MorphismExpr& e) { return classify(g, eval(g, e)); }

}  // namespace

std::string_view to_string(ParastropheLabel s) noexcept {
  switch (s) {
    case ParastropheLabel::e: return "e";
    case ParastropheLabel::s12: return "12";
    case ParastropheLabel::s13: return "13";
    case ParastropheLabel::s23: return "23";
    case ParastropheLabel::s123: return "123";
    case ParastropheLabel::s132: return "132";
  }
  return "e";
}

std::optional<ParastropheLabel> parse_parastrophe(std::string_view text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  if (!text.empty() && text.front() == 's') text.remove_prefix(1);
  for (auto s : kAllParastrophes) {
    if (text == to_string(s)) return s;
  }
  if (text == "" || text == "id") return ParastropheLabel::e;
  return std::nullopt;
}

ParastropheLabel then(ParastropheLabel sigma, ParastropheLabel tau) noexcept {
  const auto& ps = positions(sigma);
  const auto& pt = positions(tau);
  Positions p{};
  for (std::size_t k = 0; k < 3; ++k) p[k] = ps[static_cast<std::size_t>(pt[k])];
  return from_positions(p);
}

ParastropheLabel inverse(ParastropheLabel s) noexcept {
  for (auto t : kAllParastrophes) {
    if (then(s, t) == ParastropheLabel::e) return t;
  }
  return ParastropheLabel::e;
}

Quasigroup parastrophe_table(const Quasigroup& q, ParastropheLabel sigma) {
  const auto n = q.order;
  const auto& p = positions(sigma);
  Quasigroup out;
  out.order = n;
  out.table.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::array<std::size_t, 3> t{x, y, q.table[x * n + y]};
      out.table[t[static_cast<std::size_t>(p[0])] * n + t[static_cast<std::size_t>(p[1])]] =
          static_cast<Element>(t[static_cast<std::size_t>(p[2])]);
    }
  }
  return out;
}

QuasigroupForm parastrophe_form(const QuasigroupForm& form, ParastropheLabel sigma) {
  using S = ParastropheLabel;
  const FormClass cls = form.cls;
  if (is_one_sided(cls)) {
    throw FormError(FormError::Code::UnsupportedClass,
                    std::string(to_string(cls)) +
                        " forms have no closed-form parastrophes; use the table-level operation");
  }
  if (form.transposed) {
    QuasigroupForm base = form;
    base.transposed = false;
    return parastrophe_form(base, then(S::s12, sigma));
  }
  const QuasigroupForm f = normalize_constant(form, ConstantPosition::Right);
  if (sigma == S::e) return f;
  if (sigma == S::s12) {
    QuasigroupForm out = f;
    out.transposed = true;
    return out;
  }

  const auto& g = f.g();
  const auto I = MorphismExpr::inversion();
  const auto J = [](Element a) { return MorphismExpr::inner(a); };
  const auto shape = shape_of(cls);
  const bool left_anti = shape.left == ComponentKind::AntiAutomorphism;
  const bool right_anti = shape.right == ComponentKind::AntiAutomorphism;
  const auto L = MorphismExpr::atom(f.left, "L");
  const auto R = MorphismExpr::atom(f.right, "R");
  const Morphism phi_m = realize(g, left_anti ? I * L : L);
  const Morphism psi_m = realize(g, right_anti ? I * R : R);
  const auto phi = MorphismExpr::atom(phi_m, "phi");
  const auto psi = MorphismExpr::atom(psi_m, "psi");
  const auto phi_inv = phi.inv();
  const auto psi_inv = psi.inv();
  const Element c = f.constant;
  const Element phi_inv_c = eval(g, phi_inv)[c];
  const Element psi_inv_c = eval(g, psi_inv)[c];

  struct Closed {
    MorphismExpr left;
    MorphismExpr right;
    Element constant;
    FormClass cls;
    bool transposed;
  };

  // Each class has a closed form for s13 and s23; s123 and s132 reuse one of
  // them with the transposition flag flipped.
  auto pick = [&](const Closed& c13, const Closed& c23) -> Closed {
    switch (sigma) {
      case S::s13: return c13;
      case S::s23: return c23;
      case S::s123: {
        Closed out = c13;
        out.transposed = !out.transposed;
        return out;
      }
      default: {
        Closed out = c23;
        out.transposed = !out.transposed;
        return out;
      }
    }
  };

  std::optional<Closed> closed;
  switch (cls) {
    case FormClass::Linear:
    case FormClass::TQuasigroup: {
      const Element a = g.inverse(phi_inv_c);
      const Element b = g.inverse(psi_inv_c);
      closed = pick({phi_inv, I * J(a) * phi_inv * psi, a, FormClass::LeftLinearRightAlinear, false},
                    {I * psi_inv * phi, psi_inv, b, FormClass::LeftAlinearRightLinear, false});
      break;
    }
    case FormClass::Alinear: {
      const Element a = phi_inv_c, b = psi_inv_c;
      closed = pick({I * phi_inv * psi, I * J(a) * phi_inv, a, FormClass::Alinear, true},
                    {I * J(b) * psi_inv, I * J(b) * psi_inv * phi, b, FormClass::Alinear, true});
      break;
    }
    case FormClass::LeftLinearRightAlinear: {
      const Element a = g.inverse(phi_inv_c), b = psi_inv_c;
      closed = pick({phi_inv, J(a) * phi_inv * psi, a, FormClass::Linear, false},
                    {I * J(b) * psi_inv, J(b) * psi_inv * phi, b, FormClass::LeftAlinearRightLinear, true});
      break;
    }
    case FormClass::LeftAlinearRightLinear: {
      const Element a = phi_inv_c, b = g.inverse(psi_inv_c);
      closed = pick({phi_inv * psi, I * J(a) * phi_inv, a, FormClass::LeftLinearRightAlinear, true},
                    {psi_inv * phi, psi_inv, b, FormClass::Linear, false});
      break;
    }
    default:
      break;
  }
  FormClass out_cls = closed->cls;
  if (cls == FormClass::TQuasigroup) out_cls = FormClass::TQuasigroup;
  return make_form(f.group, out_cls, realize(g, closed->left), realize(g, closed->right), closed->constant,
                   ConstantPosition::Right, closed->transposed);
}

Quasigroup isotopy_shift(const Quasigroup& q, std::span<const Element> gamma) {
  const auto n = q.order;
  if (!is_bijection(gamma, n)) {
    throw FormError(FormError::Code::Malformed, "isotopy component is not a bijection");
  }
  std::vector<Element> inv(n);
  for (std::size_t x = 0; x < n; ++x) inv[gamma[x]] = static_cast<Element>(x);
  Quasigroup out;
  out.order = n;
  out.table.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) out.table[i] = inv[q.table[i]];
  return out;
}

}  // namespace quasiortho
