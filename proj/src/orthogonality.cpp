#include "quasiortho/orthogonality.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace quasiortho {

namespace {

using FC = FormClass;
using S = ParastropheLabel;
using Q = Quantifier;

constexpr OperandSignature sig(FC cls, bool transposed = false) { return {cls, transposed}; }
constexpr OperandSignature kNone{FC::Linear, false};

CriterionInfo pair(CriterionId id, std::string_view name, Q q, OperandSignature a, OperandSignature b,
                   std::string_view statement) {
  return {id, name, q, 1, false, a, b, S::e, statement};
}

CriterionInfo par(CriterionId id, std::string_view name, Q q, FC family, S sigma, std::string_view statement,
                  std::size_t parts = 1) {
  return {id, name, q, parts, true, sig(family), kNone, sigma, statement};
}

std::vector<CriterionInfo> build_catalog() {
  using C = CriterionId;
  return {
      pair(C::LL_LL, "LL_LL", Q::None, sig(FC::LeftLinear), sig(FC::LeftLinear), "-(phi^-1 beta) + psi^-1 delta"),
      pair(C::RL_RL, "RL_RL", Q::None, sig(FC::RightLinear), sig(FC::RightLinear), "phi^-1 alpha - psi^-1 gamma"),
      pair(C::RA_RA, "RA_RA", Q::None, sig(FC::RightAlinear), sig(FC::RightAlinear),
           "-(phibar^-1 alpha) + psibar^-1 gamma"),
      pair(C::LA_LA, "LA_LA", Q::None, sig(FC::LeftAlinear), sig(FC::LeftAlinear),
           "phibar^-1 beta - psibar^-1 delta"),
      pair(C::LL_RA, "LL_RA", Q::None, sig(FC::LeftLinear), sig(FC::RightAlinear, true),
           "(I psibar)^-1 gamma + phi^-1 beta"),
      pair(C::LL_RA_alt, "LL_RA_alt", Q::None, sig(FC::LeftLinear, true), sig(FC::RightAlinear),
           "(I psibar)^-1 gamma + phi^-1 beta"),
      pair(C::LL_LA, "LL_LA", Q::ForAll, sig(FC::LeftLinear), sig(FC::LeftAlinear),
           "(I psibar)^-1 delta + J_{-(I psibar)^-1 b} phi^-1 beta, all b"),
      pair(C::LA_RL, "LA_RL", Q::None, sig(FC::LeftAlinear), sig(FC::RightLinear, true),
           "psi^-1 gamma + (I phibar)^-1 beta"),
      pair(C::LIN_LIN, "LIN_LIN", Q::None, sig(FC::Linear), sig(FC::Linear), "-(gamma^-1 delta) + alpha^-1 beta"),
      pair(C::T_T, "T_T", Q::None, sig(FC::TQuasigroup), sig(FC::TQuasigroup),
           "alpha^-1 beta - gamma^-1 delta is an automorphism"),
      pair(C::LIN_LIN12, "LIN_LIN12", Q::ForAll, sig(FC::Linear), sig(FC::Linear, true),
           "-(J_t gamma^-1 delta) + beta^-1 alpha, all t"),
      pair(C::ALIN_ALIN12, "ALIN_ALIN12", Q::ForAll, sig(FC::Alinear), sig(FC::Alinear, true),
           "(I betabar)^-1 I alphabar - J_t (I gammabar)^-1 I deltabar, all t"),
      pair(C::LL_RL12, "LL_RL12", Q::ForAll, sig(FC::LeftLinear), sig(FC::RightLinear, true),
           "J_t psi^-1 gamma - phi^-1 beta, all t"),
      pair(C::LL_RL12_alt, "LL_RL12_alt", Q::ForAll, sig(FC::LeftLinear, true), sig(FC::RightLinear),
           "I psi^-1 gamma + J_{-psi^-1 b} phi^-1 beta, all b"),
      pair(C::LIN_LL12, "LIN_LL12", Q::ForAll, sig(FC::Linear), sig(FC::LeftLinear, true),
           "J_{psi^-1 b} psi^-1 delta - beta^-1 phi, all b"),

      par(C::PAR_LIN12, "PAR_LIN12", Q::ForAll, FC::Linear, S::s12, "-(J_t phi^-1 psi) + psi^-1 phi, all t"),
      par(C::PAR_LIN13, "PAR_LIN13", Q::None, FC::Linear, S::s13, "phi J_{-phi^-1 c} + e"),
      par(C::PAR_LIN23, "PAR_LIN23", Q::None, FC::Linear, S::s23, "e + psi"),
      par(C::PAR_LIN123, "PAR_LIN123", Q::None, FC::Linear, S::s123, "phi J_{psi^-1 c}^-1 + psi^2"),
      par(C::PAR_LIN132, "PAR_LIN132", Q::None, FC::Linear, S::s132, "phi^2 + psi"),

      par(C::PAR_ALIN12, "PAR_ALIN12", Q::ForAll, FC::Alinear, S::s12, "psi^-1 phi - J_t phi^-1 psi, all t"),
      par(C::PAR_ALIN13, "PAR_ALIN13", Q::ForAll, FC::Alinear, S::s13, "phi - J_{psi t} J_c, all t"),
      par(C::PAR_ALIN23, "PAR_ALIN23", Q::ForAll, FC::Alinear, S::s23, "e + I psi J_t, all t"),
      par(C::PAR_ALIN123, "PAR_ALIN123", Q::None, FC::Alinear, S::s123, "psi^2 - phi J_{psi^-1 c}"),
      par(C::PAR_ALIN132, "PAR_ALIN132", Q::None, FC::Alinear, S::s132, "psi - phi^2"),

      par(C::PAR_LINALIN12, "PAR_LINALIN12", Q::None, FC::LeftLinearRightAlinear, S::s12,
          "phi^-1 psi - psi^-1 phi"),
      par(C::PAR_LINALIN13, "PAR_LINALIN13", Q::None, FC::LeftLinearRightAlinear, S::s13, "e + phi J_{-c}"),
      par(C::PAR_LINALIN23, "PAR_LINALIN23", Q::ForAll, FC::LeftLinearRightAlinear, S::s23, "I J_t + psi, all t"),
      par(C::PAR_LINALIN123, "PAR_LINALIN123", Q::None, FC::LeftLinearRightAlinear, S::s123,
          "phi + J_{psi(-c)} psi^2"),
      par(C::PAR_LINALIN132, "PAR_LINALIN132", Q::ForAll, FC::LeftLinearRightAlinear, S::s132,
          "phi^2 + I J_k psi, all k"),

      par(C::PAR_ALINLIN12, "PAR_ALINLIN12", Q::None, FC::LeftAlinearRightLinear, S::s12,
          "-(phi^-1 psi) + psi^-1 phi"),
      par(C::PAR_ALINLIN13, "PAR_ALINLIN13", Q::ForAll, FC::LeftAlinearRightLinear, S::s13,
          "phi + I J_{-b + c}, all b"),
      par(C::PAR_ALINLIN23, "PAR_ALINLIN23", Q::None, FC::LeftAlinearRightLinear, S::s23, "psi + e"),
      par(C::PAR_ALINLIN123, "PAR_ALINLIN123", Q::ForAll, FC::LeftAlinearRightLinear, S::s123,
          "psi^2 + phi I J_t, all t"),
      par(C::PAR_ALINLIN132, "PAR_ALINLIN132", Q::None, FC::LeftAlinearRightLinear, S::s132, "phi^2 + psi"),

      par(C::PAR_T12, "PAR_T12", Q::Conjunction, FC::TQuasigroup, S::s12, "phi - psi and phi + psi", 2),
      par(C::PAR_T13, "PAR_T13", Q::None, FC::TQuasigroup, S::s13, "e + phi"),
      par(C::PAR_T23, "PAR_T23", Q::None, FC::TQuasigroup, S::s23, "e + psi"),
      par(C::PAR_T123, "PAR_T123", Q::None, FC::TQuasigroup, S::s123, "phi + psi^2"),
      par(C::PAR_T132, "PAR_T132", Q::None, FC::TQuasigroup, S::s132, "phi^2 + psi"),
  };
}

[[noreturn]] void mismatch(const std::string& what) {
  throw OrthogonalityError(OrthogonalityError::Code::ClassMismatch, what);
}

// Pair criteria are sums of two terms, each drawn from one operand:
//   term = [-] [J_k] half(x)
// where half is a map built from that operand's components and k is t, h(t)
// or -h(t) for a helper map h of operand B.
enum class Conj { None, T, Helper, NegHelper };

struct Term {
  Side side;
  bool negate;
  Conj conj;
};

using HalfBuilder = MorphismExpr (*)(const MorphismExpr& L, const MorphismExpr& R);

struct PairTemplate {
  std::array<const char*, 2> a_names;
  std::array<const char*, 2> b_names;
  HalfBuilder a_half;
  HalfBuilder b_half;
  HalfBuilder b_helper;
  std::array<Term, 2> terms;
  bool homomorphism;
};

MorphismExpr Iexpr() { return MorphismExpr::inversion(); }

MorphismExpr linv_r(const MorphismExpr& L, const MorphismExpr& R) { return L.inv() * R; }
MorphismExpr rinv_l(const MorphismExpr& L, const MorphismExpr& R) { return R.inv() * L; }
MorphismExpr irinv_l(const MorphismExpr& L, const MorphismExpr& R) { return (Iexpr() * R).inv() * L; }
MorphismExpr ilinv_r(const MorphismExpr& L, const MorphismExpr& R) { return (Iexpr() * L).inv() * R; }
MorphismExpr ilinv(const MorphismExpr& L, const MorphismExpr&) { return (Iexpr() * L).inv(); }
MorphismExpr linv(const MorphismExpr& L, const MorphismExpr&) { return L.inv(); }
MorphismExpr rinv(const MorphismExpr&, const MorphismExpr& R) { return R.inv(); }
MorphismExpr i_rinv_l(const MorphismExpr& L, const MorphismExpr& R) { return Iexpr() * R.inv() * L; }
MorphismExpr alin_rinv_l(const MorphismExpr& L, const MorphismExpr& R) {
  return (Iexpr() * R).inv() * (Iexpr() * L);
}
MorphismExpr alin_linv_r(const MorphismExpr& L, const MorphismExpr& R) {
  return (Iexpr() * L).inv() * (Iexpr() * R);
}

constexpr Term tA{Side::A, false, Conj::None};
constexpr Term tA_neg{Side::A, true, Conj::None};
constexpr Term tB{Side::B, false, Conj::None};
constexpr Term tB_neg{Side::B, true, Conj::None};

const PairTemplate& pair_template(CriterionId id) {
  using C = CriterionId;
  static const std::unordered_map<C, PairTemplate> kTemplates{
      {C::LL_LL, {{"phi", "beta"}, {"psi", "delta"}, linv_r, linv_r, nullptr, {tA_neg, tB}, false}},
      {C::RL_RL, {{"alpha", "phi"}, {"gamma", "psi"}, rinv_l, rinv_l, nullptr, {tA, tB_neg}, false}},
      {C::RA_RA, {{"alpha", "phibar"}, {"gamma", "psibar"}, rinv_l, rinv_l, nullptr, {tA_neg, tB}, false}},
      {C::LA_LA, {{"phibar", "beta"}, {"psibar", "delta"}, linv_r, linv_r, nullptr, {tA, tB_neg}, false}},
      {C::LL_RA, {{"phi", "beta"}, {"gamma", "psibar"}, linv_r, irinv_l, nullptr, {tB, tA}, false}},
      {C::LL_RA_alt, {{"phi", "beta"}, {"gamma", "psibar"}, linv_r, irinv_l, nullptr, {tB, tA}, false}},
      {C::LL_LA,
       {{"phi", "beta"}, {"psibar", "delta"}, linv_r, ilinv_r, ilinv, {tB, {Side::A, false, Conj::NegHelper}},
        false}},
      {C::LA_RL, {{"phibar", "beta"}, {"gamma", "psi"}, ilinv_r, rinv_l, nullptr, {tB, tA}, false}},
      {C::LIN_LIN, {{"alpha", "beta"}, {"gamma", "delta"}, linv_r, linv_r, nullptr, {tB_neg, tA}, false}},
      {C::T_T, {{"alpha", "beta"}, {"gamma", "delta"}, linv_r, linv_r, nullptr, {tA, tB_neg}, true}},
      {C::LIN_LIN12,
       {{"alpha", "beta"}, {"gamma", "delta"}, rinv_l, linv_r, nullptr, {Term{Side::B, true, Conj::T}, tA}, false}},
      {C::ALIN_ALIN12,
       {{"alphabar", "betabar"},
        {"gammabar", "deltabar"},
        alin_rinv_l,
        alin_linv_r,
        nullptr,
        {tA, Term{Side::B, true, Conj::T}},
        false}},
      {C::LL_RL12,
       {{"phi", "beta"}, {"gamma", "psi"}, linv_r, rinv_l, nullptr, {Term{Side::B, false, Conj::T}, tA_neg}, false}},
      {C::LL_RL12_alt,
       {{"phi", "beta"}, {"gamma", "psi"}, linv_r, i_rinv_l, rinv, {tB, {Side::A, false, Conj::NegHelper}}, false}},
      {C::LIN_LL12,
       {{"phi", "beta"}, {"psi", "delta"}, rinv_l, linv_r, linv, {Term{Side::B, false, Conj::Helper}, tA_neg}, false}},
  };
  const auto it = kTemplates.find(id);
  if (it == kTemplates.end()) mismatch(std::string(to_string(id)) + " is not a pair criterion");
  return it->second;
}

QuasigroupForm view_for(const OperandSignature& sig, const QuasigroupForm& form, std::string_view what) {
  if (form.transposed != sig.transposed) {
    mismatch(std::string(what) + " must be " + (sig.transposed ? "transposed" : "untransposed"));
  }
  QuasigroupForm v;
  try {
    v = reclass(form, sig.cls);
  } catch (const FormError& e) {
    mismatch(std::string(what) + " does not fit class " + std::string(to_string(sig.cls)) + ": " + e.what());
  }
  return is_one_sided(sig.cls) ? absorb_constant(v) : normalize_constant(v, ConstantPosition::Right);
}

void check_same_carrier(const QuasigroupForm& a, const QuasigroupForm& b) {
  if (a.g().order() != b.g().order()) {
    throw OrthogonalityError(OrthogonalityError::Code::OrderMismatch,
                             "operands have orders " + std::to_string(a.g().order()) + " and " +
                                 std::to_string(b.g().order()));
  }
  if (a.group != b.group && !std::ranges::equal(a.g().table(), b.g().table())) {
    mismatch("operands are built over different group tables");
  }
}

void check_quantifier(const CriterionInfo& info, std::optional<Element> t, std::size_t n) {
  const bool quantified = info.quantifier != Q::None;
  if (quantified && !t) {
    throw OrthogonalityError(OrthogonalityError::Code::QuantifierMismatch,
                             std::string(info.name) + " is quantified and needs t");
  }
  if (!quantified && t) {
    throw OrthogonalityError(OrthogonalityError::Code::QuantifierMismatch,
                             std::string(info.name) + " takes no quantifier value");
  }
  const std::size_t range = info.quantifier == Q::Conjunction ? info.parts : n;
  if (t && *t >= range) {
    throw OrthogonalityError(OrthogonalityError::Code::QuantifierMismatch,
                             "quantifier value " + std::to_string(*t) + " is out of range");
  }
}

std::size_t quantifier_range(const CriterionInfo& info, std::size_t n) {
  switch (info.quantifier) {
    case Q::None: return 1;
    case Q::ForAll: return n;
    case Q::Conjunction: return info.parts;
  }
  return 1;
}

// First x2 whose image repeats an earlier x1; false when the map is a
// bijection. `slots` holds 2n counters, `epoch` tags the current pass.
bool find_collision(std::span<const Element> m, std::span<std::uint32_t> slots, std::uint32_t& epoch,
                    Element& x1, Element& x2) {
  const auto n = m.size();
  if (++epoch == 0) {
    std::fill(slots.begin(), slots.end(), 0);
    epoch = 1;
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto v = m[x];
    if (slots[v] == epoch) {
      x1 = static_cast<Element>(slots[n + v]);
      x2 = static_cast<Element>(x);
      return true;
    }
    slots[v] = epoch;
    slots[n + v] = static_cast<std::uint32_t>(x);
  }
  return false;
}

std::optional<std::pair<Element, Element>> homomorphism_failure(const FiniteGroup& g, std::span<const Element> m) {
  const auto n = g.order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
      if (m[g.op(ex, ey)] != g.op(m[ex], m[ey])) return std::make_pair(ex, ey);
    }
  }
  return std::nullopt;
}

// Shared loop over quantifier values: `evaluate(k, out)` fills the map for
// value k.
template <class Fn>
OrthogonalityVerdict run_quantified(const CriterionInfo& info, const FiniteGroup& g, QuantifierMode mode,
                                    bool homomorphism, std::vector<Element>& buf,
                                    std::vector<std::uint32_t>& stamp, Fn&& evaluate) {
  OrthogonalityVerdict v;
  v.method = Method::TheoremCriterion;
  v.criterion = info.id;
  v.orthogonal = true;
  const auto n = g.order();
  const auto range = quantifier_range(info, n);
  if (buf.size() < n) buf.resize(n);
  std::span<Element> m(buf.data(), n);
  // The last slot carries the epoch across calls.
  if (stamp.size() != 2 * n + 1) stamp.assign(2 * n + 1, 0);
  std::uint32_t& epoch = stamp[2 * n];
  const std::span<std::uint32_t> slots(stamp.data(), 2 * n);
  for (std::size_t k = 0; k < range; ++k) {
    evaluate(static_cast<Element>(k), m);
    bool ok = true;
    MapWitness w;
    if (info.quantifier != Q::None) w.t = static_cast<Element>(k);
    Element x1 = 0, x2 = 0;
    if (find_collision(m, slots, epoch, x1, x2)) {
      ok = false;
      w.x1 = x1;
      w.x2 = x2;
    }
    if (ok && homomorphism) {
      if (auto bad = homomorphism_failure(g, m)) {
        ok = false;
        w.x1 = bad->first;
        w.x2 = bad->second;
        w.not_homomorphism = true;
      }
    }
    if (mode == QuantifierMode::Exhaustive && info.quantifier != Q::None) v.per_t.push_back(ok);
    if (!ok && v.orthogonal) {
      v.orthogonal = false;
      v.map = w;
      if (mode == QuantifierMode::ShortCircuit) break;
    }
  }
  return v;
}

struct ParView {
  QuasigroupForm form;
  Morphism phi;
  Morphism psi;
};

ParView parastrophe_view(const CriterionInfo& info, const QuasigroupForm& form) {
  QuasigroupForm f = form;
  if (f.transposed) {
    if (!f.g().is_abelian()) {
      mismatch(std::string(info.name) + " needs an untransposed form over a non-abelian carrier");
    }
    f = untranspose(f);
  }
  const FC family = info.a.cls;
  if (family == FC::TQuasigroup && !f.g().is_abelian()) {
    mismatch(std::string(info.name) + " needs an abelian carrier");
  }
  try {
    f = reclass(f, family);
  } catch (const FormError& e) {
    mismatch("form does not fit " + std::string(info.name) + ": " + e.what());
  }
  f = normalize_constant(f, ConstantPosition::Right);
  const auto& g = f.g();
  const auto shape = shape_of(family);
  const auto I = inversion(g);
  Morphism phi = shape.left == ComponentKind::AntiAutomorphism ? compose(g, I, f.left) : f.left;
  Morphism psi = shape.right == ComponentKind::AntiAutomorphism ? compose(g, I, f.right) : f.right;
  return {std::move(f), std::move(phi), std::move(psi)};
}

MorphismExpr build_parastrophe_expr(CriterionId id, const ParView& v, Element t) {
  using C = CriterionId;
  const auto& g = v.form.g();
  const auto I = MorphismExpr::inversion();
  const auto e = MorphismExpr::identity();
  const auto J = [](Element a) { return MorphismExpr::inner(a); };
  const auto phi = MorphismExpr::atom(v.phi, "phi");
  const auto psi = MorphismExpr::atom(v.psi, "psi");
  const Element c = v.form.constant;
  const auto apply = [&](const MorphismExpr& f, Element x) { return eval(g, f)[x]; };
  switch (id) {
    case C::PAR_LIN12: return -(J(t) * phi.inv() * psi) + psi.inv() * phi;
    case C::PAR_LIN13: return phi * J(g.inverse(apply(phi.inv(), c))) + e;
    case C::PAR_LIN23: return e + psi;
    case C::PAR_LIN123: return phi * MorphismExpr::inner_inverse(apply(psi.inv(), c)) + psi * psi;
    case C::PAR_LIN132: return phi * phi + psi;

    case C::PAR_ALIN12: return psi.inv() * phi - J(t) * phi.inv() * psi;
    case C::PAR_ALIN13: return phi - J(v.psi(t)) * J(c);
    case C::PAR_ALIN23: return e + I * psi * J(t);
    case C::PAR_ALIN123: return psi * psi - phi * J(apply(psi.inv(), c));
    case C::PAR_ALIN132: return psi - phi * phi;

    case C::PAR_LINALIN12: return phi.inv() * psi - psi.inv() * phi;
    case C::PAR_LINALIN13: return e + phi * J(g.inverse(c));
    case C::PAR_LINALIN23: return I * J(t) + psi;
    case C::PAR_LINALIN123: return phi + J(v.psi(g.inverse(c))) * psi * psi;
    case C::PAR_LINALIN132: return phi * phi + I * J(t) * psi;

    case C::PAR_ALINLIN12: return -(phi.inv() * psi) + psi.inv() * phi;
    case C::PAR_ALINLIN13: return phi + I * J(g.op(g.inverse(t), c));
    case C::PAR_ALINLIN23: return psi + e;
    case C::PAR_ALINLIN123: return psi * psi + phi * I * J(t);
    case C::PAR_ALINLIN132: return phi * phi + psi;

    case C::PAR_T12: return t == 0 ? phi - psi : phi + psi;
    case C::PAR_T13: return e + phi;
    case C::PAR_T23: return e + psi;
    case C::PAR_T123: return phi + psi * psi;
    case C::PAR_T132: return phi * phi + psi;
    default: break;
  }
  mismatch(std::string(to_string(id)) + " is not a parastrophe criterion");
}

}  // namespace

const std::vector<CriterionInfo>& criterion_catalog() {
  static const std::vector<CriterionInfo> kCatalog = build_catalog();
  return kCatalog;
}

const CriterionInfo& criterion_info(CriterionId id) {
  return criterion_catalog()[static_cast<std::size_t>(id)];
}

std::string_view to_string(CriterionId id) { return criterion_info(id).name; }

std::optional<CriterionId> parse_criterion(std::string_view name) {
  for (const auto& info : criterion_catalog()) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

std::optional<CriterionId> parastrophe_criterion_for(FormClass cls, ParastropheLabel sigma) {
  if (sigma == S::e) return std::nullopt;
  FC family = cls;
  for (const auto& info : criterion_catalog()) {
    if (info.parastrophe && info.a.cls == family && info.sigma == sigma) return info.id;
  }
  return std::nullopt;
}

bool PairChecker::distinct(std::span<const Element> a, std::span<const Element> b, std::size_t n,
                           CellWitness* witness) {
  const auto cells = n * n;
  if (stamp_.size() < cells) {
    stamp_.assign(cells, 0);
    first_.assign(cells, 0);
    epoch_ = 0;
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  for (std::size_t i = 0; i < cells; ++i) {
    const std::size_t code = std::size_t{a[i]} * n + b[i];
    if (stamp_[code] == epoch_) {
      if (witness) {
        const auto j = first_[code];
        *witness = CellWitness{static_cast<Element>(j / n), static_cast<Element>(j % n),
                               static_cast<Element>(i / n), static_cast<Element>(i % n)};
      }
      return false;
    }
    stamp_[code] = epoch_;
    first_[code] = static_cast<std::uint32_t>(i);
  }
  return true;
}

OrthogonalityVerdict orthogonal_bruteforce(const Quasigroup& a, const Quasigroup& b) {
  if (a.order != b.order) {
    throw OrthogonalityError(OrthogonalityError::Code::OrderMismatch,
                             "tables have orders " + std::to_string(a.order) + " and " + std::to_string(b.order));
  }
  PairChecker checker;
  CellWitness w{};
  OrthogonalityVerdict v;
  v.method = Method::BruteForce;
  v.orthogonal = checker.distinct(a.table, b.table, a.order, &w);
  if (!v.orthogonal) v.cells = w;
  return v;
}

PreparedOperand prepare_operand(CriterionId id, Side side, const QuasigroupForm& form) {
  const auto& info = criterion_info(id);
  if (info.parastrophe) mismatch(std::string(info.name) + " is a parastrophe criterion");
  const auto& tpl = pair_template(id);
  const bool is_a = side == Side::A;
  const auto& s = is_a ? info.a : info.b;
  if (s.cls == FC::TQuasigroup && !form.g().is_abelian()) {
    mismatch(std::string(info.name) + " needs an abelian carrier");
  }
  PreparedOperand op;
  op.view = view_for(s, form, is_a ? "first operand" : "second operand");
  const auto& names = is_a ? tpl.a_names : tpl.b_names;
  const auto L = MorphismExpr::atom(op.view.left, names[0]);
  const auto R = MorphismExpr::atom(op.view.right, names[1]);
  const auto& g = op.view.g();
  op.half = eval(g, (is_a ? tpl.a_half : tpl.b_half)(L, R));
  if (!is_a && tpl.b_helper) op.helper = eval(g, tpl.b_helper(L, R));
  return op;
}

OrthogonalityVerdict evaluate_pair(CriterionId id, const PreparedOperand& a, const PreparedOperand& b,
                                   QuantifierMode mode, std::vector<Element>& scratch,
                                   std::vector<std::uint32_t>& stamp) {
  const auto& info = criterion_info(id);
  const auto& tpl = pair_template(id);
  const auto& g = a.view.g();
  const auto n = g.order();
  const Element* halves[2] = {a.half.data(), b.half.data()};
  const auto& t0 = tpl.terms[0];
  const auto& t1 = tpl.terms[1];
  auto conj_index = [&](Conj c, Element k) -> Element {
    switch (c) {
      case Conj::T: return k;
      case Conj::Helper: return b.helper[k];
      case Conj::NegHelper: return g.inverse(b.helper[k]);
      case Conj::None: break;
    }
    return g.identity();
  };
  auto term_value = [&](const Term& term, Element idx, std::size_t x) {
    Element v = halves[term.side == Side::A ? 0 : 1][x];
    if (term.conj != Conj::None) v = g.conjugate(idx, v);
    return term.negate ? g.inverse(v) : v;
  };
  return run_quantified(info, g, mode, tpl.homomorphism, scratch, stamp, [&](Element k, std::span<Element> m) {
    const Element i0 = conj_index(t0.conj, k), i1 = conj_index(t1.conj, k);
    for (std::size_t x = 0; x < n; ++x) m[x] = g.op(term_value(t0, i0, x), term_value(t1, i1, x));
  });
}

MorphismExpr criterion_expr(CriterionId id, const QuasigroupForm& a, const QuasigroupForm& b,
                            std::optional<Element> t) {
  const auto& info = criterion_info(id);
  if (info.parastrophe) mismatch(std::string(info.name) + " is a parastrophe criterion");
  check_same_carrier(a, b);
  check_quantifier(info, t, a.g().order());
  const auto pa = prepare_operand(id, Side::A, a);
  const auto pb = prepare_operand(id, Side::B, b);
  const auto& tpl = pair_template(id);
  const auto& g = pa.view.g();
  const auto build = [&](const PreparedOperand& p, const std::array<const char*, 2>& names, HalfBuilder h) {
    return h(MorphismExpr::atom(p.view.left, names[0]), MorphismExpr::atom(p.view.right, names[1]));
  };
  const MorphismExpr halves[2] = {build(pa, tpl.a_names, tpl.a_half), build(pb, tpl.b_names, tpl.b_half)};
  std::vector<MorphismExpr> terms;
  for (const auto& term : tpl.terms) {
    MorphismExpr e = halves[term.side == Side::A ? 0 : 1];
    switch (term.conj) {
      case Conj::T: e = MorphismExpr::inner(*t) * e; break;
      case Conj::Helper: e = MorphismExpr::inner(pb.helper[*t]) * e; break;
      case Conj::NegHelper: e = MorphismExpr::inner(g.inverse(pb.helper[*t])) * e; break;
      case Conj::None: break;
    }
    terms.push_back(term.negate ? -e : e);
  }
  return MorphismExpr::sum(std::move(terms));
}

OrthogonalityVerdict orthogonal_by_criterion(CriterionId id, const QuasigroupForm& a, const QuasigroupForm& b,
                                             QuantifierMode mode) {
  const auto& info = criterion_info(id);
  if (info.parastrophe) mismatch(std::string(info.name) + " is a parastrophe criterion");
  check_same_carrier(a, b);
  const auto pa = prepare_operand(id, Side::A, a);
  const auto pb = prepare_operand(id, Side::B, b);
  std::vector<Element> scratch;
  std::vector<std::uint32_t> stamp;
  return evaluate_pair(id, pa, pb, mode, scratch, stamp);
}

MorphismExpr parastrophe_criterion_expr(CriterionId id, const QuasigroupForm& form, std::optional<Element> t) {
  const auto& info = criterion_info(id);
  if (!info.parastrophe) mismatch(std::string(info.name) + " is a pair criterion");
  check_quantifier(info, t, form.g().order());
  const auto view = parastrophe_view(info, form);
  return build_parastrophe_expr(id, view, t.value_or(0));
}

OrthogonalityVerdict parastrophe_orthogonality(CriterionId id, const QuasigroupForm& form, QuantifierMode mode) {
  const auto& info = criterion_info(id);
  if (!info.parastrophe) mismatch(std::string(info.name) + " is a pair criterion");
  const auto view = parastrophe_view(info, form);
  const auto& g = view.form.g();
  std::vector<Element> scratch;
  std::vector<std::uint32_t> stamp;
  ExprScratch expr_scratch;
  return run_quantified(info, g, mode, false, scratch, stamp, [&](Element k, std::span<Element> m) {
    eval_into(g, build_parastrophe_expr(id, view, k), m, expr_scratch);
  });
}

OrthogonalityVerdict parastrophe_orthogonality(const QuasigroupForm& form, ParastropheLabel sigma, bool validate,
                                               QuantifierMode mode) {
  if (sigma == S::e) {
    throw OrthogonalityError(OrthogonalityError::Code::IdentityParastrophe,
                             "a quasigroup is never orthogonal to itself; choose a non-identity parastrophe");
  }
  FC cls = form.cls;
  if (form.transposed && form.g().is_abelian()) cls = untranspose(form).cls;
  const auto id = parastrophe_criterion_for(cls, sigma);
  if (!id) {
    throw OrthogonalityError(OrthogonalityError::Code::UnsupportedClass,
                             std::string(to_string(form.cls)) + " forms have no parastrophe criterion");
  }
  auto verdict = parastrophe_orthogonality(*id, form, mode);
  if (validate) {
    const auto q = materialize(form);
    const auto bf = orthogonal_bruteforce(q, parastrophe_table(q, sigma));
    if (bf.orthogonal != verdict.orthogonal) {
      throw OrthogonalityError(OrthogonalityError::Code::CrossCheckFailed,
                               std::string(to_string(*id)) + " disagrees with brute force on " + describe(form));
    }
  }
  return verdict;
}

}  // namespace quasiortho
