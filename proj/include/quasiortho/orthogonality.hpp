#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "quasiortho/expr.hpp"
#include "quasiortho/form.hpp"
#include "quasiortho/parastrophe.hpp"

namespace quasiortho {

enum class CriterionId {
  LL_LL,
  RL_RL,
  RA_RA,
  LA_LA,
  LL_RA,
  LL_RA_alt,
  LL_LA,
  LA_RL,
  LIN_LIN,
  T_T,
  LIN_LIN12,
  ALIN_ALIN12,
  LL_RL12,
  LL_RL12_alt,
  LIN_LL12,
  PAR_LIN12,
  PAR_LIN13,
  PAR_LIN23,
  PAR_LIN123,
  PAR_LIN132,
  PAR_ALIN12,
  PAR_ALIN13,
  PAR_ALIN23,
  PAR_ALIN123,
  PAR_ALIN132,
  PAR_LINALIN12,
  PAR_LINALIN13,
  PAR_LINALIN23,
  PAR_LINALIN123,
  PAR_LINALIN132,
  PAR_ALINLIN12,
  PAR_ALINLIN13,
  PAR_ALINLIN23,
  PAR_ALINLIN123,
  PAR_ALINLIN132,
  PAR_T12,
  PAR_T13,
  PAR_T23,
  PAR_T123,
  PAR_T132,
};

/// None: one expression. ForAll: one expression per group element t.
/// Conjunction: a fixed number of expressions that must all pass.
enum class Quantifier { None, ForAll, Conjunction };

struct OperandSignature {
  FormClass cls;
  bool transposed;
};

struct CriterionInfo {
  CriterionId id;
  std::string_view name;
  Quantifier quantifier;
  std::size_t parts;
  bool parastrophe;
  OperandSignature a;
  OperandSignature b;
  ParastropheLabel sigma;
  /// The criterion map written with the component names used in to_string.
  std::string_view statement;
};

const std::vector<CriterionInfo>& criterion_catalog();
const CriterionInfo& criterion_info(CriterionId id);
std::string_view to_string(CriterionId id);
std::optional<CriterionId> parse_criterion(std::string_view name);

/// The parastrophe-criterion family serving a form class, e.g. PAR_LIN13 for
/// a Linear form and s13.
std::optional<CriterionId> parastrophe_criterion_for(FormClass cls, ParastropheLabel sigma);

enum class Method { BruteForce, TheoremCriterion };

/// Two cells carrying the same value pair.
struct CellWitness {
  Element x1, y1, x2, y2;
};

/// Two elements sharing an image under the criterion map (or, when
/// `not_homomorphism` is set, a pair where the map fails additivity).
struct MapWitness {
  std::optional<Element> t;
  Element x1 = 0;
  Element x2 = 0;
  bool not_homomorphism = false;
};

struct OrthogonalityVerdict {
  bool orthogonal = false;
  Method method = Method::BruteForce;
  std::optional<CriterionId> criterion;
  std::optional<CellWitness> cells;
  std::optional<MapWitness> map;
  /// Filled in Exhaustive mode for quantified criteria, one entry per t.
  std::vector<bool> per_t;
};

/// ShortCircuit stops at the first failing t; Exhaustive evaluates all t.
enum class QuantifierMode { ShortCircuit, Exhaustive };

/// Pair-distinctness check with reusable stamp storage.
class PairChecker {
 public:
  /// True iff all n^2 pairs (a[i], b[i]) are distinct. On failure the first
  /// repeated cell in row-major order and its earlier partner are reported.
  bool distinct(std::span<const Element> a, std::span<const Element> b, std::size_t n,
                CellWitness* witness = nullptr);

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> first_;
  std::uint32_t epoch_ = 0;
};

OrthogonalityVerdict orthogonal_bruteforce(const Quasigroup& a, const Quasigroup& b);

/// The instantiated criterion map for a pair criterion. `t` must be given
/// exactly when the criterion is quantified.
MorphismExpr criterion_expr(CriterionId id, const QuasigroupForm& a, const QuasigroupForm& b,
                            std::optional<Element> t = std::nullopt);

/// The instantiated map for a parastrophe criterion; for Conjunction
/// criteria `t` selects the part.
MorphismExpr parastrophe_criterion_expr(CriterionId id, const QuasigroupForm& form,
                                        std::optional<Element> t = std::nullopt);

OrthogonalityVerdict orthogonal_by_criterion(CriterionId id, const QuasigroupForm& a, const QuasigroupForm& b,
                                             QuantifierMode mode = QuantifierMode::ShortCircuit);

/// Criterion verdict for A against its sigma-parastrophe. With `validate`,
/// the verdict is compared with brute force and a mismatch throws
/// OrthogonalityError(CrossCheckFailed).
OrthogonalityVerdict parastrophe_orthogonality(const QuasigroupForm& form, ParastropheLabel sigma,
                                               bool validate = false,
                                               QuantifierMode mode = QuantifierMode::ShortCircuit);

/// Same with an explicit criterion id, e.g. PAR_LIN13 on a TQuasigroup form.
OrthogonalityVerdict parastrophe_orthogonality(CriterionId id, const QuasigroupForm& form,
                                               QuantifierMode mode = QuantifierMode::ShortCircuit);

/// A form prepared once for repeated pair checks under one criterion.
struct PreparedOperand {
  QuasigroupForm view;
  Map half;
  Map helper;
};

enum class Side { A, B };

/// Validates the form against the criterion's operand signature and
/// normalizes it (constants absorbed for one-sided signatures, moved to the
/// Right for two-sided ones).
PreparedOperand prepare_operand(CriterionId id, Side side, const QuasigroupForm& form);

/// Pair criterion on prepared operands; allocation free apart from the
/// verdict. `scratch` must hold at least order() entries.
OrthogonalityVerdict evaluate_pair(CriterionId id, const PreparedOperand& a, const PreparedOperand& b,
                                   QuantifierMode mode, std::vector<Element>& scratch,
                                   std::vector<std::uint32_t>& stamp);

}  // namespace quasiortho
