#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "quasiortho/expr.hpp"
#include "quasiortho/form.hpp"

namespace quasiortho {

/// The six parastrophes of A(x1, x2) = x3:
///
///   s12   A12(x2, x1) = x3
///   s13   A13(x3, x2) = x1
///   s23   A23(x1, x3) = x2
///   s123  A123(x2, x3) = x1
///   s132  A132(x3, x1) = x2
enum class ParastropheLabel { e, s12, s13, s23, s123, s132 };

inline constexpr std::array<ParastropheLabel, 6> kAllParastrophes{
    ParastropheLabel::e,   ParastropheLabel::s12,  ParastropheLabel::s13,
    ParastropheLabel::s23, ParastropheLabel::s123, ParastropheLabel::s132};

inline constexpr std::array<ParastropheLabel, 5> kNonTrivialParastrophes{
    ParastropheLabel::s12, ParastropheLabel::s13, ParastropheLabel::s23, ParastropheLabel::s123,
    ParastropheLabel::s132};

/// "e", "12", "13", "23", "123", "132".
std::string_view to_string(ParastropheLabel s) noexcept;
/// Accepts "12" as well as "s12" and "(12)".
std::optional<ParastropheLabel> parse_parastrophe(std::string_view text);

/// The label of taking `sigma` first and then `tau`.
ParastropheLabel then(ParastropheLabel sigma, ParastropheLabel tau) noexcept;
ParastropheLabel inverse(ParastropheLabel s) noexcept;

/// Table-level parastrophe; the result has no provenance.
Quasigroup parastrophe_table(const Quasigroup& q, ParastropheLabel sigma);

/// Closed-form parastrophe of a Linear, TQuasigroup, Alinear,
/// LeftLinearRightAlinear or LeftAlinearRightLinear form. The result uses
/// Right constant placement.
QuasigroupForm parastrophe_form(const QuasigroupForm& form, ParastropheLabel sigma);

/// table'[x][y] = gamma^-1(table[x][y]).
Quasigroup isotopy_shift(const Quasigroup& q, std::span<const Element> gamma);

}  // namespace quasiortho
