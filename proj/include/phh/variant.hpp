#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace phh {

// The 11 game variant codes.
enum class VariantCode {
  FT,     // Fixed-limit Texas hold 'em
  NT,     // No-limit Texas hold 'em
  NS,     // No-limit short-deck hold 'em
  PO,     // Pot-limit Omaha hold 'em
  FO8,    // Fixed-limit Omaha hold 'em high/low-split eight or better
  F7S,    // Fixed-limit seven card stud
  F7S8,   // Fixed-limit seven card stud high/low-split eight or better
  FR,     // Fixed-limit razz
  N2L1D,  // No-limit deuce-to-seven lowball single draw
  F2L3D,  // Fixed-limit deuce-to-seven lowball triple draw
  FB,     // Fixed-limit badugi
};

inline constexpr std::array<std::pair<std::string_view, VariantCode>, 11>
    kVariantCodes{{
        {"FT", VariantCode::FT},
        {"NT", VariantCode::NT},
        {"NS", VariantCode::NS},
        {"PO", VariantCode::PO},
        {"FO/8", VariantCode::FO8},
        {"F7S", VariantCode::F7S},
        {"F7S/8", VariantCode::F7S8},
        {"FR", VariantCode::FR},
        {"N2L1D", VariantCode::N2L1D},
        {"F2L3D", VariantCode::F2L3D},
        {"FB", VariantCode::FB},
    }};

inline std::optional<VariantCode> variant_from_string(std::string_view s) {
  for (const auto& [text, code] : kVariantCodes)
    if (text == s) return code;
  return std::nullopt;
}

inline std::string_view to_string(VariantCode code) {
  for (const auto& [text, c] : kVariantCodes)
    if (c == code) return text;
  return {};
}

// A document's variant field. An unrecognized code is kept as opaque text:
// strict parsing rejects it, lenient parsing passes it through with a
// warning (such documents cannot be replayed).
struct Variant {
  std::optional<VariantCode> code;
  std::string text;

  bool recognized() const { return code.has_value(); }
};

// Which stake fields each variant requires. `starting_stacks` and `actions`
// (and `variant` itself) are required in every variant, so only the six
// per-variant columns appear here.
struct RequiredStakes {
  bool antes;
  bool blinds_or_straddles;
  bool bring_in;
  bool small_bet;
  bool big_bet;
  bool min_bet;
};

inline constexpr RequiredStakes required_stakes(VariantCode code) {
  switch (code) {
    case VariantCode::FT:
    case VariantCode::FO8:
    case VariantCode::F2L3D:
    case VariantCode::FB:
      return {true, true, false, true, true, false};
    case VariantCode::NT:
    case VariantCode::NS:
    case VariantCode::PO:
    case VariantCode::N2L1D:
      return {true, true, false, false, false, true};
    case VariantCode::F7S:
    case VariantCode::F7S8:
    case VariantCode::FR:
      return {true, false, true, true, true, false};
  }
  return {};
}

inline bool is_button_variant(VariantCode code) {
  return required_stakes(code).blinds_or_straddles;
}

inline bool is_stud_variant(VariantCode code) {
  return required_stakes(code).bring_in;
}

}  // namespace phh
