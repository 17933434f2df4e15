#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace vbsf::render {

inline constexpr int kBaseWidth = 8;
inline constexpr int kBaseHeight = 16;
inline constexpr char32_t kBoxGlyph = U'\u25A1';

/// 8x16 bitmap, one byte per row, most significant bit is column 0.
struct GlyphBitmap {
    std::array<std::uint8_t, kBaseHeight> rows{};

    bool bit(int row, int col) const { return (rows[static_cast<std::size_t>(row)] >> (7 - col)) & 1U; }

    friend bool operator==(const GlyphBitmap&, const GlyphBitmap&) = default;
};

/// Homoglyphs map to their Latin partner, codepoints outside the repertoire
/// map to the box glyph, everything else maps to itself.
char32_t canonical_codepoint(char32_t cp);

bool in_repertoire(char32_t cp);

/// Bitmap for any codepoint (unsupported ones get the box glyph).
const GlyphBitmap& glyph_bitmap(char32_t cp);

/// Every codepoint that has its own bitmap: printable ASCII plus the box.
const std::vector<char32_t>& canonical_repertoire();

/// The fixed homoglyph set as (homoglyph, Latin partner) pairs.
const std::vector<std::pair<char32_t, char32_t>>& homoglyph_pairs();

/// Scaled glyph width for a font size.
inline int glyph_width(int font_size) {
    return (font_size + 1) / 2;
}

}  // namespace vbsf::render
