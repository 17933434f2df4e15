#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vbsf/render.hpp"

namespace vbsf::ocr {

struct OcrConfig {
    int contrast_threshold = 32;
    double match_threshold = 0.85;
    int min_glyph_height = 12;
    double space_gap_factor = 0.5;
    int background_window = 24;

    /// Throws FormatError on out-of-range values.
    void validate() const;
};

struct InkMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> ink;  // row-major, 1 = ink

    bool at(int x, int y) const { return ink[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] != 0; }

    friend bool operator==(const InkMask&, const InkMask&) = default;
};

struct Box {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const Box&, const Box&) = default;
};

struct OcrCell {
    Box box;
    std::optional<char32_t> codepoint;
    double score = 0.0;
    bool bold = false;
};

struct OcrResult {
    std::string text;
    std::vector<OcrCell> cells;
    std::size_t unmatched = 0;
};

struct Line {
    int top = 0;
    int bottom = 0;  // exclusive
    std::vector<Box> cells;
};

struct Match {
    std::optional<char32_t> codepoint;
    double score = 0.0;
    bool bold = false;
};

InkMask binarize(const render::Raster& img, const OcrConfig& cfg = {});

/// Row bands of ink split at blank rows; within each band, maximal runs of ink
/// columns. Runs narrower than 2 px or with ink shorter than min_glyph_height
/// are dropped. ocr_text does not go through this: lowercase ink at 16 px is
/// shorter than the height floor, so it decodes whole lines against em-box
/// templates and applies the floor to the matched font size instead.
std::vector<Line> segment(const InkMask& mask, const OcrConfig& cfg = {});

/// Matches a cell bitmap against every template resampled to the cell size.
/// `cell` holds width*height bytes, row-major, nonzero = ink.
Match match_glyph(const std::vector<std::uint8_t>& cell, int width, int height, const OcrConfig& cfg = {});

OcrResult ocr_text(const render::Raster& img, const OcrConfig& cfg = {});

/// One "x y w h codepoint score" line per cell; unmatched cells print "-".
std::string dump_cells(const OcrResult& r);

/// What a reader sees, reconstructed from the layout trace: drawn, legible,
/// contrasting glyphs; a space wherever the pen skipped; one line per em
/// bottom. ocr_text of a clean render reproduces this exactly.
std::string visible_text(const render::GlyphTrace& trace, const OcrConfig& cfg = {});

}  // namespace vbsf::ocr
