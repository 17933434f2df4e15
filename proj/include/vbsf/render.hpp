#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vbsf/common.hpp"
#include "vbsf/email.hpp"
#include "vbsf/style.hpp"

namespace vbsf::render {

struct RenderConfig {
    int canvas_width = 800;
    Rgb background = kWhite;
    double line_spacing_factor = 1.25;
    int max_height = 4000;
};

struct PlacedGlyph {
    char32_t codepoint = U' ';
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
    Rgb fg = kBlack;
    Rgb bg = kWhite;
    bool drawn = true;
    bool bold = false;
    // Paint sequence number shared with boxes; later numbers overdraw earlier.
    std::uint64_t order = 0;

    friend bool operator==(const PlacedGlyph&, const PlacedGlyph&) = default;
};

/// A filled rectangle: an element background or an image placeholder.
struct PaintBox {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
    Rgb color = kWhite;
    std::uint64_t order = 0;

    friend bool operator==(const PaintBox&, const PaintBox&) = default;
};

struct GlyphTrace {
    std::vector<PlacedGlyph> glyphs;
    std::vector<PaintBox> boxes;
    int width = 0;
    int height = 0;
    // Content needed more than max_height pixels; the trace is truncated.
    bool overflow = false;
};

class Raster {
public:
    Raster() = default;
    Raster(int width, int height, Rgb fill);

    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    Rgb at(int x, int y) const;
    // Writes outside the canvas are discarded and counted.
    void set(int x, int y, Rgb c);
    void fill_rect(int x, int y, int w, int h, Rgb c);
    std::uint64_t clipped_writes() const { return clipped_; }

    friend bool operator==(const Raster& a, const Raster& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
    std::uint64_t clipped_ = 0;
};

enum class WhiteSpace : unsigned char { Normal, PreLine };

GlyphTrace layout(const mail::StyledTree& tree, const RenderConfig& cfg = {},
                  WhiteSpace ws = WhiteSpace::Normal);

/// Same as layout but raises ContentOverflow when the content does not fit.
GlyphTrace layout_checked(const mail::StyledTree& tree, const RenderConfig& cfg = {},
                          WhiteSpace ws = WhiteSpace::Normal);

Raster rasterize(const GlyphTrace& trace, const RenderConfig& cfg = {});

struct RenderResult {
    Raster raster;
    GlyphTrace trace;
};

/// resolve_styles, layout and rasterize. Plain-text bodies keep their line
/// breaks. An overflowing document comes back truncated with trace.overflow set.
RenderResult render_email(const mail::EmailDocument& doc, const RenderConfig& cfg = {});

std::string to_ppm(const Raster& r);
std::string to_pgm(const Raster& r);
Raster read_ppm(std::string_view bytes);

/// One row per placed glyph: codepoint x y width height fg bg drawn bold.
std::string trace_tsv(const GlyphTrace& trace);

/// Per-pixel integer luminance, row-major.
std::vector<std::uint8_t> luminance_plane(const Raster& r);

}  // namespace vbsf::render
