#include "vbsf/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>

#include "vbsf/font.hpp"
#include "vbsf/utf8.hpp"

namespace vbsf::render {

using mail::NodeKind;
using mail::PositionKind;
using mail::StyledNode;
using mail::Style;

namespace {

constexpr Rgb kPlaceholderGray{192, 192, 192};
constexpr int kImageSize = 32;

struct Atom {
    enum class Kind : unsigned char { Glyph, Space, Nbsp, Image };
    Kind kind = Kind::Glyph;
    char32_t cp = U' ';
    int size = 16;
    int advance = 8;
    Rgb fg = kBlack;
    Rgb bg = kWhite;
    bool drawn = true;
    bool bold = false;
    std::uint64_t order = 0;
    std::vector<int> boxes;  // indices of open inline backgrounds
};

struct Placed {
    Atom atom;
    int x = 0;
};

struct Context {
    int origin_x = 0;
    int width = 0;
    int y = 0;  // absolute top of the current line
    int x = 0;  // cursor relative to origin_x
    std::vector<Placed> line;
    std::vector<Atom> word;
    std::optional<Atom> pending_space;
    int margin_pending = 0;
    bool has_content = false;
    int bottom = 0;
};

struct InlineBox {
    PaintBox box;
    bool any = false;
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

bool is_collapsible_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f';
}

class Layouter {
public:
    Layouter(const RenderConfig& cfg, WhiteSpace ws) : cfg_(cfg), ws_(ws) {}

    GlyphTrace run(const StyledNode& root) {
        Context ctx;
        ctx.width = cfg_.canvas_width;
        bg_stack_.push_back(cfg_.background);
        element(root, ctx, true);
        finish_context(ctx);

        for (const auto& ib : inline_boxes_) {
            if (!ib.any) continue;
            PaintBox b = ib.box;
            b.x = ib.x0;
            b.y = ib.y0;
            b.width = ib.x1 - ib.x0;
            b.height = ib.y1 - ib.y0;
            if (b.width > 0 && b.height > 0) trace_.boxes.push_back(b);
        }
        auto by_order = [](const auto& a, const auto& b) { return a.order < b.order; };
        std::stable_sort(trace_.glyphs.begin(), trace_.glyphs.end(), by_order);
        std::stable_sort(trace_.boxes.begin(), trace_.boxes.end(), by_order);

        trace_.width = cfg_.canvas_width;
        int height = std::max(bottom_, 1);
        if (height > cfg_.max_height) {
            trace_.overflow = true;
            height = cfg_.max_height;
            std::erase_if(trace_.glyphs, [&](const PlacedGlyph& g) { return g.y + g.height > height; });
            std::erase_if(trace_.boxes, [&](const PaintBox& b) { return b.y >= height; });
            for (auto& b : trace_.boxes) b.height = std::min(b.height, height - b.y);
        }
        trace_.height = height;
        return std::move(trace_);
    }

private:
    int blank_line(int size) const {
        return static_cast<int>(std::lround(cfg_.line_spacing_factor * size));
    }

    std::uint64_t next_order() { return order_++; }

    void element(const StyledNode& n, Context& ctx, bool is_root) {
        const Style& s = n.style;
        if (s.display_none) return;
        if (!is_root && s.position.kind == PositionKind::Absolute) {
            Context abs;
            abs.origin_x = s.position.x;
            abs.width = std::max(cfg_.canvas_width - s.position.x, 1);
            abs.y = s.position.y;
            abs.bottom = s.position.y;
            element_body(n, abs);
            finish_context(abs);
            return;
        }
        element_body(n, ctx);
    }

    void element_body(const StyledNode& n, Context& ctx) {
        const Style& s = n.style;
        if (n.tag == "br") {
            line_break(ctx, s.font_size);
            return;
        }
        if (n.tag == "img") {
            Atom a = make_atom(Atom::Kind::Image, U' ', s);
            a.size = kImageSize;
            a.advance = kImageSize;
            a.fg = kPlaceholderGray;
            ctx.word.push_back(std::move(a));
            return;
        }

        bool block = mail::is_block_tag(n.tag);
        bool para = n.tag == "p";
        std::optional<PaintBox> block_box;
        int block_top = 0;
        bool inline_bg = false;
        if (block) {
            block_boundary(ctx);
            if (para && ctx.has_content) ctx.margin_pending = std::max(ctx.margin_pending, blank_line(s.font_size));
            if (s.has_background) {
                block_box = PaintBox{ctx.origin_x, 0, ctx.width, 0, s.background_color, next_order()};
                block_top = ctx.y + ctx.margin_pending;
            }
        } else if (s.has_background) {
            InlineBox ib;
            ib.box.color = s.background_color;
            ib.box.order = next_order();
            inline_boxes_.push_back(ib);
            open_boxes_.push_back(static_cast<int>(inline_boxes_.size() - 1));
            inline_bg = true;
        }
        if (s.has_background) bg_stack_.push_back(s.background_color);

        for (const auto& c : n.children) {
            switch (c.kind) {
                case NodeKind::Element: element(c, ctx, false); break;
                case NodeKind::Text: text(c, ctx); break;
                case NodeKind::Comment: break;
            }
        }

        if (s.has_background) bg_stack_.pop_back();
        if (inline_bg) open_boxes_.pop_back();
        if (block) {
            block_boundary(ctx);
            if (para) ctx.margin_pending = std::max(ctx.margin_pending, blank_line(s.font_size));
            if (block_box && ctx.y > block_top) {
                block_box->y = block_top;
                block_box->height = ctx.y - block_top;
                trace_.boxes.push_back(*block_box);
            }
        }
    }

    Atom make_atom(Atom::Kind kind, char32_t cp, const Style& s) {
        Atom a;
        a.kind = kind;
        a.cp = cp;
        a.size = s.font_size;
        a.advance = glyph_width(s.font_size);
        a.fg = s.color;
        a.bg = bg_stack_.back();
        a.drawn = !s.visibility_hidden;
        a.bold = s.bold;
        a.order = next_order();
        a.boxes = open_boxes_;
        return a;
    }

    void text(const StyledNode& n, Context& ctx) {
        const Style& s = n.style;
        std::size_t pos = 0;
        while (pos < n.text.size()) {
            char32_t cp = utf8::next(n.text, pos);
            if (ws_ == WhiteSpace::PreLine && cp == U'\n') {
                line_break(ctx, s.font_size);
            } else if (is_collapsible_space(cp)) {
                commit_word(ctx);
                if (!ctx.line.empty() && !ctx.pending_space) ctx.pending_space = make_atom(Atom::Kind::Space, U' ', s);
            } else if (cp == U'\u00A0') {
                ctx.word.push_back(make_atom(Atom::Kind::Nbsp, cp, s));
            } else {
                ctx.word.push_back(make_atom(Atom::Kind::Glyph, cp, s));
            }
        }
    }

    void place(Context& ctx, Atom a) {
        if (ctx.line.empty()) {
            ctx.y += ctx.margin_pending;
            ctx.margin_pending = 0;
        }
        int x = ctx.x;
        ctx.x += a.advance;
        ctx.line.push_back({std::move(a), x});
    }

    void commit_word(Context& ctx) {
        if (ctx.word.empty()) return;
        int width = 0;
        for (const auto& a : ctx.word) width += a.advance;
        std::optional<Atom> space = std::move(ctx.pending_space);
        ctx.pending_space.reset();
        if (!ctx.line.empty()) {
            int sp = space ? space->advance : 0;
            if (ctx.x + sp + width > ctx.width) {
                finish_line(ctx);
            } else if (space) {
                place(ctx, std::move(*space));
            }
        }
        if (ctx.line.empty() && width > ctx.width) {
            for (auto& a : ctx.word) {
                if (!ctx.line.empty() && ctx.x + a.advance > ctx.width) finish_line(ctx);
                place(ctx, std::move(a));
            }
        } else {
            for (auto& a : ctx.word) place(ctx, std::move(a));
        }
        ctx.word.clear();
    }

    void finish_line(Context& ctx) {
        if (ctx.line.empty()) return;
        int max_size = 0;
        for (const auto& p : ctx.line) max_size = std::max(max_size, p.atom.size);
        int line_height = blank_line(max_size);
        for (auto& p : ctx.line) {
            const Atom& a = p.atom;
            int x = ctx.origin_x + p.x;
            int top = ctx.y + (max_size - a.size);
            if (a.kind == Atom::Kind::Glyph) {
                PlacedGlyph g;
                g.codepoint = a.cp;
                g.x = x;
                g.y = top;
                g.width = a.advance;
                g.height = a.size;
                g.fg = a.fg;
                g.bg = a.bg;
                g.drawn = a.drawn;
                g.bold = a.bold;
                g.order = a.order;
                trace_.glyphs.push_back(g);
            } else if (a.kind == Atom::Kind::Image && a.drawn) {
                trace_.boxes.push_back(PaintBox{x, top, a.advance, a.size, a.fg, a.order});
            }
            for (int id : a.boxes) {
                InlineBox& ib = inline_boxes_[static_cast<std::size_t>(id)];
                if (!ib.any) {
                    ib.any = true;
                    ib.x0 = x;
                    ib.y0 = top;
                    ib.x1 = x + a.advance;
                    ib.y1 = top + a.size;
                } else {
                    ib.x0 = std::min(ib.x0, x);
                    ib.y0 = std::min(ib.y0, top);
                    ib.x1 = std::max(ib.x1, x + a.advance);
                    ib.y1 = std::max(ib.y1, top + a.size);
                }
            }
        }
        ctx.y += line_height;
        ctx.x = 0;
        ctx.line.clear();
        ctx.has_content = true;
        ctx.bottom = std::max(ctx.bottom, ctx.y);
    }

    void block_boundary(Context& ctx) {
        commit_word(ctx);
        ctx.pending_space.reset();
        finish_line(ctx);
    }

    void line_break(Context& ctx, int size) {
        commit_word(ctx);
        ctx.pending_space.reset();
        if (!ctx.line.empty()) {
            finish_line(ctx);
            return;
        }
        ctx.y += ctx.margin_pending;
        ctx.margin_pending = 0;
        ctx.y += blank_line(size);
        ctx.has_content = true;
        ctx.bottom = std::max(ctx.bottom, ctx.y);
    }

    void finish_context(Context& ctx) {
        block_boundary(ctx);
        bottom_ = std::max(bottom_, ctx.bottom);
    }

    const RenderConfig& cfg_;
    WhiteSpace ws_;
    GlyphTrace trace_;
    std::uint64_t order_ = 0;
    int bottom_ = 0;
    std::vector<InlineBox> inline_boxes_;
    std::vector<int> open_boxes_;
    std::vector<Rgb> bg_stack_;
};

void paint_glyph(Raster& r, const PlacedGlyph& g) {
    if (g.width <= 0 || g.height <= 0) return;
    const GlyphBitmap& bm = glyph_bitmap(g.codepoint);
    int row0 = std::max(0, -g.y);
    int row1 = std::min(g.height, r.height() - g.y);
    int reach = g.bold ? 1 : 0;
    int col0 = std::max(0, -g.x - reach);
    int col1 = std::min(g.width, r.width() - g.x);
    for (int row = row0; row < row1; ++row) {
        int sr = static_cast<int>(static_cast<long long>(row) * kBaseHeight / g.height);
        for (int col = col0; col < col1; ++col) {
            int sc = static_cast<int>(static_cast<long long>(col) * kBaseWidth / g.width);
            if (!bm.bit(sr, sc)) continue;
            int px = g.x + col;
            if (px >= 0) r.set(px, g.y + row, g.fg);
            if (g.bold && px + 1 < r.width() && px + 1 >= 0) r.set(px + 1, g.y + row, g.fg);
        }
    }
}

int read_header_int(std::string_view bytes, std::size_t& pos) {
    for (;;) {
        while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (pos < bytes.size() && bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            continue;
        }
        break;
    }
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
        throw FormatError("PPM header: expected a number");
    long v = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        v = v * 10 + (bytes[pos++] - '0');
        if (v > 1'000'000) throw FormatError("PPM header: value too large");
    }
    return static_cast<int>(v);
}

}  // namespace

Raster::Raster(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw ShapeMismatch("negative raster size");
    pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
        pixels_[i] = fill.r;
        pixels_[i + 1] = fill.g;
        pixels_[i + 2] = fill.b;
    }
}

Rgb Raster::at(int x, int y) const {
    std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void Raster::set(int x, int y, Rgb c) {
    if (!contains(x, y)) {
        ++clipped_;
        return;
    }
    std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
}

void Raster::fill_rect(int x, int y, int w, int h, Rgb c) {
    int x0 = std::max(x, 0), y0 = std::max(y, 0);
    int x1 = std::min(x + w, width_), y1 = std::min(y + h, height_);
    for (int yy = y0; yy < y1; ++yy)
        for (int xx = x0; xx < x1; ++xx) set(xx, yy, c);
}

GlyphTrace layout(const mail::StyledTree& tree, const RenderConfig& cfg, WhiteSpace ws) {
    return Layouter(cfg, ws).run(tree);
}

GlyphTrace layout_checked(const mail::StyledTree& tree, const RenderConfig& cfg, WhiteSpace ws) {
    GlyphTrace t = layout(tree, cfg, ws);
    if (t.overflow) throw ContentOverflow("content exceeds max_height of " + std::to_string(cfg.max_height) + " px");
    return t;
}

Raster rasterize(const GlyphTrace& trace, const RenderConfig& cfg) {
    Raster r(trace.width, trace.height, cfg.background);
    std::size_t gi = 0, bi = 0;
    while (gi < trace.glyphs.size() || bi < trace.boxes.size()) {
        bool take_box = bi < trace.boxes.size() &&
                        (gi == trace.glyphs.size() || trace.boxes[bi].order <= trace.glyphs[gi].order);
        if (take_box) {
            const PaintBox& b = trace.boxes[bi++];
            r.fill_rect(b.x, b.y, b.width, b.height, b.color);
        } else {
            const PlacedGlyph& g = trace.glyphs[gi++];
            if (g.drawn) paint_glyph(r, g);
        }
    }
    return r;
}

RenderResult render_email(const mail::EmailDocument& doc, const RenderConfig& cfg) {
    mail::StyledTree styled = mail::resolve_styles(doc.body);
    WhiteSpace ws = doc.content_type == mail::ContentType::TextPlain ? WhiteSpace::PreLine : WhiteSpace::Normal;
    RenderResult out;
    out.trace = layout(styled, cfg, ws);
    out.raster = rasterize(out.trace, cfg);
    return out;
}

std::string to_ppm(const Raster& r) {
    std::string out = "P6\n" + std::to_string(r.width()) + " " + std::to_string(r.height()) + "\n255\n";
    out.append(r.pixels().begin(), r.pixels().end());
    return out;
}

std::string trace_tsv(const GlyphTrace& trace) {
    std::string out = "codepoint\tx\ty\twidth\theight\tfg\tbg\tdrawn\tbold\n";
    char buf[128];
    for (const auto& g : trace.glyphs) {
        std::snprintf(buf, sizeof buf, "U+%04X\t%d\t%d\t%d\t%d\t#%02x%02x%02x\t#%02x%02x%02x\t%d\t%d\n",
                      static_cast<unsigned>(g.codepoint), g.x, g.y, g.width, g.height, g.fg.r, g.fg.g, g.fg.b, g.bg.r,
                      g.bg.g, g.bg.b, g.drawn ? 1 : 0, g.bold ? 1 : 0);
        out += buf;
    }
    return out;
}

std::string to_pgm(const Raster& r) {
    std::string out = "P5\n" + std::to_string(r.width()) + " " + std::to_string(r.height()) + "\n255\n";
    for (std::uint8_t v : luminance_plane(r)) out.push_back(static_cast<char>(v));
    return out;
}

Raster read_ppm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') throw FormatError("not a binary PPM (P6)");
    std::size_t pos = 2;
    int w = read_header_int(bytes, pos);
    int h = read_header_int(bytes, pos);
    int maxval = read_header_int(bytes, pos);
    if (maxval != 255) throw FormatError("only maxval 255 is supported");
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw FormatError("PPM header: missing separator");
    ++pos;
    std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
    if (bytes.size() - pos < need) throw FormatError("PPM pixel data truncated");
    Raster r(w, h, kBlack);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t i = pos + (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)) * 3;
            r.set(x, y,
                  {static_cast<std::uint8_t>(bytes[i]), static_cast<std::uint8_t>(bytes[i + 1]),
                   static_cast<std::uint8_t>(bytes[i + 2])});
        }
    return r;
}

std::vector<std::uint8_t> luminance_plane(const Raster& r) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(r.width()) * static_cast<std::size_t>(r.height()));
    const auto& px = r.pixels();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(luminance8({px[3 * i], px[3 * i + 1], px[3 * i + 2]}));
    return out;
}

}  // namespace vbsf::render
