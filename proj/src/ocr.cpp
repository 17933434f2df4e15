#include "vbsf/ocr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <unordered_map>

#include "vbsf/font.hpp"
#include "vbsf/utf8.hpp"

namespace vbsf::ocr {

namespace {

constexpr int kMaxSize = 96;
constexpr std::size_t kMaxPalette = 32;

// One glyph at one size and weight. Row bit c is column c.
struct Template {
    char32_t cp = 0;
    int size = 0;
    int width = 0;
    bool bold = false;
    std::vector<std::uint64_t> rows;
    int ink_left = 0, ink_right = -1, ink_top = 0, ink_bottom = -1;
    int ink_count = 0;
};

std::uint64_t low_bits(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::string crop_key(int w, int h, const std::vector<std::uint64_t>& rows) {
    std::string key;
    key.reserve(4 + rows.size() * 8);
    key.push_back(static_cast<char>(w));
    key.push_back(static_cast<char>(w >> 8));
    key.push_back(static_cast<char>(h));
    key.push_back(static_cast<char>(h >> 8));
    for (std::uint64_t r : rows)
        for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>(r >> (8 * b)));
    return key;
}

class TemplateBank {
public:
    static const TemplateBank& get() {
        static const TemplateBank bank;
        return bank;
    }

    std::size_t glyph_count() const { return glyphs_.size(); }

    const Template& at(int size, bool bold, std::size_t glyph) const {
        return all_[(static_cast<std::size_t>(size - 1) * 2 + (bold ? 1 : 0)) * glyphs_.size() + glyph];
    }

    const std::vector<int>* crop_candidates(const std::string& key) const {
        auto it = crops_.find(key);
        return it == crops_.end() ? nullptr : &it->second;
    }

    const Template& by_index(int i) const { return all_[static_cast<std::size_t>(i)]; }

private:
    TemplateBank() : glyphs_(render::canonical_repertoire()) {
        all_.reserve(static_cast<std::size_t>(kMaxSize) * 2 * glyphs_.size());
        for (int s = 1; s <= kMaxSize; ++s) {
            int w = render::glyph_width(s);
            for (int bold = 0; bold < 2; ++bold) {
                for (char32_t cp : glyphs_) {
                    const render::GlyphBitmap& bm = render::glyph_bitmap(cp);
                    Template t;
                    t.cp = cp;
                    t.size = s;
                    t.width = w;
                    t.bold = bold != 0;
                    t.rows.resize(static_cast<std::size_t>(s));
                    for (int r = 0; r < s; ++r) {
                        std::uint64_t bits = 0;
                        int sr = r * render::kBaseHeight / s;
                        for (int c = 0; c < w; ++c)
                            if (bm.bit(sr, c * render::kBaseWidth / w)) bits |= std::uint64_t{1} << c;
                        if (t.bold) bits = (bits | (bits << 1)) & low_bits(w);
                        t.rows[static_cast<std::size_t>(r)] = bits;
                    }
                    finish(t);
                    all_.push_back(std::move(t));
                }
            }
        }
        for (std::size_t i = 0; i < all_.size(); ++i) {
            const Template& t = all_[i];
            if (t.ink_count == 0) continue;
            std::vector<std::uint64_t> crop;
            for (int r = t.ink_top; r <= t.ink_bottom; ++r) crop.push_back(t.rows[static_cast<std::size_t>(r)] >> t.ink_left);
            crops_[crop_key(t.ink_right - t.ink_left + 1, t.ink_bottom - t.ink_top + 1, crop)].push_back(static_cast<int>(i));
        }
    }

    static void finish(Template& t) {
        std::uint64_t cols = 0;
        for (int r = 0; r < t.size; ++r) {
            std::uint64_t bits = t.rows[static_cast<std::size_t>(r)];
            if (!bits) continue;
            if (t.ink_count == 0) t.ink_top = r;
            t.ink_bottom = r;
            t.ink_count += std::popcount(bits);
            cols |= bits;
        }
        if (cols) {
            t.ink_left = std::countr_zero(cols);
            t.ink_right = 63 - std::countl_zero(cols);
        }
    }

    std::vector<char32_t> glyphs_;
    std::vector<Template> all_;
    std::unordered_map<std::string, std::vector<int>> crops_;
};

// Bit-packed copy of the mask; bit c of a row is column c.
class PackedMask {
public:
    explicit PackedMask(const InkMask& m) : width_(m.width), height_(m.height), words_((m.width + 63) / 64) {
        bits_.assign(static_cast<std::size_t>(words_) * static_cast<std::size_t>(std::max(height_, 0)), 0);
        for (int y = 0; y < height_; ++y)
            for (int x = 0; x < width_; ++x)
                if (m.at(x, y)) bits_[static_cast<std::size_t>(y * words_ + x / 64)] |= std::uint64_t{1} << (x % 64);
    }

    // Columns [x, x+n) of row y, n <= 64; anything outside the mask reads as 0.
    std::uint64_t bits(int y, int x, int n) const {
        if (n <= 0 || y < 0 || y >= height_ || x >= width_) return 0;
        if (x < 0) {
            if (x + n <= 0) return 0;
            return bits(y, 0, n + x) << (-x);
        }
        const std::uint64_t* row = &bits_[static_cast<std::size_t>(y * words_)];
        int wi = x / 64, off = x % 64;
        std::uint64_t v = row[wi] >> off;
        if (off && wi + 1 < words_) v |= row[wi + 1] << (64 - off);
        return v & low_bits(n);
    }

    bool at(int x, int y) const { return bits(y, x, 1) != 0; }

    void update_rows(const InkMask& m, int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(y) * words_, words_, 0);
            for (int x = 0; x < width_; ++x)
                if (m.at(x, y)) bits_[static_cast<std::size_t>(y * words_ + x / 64)] |= std::uint64_t{1} << (x % 64);
        }
    }

private:
    int width_, height_, words_;
    std::vector<std::uint64_t> bits_;
};

struct Candidate {
    const Template* t = nullptr;
    int x = 0;
    int y = 0;
    double score = -1.0;
    double votes = 0.0;
};

// Higher score first, then better supported size, regular before bold,
// then lowest codepoint.
bool better(const Candidate& a, const Candidate& b) {
    if (!b.t) return a.t != nullptr;
    if (a.score != b.score) return a.score > b.score;
    if (a.votes != b.votes) return a.votes > b.votes;
    if (a.t->bold != b.t->bold) return !a.t->bold;
    if (a.t->cp != b.t->cp) return a.t->cp < b.t->cp;
    if (a.t->size != b.t->size) return a.t->size < b.t->size;
    return a.x < b.x;
}

struct Decoded {
    Box box;
    const Template* t = nullptr;  // null for unmatched ink
    double score = 0.0;
};

class LineDecoder {
public:
    LineDecoder(const PackedMask& mask, int width, int top, int bottom)
        : mask_(&mask), bank_(&TemplateBank::get()), width_(width), top_(top), bottom_(bottom) {
        col_top_.assign(static_cast<std::size_t>(width), -1);
        col_bottom_.assign(static_cast<std::size_t>(width), -1);
        for (int y = top; y < bottom; ++y)
            for (int x = 0; x < width; ++x)
                if (mask.at(x, y)) {
                    if (col_top_[static_cast<std::size_t>(x)] < 0) col_top_[static_cast<std::size_t>(x)] = y;
                    col_bottom_[static_cast<std::size_t>(x)] = y;
                }
    }

    std::optional<int> em_bottom() const { return em_bottom_; }
    std::optional<int> em_top() const {
        std::optional<int> top;
        if (!em_bottom_) return top;
        for (const auto& h : hyps_)
            if (h.y + h.size == *em_bottom_ && (!top || h.y < *top)) top = h.y;
        return top;
    }

    std::vector<Decoded> run() {
        estimate_baseline();
        std::vector<Decoded> out;
        int cursor = 0;
        int prev_end = -1;
        for (;;) {
            int a = cursor;
            while (a < width_ && !has_ink(a)) ++a;
            if (a >= width_) break;
            Candidate best = best_at(a, prev_end);
            if (best.t) {
                out.push_back({{best.x, best.y, best.t->width, best.t->size}, best.t, best.score});
                cursor = best.x + best.t->width;
                prev_end = cursor;
            } else {
                int e = a;
                while (e < width_ && has_ink(e)) ++e;
                int t = bottom_, b = top_;
                for (int x = a; x < e; ++x) {
                    t = std::min(t, col_top_[static_cast<std::size_t>(x)]);
                    b = std::max(b, col_bottom_[static_cast<std::size_t>(x)]);
                }
                out.push_back({{a, t, e - a, b - t + 1}, nullptr, 0.0});
                cursor = e;
                prev_end = -1;
            }
        }
        return out;
    }

private:
    bool has_ink(int x) const { return col_top_[static_cast<std::size_t>(x)] >= 0; }

    // Every glyph on a laid-out line shares its em-box bottom. Cells whose
    // exact ink crop identifies a template vote for (size, em bottom).
    using Votes = std::map<std::pair<int, int>, double>;  // (em bottom, size) -> weight

    bool vote_crop(int x, int cw, double weight, Votes& votes) const {
        if (cw > 64) return false;
        int t = bottom_, b = top_;
        for (int c = x; c < x + cw; ++c) {
            if (!has_ink(c)) return false;
            t = std::min(t, col_top_[static_cast<std::size_t>(c)]);
            b = std::max(b, col_bottom_[static_cast<std::size_t>(c)]);
        }
        std::vector<std::uint64_t> crop;
        for (int y = t; y <= b; ++y) crop.push_back(mask_->bits(y, x, cw));
        const auto* cands = bank_->crop_candidates(crop_key(cw, b - t + 1, crop));
        if (!cands) return false;
        // Larger crops are less ambiguous and count for more.
        double w = weight / static_cast<double>(cands->size());
        for (int i : *cands) {
            const Template& tp = bank_->by_index(i);
            votes[{t - tp.ink_top + tp.size, tp.size}] += w * tp.ink_count;
        }
        return true;
    }

    void estimate_baseline() {
        Votes votes;
        int x = 0;
        while (x < width_) {
            if (!has_ink(x)) {
                ++x;
                continue;
            }
            int e = x;
            while (e < width_ && has_ink(e)) ++e;
            int cw = e - x;
            if (!vote_crop(x, cw, 1.0, votes)) {
                // Touching glyphs (bold, mostly) merge into one run; the
                // first and last glyph of the run can still be identified.
                for (int p = 1; p < cw && p <= 64; ++p) {
                    vote_crop(x, p, 0.5, votes);
                    vote_crop(e - p, p, 0.5, votes);
                }
            }
            x = e;
        }
        if (votes.empty()) return;
        std::map<int, double> by_bottom;
        for (const auto& [k, w] : votes) by_bottom[k.first] += w;
        double best_w = -1;
        for (const auto& [bot, w] : by_bottom)
            if (w > best_w) {
                best_w = w;
                em_bottom_ = bot;
            }
        // Other well-supported bottoms are kept too, for text positioned
        // independently of the line.
        for (const auto& [k, w] : votes)
            if (k.first == *em_bottom_ || by_bottom[k.first] >= std::max(0.25 * best_w, 20.0))
                hyps_.push_back({k.second, k.first - k.second, w});
        std::stable_sort(hyps_.begin(), hyps_.end(), [](const Hypothesis& a, const Hypothesis& b) {
            return a.votes != b.votes ? a.votes > b.votes : a.size < b.size;
        });
    }

    Candidate best_at(int a, int prev_end) {
        Candidate best;
        if (em_bottom_) {
            for (const auto& h : hyps_) consider_size(a, prev_end, h.size, h.votes, h.y, best);
            // Below full base width the blank spacing column is sampled away,
            // neighbours touch and their merged crops never vote.
            if (!best.t || best.score < 1.0)
                for (int size = 1; render::glyph_width(size) < render::kBaseWidth; ++size)
                    consider_size(a, prev_end, size, 0.0, *em_bottom_ - size, best);
        } else {
            // No template identified any cell: place each template by the
            // top of the ink it would cover.
            int band = bottom_ - top_;
            for (int size = 1; size <= kMaxSize; ++size) {
                if (size > 2 * band + 2) break;
                consider_size(a, prev_end, size, 0.0, std::nullopt, best);
            }
        }
        return best;
    }

    // Candidates are visited in ranking order (size support, regular before
    // bold, codepoint), so the first exact match is final.
    void consider_size(int a, int prev_end, int size, double votes, std::optional<int> y_fixed, Candidate& best) {
        if (best.t && best.score >= 1.0) return;
        int w = render::glyph_width(size);
        if (w > 64) return;
        // Windows at x = a - offset for offset in [0, w), plus one at prev_end.
        std::vector<std::vector<std::uint64_t>> windows(static_cast<std::size_t>(w) + 1);
        auto window_at = [&](std::size_t slot, int x, int y) -> const std::vector<std::uint64_t>& {
            auto& win = windows[slot];
            if (win.empty() || !y_fixed) {
                win.resize(static_cast<std::size_t>(size));
                for (int r = 0; r < size; ++r) win[static_cast<std::size_t>(r)] = mask_->bits(y + r, x, w);
            }
            return win;
        };
        bool prev_ok = prev_end >= 0 && prev_end <= a && a < prev_end + w;
        for (int bold = 0; bold < 2; ++bold) {
            for (std::size_t g = 0; g < bank_->glyph_count(); ++g) {
                const Template& t = bank_->at(size, bold != 0, g);
                if (t.ink_count == 0) continue;
                for (int k = 0; k < 2; ++k) {
                    int x = k == 0 ? a - t.ink_left : prev_end;
                    if (k == 1 && (!prev_ok || x == a - t.ink_left)) continue;
                    int y;
                    if (y_fixed) {
                        y = *y_fixed;
                    } else {
                        int top = bottom_;
                        for (int c = x + t.ink_left; c <= x + t.ink_right; ++c)
                            if (c >= 0 && c < width_ && has_ink(c)) top = std::min(top, col_top_[static_cast<std::size_t>(c)]);
                        y = top - t.ink_top;
                    }
                    std::size_t slot = k == 0 ? static_cast<std::size_t>(t.ink_left) : static_cast<std::size_t>(w);
                    score(t, x, y, a, window_at(slot, x, y), votes, best);
                    if (best.t && best.score >= 1.0) return;
                }
            }
        }
    }

    static void score(const Template& t, int x, int y, int a, const std::vector<std::uint64_t>& window, double votes,
                      Candidate& best) {
        const int area = t.size * t.width;
        // Past this many disagreeing pixels the candidate cannot beat the best.
        const int budget = best.t ? static_cast<int>((1.0 - best.score) * area + 1e-9) : area;
        int diff = 0, inter = 0, uni = 0;
        bool covers = false;
        std::uint64_t anchor_bit = std::uint64_t{1} << (a - x);
        for (int r = 0; r < t.size; ++r) {
            std::uint64_t img = window[static_cast<std::size_t>(r)];
            std::uint64_t tp = t.rows[static_cast<std::size_t>(r)];
            diff += std::popcount(img ^ tp);
            if (diff > budget) return;
            inter += std::popcount(img & tp);
            uni += std::popcount(img | tp);
            covers = covers || (img & tp & anchor_bit);
        }
        if (!covers || uni == 0 || 2 * inter < uni) return;
        Candidate c;
        c.t = &t;
        c.x = x;
        c.y = y;
        c.score = 1.0 - static_cast<double>(diff) / area;
        c.votes = votes;
        if (better(c, best)) best = c;
    }

    const PackedMask* mask_;
    const TemplateBank* bank_;
    int width_, top_, bottom_;
    std::vector<int> col_top_, col_bottom_;
    struct Hypothesis {
        int size;
        int y;
        double votes;
    };
    std::optional<int> em_bottom_;
    std::vector<Hypothesis> hyps_;
};

bool visible(const Decoded& c, const OcrConfig& cfg) {
    return c.t && c.score >= cfg.match_threshold && c.t->size >= cfg.min_glyph_height && c.t->cp != render::kBoxGlyph;
}

std::string assemble_line(const std::vector<Decoded>& cells, const OcrConfig& cfg) {
    std::vector<int> widths;
    for (const auto& c : cells)
        if (c.t) widths.push_back(c.box.width);
    if (widths.empty()) return {};
    std::sort(widths.begin(), widths.end());
    double median = widths.size() % 2 ? widths[widths.size() / 2]
                                      : 0.5 * (widths[widths.size() / 2 - 1] + widths[widths.size() / 2]);
    std::string out;
    bool pending_space = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Decoded& c = cells[i];
        if (i > 0) {
            const Decoded& p = cells[i - 1];
            int gap = c.box.x - (p.box.x + p.box.width);
            if (gap >= cfg.space_gap_factor * median) pending_space = true;
        }
        if (!visible(c, cfg)) continue;
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        utf8::append(out, c.t->cp);
    }
    return out;
}

}  // namespace

void OcrConfig::validate() const {
    if (!(match_threshold > 0.0 && match_threshold <= 1.0)) throw FormatError("match_threshold must be in (0, 1]");
    if (contrast_threshold < 1) throw FormatError("contrast_threshold must be >= 1");
    if (min_glyph_height < 1) throw FormatError("min_glyph_height must be >= 1");
    if (background_window < 1) throw FormatError("background_window must be >= 1");
    if (!(space_gap_factor > 0.0)) throw FormatError("space_gap_factor must be positive");
}

namespace {

struct Palette {
    std::vector<std::uint16_t> idx;  // per pixel
    std::vector<int> lum;            // luminance per entry
    std::size_t page = 0;            // most frequent entry
};

// Pixels mapped to palette indices in first-appearance order. Images with
// many colours fall back to luminance levels.
Palette build_palette(const render::Raster& img) {
    Palette pal;
    const auto& px = img.pixels();
    pal.idx.resize(static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height()));
    std::unordered_map<std::uint32_t, std::uint16_t> palette;
    bool too_many = false;
    for (std::size_t i = 0; i < pal.idx.size(); ++i) {
        std::uint32_t key = (std::uint32_t{px[3 * i]} << 16) | (std::uint32_t{px[3 * i + 1]} << 8) | px[3 * i + 2];
        auto [it, inserted] = palette.try_emplace(key, static_cast<std::uint16_t>(palette.size()));
        if (inserted) {
            if (palette.size() > kMaxPalette) {
                too_many = true;
                break;
            }
            pal.lum.push_back(luminance8({px[3 * i], px[3 * i + 1], px[3 * i + 2]}));
        }
        pal.idx[i] = it->second;
    }
    if (too_many) {
        pal.lum.resize(256);
        for (int l = 0; l < 256; ++l) pal.lum[static_cast<std::size_t>(l)] = l;
        for (std::size_t i = 0; i < pal.idx.size(); ++i)
            pal.idx[i] = static_cast<std::uint16_t>(luminance8({px[3 * i], px[3 * i + 1], px[3 * i + 2]}));
    }
    std::vector<std::size_t> freq(pal.lum.size(), 0);
    for (auto i : pal.idx) ++freq[i];
    if (!freq.empty()) pal.page = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    return pal;
}

// Rewrites mask rows [y0, y1) using a win x win background window. The window
// is padded beyond the image edge with the most frequent colour, so text along
// the border is still judged against the page.
void binarize_rows(const Palette& pal, int y0, int y1, int win, int tau, InkMask& mask) {
    const int W = mask.width, H = mask.height;
    const std::size_t K = pal.lum.size();
    std::fill(mask.ink.begin() + static_cast<std::ptrdiff_t>(y0) * W, mask.ink.begin() + static_cast<std::ptrdiff_t>(y1) * W, 0);
    if (K <= 1 || y0 >= y1) return;
    const int half = win / 2;
    // colcount[x*K + k]: pixels of colour k in column x within the current row window.
    std::vector<int> colcount(static_cast<std::size_t>(W) * K, 0);
    auto add_row = [&](int y, int delta) {
        if (y < 0 || y >= H) return;
        for (int x = 0; x < W; ++x)
            colcount[static_cast<std::size_t>(x) * K + pal.idx[static_cast<std::size_t>(y) * W + x]] += delta;
    };
    for (int y = y0 - half; y < y0 - half + win; ++y) add_row(y, 1);

    std::vector<int> counts(K);
    for (int y = y0; y < y1; ++y) {
        if (y > y0) {
            add_row(y - 1 - half, -1);
            add_row(y - half + win - 1, 1);
        }
        std::fill(counts.begin(), counts.end(), 0);
        auto add_col = [&](int x, int delta) {
            if (x < 0 || x >= W) return;
            const int* c = &colcount[static_cast<std::size_t>(x) * K];
            for (std::size_t k = 0; k < K; ++k) counts[k] += delta * c[k];
        };
        for (int x = -half; x < -half + win; ++x) add_col(x, 1);
        const int rows_in = std::min(H, y - half + win) - std::max(0, y - half);
        for (int x = 0; x < W; ++x) {
            if (x > 0) {
                add_col(x - 1 - half, -1);
                add_col(x - half + win - 1, 1);
            }
            const int cols_in = std::min(W, x - half + win) - std::max(0, x - half);
            const int outside = win * win - rows_in * cols_in;
            const std::size_t own = pal.idx[static_cast<std::size_t>(y) * W + x];
            auto count = [&](std::size_t k) { return counts[k] + (k == pal.page ? outside : 0); };
            std::size_t mode = own;
            int best = count(own);
            for (std::size_t k = 0; k < K; ++k)
                if (count(k) > best) {
                    best = count(k);
                    mode = k;
                }
            if (std::abs(pal.lum[own] - pal.lum[mode]) >= tau) mask.ink[static_cast<std::size_t>(y) * W + x] = 1;
        }
    }
}

InkMask empty_mask(const render::Raster& img) {
    InkMask mask;
    mask.width = img.width();
    mask.height = img.height();
    mask.ink.assign(static_cast<std::size_t>(mask.width) * static_cast<std::size_t>(mask.height), 0);
    return mask;
}

}  // namespace

InkMask binarize(const render::Raster& img, const OcrConfig& cfg) {
    InkMask mask = empty_mask(img);
    if (mask.ink.empty()) return mask;
    binarize_rows(build_palette(img), 0, mask.height, cfg.background_window, cfg.contrast_threshold, mask);
    return mask;
}

std::vector<Line> segment(const InkMask& mask, const OcrConfig& cfg) {
    std::vector<Line> lines;
    auto row_has_ink = [&](int y) {
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) return true;
        return false;
    };
    int y = 0;
    while (y < mask.height) {
        if (!row_has_ink(y)) {
            ++y;
            continue;
        }
        Line line;
        line.top = y;
        while (y < mask.height && row_has_ink(y)) ++y;
        line.bottom = y;
        int x = 0;
        auto col_has_ink = [&](int c) {
            for (int r = line.top; r < line.bottom; ++r)
                if (mask.at(c, r)) return true;
            return false;
        };
        while (x < mask.width) {
            if (!col_has_ink(x)) {
                ++x;
                continue;
            }
            int s = x;
            while (x < mask.width && col_has_ink(x)) ++x;
            if (x - s < 2) continue;
            int t = line.bottom, b = line.top;
            for (int c = s; c < x; ++c)
                for (int r = line.top; r < line.bottom; ++r)
                    if (mask.at(c, r)) {
                        t = std::min(t, r);
                        b = std::max(b, r);
                    }
            if (b - t + 1 >= cfg.min_glyph_height) line.cells.push_back({s, t, x - s, b - t + 1});
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

Match match_glyph(const std::vector<std::uint8_t>& cell, int width, int height, const OcrConfig& cfg) {
    Match best;
    if (width <= 0 || height <= 0 || cell.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        return best;
    double best_score = -1.0;
    char32_t best_cp = 0;
    bool best_bold = false;
    std::vector<std::uint8_t> tmpl(cell.size());
    for (char32_t cp : render::canonical_repertoire()) {
        const render::GlyphBitmap& bm = render::glyph_bitmap(cp);
        for (int bold = 0; bold < 2; ++bold) {
            for (int r = 0; r < height; ++r) {
                int sr = r * render::kBaseHeight / height;
                for (int c = 0; c < width; ++c) {
                    bool on = bm.bit(sr, c * render::kBaseWidth / width);
                    if (bold && c > 0) on = on || bm.bit(sr, (c - 1) * render::kBaseWidth / width);
                    tmpl[static_cast<std::size_t>(r * width + c)] = on;
                }
            }
            std::size_t agree = 0;
            for (std::size_t i = 0; i < cell.size(); ++i) agree += (cell[i] != 0) == (tmpl[i] != 0);
            double score = static_cast<double>(agree) / static_cast<double>(cell.size());
            // Strictly greater keeps the lowest codepoint and the regular weight on ties.
            if (score > best_score) {
                best_score = score;
                best_cp = cp;
                best_bold = bold != 0;
            }
        }
    }
    best.score = best_score;
    best.bold = best_bold;
    if (best_score >= cfg.match_threshold && best_cp != render::kBoxGlyph) best.codepoint = best_cp;
    return best;
}

OcrResult ocr_text(const render::Raster& img, const OcrConfig& cfg) {
    cfg.validate();
    OcrResult result;
    InkMask mask = empty_mask(img);
    if (mask.ink.empty()) return result;
    const Palette pal = build_palette(img);
    binarize_rows(pal, 0, mask.height, cfg.background_window, cfg.contrast_threshold, mask);
    PackedMask packed(mask);
    std::vector<std::string> lines;
    auto row_has_ink = [&](int row) {
        for (int x = 0; x < mask.width; x += 64)
            if (packed.bits(row, x, std::min(64, mask.width - x))) return true;
        return false;
    };
    auto band_end = [&](int row) {
        while (row < mask.height && row_has_ink(row)) ++row;
        return row;
    };
    // Strokes of large glyphs can fill half a fixed window and flip its mode,
    // so rows of tall lines are binarized again with a window twice the
    // line height.
    std::vector<int> row_window(static_cast<std::size_t>(mask.height), cfg.background_window);
    auto widen = [&](int from, int to, int want) {
        to = std::min(to, mask.height);
        bool changed = false;
        for (int s = from; s < to;) {
            if (row_window[static_cast<std::size_t>(s)] >= want) {
                ++s;
                continue;
            }
            int e = s;
            while (e < to && row_window[static_cast<std::size_t>(e)] < want) row_window[static_cast<std::size_t>(e++)] = want;
            binarize_rows(pal, s, e, want, cfg.contrast_threshold, mask);
            packed.update_rows(mask, s, e);
            changed = true;
            s = e;
        }
        return changed;
    };
    int y = 0;
    while (y < mask.height) {
        if (!row_has_ink(y)) {
            ++y;
            continue;
        }
        int top = y;
        y = band_end(top);
        for (int round = 0; round < 4; ++round) {
            int want = std::max(cfg.background_window, 2 * (y - top));
            if (!widen(top, y + want / 2, want)) break;
            while (top < mask.height && !row_has_ink(top)) ++top;
            y = band_end(top);
        }
        if (top >= mask.height) break;
        LineDecoder decoder(packed, mask.width, top, y);
        std::vector<Decoded> cells = decoder.run();
        // Ink separated from the line by blank rows but still inside its em
        // boxes (an underscore, the dot of a large i) belongs to the same line.
        for (;;) {
            int next = y;
            while (next < mask.height && !row_has_ink(next)) ++next;
            if (next >= mask.height) break;
            int end = next;
            while (end < mask.height && row_has_ink(end)) ++end;
            if (auto bottom = decoder.em_bottom(); bottom && next < *bottom) {
                y = end;
                decoder = LineDecoder(packed, mask.width, top, y);
                cells = decoder.run();
                continue;
            }
            // A band that yields nothing readable may be the detached top of
            // the next line.
            bool readable = std::any_of(cells.begin(), cells.end(), [&](const Decoded& c) { return visible(c, cfg); });
            if (!readable) {
                LineDecoder merged(packed, mask.width, top, end);
                std::vector<Decoded> merged_cells = merged.run();
                if (merged.em_bottom() && *merged.em_bottom() > next && *merged.em_top() <= top) {
                    y = end;
                    decoder = merged;
                    cells = std::move(merged_cells);
                    continue;
                }
            }
            break;
        }
        for (const auto& c : cells) {
            OcrCell oc;
            oc.box = c.box;
            oc.score = c.score;
            if (c.t) {
                oc.bold = c.t->bold;
                if (visible(c, cfg)) oc.codepoint = c.t->cp;
            }
            if (!oc.codepoint) ++result.unmatched;
            result.cells.push_back(oc);
        }
        std::string line = assemble_line(cells, cfg);
        if (!line.empty()) lines.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) result.text.push_back('\n');
        result.text += lines[i];
    }
    return result;
}

std::string dump_cells(const OcrResult& r) {
    std::string out;
    for (const auto& c : r.cells) {
        out += std::to_string(c.box.x) + ' ' + std::to_string(c.box.y) + ' ' + std::to_string(c.box.width) + ' ' +
               std::to_string(c.box.height) + ' ';
        out += c.codepoint ? utf8::encode(*c.codepoint) : std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.4f\n", c.score);
        out += buf;
    }
    return out;
}

std::string visible_text(const render::GlyphTrace& trace, const OcrConfig& cfg) {
    std::string out, line;
    int line_bottom = -1, pen = 0;
    auto flush = [&] {
        if (line.empty()) return;
        if (!out.empty()) out += '\n';
        out += line;
        line.clear();
    };
    for (const auto& g : trace.glyphs) {
        char32_t cp = render::canonical_codepoint(g.codepoint);
        if (!g.drawn || g.height < cfg.min_glyph_height || cp == render::kBoxGlyph) continue;
        if (std::abs(luminance8(g.fg) - luminance8(g.bg)) < cfg.contrast_threshold) continue;
        int bottom = g.y + g.height;
        if (bottom != line_bottom || g.x < pen) {
            flush();
            line_bottom = bottom;
        } else if (g.x > pen && !line.empty()) {
            line += ' ';
        }
        utf8::append(line, cp);
        pen = g.x + g.width;
    }
    flush();
    return out;
}

}  // namespace vbsf::ocr
