#include "vbsf/style.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace vbsf::mail {

namespace {

struct NamedColor {
    const char* name;
    Rgb rgb;
};

constexpr std::array<NamedColor, 20> kNamedColors{{
    {"black", {0, 0, 0}},        {"white", {255, 255, 255}},  {"red", {255, 0, 0}},
    {"green", {0, 128, 0}},      {"blue", {0, 0, 255}},       {"yellow", {255, 255, 0}},
    {"gray", {128, 128, 128}},   {"grey", {128, 128, 128}},   {"silver", {192, 192, 192}},
    {"maroon", {128, 0, 0}},     {"purple", {128, 0, 128}},   {"fuchsia", {255, 0, 255}},
    {"lime", {0, 255, 0}},       {"olive", {128, 128, 0}},    {"navy", {0, 0, 128}},
    {"teal", {0, 128, 128}},     {"aqua", {0, 255, 255}},     {"orange", {255, 165, 0}},
    {"darkred", {139, 0, 0}},    {"darkblue", {0, 0, 139}},
}};

constexpr std::array<int, 7> kLegacySizes{10, 13, 16, 18, 24, 32, 48};

std::string lower_trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out(s.substr(b, e - b));
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

std::optional<double> parse_number(std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<int> parse_offset(std::string_view value) {
    std::string v = lower_trim(value);
    if (v == "0") return 0;
    auto px = parse_px(v);
    if (!px) {
        // Negative offsets are legal CSS; they clamp to the canvas origin.
        if (v.size() > 3 && v[0] == '-' && v.compare(v.size() - 2, 2, "px") == 0 &&
            parse_number(std::string_view(v).substr(1, v.size() - 3)))
            return 0;
        return std::nullopt;
    }
    return std::max(0, *px);
}

void apply_declaration(Style& s, const std::string& prop, const std::string& value, bool& has_left,
                       bool& has_top, int& left, int& top, std::optional<PositionKind>& pos) {
    if (prop == "color") {
        if (auto c = parse_color(value)) s.color = *c;
    } else if (prop == "background-color" || prop == "background") {
        if (auto c = parse_color(value)) {
            s.background_color = *c;
            s.has_background = true;
        }
    } else if (prop == "font-size") {
        if (auto px = parse_px(value); px && *px >= 1) s.font_size = *px;
    } else if (prop == "font-weight") {
        if (value == "bold" || value == "bolder") s.bold = true;
        else if (value == "normal" || value == "lighter") s.bold = false;
        else if (auto n = parse_number(value)) s.bold = *n >= 600;
    } else if (prop == "display") {
        if (value == "none") s.display_none = true;
    } else if (prop == "visibility") {
        if (value == "hidden" || value == "collapse") s.visibility_hidden = true;
        else if (value == "visible") s.visibility_hidden = false;
    } else if (prop == "position") {
        if (value == "absolute" || value == "fixed") pos = PositionKind::Absolute;
        else if (value == "static" || value == "relative") pos = PositionKind::Flow;
    } else if (prop == "left") {
        if (auto v = parse_offset(value)) {
            left = *v;
            has_left = true;
        }
    } else if (prop == "top") {
        if (auto v = parse_offset(value)) {
            top = *v;
            has_top = true;
        }
    }
}

void apply_inline_style(Style& s, std::string_view css) {
    bool has_left = false, has_top = false;
    int left = 0, top = 0;
    std::optional<PositionKind> pos;
    std::size_t start = 0;
    while (start <= css.size()) {
        std::size_t end = css.find(';', start);
        if (end == std::string_view::npos) end = css.size();
        std::string_view decl = css.substr(start, end - start);
        start = end + 1;
        std::size_t colon = decl.find(':');
        if (colon == std::string_view::npos) continue;
        std::string prop = lower_trim(decl.substr(0, colon));
        std::string value = lower_trim(decl.substr(colon + 1));
        if (auto bang = value.find("!important"); bang != std::string::npos) value = lower_trim(value.substr(0, bang));
        apply_declaration(s, prop, value, has_left, has_top, left, top, pos);
    }
    if (pos) {
        s.position.kind = *pos;
        s.position.x = 0;
        s.position.y = 0;
    }
    if (s.position.kind == PositionKind::Absolute) {
        if (has_left) s.position.x = left;
        if (has_top) s.position.y = top;
    }
}

StyledNode resolve(const DomNode& node, const Style& inherited, const Rgb& default_background) {
    StyledNode out;
    out.kind = node.kind;
    out.tag = node.tag;
    out.text = node.text;

    // Start from the inherited properties; non-inherited ones reset.
    Style s = inherited;
    s.background_color = default_background;
    s.has_background = false;
    s.position = Position{};

    if (node.kind == NodeKind::Element) {
        if (node.tag == "b" || node.tag == "strong") s.bold = true;
        if (node.tag == "font") {
            if (const std::string* c = node.attribute("color"))
                if (auto rgb = parse_color(*c)) s.color = *rgb;
            if (const std::string* sz = node.attribute("size"))
                if (auto px = legacy_font_size(*sz)) s.font_size = *px;
        }
        if (const std::string* css = node.attribute("style")) apply_inline_style(s, *css);
    }
    out.style = s;

    out.children.reserve(node.children.size());
    for (const auto& c : node.children) out.children.push_back(resolve(c, s, default_background));
    return out;
}

}  // namespace

std::optional<Rgb> parse_color(std::string_view value) {
    std::string v = lower_trim(value);
    if (v.empty()) return std::nullopt;
    if (v[0] == '#') {
        std::string_view h = std::string_view(v).substr(1);
        for (char c : h)
            if (hex_digit(c) < 0) return std::nullopt;
        if (h.size() == 3) {
            auto ex = [&](int i) { return static_cast<std::uint8_t>(hex_digit(h[i]) * 17); };
            return Rgb{ex(0), ex(1), ex(2)};
        }
        if (h.size() == 6) {
            auto ex = [&](int i) { return static_cast<std::uint8_t>(hex_digit(h[i]) * 16 + hex_digit(h[i + 1])); };
            return Rgb{ex(0), ex(2), ex(4)};
        }
        return std::nullopt;
    }
    if (v.rfind("rgb(", 0) == 0 && v.back() == ')') {
        std::string_view inner = std::string_view(v).substr(4, v.size() - 5);
        std::array<std::uint8_t, 3> ch{};
        std::size_t i = 0, start = 0;
        while (i < 3) {
            std::size_t comma = inner.find(',', start);
            bool last = comma == std::string_view::npos;
            if (last != (i == 2)) return std::nullopt;
            std::string part = lower_trim(inner.substr(start, last ? std::string_view::npos : comma - start));
            auto n = parse_number(part);
            if (!n) return std::nullopt;
            ch[i] = static_cast<std::uint8_t>(std::clamp(std::lround(*n), 0L, 255L));
            ++i;
            start = comma + 1;
        }
        return Rgb{ch[0], ch[1], ch[2]};
    }
    for (const auto& nc : kNamedColors)
        if (v == nc.name) return nc.rgb;
    return std::nullopt;
}

std::optional<int> parse_px(std::string_view value) {
    std::string v = lower_trim(value);
    if (v.size() < 3 || v.compare(v.size() - 2, 2, "px") != 0) return std::nullopt;
    auto n = parse_number(std::string_view(v).substr(0, v.size() - 2));
    if (!n || *n < 0 || *n > 100000) return std::nullopt;
    return static_cast<int>(std::lround(*n));
}

std::optional<int> legacy_font_size(std::string_view value) {
    std::string v = lower_trim(value);
    if (v.empty()) return std::nullopt;
    int sign = 0;
    std::string_view digits = v;
    if (v[0] == '+' || v[0] == '-') {
        sign = v[0] == '+' ? 1 : -1;
        digits.remove_prefix(1);
    }
    int n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    int level = sign == 0 ? n : 3 + sign * n;
    level = std::clamp(level, 1, 7);
    return kLegacySizes[static_cast<std::size_t>(level - 1)];
}

StyledTree resolve_styles(const DomTree& tree, const Style& defaults) {
    Style base = defaults;
    base.display_none = false;
    return resolve(tree, base, defaults.background_color);
}

std::size_t node_count(const StyledNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) n += node_count(c);
    return n;
}

}  // namespace vbsf::mail
