#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "vbsf/common.hpp"
#include "vbsf/email.hpp"

namespace vbsf::mail {

enum class PositionKind : unsigned char { Flow, Absolute };

struct Position {
    PositionKind kind = PositionKind::Flow;
    int x = 0;
    int y = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

struct Style {
    Rgb color = kBlack;
    Rgb background_color = kWhite;
    // Set only when the element itself declares a background; undeclared
    // backgrounds are never painted.
    bool has_background = false;
    int font_size = 16;
    bool bold = false;
    bool display_none = false;
    bool visibility_hidden = false;
    Position position;

    friend bool operator==(const Style&, const Style&) = default;
};

struct StyledNode {
    NodeKind kind = NodeKind::Element;
    std::string tag;
    std::string text;
    Style style;
    std::vector<StyledNode> children;
};

using StyledTree = StyledNode;

StyledTree resolve_styles(const DomTree& tree, const Style& defaults = Style{});

std::size_t node_count(const StyledNode& node);

/// CSS color value: #rgb, #rrggbb, rgb(r,g,b) or a basic named color.
std::optional<Rgb> parse_color(std::string_view value);

/// Pixel size from "12px" (decimals rounded). Unitless or other units are rejected.
std::optional<int> parse_px(std::string_view value);

/// Pixel size for a legacy <font size> value ("1".."7", "+N", "-N").
std::optional<int> legacy_font_size(std::string_view value);

}  // namespace vbsf::mail
