#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vbsf::mail {

enum class NodeKind : unsigned char { Element, Text, Comment };

struct Attribute {
    std::string name;
    std::string value;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// One node of the parsed body. Elements carry a lowercase tag from the
/// supported set; Text and Comment nodes carry `text` and never have children.
struct DomNode {
    NodeKind kind = NodeKind::Element;
    std::string tag;
    std::vector<Attribute> attributes;
    std::vector<DomNode> children;
    std::string text;

    static DomNode element(std::string tag);
    static DomNode text_node(std::string text);
    static DomNode comment(std::string text);

    bool is_element(std::string_view name) const { return kind == NodeKind::Element && tag == name; }
    const std::string* attribute(std::string_view name) const;
    void set_attribute(std::string name, std::string value);

    friend bool operator==(const DomNode&, const DomNode&) = default;
};

/// The root is always a `body` element.
using DomTree = DomNode;

enum class ContentType : unsigned char { TextPlain, TextHtml };

struct Header {
    std::string name;
    std::string value;

    friend bool operator==(const Header&, const Header&) = default;
};

struct EmailDocument {
    std::vector<Header> headers;
    ContentType content_type = ContentType::TextPlain;
    DomTree body = DomNode::element("body");

    const std::string* header(std::string_view name) const;

    friend bool operator==(const EmailDocument&, const EmailDocument&) = default;
};

/// Maximum element nesting (root included) before the rest of the input is
/// flattened into a single text node.
inline constexpr std::size_t kMaxDepth = 256;

EmailDocument parse_email(std::string_view bytes);
DomTree parse_html(std::string_view text);
DomTree plain_body(std::string text);

/// Canonical HTML for a tree; parse_html(serialize_html(t)) == t for any
/// tree produced by parse_html.
std::string serialize_html(const DomTree& tree);

/// The ".eml-lite" file form: headers, one blank line, body.
std::string serialize_email(const EmailDocument& doc);

/// Naive source-text extraction: element boundaries and comments become a
/// single space, whitespace runs collapse, styles are ignored.
std::string raw_text(const DomTree& tree);

std::size_t node_count(const DomNode& node);

/// Merges adjacent text nodes and drops empty ones, recursively.
void normalize(DomNode& node);

bool is_supported_tag(std::string_view tag);
bool is_void_tag(std::string_view tag);
bool is_block_tag(std::string_view tag);

}  // namespace vbsf::mail
