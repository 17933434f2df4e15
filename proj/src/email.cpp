#include "vbsf/email.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

#include "vbsf/common.hpp"
#include "vbsf/utf8.hpp"

namespace vbsf::mail {

namespace {

constexpr std::array kSupported{"body", "p",  "div", "span", "br",   "b",  "strong",
                                "i",    "em", "a",   "font", "img"};
constexpr std::array kKeptAttributes{"style", "color", "size"};
// Unknown tags that never carry content; they become empty spans.
constexpr std::array kUnknownVoid{"hr",   "meta",  "input", "link",  "wbr",    "area", "base",
                                  "col",  "embed", "param", "source", "track", "keygen"};
constexpr std::array kDropped{"script", "style", "head", "title"};

template <std::size_t N>
bool contains(const std::array<const char*, N>& set, std::string_view name) {
    return std::any_of(set.begin(), set.end(), [&](const char* s) { return name == s; });
}

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (lower(s[pos + i]) != prefix[i]) return false;
    return true;
}

void append_text(DomNode& parent, std::string_view text) {
    if (text.empty()) return;
    if (!parent.children.empty() && parent.children.back().kind == NodeKind::Text) {
        parent.children.back().text.append(text);
    } else {
        parent.children.push_back(DomNode::text_node(std::string(text)));
    }
}

std::optional<char32_t> named_entity(std::string_view name) {
    if (name == "amp") return U'&';
    if (name == "lt") return U'<';
    if (name == "gt") return U'>';
    if (name == "quot") return U'"';
    if (name == "apos") return U'\'';
    if (name == "nbsp") return U'\u00A0';
    return std::nullopt;
}

// Decodes one entity at s[pos] == '&'. On success appends the character and
// advances pos past the ';'. Otherwise appends a literal '&'.
void decode_entity(std::string_view s, std::size_t& pos, std::string& out) {
    std::size_t semi = s.find(';', pos + 1);
    if (semi != std::string_view::npos && semi - pos <= 10) {
        std::string_view body = s.substr(pos + 1, semi - pos - 1);
        std::optional<char32_t> cp;
        if (body.size() >= 2 && body[0] == '#') {
            std::uint32_t v = 0;
            bool ok = true;
            bool hex = body[1] == 'x' || body[1] == 'X';
            std::string_view digits = body.substr(hex ? 2 : 1);
            if (digits.empty()) ok = false;
            for (char c : digits) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else {
                    ok = false;
                    break;
                }
                v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
                if (v > 0x10FFFF) v = 0x110000;
            }
            if (ok) {
                if (v == 0 || v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) v = utf8::kReplacement;
                cp = static_cast<char32_t>(v);
            }
        } else {
            cp = named_entity(body);
        }
        if (cp) {
            utf8::append(out, *cp);
            pos = semi + 1;
            return;
        }
    }
    out.push_back('&');
    ++pos;
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] == '&') {
            decode_entity(s, pos, out);
        } else {
            out.push_back(s[pos++]);
        }
    }
    return out;
}

struct TagToken {
    bool end = false;
    bool self_closing = false;
    std::string name;
    std::vector<Attribute> attributes;
};

// Parses a tag starting at s[pos] == '<'. Returns nullopt when the '<' does
// not begin a tag, in which case it is literal text.
std::optional<TagToken> read_tag(std::string_view s, std::size_t& pos) {
    std::size_t p = pos + 1;
    TagToken tok;
    if (p < s.size() && s[p] == '/') {
        tok.end = true;
        ++p;
    }
    if (p >= s.size() || !is_alpha(s[p])) return std::nullopt;
    while (p < s.size() && !is_space(s[p]) && s[p] != '>' && s[p] != '/') tok.name.push_back(lower(s[p++]));

    while (p < s.size()) {
        while (p < s.size() && (is_space(s[p]) || s[p] == '/')) {
            if (s[p] == '/') tok.self_closing = true;
            ++p;
        }
        if (p >= s.size()) break;
        if (s[p] == '>') {
            ++p;
            pos = p;
            return tok;
        }
        tok.self_closing = false;
        std::string name;
        while (p < s.size() && !is_space(s[p]) && s[p] != '>' && s[p] != '=' && s[p] != '/')
            name.push_back(lower(s[p++]));
        if (name.empty()) name.push_back(s[p++]);
        while (p < s.size() && is_space(s[p])) ++p;
        std::string value;
        if (p < s.size() && s[p] == '=') {
            ++p;
            while (p < s.size() && is_space(s[p])) ++p;
            if (p < s.size() && (s[p] == '"' || s[p] == '\'')) {
                char q = s[p++];
                std::size_t close = s.find(q, p);
                if (close == std::string_view::npos) close = s.size();
                value = decode_entities(s.substr(p, close - p));
                p = std::min(close + 1, s.size());
            } else {
                std::size_t start = p;
                while (p < s.size() && !is_space(s[p]) && s[p] != '>') ++p;
                value = decode_entities(s.substr(start, p - start));
            }
        }
        if (!tok.end && contains(kKeptAttributes, name)) {
            bool seen = std::any_of(tok.attributes.begin(), tok.attributes.end(),
                                    [&](const Attribute& a) { return a.name == name; });
            if (!seen) tok.attributes.push_back({std::move(name), std::move(value)});
        }
    }
    // Unterminated tag: consume the rest of the input.
    pos = s.size();
    return tok;
}

// Strips tags and comments and decodes entities; used past the depth cap.
std::string flatten(std::string_view s) {
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if (c == '<') {
            if (s.compare(pos, 4, "<!--") == 0) {
                std::size_t end = s.find("-->", pos + 4);
                pos = end == std::string_view::npos ? s.size() : end + 3;
                continue;
            }
            std::size_t next = pos + 1;
            if (next < s.size() && (is_alpha(s[next]) || s[next] == '/' || s[next] == '!' || s[next] == '?')) {
                std::size_t end = s.find('>', pos);
                pos = end == std::string_view::npos ? s.size() : end + 1;
                continue;
            }
            out.push_back(c);
            ++pos;
        } else if (c == '&') {
            decode_entity(s, pos, out);
        } else {
            out.push_back(c);
            ++pos;
        }
    }
    return out;
}

class HtmlParser {
public:
    explicit HtmlParser(std::string_view src) : src_(src) {}

    DomTree run() {
        DomTree root = DomNode::element("body");
        stack_.push_back({&root, "body"});
        std::string text;
        std::size_t pos = 0;
        auto flush = [&] {
            append_text(*stack_.back().node, text);
            text.clear();
        };
        while (pos < src_.size()) {
            char c = src_[pos];
            if (c == '&') {
                decode_entity(src_, pos, text);
                continue;
            }
            if (c != '<') {
                text.push_back(c);
                ++pos;
                continue;
            }
            if (src_.compare(pos, 4, "<!--") == 0) {
                flush();
                std::size_t end = src_.find("-->", pos + 4);
                std::size_t stop = end == std::string_view::npos ? src_.size() : end;
                stack_.back().node->children.push_back(
                    DomNode::comment(std::string(src_.substr(pos + 4, stop - pos - 4))));
                pos = end == std::string_view::npos ? src_.size() : end + 3;
                continue;
            }
            if (pos + 1 < src_.size() && (src_[pos + 1] == '!' || src_[pos + 1] == '?')) {
                std::size_t end = src_.find('>', pos);
                pos = end == std::string_view::npos ? src_.size() : end + 1;
                continue;
            }
            std::size_t tag_start = pos;
            auto tok = read_tag(src_, pos);
            if (!tok) {
                text.push_back(c);
                ++pos;
                continue;
            }
            flush();
            if (tok->end) {
                close(tok->name);
            } else if (contains(kDropped, tok->name)) {
                skip_raw(tok->name, pos);
            } else if (!open(*tok)) {
                append_text(*stack_.back().node, flatten(src_.substr(tag_start)));
                pos = src_.size();
            }
        }
        flush();
        return root;
    }

private:
    struct Open {
        DomNode* node;
        std::string source_name;
    };

    // Returns false when the depth cap is hit.
    bool open(const TagToken& tok) {
        if (tok.name == "html") return true;
        if (tok.name == "body") {
            DomNode& root = *stack_.front().node;
            for (const auto& a : tok.attributes)
                if (!root.attribute(a.name)) root.attributes.push_back(a);
            return true;
        }
        if (stack_.size() >= kMaxDepth) return false;

        bool supported = contains(kSupported, tok.name);
        bool is_void = supported ? is_void_tag(tok.name) : contains(kUnknownVoid, tok.name);
        DomNode el = DomNode::element(supported ? tok.name : "span");
        el.attributes = tok.attributes;
        DomNode& parent = *stack_.back().node;
        parent.children.push_back(std::move(el));
        if (!is_void && !tok.self_closing) stack_.push_back({&parent.children.back(), tok.name});
        return true;
    }

    void close(const std::string& name) {
        for (std::size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i].source_name == name) {
                stack_.resize(i);
                return;
            }
        }
    }

    void skip_raw(const std::string& name, std::size_t& pos) {
        std::string needle = "</" + name;
        for (std::size_t p = pos; p < src_.size(); ++p) {
            if (src_[p] == '<' && starts_with_ci(src_, p, needle)) {
                std::size_t end = src_.find('>', p);
                pos = end == std::string_view::npos ? src_.size() : end + 1;
                return;
            }
        }
        pos = src_.size();
    }

    std::string_view src_;
    std::vector<Open> stack_;
};

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attribute(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '"') out += "&quot;";
        else out.push_back(c);
    }
    return out;
}

void serialize_node(const DomNode& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Text: out += escape_text(n.text); return;
        case NodeKind::Comment:
            out += "<!--";
            out += n.text;
            out += "-->";
            return;
        case NodeKind::Element: break;
    }
    out += '<';
    out += n.tag;
    for (const auto& a : n.attributes) {
        out += ' ';
        out += a.name;
        out += "=\"";
        out += escape_attribute(a.value);
        out += '"';
    }
    out += '>';
    if (is_void_tag(n.tag)) return;
    for (const auto& c : n.children) serialize_node(c, out);
    out += "</";
    out += n.tag;
    out += '>';
}

void raw_walk(const DomNode& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Text: out += n.text; break;
        case NodeKind::Comment: out += ' '; break;
        case NodeKind::Element:
            out += ' ';
            for (const auto& c : n.children) raw_walk(c, out);
            out += ' ';
            break;
    }
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

bool header_name_char(char c) {
    return c > 32 && c < 127 && c != ':';
}

// Splits "Name: value". Returns false if the line is not a header line.
bool split_header(std::string_view line, Header& h) {
    std::size_t colon = line.find(':');
    if (colon == 0 || colon == std::string_view::npos) return false;
    for (std::size_t i = 0; i < colon; ++i)
        if (!header_name_char(line[i])) return false;
    h.name = std::string(line.substr(0, colon));
    h.value = trim(line.substr(colon + 1));
    return true;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lower(a[i]) != lower(b[i])) return false;
    return true;
}

ContentType content_type_of(std::string_view value) {
    std::size_t semi = value.find(';');
    std::string media = trim(value.substr(0, semi));
    return iequals(media, "text/html") ? ContentType::TextHtml : ContentType::TextPlain;
}

}  // namespace

DomNode DomNode::element(std::string tag) {
    DomNode n;
    n.kind = NodeKind::Element;
    n.tag = std::move(tag);
    return n;
}

DomNode DomNode::text_node(std::string text) {
    DomNode n;
    n.kind = NodeKind::Text;
    n.text = std::move(text);
    return n;
}

DomNode DomNode::comment(std::string text) {
    DomNode n;
    n.kind = NodeKind::Comment;
    n.text = std::move(text);
    return n;
}

const std::string* DomNode::attribute(std::string_view name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a.value;
    return nullptr;
}

void DomNode::set_attribute(std::string name, std::string value) {
    for (auto& a : attributes) {
        if (a.name == name) {
            a.value = std::move(value);
            return;
        }
    }
    attributes.push_back({std::move(name), std::move(value)});
}

const std::string* EmailDocument::header(std::string_view name) const {
    for (const auto& h : headers)
        if (iequals(h.name, name)) return &h.value;
    return nullptr;
}

bool is_supported_tag(std::string_view tag) { return contains(kSupported, tag); }
bool is_void_tag(std::string_view tag) { return tag == "br" || tag == "img"; }
bool is_block_tag(std::string_view tag) { return tag == "body" || tag == "p" || tag == "div"; }

DomTree parse_html(std::string_view text) {
    return HtmlParser(text).run();
}

DomTree plain_body(std::string text) {
    DomTree root = DomNode::element("body");
    root.children.push_back(DomNode::text_node(std::move(text)));
    return root;
}

EmailDocument parse_email(std::string_view bytes) {
    std::string clean = utf8::sanitize(bytes);
    clean.erase(std::remove(clean.begin(), clean.end(), '\r'), clean.end());
    std::string_view s = clean;

    std::size_t header_end;  // end of the header block
    std::size_t body_start;
    if (s.empty() || s.front() == '\n') {
        header_end = 0;
        body_start = s.empty() ? 0 : 1;
    } else {
        std::size_t sep = s.find("\n\n");
        if (sep == std::string_view::npos) {
            Header probe;
            std::string_view first = s.substr(0, s.find('\n'));
            if (!split_header(first, probe)) throw MalformedHeaders("no header/body separator and first line is not a header");
            header_end = s.size();
            body_start = s.size();
        } else {
            header_end = sep;
            body_start = sep + 2;
        }
    }

    EmailDocument doc;
    bool have_content_type = false;
    bool last_kept = false;
    std::size_t pos = 0;
    while (pos < header_end) {
        std::size_t nl = s.find('\n', pos);
        if (nl == std::string_view::npos || nl > header_end) nl = header_end;
        std::string_view line = s.substr(pos, nl - pos);
        pos = nl + 1;
        if (!line.empty() && (line[0] == ' ' || line[0] == '\t')) {
            if (last_kept) {
                std::string cont = trim(line);
                Header& h = doc.headers.back();
                if (!cont.empty()) h.value += h.value.empty() ? cont : " " + cont;
            }
            continue;
        }
        Header h;
        last_kept = false;
        if (!split_header(line, h)) continue;
        if (iequals(h.name, "Content-Type")) {
            if (have_content_type) continue;
            have_content_type = true;
        }
        doc.headers.push_back(std::move(h));
        last_kept = true;
    }

    if (const std::string* ct = doc.header("Content-Type")) doc.content_type = content_type_of(*ct);
    std::string_view body = s.substr(std::min(body_start, s.size()));
    doc.body = doc.content_type == ContentType::TextHtml ? parse_html(body) : plain_body(std::string(body));
    return doc;
}

std::string serialize_html(const DomTree& tree) {
    std::string out;
    if (!tree.attributes.empty()) {
        out += "<body";
        for (const auto& a : tree.attributes) {
            out += ' ';
            out += a.name;
            out += "=\"";
            out += escape_attribute(a.value);
            out += '"';
        }
        out += '>';
    }
    for (const auto& c : tree.children) serialize_node(c, out);
    return out;
}

std::string serialize_email(const EmailDocument& doc) {
    std::string out;
    for (const auto& h : doc.headers) {
        out += h.name;
        out += ": ";
        out += h.value;
        out += '\n';
    }
    out += '\n';
    if (doc.content_type == ContentType::TextHtml) {
        out += serialize_html(doc.body);
    } else {
        for (const auto& c : doc.body.children)
            if (c.kind == NodeKind::Text) out += c.text;
    }
    return out;
}

std::string raw_text(const DomTree& tree) {
    std::string joined;
    raw_walk(tree, joined);
    std::string out;
    out.reserve(joined.size());
    bool pending_space = false;
    std::size_t pos = 0;
    while (pos < joined.size()) {
        std::size_t start = pos;
        char32_t cp = utf8::next(joined, pos);
        bool ws = cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v' ||
                  cp == U'\u00A0';
        if (ws) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.append(joined, start, pos - start);
    }
    return out;
}

std::size_t node_count(const DomNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) n += node_count(c);
    return n;
}

void normalize(DomNode& node) {
    std::vector<DomNode> merged;
    merged.reserve(node.children.size());
    for (auto& c : node.children) {
        if (c.kind == NodeKind::Text) {
            if (c.text.empty()) continue;
            if (!merged.empty() && merged.back().kind == NodeKind::Text) {
                merged.back().text += c.text;
                continue;
            }
        } else if (c.kind == NodeKind::Element) {
            normalize(c);
        }
        merged.push_back(std::move(c));
    }
    node.children = std::move(merged);
}

}  // namespace vbsf::mail
