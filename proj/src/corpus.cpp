#include "vbsf/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vbsf/font.hpp"
#include "vbsf/utf8.hpp"

namespace vbsf::corpus {

namespace fs = std::filesystem;

namespace {

constexpr const char* kTrickNames[] = {"none",      "comment_split", "hidden_ham_color",      "hidden_ham_tiny_font",
                                       "hidden_ham_display_none", "homoglyph", "injection_visible_ham",
                                       "emphasis_size_bold"};

constexpr const char* kHeadlineColors[] = {"#b00000", "#0033cc", "#000000", "#6a0dad", "#006400", "#cc3300"};
constexpr int kHeadlineSizes[] = {36, 40, 48};

bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowered(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = lower(c);
    return out;
}

// Lowercased ASCII alphanumeric runs.
std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_alnum(c)) {
            cur += lower(c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string capitalized(std::string_view s) {
    std::string out(s);
    if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
    return out;
}

std::vector<std::size_t> pick_distinct(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    k = std::min(k, n);
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    idx.resize(k);
    return idx;
}

// Sentences grouped into between one and `max_paras` paragraphs.
std::string paragraphs(Rng& rng, const std::vector<std::string>& sentences, int max_paras) {
    if (sentences.empty()) return {};
    int paras = rng.range(1, std::min<int>(max_paras, static_cast<int>(sentences.size())));
    auto cuts = pick_distinct(rng, sentences.size() - 1, static_cast<std::size_t>(paras - 1));
    std::sort(cuts.begin(), cuts.end());
    std::string html = "<p>";
    std::size_t next_cut = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (i > 0) {
            if (next_cut < cuts.size() && cuts[next_cut] + 1 == i) {
                html += "</p>\n<p>";
                ++next_cut;
            } else {
                html += ' ';
            }
        }
        html += sentences[i];
    }
    return html + "</p>\n";
}

// Ordinary sentences without repeats: ham bank with probability p_ham,
// otherwise the shared neutral bank.
struct SentenceDraw {
    std::set<std::string_view> used;

    std::string operator()(Rng& rng, double p_ham) {
        for (;;) {
            auto bank = rng.chance(p_ham) ? ham_sentences() : neutral_sentences();
            auto s = bank[rng.below(bank.size())];
            if (used.insert(s).second) return std::string(s);
        }
    }
};

std::string address(std::string_view name, std::string_view domain) {
    return std::string(name) + " <" + lowered(name) + "@" + std::string(domain) + ">";
}

using TextEdit = std::vector<mail::DomNode> (*)(const std::string& text, const std::set<std::string>& targets, Rng& rng);

// Rewrites every text node below `node`, depth first, in document order.
void edit_text(mail::DomNode& node, TextEdit edit, const std::set<std::string>& targets, Rng& rng) {
    std::vector<mail::DomNode> kids;
    for (auto& c : node.children) {
        if (c.kind == mail::NodeKind::Text) {
            for (auto& piece : edit(c.text, targets, rng)) kids.push_back(std::move(piece));
        } else {
            if (c.kind == mail::NodeKind::Element) edit_text(c, edit, targets, rng);
            kids.push_back(std::move(c));
        }
    }
    node.children = std::move(kids);
}

std::string comment_filler(Rng& rng) {
    std::string s;
    int n = rng.range(0, 4);
    for (int i = 0; i < n; ++i) s += static_cast<char>('a' + rng.below(26));
    return s;
}

// Target words get a comment at every interior boundary, so no fragment is
// long enough to be a token.
std::vector<mail::DomNode> split_with_comments(const std::string& text, const std::set<std::string>& targets, Rng& rng) {
    std::vector<mail::DomNode> out;
    std::string cur;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_alnum(text[i])) {
            cur += text[i++];
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_alnum(text[j])) ++j;
        std::string w = text.substr(i, j - i);
        if (targets.count(lowered(w)) && w.size() >= 2) {
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (k > 0) {
                    out.push_back(mail::DomNode::text_node(std::move(cur)));
                    out.push_back(mail::DomNode::comment(comment_filler(rng)));
                    cur.clear();
                }
                cur += w[k];
            }
        } else {
            cur += w;
        }
        i = j;
    }
    if (!cur.empty()) out.push_back(mail::DomNode::text_node(std::move(cur)));
    return out;
}

std::vector<char32_t> homoglyphs_for(char c) {
    std::vector<char32_t> out;
    for (const auto& [h, latin] : render::homoglyph_pairs())
        if (latin == static_cast<char32_t>(c)) out.push_back(h);
    return out;
}

// Each eligible lowercase letter of a target word is swapped with
// probability 1/2, and at least one per word.
std::vector<mail::DomNode> swap_homoglyphs(const std::string& text, const std::set<std::string>& targets, Rng& rng) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_alnum(text[i])) {
            out += text[i++];
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_alnum(text[j])) ++j;
        std::string w = text.substr(i, j - i);
        if (targets.count(lowered(w))) {
            std::vector<std::size_t> eligible;
            for (std::size_t k = 0; k < w.size(); ++k)
                if (!homoglyphs_for(w[k]).empty()) eligible.push_back(k);
            std::vector<bool> swap(w.size(), false);
            bool any = false;
            for (auto k : eligible) any |= (swap[k] = rng.chance(0.5));
            if (!any && !eligible.empty()) swap[eligible[rng.below(eligible.size())]] = true;
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (swap[k]) utf8::append(out, rng.pick(homoglyphs_for(w[k])));
                else out += w[k];
            }
        } else {
            out += w;
        }
        i = j;
    }
    std::vector<mail::DomNode> nodes;
    nodes.push_back(mail::DomNode::text_node(std::move(out)));
    return nodes;
}

// Every occurrence of a target phrase moves into a bold 32 px span.
std::vector<mail::DomNode> emphasize(const std::string& text, const std::set<std::string>& phrases, Rng&) {
    std::vector<mail::DomNode> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = std::string::npos;
        const std::string* hit = nullptr;
        for (const auto& p : phrases) {
            auto at = text.find(p, pos);
            if (at < best || (at == best && hit && p.size() > hit->size())) {
                best = at;
                hit = &p;
            }
        }
        if (!hit) break;
        if (best > pos) out.push_back(mail::DomNode::text_node(text.substr(pos, best - pos)));
        auto span = mail::DomNode::element("span");
        span.set_attribute("style", "font-weight:bold;font-size:32px");
        span.children.push_back(mail::DomNode::text_node(*hit));
        out.push_back(std::move(span));
        pos = best + hit->size();
    }
    if (pos < text.size()) out.push_back(mail::DomNode::text_node(text.substr(pos)));
    return out;
}

std::set<std::string> designated_words(const GroundTruth& truth) {
    std::set<std::string> out;
    for (const auto& p : truth.spam_phrases)
        for (auto& w : words(p)) out.insert(std::move(w));
    return out;
}

std::vector<std::string> hidden_ham_words(const mail::EmailDocument& doc, Rng& rng) {
    std::set<std::string> visible;
    for (auto& w : words(mail::raw_text(doc.body))) visible.insert(std::move(w));
    std::set<std::string> pool;
    for (auto s : ham_sentences())
        for (auto& w : words(s))
            if (w.size() >= 3 && !visible.count(w) &&
                std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
                pool.insert(std::move(w));
    std::vector<std::string> all(pool.begin(), pool.end());
    std::vector<std::string> out;
    for (auto i : pick_distinct(rng, all.size(), static_cast<std::size_t>(rng.range(10, 30)))) out.push_back(all[i]);
    return out;
}

mail::DomNode styled_block(const char* tag, const char* style, std::string text) {
    auto el = mail::DomNode::element(tag);
    el.set_attribute("style", style);
    el.children.push_back(mail::DomNode::text_node(std::move(text)));
    return el;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.close();
    if (!out) throw IoFailure("cannot write " + p.string());
}

}  // namespace

const char* trick_name(TrickKind t) { return kTrickNames[static_cast<int>(t)]; }

std::optional<TrickKind> parse_trick(std::string_view name) {
    for (auto t : kAllTricks)
        if (name == trick_name(t)) return t;
    return std::nullopt;
}

bool hides_ham(TrickKind t) {
    return t == TrickKind::HiddenHamColor || t == TrickKind::HiddenHamTinyFont || t == TrickKind::HiddenHamDisplayNone;
}

bool obfuscates_spam(TrickKind t) { return t == TrickKind::CommentSplit || t == TrickKind::Homoglyph; }

GeneratedEmail gen_email(Rng& rng, Label label, TrickKind trick) {
    if (label == Label::Ham && trick != TrickKind::None) throw FormatError("tricks apply to spam only");
    GeneratedEmail g;
    auto names = first_names();
    std::string_view from = rng.pick(names), to = rng.pick(names);
    std::string subject, html;
    int n = rng.range(3, 8);
    std::string greeting = rng.chance(0.7) ? "<p>Hi " + std::string(to) + ",</p>\n" : "";
    std::string signoff = rng.chance(0.6) ? "<p>" + std::string(from) + "</p>\n" : "";
    SentenceDraw draw;
    if (label == Label::Spam) {
        // One to three topic phrases plus an unsubscribe footer; the first
        // topic is the headline and the rest hide among ordinary sentences.
        int topics = rng.range(1, std::min(3, n - 1));
        auto bank = spam_phrases();
        for (auto i : pick_distinct(rng, bank.size(), static_cast<std::size_t>(topics)))
            g.truth.spam_phrases.push_back(capitalized(bank[i]));
        std::string footer = capitalized(rng.pick(spam_footers()));
        std::vector<std::string> sentences;
        for (std::size_t i = 1; i < g.truth.spam_phrases.size(); ++i)
            sentences.push_back(g.truth.spam_phrases[i] + (rng.chance(0.7) ? "!" : "."));
        for (int i = topics + 1; i < n; ++i) sentences.push_back(draw(rng, 0.75));
        rng.shuffle(sentences.begin(), sentences.end());
        html = greeting + "<p><b style=\"font-size:" + std::to_string(rng.pick(kHeadlineSizes)) +
               "px;color:" + rng.pick(kHeadlineColors) + "\">" + g.truth.spam_phrases[0] + "!</b></p>\n";
        html += paragraphs(rng, sentences, 2) + signoff + "<p>" + footer + ".</p>\n";
        subject = g.truth.spam_phrases[0];
        g.truth.spam_phrases.push_back(footer);
    } else {
        std::vector<std::string> sentences;
        for (int i = 0; i < n; ++i) sentences.push_back(draw(rng, 0.75));
        html = greeting;
        if (rng.chance(0.25) && sentences.size() > 1) {
            html += "<p><b>" + sentences.front() + "</b></p>\n";
            sentences.erase(sentences.begin());
        }
        html += paragraphs(rng, sentences, 3) + signoff;
        subject = "Note from " + std::string(from);
    }
    std::string eml = "From: " + address(from, "example.com") + "\nTo: " + address(to, "example.org") +
                      "\nSubject: " + subject + "\nContent-Type: text/html\n\n" + html;
    g.doc = apply_trick(mail::parse_email(eml), trick, rng, g.truth);
    return g;
}

mail::EmailDocument apply_trick(const mail::EmailDocument& doc, TrickKind trick, Rng& rng, GroundTruth& truth) {
    if (trick == TrickKind::None) return doc;
    mail::EmailDocument out = doc;
    switch (trick) {
        case TrickKind::None:
            break;
        case TrickKind::CommentSplit:
            edit_text(out.body, split_with_comments, designated_words(truth), rng);
            break;
        case TrickKind::Homoglyph:
            edit_text(out.body, swap_homoglyphs, designated_words(truth), rng);
            break;
        case TrickKind::EmphasisSizeBold: {
            std::set<std::string> phrases(truth.spam_phrases.begin(), truth.spam_phrases.end());
            edit_text(out.body, emphasize, phrases, rng);
            break;
        }
        case TrickKind::HiddenHamColor:
        case TrickKind::HiddenHamTinyFont:
        case TrickKind::HiddenHamDisplayNone: {
            truth.hidden_words = hidden_ham_words(out, rng);
            std::string text = join(truth.hidden_words, " ");
            if (trick == TrickKind::HiddenHamColor)
                out.body.children.push_back(styled_block("p", "color:#ffffff", text));
            else if (trick == TrickKind::HiddenHamTinyFont)
                out.body.children.push_back(styled_block("p", "font-size:4px", text));
            else
                out.body.children.push_back(styled_block("div", "display:none", text));
            break;
        }
        case TrickKind::InjectionVisibleHam: {
            std::string visible = mail::raw_text(out.body);
            std::vector<std::string> fresh;
            for (auto s : ham_sentences())
                if (visible.find(s) == std::string::npos) fresh.emplace_back(s);
            for (auto i : pick_distinct(rng, fresh.size(), static_cast<std::size_t>(rng.range(1, 3))))
                truth.injected_sentences.push_back(fresh[i]);
            auto p = mail::DomNode::element("p");
            p.children.push_back(mail::DomNode::text_node(join(truth.injected_sentences, " ")));
            out.body.children.insert(out.body.children.begin(), std::move(p));
            break;
        }
    }
    // Round through the file form so the result equals what a reader of the
    // written file gets back.
    return mail::parse_email(mail::serialize_email(out));
}

CorpusSpec CorpusSpec::desk_default() {
    CorpusSpec s;
    s.trick_mix = {
        {TrickKind::CommentSplit, 0.30},         {TrickKind::Homoglyph, 0.14},
        {TrickKind::HiddenHamColor, 0.04},       {TrickKind::HiddenHamTinyFont, 0.04},
        {TrickKind::HiddenHamDisplayNone, 0.04}, {TrickKind::InjectionVisibleHam, 0.02},
        {TrickKind::EmphasisSizeBold, 0.02},
    };
    return s;
}

CorpusSpec CorpusSpec::full_scale() {
    CorpusSpec s = desk_default();
    s.n_ham = 4009;
    s.n_spam = 3800;
    return s;
}

void CorpusSpec::validate() const {
    if (n_ham < 0 || n_spam < 0) throw FormatError("corpus counts must be non-negative");
    double sum = 0;
    for (const auto& [t, f] : trick_mix) {
        if (t == TrickKind::None) throw FormatError("the None share is implied, not configured");
        if (!(f >= 0.0 && f <= 1.0)) throw FormatError(std::string("fraction for ") + trick_name(t) + " is outside [0,1]");
        sum += f;
    }
    if (sum > 1.0 + 1e-9) throw FormatError("trick fractions sum to more than 1");
}

CorpusSpec parse_corpus_spec(std::string_view text) {
    CorpusSpec spec = CorpusSpec::desk_default();
    bool mix_seen = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        auto eq = body.find('=');
        auto where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) throw FormatError(where + "expected key = value");
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        const char* first = value.data();
        const char* last = value.data() + value.size();
        auto whole = [&](auto& v) {
            auto [end, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || end != last || value.empty())
                throw FormatError(where + "bad value '" + value + "' for " + key);
        };
        if (key == "n_ham") {
            whole(spec.n_ham);
        } else if (key == "n_spam") {
            whole(spec.n_spam);
        } else if (key == "seed") {
            whole(spec.seed);
        } else if (key.rfind("trick.", 0) == 0) {
            auto t = parse_trick(std::string_view(key).substr(6));
            if (!t) throw FormatError(where + "unknown trick " + key.substr(6));
            if (!mix_seen) spec.trick_mix.clear();
            mix_seen = true;
            double f = 0;
            whole(f);
            spec.trick_mix[*t] = f;
        } else {
            throw FormatError(where + "unknown key " + key);
        }
    }
    spec.validate();
    return spec;
}

std::string format_corpus_spec(const CorpusSpec& spec) {
    std::string out = "n_ham = " + std::to_string(spec.n_ham) + "\nn_spam = " + std::to_string(spec.n_spam) +
                      "\nseed = " + std::to_string(spec.seed) + "\n";
    for (const auto& [t, f] : spec.trick_mix) out += std::string("trick.") + trick_name(t) + " = " + format_number(f) + "\n";
    return out;
}

std::map<TrickKind, int> trick_counts(const CorpusSpec& spec) {
    spec.validate();
    std::map<TrickKind, int> counts;
    std::vector<std::pair<double, TrickKind>> remainders;
    double sum = 0;
    int assigned = 0;
    for (const auto& [t, f] : spec.trick_mix) {
        double exact = f * spec.n_spam;
        int base = static_cast<int>(std::floor(exact + 1e-9));
        counts[t] = base;
        assigned += base;
        sum += exact;
        remainders.push_back({exact - base, t});
    }
    // Largest remainders first; ties in enum order.
    std::stable_sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    int target = std::min(spec.n_spam, static_cast<int>(std::llround(sum)));
    for (const auto& [r, t] : remainders) {
        if (assigned >= target) break;
        if (r <= 1e-9) break;
        ++counts[t];
        ++assigned;
    }
    counts[TrickKind::None] = spec.n_spam - assigned;
    return counts;
}

std::vector<Label> LabeledCorpus::labels() const {
    std::vector<Label> out;
    for (const auto& e : entries) out.push_back(e.label);
    return out;
}

LabeledCorpus generate(const CorpusSpec& spec, std::vector<GroundTruth>* truths) {
    auto counts = trick_counts(spec);
    int n = spec.n_ham + spec.n_spam;
    Rng master(spec.seed);
    std::vector<Label> labels(static_cast<std::size_t>(n), Label::Ham);
    std::fill_n(labels.begin(), spec.n_spam, Label::Spam);
    master.shuffle(labels.begin(), labels.end());
    std::vector<TrickKind> tricks;
    for (auto t : kAllTricks) tricks.insert(tricks.end(), static_cast<std::size_t>(counts[t]), t);
    master.shuffle(tricks.begin(), tricks.end());

    std::size_t width = std::max<std::size_t>(5, std::to_string(n).size());
    LabeledCorpus corpus;
    if (truths) truths->clear();
    std::size_t next_trick = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(i)));
        Label label = labels[static_cast<std::size_t>(i)];
        TrickKind trick = label == Label::Spam ? tricks[next_trick++] : TrickKind::None;
        auto g = gen_email(rng, label, trick);
        std::string id = std::to_string(i);
        id.insert(0, width - id.size(), '0');
        corpus.entries.push_back({std::move(id), std::move(g.doc), label, trick});
        if (truths) truths->push_back(std::move(g.truth));
    }
    return corpus;
}

void write_corpus(const LabeledCorpus& corpus, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir / "emails", ec);
    if (ec) throw IoFailure("cannot create " + (dir / "emails").string() + ": " + ec.message());
    std::set<std::string> names;
    for (const auto& e : corpus.entries) names.insert(e.id + ".eml");
    for (const auto& f : fs::directory_iterator(dir / "emails"))
        if (!names.count(f.path().filename().string()))
            throw IoFailure("output directory already holds " + f.path().string());
    for (const auto& e : corpus.entries) write_file(dir / "emails" / (e.id + ".eml"), mail::serialize_email(e.doc));
    std::vector<const CorpusEntry*> rows;
    for (const auto& e : corpus.entries) rows.push_back(&e);
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->id < b->id; });
    std::string manifest = "id\tlabel\ttrick\n";
    for (auto* e : rows) manifest += e->id + "\t" + label_name(e->label) + "\t" + trick_name(e->trick) + "\n";
    write_file(dir / "labels.tsv", manifest);
}

LabeledCorpus gen_corpus(const CorpusSpec& spec, const fs::path& out_dir, std::vector<GroundTruth>* truths) {
    auto corpus = generate(spec, truths);
    write_corpus(corpus, out_dir);
    return corpus;
}

LabeledCorpus load_corpus(const fs::path& dir) {
    std::string manifest = read_file(dir / "labels.tsv");
    std::istringstream in(manifest);
    std::string line;
    if (!std::getline(in, line) || line != "id\tlabel\ttrick") throw FormatError("labels.tsv must start with id\\tlabel\\ttrick");
    LabeledCorpus corpus;
    std::set<std::string> ids;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto where = "labels.tsv line " + std::to_string(line_no) + ": ";
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
            throw FormatError(where + "expected three tab-separated fields");
        CorpusEntry e;
        e.id = line.substr(0, t1);
        std::string label = line.substr(t1 + 1, t2 - t1 - 1);
        auto trick = parse_trick(line.substr(t2 + 1));
        if (e.id.empty() || e.id.find('/') != std::string::npos) throw FormatError(where + "bad id");
        if (label == "spam") e.label = Label::Spam;
        else if (label == "ham") e.label = Label::Ham;
        else throw FormatError(where + "label must be spam or ham");
        if (!trick) throw FormatError(where + "unknown trick");
        e.trick = *trick;
        if (!ids.insert(e.id).second) throw ManifestMismatch("id " + e.id + " is listed twice");
        corpus.entries.push_back(std::move(e));
    }
    std::set<std::string> files;
    std::error_code ec;
    for (const auto& f : fs::directory_iterator(dir / "emails", ec)) files.insert(f.path().filename().string());
    for (const auto& e : corpus.entries)
        if (!files.count(e.id + ".eml")) throw ManifestMismatch("missing file for id " + e.id);
    for (const auto& f : files) {
        auto stem = f.size() > 4 && f.ends_with(".eml") ? f.substr(0, f.size() - 4) : std::string();
        if (!ids.count(stem)) throw ManifestMismatch("file " + f + " is not listed in labels.tsv");
    }
    for (auto& e : corpus.entries) {
        try {
            e.doc = mail::parse_email(read_file(dir / "emails" / (e.id + ".eml")));
        } catch (const MalformedHeaders& err) {
            throw MalformedHeaders(e.id + ": " + err.what());
        }
    }
    std::sort(corpus.entries.begin(), corpus.entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return corpus;
}

}  // namespace vbsf::corpus
