#include "vbsf/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vbsf/common.hpp"
#include "vbsf/font.hpp"
#include "vbsf/utf8.hpp"

namespace vbsf::text {

namespace {

bool is_homoglyph(char32_t cp) {
    for (const auto& [h, latin] : render::homoglyph_pairs())
        if (h == cp) return true;
    return false;
}

}  // namespace

TokenSequence tokenize(std::string_view text, TokenMode mode) {
    TokenSequence out;
    std::string cur;
    std::size_t cur_len = 0;
    auto flush = [&] {
        if (cur_len >= kMinTokenLength && cur_len <= kMaxTokenLength) out.push_back(cur);
        cur.clear();
        cur_len = 0;
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = utf8::next(text, pos);
        if (cp >= U'A' && cp <= U'Z') cp = cp - U'A' + U'a';
        bool keep = (cp >= U'a' && cp <= U'z') || (cp >= U'0' && cp <= U'9') ||
                    (mode == TokenMode::RawSource && is_homoglyph(cp));
        if (!keep) {
            flush();
            continue;
        }
        utf8::append(cur, cp);
        ++cur_len;
    }
    flush();
    return out;
}

Vocab::Vocab(std::vector<std::string> tokens, std::vector<int> df, int documents)
    : tokens_(std::move(tokens)), df_(std::move(df)), documents_(documents) {
    if (tokens_.size() != df_.size()) throw FormatError("vocab tokens and document frequencies differ in length");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (i > 0 && !(tokens_[i - 1] < tokens_[i])) throw FormatError("vocab tokens must be sorted and unique");
        index_.emplace(tokens_[i], static_cast<int>(i));
    }
}

std::optional<int> Vocab::index(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vocab build_vocab(const std::vector<TokenSequence>& docs, int min_df) {
    std::map<std::string, int> df;
    for (const auto& doc : docs) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (const auto& t : seen) ++df[t];
    }
    std::vector<std::string> tokens;
    std::vector<int> counts;
    for (const auto& [t, n] : df)
        if (n >= min_df) {
            tokens.push_back(t);
            counts.push_back(n);
        }
    if (tokens.empty()) throw EmptyVocab("no token reaches the minimum document frequency");
    return Vocab(std::move(tokens), std::move(counts), static_cast<int>(docs.size()));
}

const char* feature_mode_name(FeatureMode m) {
    switch (m) {
    case FeatureMode::Counts: return "counts";
    case FeatureMode::Presence: return "presence";
    case FeatureMode::TfIdf: return "tfidf";
    }
    return "counts";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view s) {
    if (s == "counts") return FeatureMode::Counts;
    if (s == "presence") return FeatureMode::Presence;
    if (s == "tfidf") return FeatureMode::TfIdf;
    return std::nullopt;
}

FeatureVector featurize(const TokenSequence& tokens, const Vocab& vocab, FeatureMode mode) {
    std::map<int, double> tf;
    for (const auto& t : tokens)
        if (auto i = vocab.index(t)) tf[*i] += 1.0;
    FeatureVector v;
    v.mode = mode;
    for (const auto& [i, n] : tf) {
        double value = n;
        if (mode == FeatureMode::Presence) {
            value = 1.0;
        } else if (mode == FeatureMode::TfIdf) {
            double idf = std::log((1.0 + vocab.documents()) / (1.0 + vocab.df()[static_cast<std::size_t>(i)]));
            value = n * idf;
        }
        if (value > 0.0) v.entries.emplace_back(i, value);
    }
    if (mode == FeatureMode::TfIdf && !v.entries.empty()) {
        double norm = 0.0;
        for (const auto& e : v.entries) norm += e.second * e.second;
        norm = std::sqrt(norm);
        for (auto& e : v.entries) e.second /= norm;
    }
    return v;
}

}  // namespace vbsf::text
