#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vbsf::text {

enum class TokenMode : unsigned char { Perceived, RawSource };

using TokenSequence = std::vector<std::string>;

inline constexpr std::size_t kMinTokenLength = 2;
inline constexpr std::size_t kMaxTokenLength = 24;

/// Lowercases and splits on anything but [a-z0-9]. RawSource additionally
/// keeps homoglyph codepoints inside tokens, so a disguised word stays a
/// distinct token. Lengths are counted in codepoints.
TokenSequence tokenize(std::string_view text, TokenMode mode);

class Vocab {
public:
    Vocab() = default;
    /// Tokens must be sorted and unique; df and tokens must have equal length.
    Vocab(std::vector<std::string> tokens, std::vector<int> df, int documents);

    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::vector<int>& df() const { return df_; }
    int documents() const { return documents_; }
    std::optional<int> index(const std::string& token) const;

    friend bool operator==(const Vocab& a, const Vocab& b) {
        return a.tokens_ == b.tokens_ && a.df_ == b.df_ && a.documents_ == b.documents_;
    }

private:
    std::vector<std::string> tokens_;
    std::vector<int> df_;
    int documents_ = 0;
    std::unordered_map<std::string, int> index_;
};

/// Tokens with document frequency >= min_df, indexed in lexicographic order.
/// Throws EmptyVocab when nothing survives.
Vocab build_vocab(const std::vector<TokenSequence>& docs, int min_df = 2);

enum class FeatureMode : unsigned char { Counts, Presence, TfIdf };

const char* feature_mode_name(FeatureMode m);
std::optional<FeatureMode> parse_feature_mode(std::string_view s);

struct FeatureVector {
    std::vector<std::pair<int, double>> entries;  // strictly increasing index, value > 0
    FeatureMode mode = FeatureMode::Counts;

    bool empty() const { return entries.empty(); }
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Counts: term frequency. Presence: 1 per distinct token. TfIdf:
/// tf * ln((1+N)/(1+df)), L2-normalized. Out-of-vocabulary tokens are ignored.
FeatureVector featurize(const TokenSequence& tokens, const Vocab& vocab, FeatureMode mode);

}  // namespace vbsf::text
