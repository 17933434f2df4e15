#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vbsf/common.hpp"
#include "vbsf/email.hpp"
#include "vbsf/rng.hpp"

namespace vbsf::corpus {

enum class TrickKind : unsigned char {
    None,
    CommentSplit,
    HiddenHamColor,
    HiddenHamTinyFont,
    HiddenHamDisplayNone,
    Homoglyph,
    InjectionVisibleHam,
    EmphasisSizeBold,
};

inline constexpr std::array kAllTricks{TrickKind::None,
                                       TrickKind::CommentSplit,
                                       TrickKind::HiddenHamColor,
                                       TrickKind::HiddenHamTinyFont,
                                       TrickKind::HiddenHamDisplayNone,
                                       TrickKind::Homoglyph,
                                       TrickKind::InjectionVisibleHam,
                                       TrickKind::EmphasisSizeBold};

/// Lower snake case, as written in labels.tsv.
const char* trick_name(TrickKind t);
std::optional<TrickKind> parse_trick(std::string_view name);

/// The three tricks that append ham words a reader cannot see.
bool hides_ham(TrickKind t);
/// The two tricks that change the source form of the spam words themselves.
bool obfuscates_spam(TrickKind t);

std::span<const std::string_view> spam_phrases();
std::span<const std::string_view> spam_footers();
std::span<const std::string_view> ham_sentences();
std::span<const std::string_view> neutral_sentences();
std::span<const std::string_view> first_names();

struct GroundTruth {
    // Designated spam phrases exactly as they appear in the visible text.
    std::vector<std::string> spam_phrases;
    // Ham words appended out of sight; none of them occurs in the visible text.
    std::vector<std::string> hidden_words;
    // Ham sentences prepended in plain sight.
    std::vector<std::string> injected_sentences;

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct GeneratedEmail {
    mail::EmailDocument doc;
    GroundTruth truth;
};

/// Throws FormatError when a trick other than None is requested for ham.
GeneratedEmail gen_email(Rng& rng, Label label, TrickKind trick);

/// Transforms the body for one trick. Reads the designated phrases from
/// `truth` and records what it injects there. None returns `doc` unchanged.
mail::EmailDocument apply_trick(const mail::EmailDocument& doc, TrickKind trick, Rng& rng, GroundTruth& truth);

struct CorpusSpec {
    int n_ham = 1000;
    int n_spam = 1000;
    std::map<TrickKind, double> trick_mix;  // fraction of spam; the rest is None
    std::uint64_t seed = 42;

    /// 1000 ham, 1000 spam, 60% of spam salted, seed 42.
    static CorpusSpec desk_default();
    /// 4009 ham and 3800 spam with the desk trick mix.
    static CorpusSpec full_scale();

    /// Throws FormatError on negative counts, fractions outside [0,1], a
    /// fraction for None, or fractions summing above 1.
    void validate() const;
};

/// `key = value` lines with `#` comments. Keys: n_ham, n_spam, seed and
/// trick.<name>. Unlisted keys keep the desk defaults, except that any
/// trick.* key replaces the whole default mix.
CorpusSpec parse_corpus_spec(std::string_view text);
std::string format_corpus_spec(const CorpusSpec& spec);

/// Per-trick spam counts: each within one of its exact fraction, None last.
std::map<TrickKind, int> trick_counts(const CorpusSpec& spec);

struct CorpusEntry {
    std::string id;
    mail::EmailDocument doc;
    Label label = Label::Ham;
    TrickKind trick = TrickKind::None;

    friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

struct LabeledCorpus {
    std::vector<CorpusEntry> entries;  // sorted by id

    std::size_t size() const { return entries.size(); }
    std::vector<Label> labels() const;

    friend bool operator==(const LabeledCorpus&, const LabeledCorpus&) = default;
};

/// In-memory generation; `truths`, when given, receives one record per entry.
LabeledCorpus generate(const CorpusSpec& spec, std::vector<GroundTruth>* truths = nullptr);

/// Writes emails/<id>.eml and labels.tsv. Throws IoFailure when the directory
/// cannot be written or already holds files that are not part of the corpus.
void write_corpus(const LabeledCorpus& corpus, const std::filesystem::path& dir);

LabeledCorpus gen_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir,
                         std::vector<GroundTruth>* truths = nullptr);

/// Strict: a manifest row without its file, or a file without its row, is a
/// ManifestMismatch naming the id.
LabeledCorpus load_corpus(const std::filesystem::path& dir);

}  // namespace vbsf::corpus
