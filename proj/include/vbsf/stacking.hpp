#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vbsf/cnn.hpp"
#include "vbsf/email.hpp"
#include "vbsf/ocr.hpp"
#include "vbsf/textmodel.hpp"

namespace vbsf::stack {

/// One email reduced to what the classifiers consume: the OCR text of its
/// render, the naive source text, and the downscaled render.
struct Sample {
    std::string perceived;
    std::string raw;
    cnn::ImageTensor image;
    Label label = Label::Ham;
    bool overflow = false;
};

Sample prepare_sample(const mail::EmailDocument& doc, Label label, const ocr::OcrConfig& ocr_cfg = {});

inline constexpr std::size_t kBases = 3;  // columns: NB, DT, CNN
using BaseScores = std::array<double, kBases>;
using BaseVotes = std::array<int, kBases>;

/// A base score becomes a stacking bit at 0.5 inclusive.
BaseVotes binarize(const BaseScores& s);

struct StackFeatures {
    std::vector<BaseVotes> votes;
    std::vector<BaseScores> scores;
    std::vector<Label> labels;
    std::vector<int> fold;  // the fold each row was predicted in
};

struct StackConfig {
    int min_df = 2;
    text::TrainParams text;
    cnn::TrainHyper cnn{0.05, 8, 32, 42, false};
};

struct BaseModels {
    text::Vocab vocab;  // shared by NB and DT: both read the same OCR tokens
    text::TextModel nb;
    text::TextModel dt;
    cnn::CnnModel cnn;

    BaseScores scores(const Sample& s) const;
};

BaseModels train_bases(const std::vector<Sample>& data, const std::vector<std::size_t>& rows, const StackConfig& cfg);

/// Trains bases on the given rows and returns a scorer for held-out samples.
using BaseTrainer =
    std::function<std::function<BaseScores(const Sample&)>(const std::vector<Sample>& data, const std::vector<std::size_t>& rows)>;

/// Stratified fold of every row: each class is shuffled with the seed, the
/// classes are concatenated, and rows are dealt to folds round-robin.
/// Requires K >= 2 and either every class holding at least K rows or K equal
/// to the sample count (leave-one-out); throws TooFewSamples otherwise.
std::vector<int> stratified_folds(const std::vector<Label>& labels, int k, std::uint64_t seed);

StackFeatures oof_stack_features(const std::vector<Sample>& data, int k, std::uint64_t seed, const BaseTrainer& trainer);
StackFeatures oof_stack_features(const std::vector<Sample>& data, int k, std::uint64_t seed, const StackConfig& cfg);

text::FeatureVector meta_input(const BaseVotes& v);

struct StackedModel {
    BaseModels bases;
    text::TextModel meta;
    int folds = 5;
    std::uint64_t seed = 42;
};

text::TextModel train_meta(text::ModelKind meta_kind, const StackFeatures& f, const text::TrainParams& params = {});

/// OOF features, meta fit, then bases retrained on every row.
StackedModel stack_train(const std::vector<Sample>& data, text::ModelKind meta_kind, int k, std::uint64_t seed,
                         const StackConfig& cfg = {}, StackFeatures* features_out = nullptr);

struct Explanation {
    BaseScores scores{};
    BaseVotes votes{};
    text::Prediction final;
    bool overflow = false;
};

Explanation stack_predict(const StackedModel& m, const Sample& s);
Explanation stack_predict(const StackedModel& m, const mail::EmailDocument& doc, const ocr::OcrConfig& ocr_cfg = {});

/// Header plus one row: nb_score dt_score cnn_score nb_vote dt_vote cnn_vote final.
std::string explanation_tsv(const Explanation& e);

void save_stack(std::ostream& out, const StackedModel& m);
StackedModel load_stack(std::istream& in);

}  // namespace vbsf::stack
