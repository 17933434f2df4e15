#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vbsf/cnn.hpp"
#include "vbsf/corpus.hpp"
#include "vbsf/stacking.hpp"
#include "vbsf/textmodel.hpp"

namespace vbsf::harness {

struct Split {
    std::vector<std::size_t> train;  // ascending row indices
    std::vector<std::size_t> test;
    double ratio = 0.8;
    bool stratified = true;
    std::uint64_t seed = 42;
};

/// Seeded partition with `ratio` of the rows in train. Stratified splits
/// shuffle each class separately and keep at least one row of every class on
/// both sides. Throws TooFewSamples when the test or train part would be
/// empty, or when a class has fewer than two rows in a stratified split.
Split split(const std::vector<Label>& labels, double ratio = 0.8, bool stratified = true, std::uint64_t seed = 42);

/// Spam is the positive class.
struct Metrics {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double accuracy = 0.0;
    double fp_total = 0.0;  // FP / n
    double fn_total = 0.0;  // FN / n
    double fpr_cond = 0.0;  // FP / (FP + TN), 0 when there is no ham
    double fnr_cond = 0.0;  // FN / (FN + TP), 0 when there is no spam
    bool fpr_degenerate = false;
    bool fnr_degenerate = false;

    std::size_t n() const { return tp + fp + tn + fn; }
};

/// Throws LengthMismatch unless both lists have the same nonzero length.
Metrics compute_metrics(const std::vector<Label>& predictions, const std::vector<Label>& labels);

/// Renders, reads and downsamples every email of the corpus.
std::vector<stack::Sample> prepare_samples(const corpus::LabeledCorpus& corpus, const ocr::OcrConfig& cfg = {});

std::vector<stack::Sample> pick(const std::vector<stack::Sample>& data, const std::vector<std::size_t>& rows);

struct Table1Row {
    text::ModelKind kind = text::ModelKind::NB;
    double raw_accuracy = 0.0;
    double ocr_accuracy = 0.0;
};

struct EvalConfig {
    text::TrainParams text;
    int min_df = 2;
    stack::StackConfig stack;
    int folds = 5;
};

inline const std::vector<text::ModelKind> kTable1Kinds{text::ModelKind::NB,  text::ModelKind::DT,
                                                       text::ModelKind::LR,  text::ModelKind::SVM,
                                                       text::ModelKind::AdaBoost, text::ModelKind::KNN};

/// Each kind trained on the split's train rows twice: on raw source text and
/// on OCR text, then scored on the test rows.
std::vector<Table1Row> run_table1(const std::vector<stack::Sample>& data, const Split& s,
                                  const std::vector<text::ModelKind>& kinds = kTable1Kinds,
                                  const EvalConfig& cfg = {});

struct Table2Row {
    text::ModelKind meta = text::ModelKind::LR;
    Metrics metrics;
};

struct Table2Report {
    std::vector<Table2Row> rows;
    stack::BaseScores base_accuracy{};  // test accuracy of NB, DT, CNN alone
};

inline const std::vector<text::ModelKind> kMetaKinds{text::ModelKind::LR, text::ModelKind::RF, text::ModelKind::DT};

/// Out-of-fold features and deployment bases are built once from the train
/// rows; each meta is fitted on the same features and scored on the test rows.
Table2Report run_table2(const std::vector<stack::Sample>& data, const Split& s,
                        const std::vector<text::ModelKind>& metas = kMetaKinds, const EvalConfig& cfg = {});

/// model,raw_accuracy,ocr_accuracy
std::string table1_csv(const std::vector<Table1Row>& rows);
/// meta,accuracy,fp_total,fn_total
std::string table2_csv(const Table2Report& report);

/// Seeded, stratified subset of at most `n` rows.
std::vector<std::size_t> stratified_subset(const std::vector<Label>& labels, std::size_t n, std::uint64_t seed);

/// Learning-rate by epoch grid on an 80/20 stratified split of the images.
cnn::HyperGrid run_heatmap(const std::vector<cnn::LabeledImage>& images, const std::vector<double>& lrs,
                           const std::vector<int>& epochs, std::uint64_t seed);

}  // namespace vbsf::harness
