#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "vbsf/common.hpp"
#include "vbsf/model_io.hpp"
#include "vbsf/text.hpp"

namespace vbsf::text {

enum class ModelKind : unsigned char { NB, DT, LR, SVM, AdaBoost, KNN, RF };

const char* model_kind_name(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view s);

/// The feature representation each model is trained and queried with.
FeatureMode default_feature_mode(ModelKind k);

struct TrainParams {
    double nb_alpha = 1.0;
    int max_depth = 20;
    int min_samples_split = 2;
    double lr_rate = 0.1;
    int lr_epochs = 500;
    double lr_lambda = 1e-4;
    double svm_lambda = 1e-4;
    int svm_epochs = 20;
    int boost_rounds = 100;
    int knn_k = 5;
    int forest_trees = 100;
    std::uint64_t seed = 42;
};

struct TrainReport {
    std::size_t samples = 0;
    std::vector<double> loss_history;   // LR: loss before each epoch, then the final loss
    std::vector<double> boost_errors;   // AdaBoost: weighted error per kept round
    std::vector<double> boost_bound;    // running product of 2 sqrt(e (1 - e))
    int tree_nodes = 0;                 // DT, or the sum over RF trees
    int tree_depth = 0;                 // DT, or the max over RF trees
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    int absent = -1;   // child taken when the feature is absent
    int present = -1;
    double ham = 0.0;  // training weight reaching the node
    double spam = 0.0;

    bool leaf() const { return feature < 0; }
};

struct Stump {
    int feature = 0;
    bool present_means_spam = true;
};

struct Prediction {
    Label label = Label::Ham;
    double score = 0.0;
};

struct TextModel {
    ModelKind kind = ModelKind::NB;
    FeatureMode mode = FeatureMode::Counts;
    std::size_t vocab_size = 0;

    std::vector<double> log_prior;                  // NB: [ham, spam]
    std::vector<std::vector<double>> log_lik;       // NB: per class, per token
    std::vector<TreeNode> tree;                     // DT
    std::vector<double> weights;                    // LR, SVM
    double bias = 0.0;                              // LR (SVM folds its bias into weights)
    std::vector<Stump> stumps;                      // AdaBoost
    std::vector<double> alphas;
    std::vector<FeatureVector> points;              // KNN
    std::vector<Label> labels;
    int k = 5;
    std::vector<std::vector<TreeNode>> forest;      // RF
    std::vector<std::uint64_t> tree_seeds;
};

/// Trains a model on feature vectors built in default_feature_mode(kind).
/// Samples are put in a canonical order first, so the result does not depend
/// on the order of the input. Throws LengthMismatch, TooFewSamples, or
/// DegenerateLabels (every kind but KNN needs both classes).
TextModel train(ModelKind kind, const std::vector<FeatureVector>& x, const std::vector<Label>& y,
                std::size_t vocab_size, const TrainParams& params = {}, TrainReport* report = nullptr);

/// Throws VocabMismatch when x refers to an index outside the model's vocab.
Prediction predict(const TextModel& model, const FeatureVector& x);

/// Maps a score to a Prediction; a score of exactly 0.5 is a tie and goes to Ham.
Prediction make_prediction(double score);

/// Logistic loss with L2 penalty as minimized by the LR trainer, including
/// its length scaling of the inputs. Fills the gradient when asked.
double lr_objective(const std::vector<double>& w, double b, const std::vector<FeatureVector>& x,
                    const std::vector<Label>& y, double lambda, std::vector<double>* grad_w = nullptr,
                    double* grad_b = nullptr);

void save_model(io::ModelWriter& w, const TextModel& m);
TextModel load_model(const io::ModelReader& r);

/// Tokenizer mode, vocabulary, and model together: what `train` writes and
/// what can classify a raw string.
struct TextPipeline {
    TokenMode tokens = TokenMode::Perceived;
    Vocab vocab;
    TextModel model;

    Prediction classify(std::string_view text) const;
};

TextPipeline fit_pipeline(ModelKind kind, TokenMode tokens, const std::vector<std::string>& texts,
                          const std::vector<Label>& y, const TrainParams& params = {}, int min_df = 2,
                          TrainReport* report = nullptr);

void save_vocab(io::ModelWriter& w, const Vocab& v);
Vocab load_vocab(const io::ModelReader& r);

void save_pipeline(std::ostream& out, const TextPipeline& p);
TextPipeline load_pipeline(std::istream& in);

}  // namespace vbsf::text
