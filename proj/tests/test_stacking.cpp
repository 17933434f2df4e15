#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "vbsf/rng.hpp"
#include "vbsf/stacking.hpp"

using namespace vbsf;
using namespace vbsf::stack;

namespace {

cnn::ImageTensor page(bool banner) {
    cnn::ImageTensor t{cnn::kImageSize, cnn::kImageSize,
                       std::vector<double>(static_cast<std::size_t>(cnn::kImageSize * cnn::kImageSize), 1.0)};
    if (banner)
        for (int y = 4; y < 10; ++y)
            for (int x = 4; x < 50; ++x) t.at(y, x) = 0.0;
    for (int y = 14; y < 40; y += 4)
        for (int x = 4; x < 40; ++x) t.at(y, x) = 0.3;
    return t;
}

Sample sample(const std::string& text, Label label) {
    Sample s;
    s.perceived = text;
    s.raw = text;
    s.image = page(label == Label::Spam);
    s.label = label;
    return s;
}

std::vector<Sample> toy_set(int per_class, std::uint64_t seed) {
    const char* spam_words[] = {"cash", "prize", "winner", "casino", "offer", "bonus"};
    const char* ham_words[] = {"meeting", "agenda", "report", "lunch", "project", "notes"};
    Rng rng(seed);
    std::vector<Sample> out;
    for (int i = 0; i < per_class; ++i) {
        for (int c = 0; c < 2; ++c) {
            std::string t;
            for (int w = 0; w < 4; ++w) {
                t += (c ? spam_words : ham_words)[rng.below(6)];
                t += ' ';
            }
            t += "hello team";
            out.push_back(sample(t, c ? Label::Spam : Label::Ham));
        }
    }
    return out;
}

StackConfig quick_config() {
    StackConfig cfg;
    cfg.min_df = 1;
    cfg.cnn.epochs = 2;
    return cfg;
}

BaseTrainer constant_trainer(BaseScores s) {
    return [s](const std::vector<Sample>&, const std::vector<std::size_t>&) {
        return std::function<BaseScores(const Sample&)>([s](const Sample&) { return s; });
    };
}

double training_accuracy(const text::TextModel& meta, const StackFeatures& f) {
    int ok = 0;
    for (std::size_t i = 0; i < f.votes.size(); ++i) ok += text::predict(meta, meta_input(f.votes[i])).label == f.labels[i];
    return static_cast<double>(ok) / static_cast<double>(f.votes.size());
}

StackFeatures features_from(const std::vector<BaseVotes>& votes, const std::vector<Label>& labels) {
    StackFeatures f;
    f.votes = votes;
    f.labels = labels;
    for (const auto& v : votes) f.scores.push_back({double(v[0]), double(v[1]), double(v[2])});
    f.fold.assign(votes.size(), 0);
    return f;
}

constexpr text::ModelKind kMetas[] = {text::ModelKind::LR, text::ModelKind::RF, text::ModelKind::DT};

}  // namespace

TEST_CASE("stratified folds partition rows and balance classes") {
    std::vector<Label> labels;
    for (int i = 0; i < 10; ++i) labels.push_back(i % 2 ? Label::Spam : Label::Ham);
    auto f = stratified_folds(labels, 5, 3);
    REQUIRE(f.size() == 10);
    for (int g = 0; g < 5; ++g) {
        int spam = 0, ham = 0;
        for (std::size_t i = 0; i < 10; ++i)
            if (f[i] == g) (labels[i] == Label::Spam ? spam : ham)++;
        CHECK(spam + ham == 2);
        CHECK(spam == 1);
    }
    CHECK(stratified_folds(labels, 5, 3) == f);
    CHECK(stratified_folds(labels, 5, 4) != f);
}

TEST_CASE("stratified folds reject impossible requests") {
    std::vector<Label> labels{Label::Spam, Label::Spam, Label::Spam, Label::Ham, Label::Ham};
    CHECK_THROWS_AS(stratified_folds(labels, 3, 1), TooFewSamples);
    CHECK_THROWS_AS(stratified_folds(labels, 1, 1), TooFewSamples);
    CHECK_NOTHROW(stratified_folds(labels, 2, 1));
    CHECK_NOTHROW(stratified_folds(labels, 5, 1));  // leave-one-out
    std::vector<Label> lonely{Label::Spam, Label::Spam, Label::Spam, Label::Ham};
    CHECK_THROWS_AS(stratified_folds(lonely, 4, 1), TooFewSamples);
}

TEST_CASE("every row gets exactly one out-of-fold prediction") {
    auto data = toy_set(5, 1);
    std::vector<int> seen(data.size(), 0);
    BaseTrainer trainer = [&](const std::vector<Sample>& d, const std::vector<std::size_t>& rows) {
        std::set<std::size_t> in(rows.begin(), rows.end());
        return std::function<BaseScores(const Sample&)>([&, in](const Sample& s) {
            std::size_t i = static_cast<std::size_t>(&s - d.data());
            CHECK(in.count(i) == 0);  // no leakage: the scored row was not in training
            seen[i]++;
            return BaseScores{0.9, 0.1, 0.5};
        });
    };
    auto f = oof_stack_features(data, 5, 11, trainer);
    REQUIRE(f.votes.size() == 10);
    for (int c : seen) CHECK(c == 1);
    for (const auto& v : f.votes) CHECK(v == BaseVotes{1, 0, 1});
}

TEST_CASE("a base that always says spam yields an all-one column") {
    auto data = toy_set(5, 2);
    auto f = oof_stack_features(data, 5, 1, constant_trainer({0.99, 0.2, 0.0}));
    for (const auto& v : f.votes) {
        CHECK(v[0] == 1);
        CHECK(v[1] == 0);
        CHECK(v[2] == 0);
    }
}

TEST_CASE("binarization flips only the changed column") {
    BaseScores s{0.50, 0.7, 0.1};
    auto a = binarize(s);
    s[0] = 0.49;
    auto b = binarize(s);
    CHECK(a == BaseVotes{1, 1, 0});
    CHECK(b == BaseVotes{0, 1, 0});
}

TEST_CASE("leave-one-out features match per-sample retraining") {
    auto data = toy_set(3, 5);
    auto cfg = quick_config();
    auto f = oof_stack_features(data, 6, 9, cfg);
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::vector<std::size_t> rows;
        for (std::size_t j = 0; j < data.size(); ++j)
            if (j != i) rows.push_back(j);
        auto expect = train_bases(data, rows, cfg).scores(data[i]);
        CHECK(f.scores[i] == expect);
        CHECK(f.votes[i] == binarize(expect));
    }
}

TEST_CASE("perfect bases give every meta perfect training accuracy") {
    std::vector<BaseVotes> votes;
    std::vector<Label> labels;
    for (int i = 0; i < 20; ++i) {
        bool spam = i % 3 == 0;
        votes.push_back(spam ? BaseVotes{1, 1, 1} : BaseVotes{0, 0, 0});
        labels.push_back(spam ? Label::Spam : Label::Ham);
    }
    auto f = features_from(votes, labels);
    for (auto k : kMetas) CHECK(training_accuracy(train_meta(k, f), f) == 1.0);
}

TEST_CASE("coin-flip bases never push a meta below the majority rate") {
    Rng rng(17);
    std::vector<BaseVotes> votes;
    std::vector<Label> labels;
    int spam = 0;
    for (int i = 0; i < 200; ++i) {
        votes.push_back({int(rng.below(2)), int(rng.below(2)), int(rng.below(2))});
        bool s = rng.chance(0.15);
        spam += s;
        labels.push_back(s ? Label::Spam : Label::Ham);
    }
    double majority = std::max(spam, 200 - spam) / 200.0;
    auto f = features_from(votes, labels);
    for (auto k : kMetas) CHECK(training_accuracy(train_meta(k, f), f) >= majority);
}

TEST_CASE("a DT meta beats every single column on its training features") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<BaseVotes> votes;
        std::vector<Label> labels;
        for (int i = 0; i < 60; ++i) {
            Label y = rng.chance(0.5) ? Label::Spam : Label::Ham;
            BaseVotes v{};
            for (auto& b : v) b = rng.chance(0.7) ? int(y) : 1 - int(y);
            votes.push_back(v);
            labels.push_back(y);
        }
        if (std::count(labels.begin(), labels.end(), Label::Spam) < 2 ||
            std::count(labels.begin(), labels.end(), Label::Ham) < 2)
            continue;
        auto f = features_from(votes, labels);
        double meta = training_accuracy(train_meta(text::ModelKind::DT, f), f);
        for (std::size_t c = 0; c < kBases; ++c) {
            int ok = 0;
            for (std::size_t i = 0; i < votes.size(); ++i) ok += votes[i][c] == int(labels[i]);
            CHECK(meta >= ok / 60.0);
        }
    }
}

TEST_CASE("unanimous spam votes give spam from a DT meta") {
    Rng rng(4);
    std::vector<BaseVotes> votes;
    std::vector<Label> labels;
    for (int i = 0; i < 80; ++i) {
        Label y = i % 2 ? Label::Spam : Label::Ham;
        BaseVotes v{};
        for (auto& b : v) b = rng.chance(0.8) ? int(y) : 1 - int(y);
        votes.push_back(v);
        labels.push_back(y);
    }
    auto meta = train_meta(text::ModelKind::DT, features_from(votes, labels));
    CHECK(text::predict(meta, meta_input({1, 1, 1})).label == Label::Spam);
    CHECK(text::predict(meta, meta_input({0, 0, 0})).label == Label::Ham);
}

TEST_CASE("meta kind must be lr, rf or dt") {
    auto f = features_from({{1, 1, 1}, {0, 0, 0}, {1, 0, 1}, {0, 1, 0}}, {Label::Spam, Label::Ham, Label::Spam, Label::Ham});
    CHECK_THROWS_AS(train_meta(text::ModelKind::NB, f), FormatError);
    CHECK_THROWS_AS(stack_train(toy_set(3, 1), text::ModelKind::SVM, 2, 1), FormatError);
}

TEST_CASE("stacked model separates the toy set and survives a round trip") {
    auto data = toy_set(6, 8);
    auto cfg = quick_config();
    cfg.cnn.epochs = 4;
    StackFeatures f;
    auto m = stack_train(data, text::ModelKind::LR, 3, 5, cfg, &f);
    CHECK(f.votes.size() == data.size());
    int ok = 0;
    for (const auto& s : data) ok += stack_predict(m, s).final.label == s.label;
    CHECK(ok == static_cast<int>(data.size()));

    std::stringstream buf;
    save_stack(buf, m);
    auto back = load_stack(buf);
    CHECK(back.folds == 3);
    CHECK(back.seed == 5);
    for (const auto& s : data) {
        auto a = stack_predict(m, s);
        auto b = stack_predict(back, s);
        CHECK(a.scores == b.scores);
        CHECK(a.final.score == b.final.score);
    }
    std::stringstream again;
    save_stack(again, back);
    CHECK(again.str() == buf.str());
}

TEST_CASE("stack file rejects mismatched parts") {
    auto data = toy_set(4, 3);
    auto m = stack_train(data, text::ModelKind::DT, 2, 1, quick_config());
    std::stringstream buf;
    save_stack(buf, m);
    std::string text = buf.str();
    auto pos = text.find("VBSF-MODEL v1 stack");
    REQUIRE(pos == 0);
    std::stringstream wrong(std::string("VBSF-MODEL v1 cnn") + text.substr(19));
    CHECK_THROWS_AS(load_stack(wrong), FormatError);
}

TEST_CASE("an empty email still gets a prediction") {
    auto m = stack_train(toy_set(4, 6), text::ModelKind::LR, 2, 1, quick_config());
    mail::EmailDocument doc;
    auto e = stack_predict(m, doc);
    for (double s : e.scores) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
    CHECK(e.final.score >= 0.0);
    CHECK(e.final.score <= 1.0);
}

TEST_CASE("explanation is a two-line tab separated table") {
    Explanation e;
    e.scores = {0.25, 0.5, 0.875};
    e.votes = binarize(e.scores);
    e.final = {Label::Spam, 0.7};
    CHECK(explanation_tsv(e) ==
          "nb_score\tdt_score\tcnn_score\tnb_vote\tdt_vote\tcnn_vote\tfinal\n0.2500\t0.5000\t0.8750\t0\t1\t1\tspam\n");
}
