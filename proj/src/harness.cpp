#include "vbsf/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vbsf/render.hpp"
#include "vbsf/rng.hpp"

namespace vbsf::harness {

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

double accuracy_of(const std::vector<Label>& pred, const std::vector<Label>& truth) {
    return compute_metrics(pred, truth).accuracy;
}

}  // namespace

Split split(const std::vector<Label>& labels, double ratio, bool stratified, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw TooFewSamples("a split ratio must leave rows on both sides");
    Split s;
    s.ratio = ratio;
    s.stratified = stratified;
    s.seed = seed;
    Rng rng(seed);
    auto take = [&](std::vector<std::size_t> rows, bool keep_both) {
        rng.shuffle(rows.begin(), rows.end());
        auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(rows.size())));
        if (keep_both) n_train = std::clamp<std::size_t>(n_train, 1, rows.size() - 1);
        s.train.insert(s.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
        s.test.insert(s.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
    };
    if (stratified) {
        std::vector<std::size_t> by_class[2];
        for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] == Label::Spam ? 1 : 0].push_back(i);
        for (const auto& c : by_class)
            if (c.size() < 2) throw TooFewSamples("a stratified split needs at least two rows of each class");
        take(by_class[1], true);
        take(by_class[0], true);
    } else {
        std::vector<std::size_t> all(labels.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        take(all, false);
    }
    if (s.train.empty() || s.test.empty()) throw TooFewSamples("split leaves an empty side");
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.test.begin(), s.test.end());
    return s;
}

Metrics compute_metrics(const std::vector<Label>& predictions, const std::vector<Label>& labels) {
    if (predictions.size() != labels.size() || labels.empty())
        throw LengthMismatch("metrics need equally long, nonempty prediction and label lists");
    Metrics m;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        bool p = predictions[i] == Label::Spam, y = labels[i] == Label::Spam;
        if (p && y) ++m.tp;
        else if (p) ++m.fp;
        else if (y) ++m.fn;
        else ++m.tn;
    }
    auto n = static_cast<double>(labels.size());
    m.accuracy = static_cast<double>(m.tp + m.tn) / n;
    m.fp_total = static_cast<double>(m.fp) / n;
    m.fn_total = static_cast<double>(m.fn) / n;
    m.fpr_degenerate = m.fp + m.tn == 0;
    m.fnr_degenerate = m.fn + m.tp == 0;
    m.fpr_cond = m.fpr_degenerate ? 0.0 : static_cast<double>(m.fp) / static_cast<double>(m.fp + m.tn);
    m.fnr_cond = m.fnr_degenerate ? 0.0 : static_cast<double>(m.fn) / static_cast<double>(m.fn + m.tp);
    return m;
}

std::vector<stack::Sample> prepare_samples(const corpus::LabeledCorpus& corpus, const ocr::OcrConfig& cfg) {
    std::vector<stack::Sample> out;
    out.reserve(corpus.size());
    for (const auto& e : corpus.entries) out.push_back(stack::prepare_sample(e.doc, e.label, cfg));
    return out;
}

std::vector<stack::Sample> pick(const std::vector<stack::Sample>& data, const std::vector<std::size_t>& rows) {
    std::vector<stack::Sample> out;
    out.reserve(rows.size());
    for (auto i : rows) out.push_back(data[i]);
    return out;
}

std::vector<Table1Row> run_table1(const std::vector<stack::Sample>& data, const Split& s,
                                  const std::vector<text::ModelKind>& kinds, const EvalConfig& cfg) {
    std::vector<Label> y_train, y_test;
    for (auto i : s.train) y_train.push_back(data[i].label);
    for (auto i : s.test) y_test.push_back(data[i].label);
    auto texts = [&](const std::vector<std::size_t>& rows, bool raw) {
        std::vector<std::string> out;
        for (auto i : rows) out.push_back(raw ? data[i].raw : data[i].perceived);
        return out;
    };
    auto score = [&](text::ModelKind kind, bool raw) {
        auto mode = raw ? text::TokenMode::RawSource : text::TokenMode::Perceived;
        auto p = text::fit_pipeline(kind, mode, texts(s.train, raw), y_train, cfg.text, cfg.min_df);
        std::vector<Label> pred;
        for (const auto& t : texts(s.test, raw)) pred.push_back(p.classify(t).label);
        return accuracy_of(pred, y_test);
    };
    std::vector<Table1Row> rows;
    for (auto kind : kinds) rows.push_back({kind, score(kind, true), score(kind, false)});
    return rows;
}

Table2Report run_table2(const std::vector<stack::Sample>& data, const Split& s, const std::vector<text::ModelKind>& metas,
                        const EvalConfig& cfg) {
    auto train = pick(data, s.train);
    auto test = pick(data, s.test);
    auto features = stack::oof_stack_features(train, cfg.folds, s.seed, cfg.stack);
    std::vector<std::size_t> all(train.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    stack::StackedModel model;
    model.bases = stack::train_bases(train, all, cfg.stack);
    model.folds = cfg.folds;
    model.seed = s.seed;

    std::vector<stack::BaseVotes> votes;
    std::vector<Label> y_test;
    for (const auto& t : test) {
        votes.push_back(stack::binarize(model.bases.scores(t)));
        y_test.push_back(t.label);
    }
    Table2Report report;
    for (std::size_t b = 0; b < stack::kBases; ++b) {
        std::vector<Label> pred;
        for (const auto& v : votes) pred.push_back(v[b] ? Label::Spam : Label::Ham);
        report.base_accuracy[b] = accuracy_of(pred, y_test);
    }
    for (auto kind : metas) {
        model.meta = stack::train_meta(kind, features, cfg.text);
        std::vector<Label> pred;
        for (const auto& v : votes) pred.push_back(text::predict(model.meta, stack::meta_input(v)).label);
        report.rows.push_back({kind, compute_metrics(pred, y_test)});
    }
    return report;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
    std::string out = "model,raw_accuracy,ocr_accuracy\n";
    for (const auto& r : rows)
        out += std::string(text::model_kind_name(r.kind)) + "," + fixed4(r.raw_accuracy) + "," + fixed4(r.ocr_accuracy) + "\n";
    return out;
}

std::string table2_csv(const Table2Report& report) {
    std::string out = "meta,accuracy,fp_total,fn_total\n";
    for (const auto& r : report.rows)
        out += std::string(text::model_kind_name(r.meta)) + "," + fixed4(r.metrics.accuracy) + "," +
               fixed4(r.metrics.fp_total) + "," + fixed4(r.metrics.fn_total) + "\n";
    return out;
}

std::vector<std::size_t> stratified_subset(const std::vector<Label>& labels, std::size_t n, std::uint64_t seed) {
    if (n >= labels.size()) {
        std::vector<std::size_t> all(labels.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] == Label::Spam ? 1 : 0].push_back(i);
    Rng rng(seed);
    auto spam_share = static_cast<double>(by_class[1].size()) / static_cast<double>(labels.size());
    auto n_spam = std::min(by_class[1].size(), static_cast<std::size_t>(std::llround(spam_share * static_cast<double>(n))));
    auto n_ham = std::min(by_class[0].size(), n - n_spam);
    std::vector<std::size_t> out;
    for (int c = 1; c >= 0; --c) {
        auto& rows = by_class[c];
        rng.shuffle(rows.begin(), rows.end());
        out.insert(out.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(c ? n_spam : n_ham));
    }
    std::sort(out.begin(), out.end());
    return out;
}

cnn::HyperGrid run_heatmap(const std::vector<cnn::LabeledImage>& images, const std::vector<double>& lrs,
                           const std::vector<int>& epochs, std::uint64_t seed) {
    std::vector<Label> labels;
    for (const auto& im : images) labels.push_back(im.label);
    auto s = split(labels, 0.8, true, seed);
    std::vector<cnn::LabeledImage> train, val;
    for (auto i : s.train) train.push_back(images[i]);
    for (auto i : s.test) val.push_back(images[i]);
    return cnn::lr_epoch_grid(train, val, lrs, epochs, seed);
}

}  // namespace vbsf::harness
