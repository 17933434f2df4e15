#include "vbsf/stacking.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>

#include "vbsf/render.hpp"
#include "vbsf/rng.hpp"

namespace vbsf::stack {

namespace {

bool is_meta_kind(text::ModelKind k) {
    return k == text::ModelKind::LR || k == text::ModelKind::RF || k == text::ModelKind::DT;
}

}  // namespace

Sample prepare_sample(const mail::EmailDocument& doc, Label label, const ocr::OcrConfig& ocr_cfg) {
    auto r = render::render_email(doc);
    Sample s;
    s.perceived = ocr::ocr_text(r.raster, ocr_cfg).text;
    s.raw = mail::raw_text(doc.body);
    s.image = cnn::to_image_tensor(r.raster);
    s.label = label;
    s.overflow = r.trace.overflow;
    return s;
}

BaseVotes binarize(const BaseScores& s) {
    BaseVotes v{};
    for (std::size_t i = 0; i < kBases; ++i) v[i] = s[i] >= 0.5 ? 1 : 0;
    return v;
}

BaseScores BaseModels::scores(const Sample& s) const {
    auto tokens = text::tokenize(s.perceived, text::TokenMode::Perceived);
    return {text::predict(nb, text::featurize(tokens, vocab, nb.mode)).score,
            text::predict(dt, text::featurize(tokens, vocab, dt.mode)).score, cnn::cnn_forward(cnn, s.image)};
}

BaseModels train_bases(const std::vector<Sample>& data, const std::vector<std::size_t>& rows, const StackConfig& cfg) {
    std::vector<text::TokenSequence> docs;
    std::vector<Label> y;
    std::vector<cnn::LabeledImage> images;
    for (auto i : rows) {
        docs.push_back(text::tokenize(data[i].perceived, text::TokenMode::Perceived));
        y.push_back(data[i].label);
        images.push_back({data[i].image, data[i].label});
    }
    BaseModels b;
    b.vocab = text::build_vocab(docs, cfg.min_df);
    auto features = [&](text::ModelKind k) {
        std::vector<text::FeatureVector> x;
        for (const auto& d : docs) x.push_back(text::featurize(d, b.vocab, text::default_feature_mode(k)));
        return x;
    };
    b.nb = text::train(text::ModelKind::NB, features(text::ModelKind::NB), y, b.vocab.size(), cfg.text);
    b.dt = text::train(text::ModelKind::DT, features(text::ModelKind::DT), y, b.vocab.size(), cfg.text);
    b.cnn = cnn::cnn_train(images, {}, cfg.cnn).first;
    return b;
}

std::vector<int> stratified_folds(const std::vector<Label>& labels, int k, std::uint64_t seed) {
    std::size_t n = labels.size();
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n; ++i) by_class[labels[i] == Label::Spam ? 1 : 0].push_back(i);
    bool loo = k >= 2 && static_cast<std::size_t>(k) == n;
    bool enough = by_class[0].size() >= static_cast<std::size_t>(std::max(k, 0)) &&
                  by_class[1].size() >= static_cast<std::size_t>(std::max(k, 0));
    if (k < 2 || !(enough || loo))
        throw TooFewSamples("stacking with " + std::to_string(k) + " folds needs at least that many samples per class");
    if (by_class[0].size() < 2 || by_class[1].size() < 2)
        throw TooFewSamples("every fold complement must contain both classes");
    Rng rng(seed);
    std::vector<int> fold(n, 0);
    std::size_t pos = 0;
    for (int c = 1; c >= 0; --c) {
        rng.shuffle(by_class[c].begin(), by_class[c].end());
        for (auto i : by_class[c]) fold[i] = static_cast<int>(pos++ % static_cast<std::size_t>(k));
    }
    return fold;
}

StackFeatures oof_stack_features(const std::vector<Sample>& data, int k, std::uint64_t seed, const BaseTrainer& trainer) {
    std::vector<Label> labels;
    for (const auto& s : data) labels.push_back(s.label);
    auto fold = stratified_folds(labels, k, seed);
    StackFeatures f;
    f.votes.resize(data.size());
    f.scores.resize(data.size());
    f.labels = labels;
    f.fold = fold;
    for (int g = 0; g < k; ++g) {
        std::vector<std::size_t> train_rows, held;
        for (std::size_t i = 0; i < data.size(); ++i) (fold[i] == g ? held : train_rows).push_back(i);
        if (held.empty()) continue;
        auto scorer = trainer(data, train_rows);
        for (auto i : held) {
            f.scores[i] = scorer(data[i]);
            f.votes[i] = binarize(f.scores[i]);
        }
    }
    return f;
}

StackFeatures oof_stack_features(const std::vector<Sample>& data, int k, std::uint64_t seed, const StackConfig& cfg) {
    return oof_stack_features(data, k, seed, [&](const std::vector<Sample>& d, const std::vector<std::size_t>& rows) {
        auto bases = std::make_shared<BaseModels>(train_bases(d, rows, cfg));
        return std::function<BaseScores(const Sample&)>([bases](const Sample& s) { return bases->scores(s); });
    });
}

text::FeatureVector meta_input(const BaseVotes& v) {
    text::FeatureVector x;
    for (std::size_t i = 0; i < kBases; ++i)
        if (v[i]) x.entries.emplace_back(static_cast<int>(i), 1.0);
    return x;
}

text::TextModel train_meta(text::ModelKind meta_kind, const StackFeatures& f, const text::TrainParams& params) {
    if (!is_meta_kind(meta_kind)) throw FormatError("the meta classifier must be lr, rf or dt");
    std::vector<text::FeatureVector> x;
    for (const auto& v : f.votes) {
        auto fv = meta_input(v);
        fv.mode = text::default_feature_mode(meta_kind);
        x.push_back(fv);
    }
    return text::train(meta_kind, x, f.labels, kBases, params);
}

StackedModel stack_train(const std::vector<Sample>& data, text::ModelKind meta_kind, int k, std::uint64_t seed,
                         const StackConfig& cfg, StackFeatures* features_out) {
    if (!is_meta_kind(meta_kind)) throw FormatError("the meta classifier must be lr, rf or dt");
    StackFeatures f = oof_stack_features(data, k, seed, cfg);
    StackedModel m;
    m.meta = train_meta(meta_kind, f, cfg.text);
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    m.bases = train_bases(data, all, cfg);
    m.folds = k;
    m.seed = seed;
    if (features_out) *features_out = std::move(f);
    return m;
}

Explanation stack_predict(const StackedModel& m, const Sample& s) {
    Explanation e;
    e.scores = m.bases.scores(s);
    e.votes = binarize(e.scores);
    e.final = text::predict(m.meta, meta_input(e.votes));
    e.overflow = s.overflow;
    return e;
}

Explanation stack_predict(const StackedModel& m, const mail::EmailDocument& doc, const ocr::OcrConfig& ocr_cfg) {
    return stack_predict(m, prepare_sample(doc, Label::Ham, ocr_cfg));
}

std::string explanation_tsv(const Explanation& e) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.4f\t%.4f\t%.4f\t%d\t%d\t%d\t%s\n", e.scores[0], e.scores[1], e.scores[2], e.votes[0],
                  e.votes[1], e.votes[2], label_name(e.final.label));
    return std::string("nb_score\tdt_score\tcnn_score\tnb_vote\tdt_vote\tcnn_vote\tfinal\n") + buf;
}

void save_stack(std::ostream& out, const StackedModel& m) {
    io::ModelWriter w(out, "stack");
    w.integer("folds", m.folds);
    w.u64s("seed", {m.seed});
    text::save_vocab(w, m.bases.vocab);
    w.set_prefix("nb.");
    text::save_model(w, m.bases.nb);
    w.set_prefix("dt.");
    text::save_model(w, m.bases.dt);
    w.set_prefix("cnn.");
    cnn::save_cnn(w, m.bases.cnn);
    w.set_prefix("meta.");
    text::save_model(w, m.meta);
}

StackedModel load_stack(std::istream& in) {
    io::ModelReader r(in);
    if (r.kind() != "stack") throw FormatError("not a stacked model file");
    StackedModel m;
    m.folds = static_cast<int>(r.integer("folds"));
    auto seed = r.u64s("seed");
    if (seed.size() != 1) throw FormatError("bad seed section");
    m.seed = seed[0];
    m.bases.vocab = text::load_vocab(r);
    r.set_prefix("nb.");
    m.bases.nb = text::load_model(r);
    r.set_prefix("dt.");
    m.bases.dt = text::load_model(r);
    r.set_prefix("cnn.");
    m.bases.cnn = cnn::load_cnn(r);
    r.set_prefix("meta.");
    m.meta = text::load_model(r);
    if (m.bases.nb.kind != text::ModelKind::NB || m.bases.dt.kind != text::ModelKind::DT || !is_meta_kind(m.meta.kind))
        throw FormatError("stacked model holds the wrong model kinds");
    if (m.bases.nb.vocab_size != m.bases.vocab.size() || m.bases.dt.vocab_size != m.bases.vocab.size() ||
        m.meta.vocab_size != kBases)
        throw VocabMismatch("stacked model parts disagree on input sizes");
    return m;
}

}  // namespace vbsf::stack
