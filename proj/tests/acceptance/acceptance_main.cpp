// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "vbsf/harness.hpp"
#include "vbsf/ocr.hpp"
#include "vbsf/render.hpp"
#include "vbsf/text.hpp"
#include "vbsf/textmodel.hpp"

using namespace vbsf;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const fs::path& scratch() {
    static const fs::path p = [] {
        auto d = fs::temp_directory_path() / "vbsf_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return p;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::set<std::string> perceived_tokens(const std::string& s) {
    auto t = text::tokenize(s, text::TokenMode::Perceived);
    return {t.begin(), t.end()};
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "vbsf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) std::cerr << err.str();
    return code;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& f : fs::recursive_directory_iterator(dir))
        if (f.is_regular_file()) out[fs::relative(f.path(), dir).string()] = slurp(f.path());
    return out;
}

// 1. OCR reproduces the visible text of clean emails character for character.
Outcome ocr_round_trip() {
    auto t0 = Clock::now();
    corpus::CorpusSpec spec;
    spec.n_ham = 250;
    spec.n_spam = 250;
    spec.trick_mix = {};
    spec.seed = 42;
    auto c = corpus::gen_corpus(spec, scratch() / "clean");
    std::size_t chars = 0, errors = 0, wrong_emails = 0;
    for (const auto& e : c.entries) {
        auto r = render::render_email(e.doc);
        std::string expect = ocr::visible_text(r.trace);
        std::string got = ocr::ocr_text(r.raster).text;
        std::size_t d = edit_distance(expect, got);
        chars += expect.size();
        errors += d;
        wrong_emails += d > 0;
    }
    double acc = chars ? 1.0 - static_cast<double>(errors) / static_cast<double>(chars) : 0.0;
    double secs = seconds_since(t0);
    return {errors == 0 && c.size() >= 500 && secs <= 60.0,
            std::to_string(c.size()) + " clean emails, " + std::to_string(chars) + " chars, accuracy " +
                fmt("%.6f", acc) + ", " + std::to_string(wrong_emails) + " emails off, " + fmt("%.1f s", secs) +
                " (need 1.000000, <= 60 s)"};
}

// 2. Hidden ham never reaches OCR output; designated spam always does.
Outcome hidden_content() {
    corpus::CorpusSpec spec;
    spec.n_ham = 0;
    spec.n_spam = 510;
    spec.trick_mix = {{corpus::TrickKind::HiddenHamColor, 1.0 / 3},
                      {corpus::TrickKind::HiddenHamTinyFont, 1.0 / 3},
                      {corpus::TrickKind::HiddenHamDisplayNone, 1.0 / 3}};
    spec.seed = 42;
    std::vector<corpus::GroundTruth> truths;
    auto c = corpus::gen_corpus(spec, scratch() / "salted", &truths);
    std::size_t leaked = 0, hidden_total = 0, spam_total = 0, spam_seen = 0, salted = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        salted += corpus::hides_ham(c.entries[i].trick);
        auto seen = perceived_tokens(ocr::ocr_text(render::render_email(c.entries[i].doc).raster).text);
        for (const auto& w : truths[i].hidden_words) {
            ++hidden_total;
            leaked += seen.count(w);
        }
        for (const auto& p : truths[i].spam_phrases)
            for (const auto& w : text::tokenize(p, text::TokenMode::Perceived)) {
                ++spam_total;
                spam_seen += seen.count(w);
            }
    }
    return {salted >= 500 && leaked == 0 && spam_seen == spam_total && hidden_total > 0,
            std::to_string(salted) + " salted emails, " + std::to_string(leaked) + "/" + std::to_string(hidden_total) +
                " hidden ham tokens in OCR output (need 0), " + std::to_string(spam_seen) + "/" +
                std::to_string(spam_total) + " designated spam tokens seen (need all)"};
}

struct DeskRun {
    fs::path dir = scratch() / "desk";
    std::vector<stack::Sample> data;
    harness::Split split;
    double prep_seconds = 0.0;
};

DeskRun& desk() {
    static DeskRun d = [] {
        DeskRun r;
        auto t0 = Clock::now();
        auto c = corpus::gen_corpus(corpus::CorpusSpec::desk_default(), r.dir);
        r.data = harness::prepare_samples(c);
        r.split = harness::split(c.labels(), 0.8, true, 42);
        r.prep_seconds = seconds_since(t0);
        return r;
    }();
    return d;
}

// 3. Reading what the eye sees beats reading the source, by 10 points or more.
Outcome table1_direction() {
    auto t0 = Clock::now();
    auto& d = desk();
    auto rows = harness::run_table1(d.data, d.split);
    double secs = seconds_since(t0);
    bool ok = secs <= 300.0;
    std::string detail;
    for (const auto& r : rows) {
        if (r.kind != text::ModelKind::NB && r.kind != text::ModelKind::DT) continue;
        double gap = r.ocr_accuracy - r.raw_accuracy;
        ok = ok && gap >= 0.10;
        detail += std::string(text::model_kind_name(r.kind)) + " raw " + fmt("%.4f", r.raw_accuracy) + " -> ocr " +
                  fmt("%.4f", r.ocr_accuracy) + " (gap " + fmt("%.1f", 100 * gap) + " pp), ";
    }
    return {ok, detail + fmt("%.1f s", secs) + " (need gap >= 10 pp, <= 300 s)"};
}

// 4. The LR-meta stack is accurate and no worse than its best base.
Outcome table2_analog() {
    auto t0 = Clock::now();
    auto& d = desk();
    auto r = harness::run_table2(d.data, d.split);
    double secs = seconds_since(t0) + d.prep_seconds;
    double best_base = *std::max_element(r.base_accuracy.begin(), r.base_accuracy.end());
    bool identity = r.rows.size() == 3;
    for (const auto& row : r.rows)
        identity = identity && std::abs(row.metrics.accuracy + row.metrics.fp_total + row.metrics.fn_total - 1.0) < 1e-12;
    double lr = r.rows.empty() ? 0.0 : r.rows[0].metrics.accuracy;
    bool ok = identity && r.rows[0].meta == text::ModelKind::LR && lr >= 0.95 && lr >= best_base - 0.01 && secs <= 900.0;
    return {ok, "lr meta " + fmt("%.4f", lr) + ", bases nb " + fmt("%.4f", r.base_accuracy[0]) + " dt " +
                    fmt("%.4f", r.base_accuracy[1]) + " cnn " + fmt("%.4f", r.base_accuracy[2]) +
                    (identity ? ", rates sum to 1" : ", rate identity broken") + ", " + fmt("%.1f s", secs) +
                    " (need >= 0.95 and >= best base - 1 pp, <= 900 s)"};
}

// Largest relative error between backprop and central differences over one
// layer's weights and biases; big tensors are sampled at 48 evenly spaced entries.
double cnn_layer_error(cnn::CnnModel m, const cnn::ImageTensor& x, Label label, std::size_t layer, double h) {
    auto g = cnn::cnn_backward(m, x, label);
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        auto& params = which == 0 ? m.weights[layer] : m.biases[layer];
        const auto& ana = which == 0 ? g.weights[layer] : g.biases[layer];
        double diff = 0, na = 0, nn = 0;
        std::size_t stride = std::max<std::size_t>(1, params.size() / 48);
        for (std::size_t k = 0; k < params.size(); k += stride) {
            double keep = params[k];
            params[k] = keep + h;
            double up = cnn::cnn_loss(m, x, label);
            params[k] = keep - h;
            double down = cnn::cnn_loss(m, x, label);
            params[k] = keep;
            double num = (up - down) / (2 * h);
            diff += (num - ana[k]) * (num - ana[k]);
            na += ana[k] * ana[k];
            nn += num * num;
        }
        worst = std::max(worst, std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nn), 1e-10}));
    }
    return worst;
}

// 5. Analytic gradients agree with finite differences.
Outcome gradient_checks() {
    auto t0 = Clock::now();
    Rng rng(5);
    double lr_worst = 0.0;
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t vocab = static_cast<std::size_t>(rng.range(2, 8));
        std::vector<text::FeatureVector> x;
        std::vector<Label> y;
        for (int i = 0; i < rng.range(3, 15); ++i) {
            text::FeatureVector v;
            for (std::size_t f = 0; f < vocab; ++f)
                if (rng.chance(0.4)) v.entries.emplace_back(static_cast<int>(f), 1.0 + static_cast<double>(rng.below(3)));
            x.push_back(v);
            y.push_back(i % 2 ? Label::Spam : Label::Ham);
        }
        std::vector<double> w(vocab), gw;
        for (auto& wi : w) wi = rng.uniform(-2, 2);
        double b = rng.uniform(-1, 1), gb = 0;
        text::lr_objective(w, b, x, y, 1e-4, &gw, &gb);
        gw.push_back(gb);
        double diff = 0, na = 0, nn = 0;
        for (std::size_t j = 0; j <= vocab; ++j) {
            auto wp = w, wm = w;
            double bp = b, bm = b;
            (j < vocab ? wp[j] : bp) += h;
            (j < vocab ? wm[j] : bm) -= h;
            double num = (text::lr_objective(wp, bp, x, y, 1e-4) - text::lr_objective(wm, bm, x, y, 1e-4)) / (2 * h);
            diff += (num - gw[j]) * (num - gw[j]);
            na += gw[j] * gw[j];
            nn += num * num;
        }
        lr_worst = std::max(lr_worst, std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nn), 1e-12}));
    }

    // Every layer of a tiny net holding each layer kind, at step 1e-4. On the full
    // 64x64 net a 1e-4 step moves thousands of ReLU and pooling inputs across
    // their kinks, so that net is checked with a step of 1e-5 instead.
    double cnn_worst = 0.0, full_worst = 0.0;
    auto check_arch = [&](const cnn::CnnArch& arch, std::uint64_t seed, double h, double& worst) {
        auto m = cnn::init_model(arch, seed);
        Rng r(seed);
        for (auto& bias : m.biases)
            for (auto& v : bias) v = r.uniform(-0.1, 0.1);
        cnn::ImageTensor x{arch.input_height, arch.input_width, {}};
        for (int i = 0; i < arch.input_height * arch.input_width; ++i) x.data.push_back(r.uniform());
        for (std::size_t layer = 0; layer < arch.layers.size(); ++layer) {
            auto kind = arch.layers[layer].kind;
            if (kind != cnn::LayerKind::Conv3x3 && kind != cnn::LayerKind::Dense) continue;
            for (auto label : {Label::Ham, Label::Spam}) worst = std::max(worst, cnn_layer_error(m, x, label, layer, h));
        }
    };
    cnn::CnnArch small;
    small.input_height = small.input_width = 8;
    small.layers = {{cnn::LayerKind::Conv3x3, 3}, {cnn::LayerKind::ReLU, 0},  {cnn::LayerKind::MaxPool2, 0},
                    {cnn::LayerKind::Conv3x3, 2}, {cnn::LayerKind::ReLU, 0},  {cnn::LayerKind::MaxPool2, 0},
                    {cnn::LayerKind::Flatten, 0}, {cnn::LayerKind::Dense, 4}, {cnn::LayerKind::ReLU, 0},
                    {cnn::LayerKind::Dense, 1},   {cnn::LayerKind::Sigmoid, 0}};
    for (std::uint64_t s = 0; s < 5; ++s) check_arch(small, s, 1e-4, cnn_worst);
    check_arch(cnn::CnnArch::standard(), 11, 1e-5, full_worst);
    double secs = seconds_since(t0);
    return {lr_worst <= 1e-5 && cnn_worst <= 1e-3 && full_worst <= 1e-3 && secs <= 30.0,
            "lr rel err " + fmt("%.2e", lr_worst) + " (need <= 1e-5), worst cnn layer " + fmt("%.2e", cnn_worst) +
                ", full-size net " + fmt("%.2e", full_worst) + " (need <= 1e-3), " + fmt("%.1f s", secs) +
                " (need <= 30 s)"};
}

// 6. Oracle equivalences.
Outcome oracles() {
    std::string detail;
    bool ok = true;

    // Laplace-smoothed multinomial NB, worked by hand.
    auto v = text::build_vocab({{"cash", "cash"}, {"meeting"}}, 1);
    auto fv = [&](text::TokenSequence t) { return text::featurize(t, v, text::FeatureMode::Counts); };
    auto nb = text::train(text::ModelKind::NB, {fv({"cash", "cash"}), fv({"meeting"})}, {Label::Spam, Label::Ham}, v.size());
    double score = text::predict(nb, fv({"cash"})).score;
    double hand = (3.0 / 4 * 0.5) / (3.0 / 4 * 0.5 + 1.0 / 3 * 0.5);
    bool nb_ok = std::abs(score - hand) <= 1e-6 && fmt("%.4f", score) == "0.6923";
    ok &= nb_ok;
    detail += "nb " + fmt("%.6f", score) + (nb_ok ? " ok" : " WRONG");

    // DT root against an exhaustive Gini scan.
    Rng rng(17);
    int dt_match = 0, dt_cases = 0;
    while (dt_cases < 50) {
        int n = rng.range(2, 12), vocab = rng.range(1, 6);
        std::vector<text::FeatureVector> x;
        std::vector<Label> y;
        for (int i = 0; i < n; ++i) {
            Label l = i < 2 ? static_cast<Label>(i) : (rng.chance(0.5) ? Label::Spam : Label::Ham);
            text::FeatureVector f;
            f.mode = text::FeatureMode::Presence;
            for (int k = 0; k < vocab; ++k)
                if (rng.chance((k % 2 == 0) == (l == Label::Spam) ? 0.6 : 0.25)) f.entries.emplace_back(k, 1.0);
            x.push_back(f);
            y.push_back(l);
        }
        double best = 1e9;
        int best_feature = -1;
        for (int k = 0; k < vocab; ++k) {
            double c[2][2] = {{0, 0}, {0, 0}};
            for (int i = 0; i < n; ++i) {
                bool present = std::any_of(x[i].entries.begin(), x[i].entries.end(), [&](auto& e) { return e.first == k; });
                c[present][y[i] == Label::Spam] += 1;
            }
            double n0 = c[0][0] + c[0][1], n1 = c[1][0] + c[1][1];
            if (n0 == 0 || n1 == 0) continue;
            auto gini = [](double a, double b) { return 1.0 - (a * a + b * b) / ((a + b) * (a + b)); };
            double g = (n0 * gini(c[0][0], c[0][1]) + n1 * gini(c[1][0], c[1][1])) / n;
            if (g < best - 1e-12) {
                best = g;
                best_feature = k;
            }
        }
        // Instances without a usable split, or already pure, do not exercise the scan.
        bool pure = std::all_of(y.begin(), y.end(), [&](Label l) { return l == y[0]; });
        if (best_feature < 0 || pure) continue;
        ++dt_cases;
        auto m = text::train(text::ModelKind::DT, x, y, static_cast<std::size_t>(vocab));
        dt_match += !m.tree[0].leaf() && m.tree[0].feature == best_feature;
    }
    ok &= dt_match == dt_cases;
    detail += ", dt root " + std::to_string(dt_match) + "/" + std::to_string(dt_cases);

    // Leave-one-out stacking features against per-sample retraining.
    std::vector<stack::Sample> six;
    const char* texts[] = {"cash prize winner bonus hello team", "meeting agenda notes hello team",
                           "casino offer cash hello team",       "report lunch project hello team",
                           "bonus winner offer hello team",      "agenda notes lunch hello team"};
    for (int i = 0; i < 6; ++i) {
        stack::Sample s;
        s.perceived = s.raw = texts[i];
        s.label = i % 2 == 0 ? Label::Spam : Label::Ham;
        s.image = {cnn::kImageSize, cnn::kImageSize, std::vector<double>(cnn::kImageSize * cnn::kImageSize, 1.0)};
        if (s.label == Label::Spam)
            for (int yy = 4; yy < 10; ++yy)
                for (int xx = 4; xx < 50; ++xx) s.image.at(yy, xx) = 0.0;
        six.push_back(s);
    }
    stack::StackConfig cfg;
    cfg.min_df = 1;
    cfg.cnn.epochs = 3;
    auto f = stack::oof_stack_features(six, 6, 9, cfg);
    int loo_match = 0;
    for (std::size_t i = 0; i < six.size(); ++i) {
        std::vector<std::size_t> rows;
        for (std::size_t j = 0; j < six.size(); ++j)
            if (j != i) rows.push_back(j);
        loo_match += f.scores[i] == stack::train_bases(six, rows, cfg).scores(six[i]);
    }
    ok &= loo_match == 6;
    detail += ", loo rows " + std::to_string(loo_match) + "/6";

    // compute_metrics against a plain confusion count.
    int metric_match = 0;
    Rng mr(99);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = static_cast<std::size_t>(mr.range(1, 60));
        std::vector<Label> pred(n), truth(n);
        std::size_t cell[2][2] = {{0, 0}, {0, 0}};
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = mr.chance(0.5) ? Label::Spam : Label::Ham;
            truth[i] = mr.chance(0.5) ? Label::Spam : Label::Ham;
            ++cell[static_cast<int>(pred[i])][static_cast<int>(truth[i])];
        }
        auto m = harness::compute_metrics(pred, truth);
        double dn = static_cast<double>(n);
        metric_match += m.tp == cell[1][1] && m.fp == cell[1][0] && m.fn == cell[0][1] && m.tn == cell[0][0] &&
                        std::abs(m.accuracy - static_cast<double>(cell[1][1] + cell[0][0]) / dn) < 1e-12 &&
                        std::abs(m.fp_total - static_cast<double>(cell[1][0]) / dn) < 1e-12 &&
                        std::abs(m.fn_total - static_cast<double>(cell[0][1]) / dn) < 1e-12;
    }
    ok &= metric_match == 1000;
    detail += ", metrics " + std::to_string(metric_match) + "/1000";
    return {ok, detail};
}

// 7. Reruns with the same seeds reproduce every artifact byte for byte.
Outcome determinism() {
    auto root = scratch() / "determinism";
    fs::create_directories(root);
    std::ofstream(root / "spec.txt") << "n_ham = 60\nn_spam = 60\nseed = 42\n";
    bool ran = true;
    auto a = root / "corpus_a", b = root / "corpus_b";
    ran &= cli({"gen-corpus", "--spec", (root / "spec.txt").string(), "--out", a.string()}) == 0;
    ran &= cli({"gen-corpus", "--spec", (root / "spec.txt").string(), "--out", b.string()}) == 0;
    bool corpus_same = ran && snapshot(a) == snapshot(b);

    for (auto* name : {"stack_a", "stack_b"})
        ran &= cli({"train-stack", "--corpus", a.string(), "--meta", "lr", "--folds", "5", "--seed", "42", "--out",
                    (root / name).string()}) == 0;
    bool stack_same = ran && slurp(root / "stack_a") == slurp(root / "stack_b");

    bool csv_same = true;
    for (auto* table : {"1", "2"})
        for (auto* name : {"a", "b"})
            ran &= cli({"evaluate", "--corpus", a.string(), "--table", table, "--seed", "42", "--out",
                        (root / (std::string("t") + table + name + ".csv")).string()}) == 0;
    for (auto* table : {"1", "2"})
        csv_same &= slurp(root / (std::string("t") + table + "a.csv")) == slurp(root / (std::string("t") + table + "b.csv"));
    csv_same &= ran;
    return {ran && corpus_same && stack_same && csv_same,
            std::string("gen-corpus ") + (corpus_same ? "identical" : "DIFFERS") + ", train-stack " +
                (stack_same ? "identical" : "DIFFERS") + ", evaluate 1+2 " + (csv_same ? "identical" : "DIFFERS")};
}

// 8. The CNN heatmap is complete and has a cell at 0.9 or better.
Outcome heatmap() {
    auto t0 = Clock::now();
    auto csv = scratch() / "heatmap.csv";
    int code = cli({"heatmap", "--corpus", desk().dir.string(), "--lrs", "0.02,0.05,0.1", "--epochs", "10,20,40",
                    "--subset", "200", "--seed", "42", "--out", csv.string()});
    double secs = seconds_since(t0);
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    bool header = line == "lr,epochs,val_accuracy,diverged";
    int cells = 0;
    double best = 0.0;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string lr, ep, acc, div;
        std::getline(ss, lr, ',');
        std::getline(ss, ep, ',');
        std::getline(ss, acc, ',');
        std::getline(ss, div, ',');
        if (acc.empty() || div.empty()) continue;
        seen.insert({lr, ep});
        best = std::max(best, std::stod(acc));
        ++cells;
    }
    bool ok = code == 0 && header && cells == 9 && seen.size() == 9 && best >= 0.9 && secs <= 600.0;
    return {ok, std::to_string(cells) + "/9 cells, best val accuracy " + fmt("%.4f", best) + ", " + fmt("%.1f s", secs) +
                    " (need >= 0.9, <= 600 s)"};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"ocr round-trip", ocr_round_trip}, {"hidden-content exclusion", hidden_content},
        {"table 1 direction", table1_direction}, {"table 2 analog", table2_analog},
        {"gradient checks", gradient_checks}, {"oracle equivalence", oracles},
        {"determinism", determinism}, {"heatmap", heatmap},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail << std::endl;
    }
    fs::remove_all(scratch());
    return failed == 0 ? 0 : 1;
}
