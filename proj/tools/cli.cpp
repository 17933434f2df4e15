#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vbsf/corpus.hpp"
#include "vbsf/harness.hpp"
#include "vbsf/ocr.hpp"
#include "vbsf/render.hpp"
#include "vbsf/stacking.hpp"
#include "vbsf/textmodel.hpp"

namespace vbsf::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
        throw IoFailure("cannot write " + p.string());
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

text::ModelKind kind_or_throw(const std::string& name) {
    auto k = text::parse_model_kind(name);
    if (!k) throw CLI::ValidationError("--model", "unknown model kind " + name);
    return *k;
}

struct Options {
    std::string spec, in, out, trace, corpus, model, mode = "ocr", meta = "lr";
    bool dump_cells = false, explain = false;
    int folds = 5, table = 1, cnn_epochs = -1;
    double cnn_lr = -1;
    std::size_t subset = 200;
    std::uint64_t seed = 42;
    std::vector<double> lrs{0.02, 0.05, 0.1};
    std::vector<int> epochs{10, 20, 40};
};

stack::StackConfig stack_config(const Options& o) {
    stack::StackConfig cfg;
    if (o.cnn_epochs >= 0) cfg.cnn.epochs = o.cnn_epochs;
    if (o.cnn_lr > 0) cfg.cnn.lr = o.cnn_lr;
    return cfg;
}

void gen_corpus_cmd(const Options& o, std::ostream& out) {
    auto spec = corpus::parse_corpus_spec(read_file(o.spec));
    auto c = corpus::gen_corpus(spec, o.out);
    out << "wrote " << c.size() << " emails (" << spec.n_ham << " ham, " << spec.n_spam << " spam) to " << o.out << "\n";
}

void render_cmd(const Options& o, std::ostream&, std::ostream& err) {
    auto r = render::render_email(mail::parse_email(read_file(o.in)));
    if (r.trace.overflow) err << "warning: content exceeds the canvas and was truncated\n";
    write_file(o.out, render::to_ppm(r.raster));
    if (!o.trace.empty()) write_file(o.trace, render::trace_tsv(r.trace));
}

void ocr_cmd(const Options& o, std::ostream& out) {
    std::string bytes = read_file(o.in);
    render::Raster img = bytes.rfind("P6", 0) == 0 ? render::read_ppm(bytes)
                                                   : render::render_email(mail::parse_email(bytes)).raster;
    auto r = ocr::ocr_text(img);
    out << r.text;
    if (!r.text.empty() && r.text.back() != '\n') out << "\n";
    if (o.dump_cells) out << ocr::dump_cells(r);
}

void train_cmd(const Options& o, std::ostream& out) {
    auto kind = kind_or_throw(o.model);
    bool raw = o.mode == "raw";
    auto c = corpus::load_corpus(o.corpus);
    std::vector<std::string> texts;
    for (const auto& e : c.entries)
        texts.push_back(raw ? mail::raw_text(e.doc.body) : ocr::ocr_text(render::render_email(e.doc).raster).text);
    auto p = text::fit_pipeline(kind, raw ? text::TokenMode::RawSource : text::TokenMode::Perceived, texts, c.labels());
    std::ostringstream file;
    text::save_pipeline(file, p);
    write_file(o.out, file.str());
    out << "trained " << text::model_kind_name(kind) << " on " << c.size() << " emails (" << o.mode << " text)\n";
}

void train_stack_cmd(const Options& o, std::ostream& out) {
    auto meta = kind_or_throw(o.meta);
    auto data = harness::prepare_samples(corpus::load_corpus(o.corpus));
    auto m = stack::stack_train(data, meta, o.folds, o.seed, stack_config(o));
    std::ostringstream file;
    stack::save_stack(file, m);
    write_file(o.out, file.str());
    out << "trained stack with " << text::model_kind_name(meta) << " meta on " << data.size() << " emails\n";
}

void classify_cmd(const Options& o, std::ostream& out) {
    std::string model = read_file(o.model);
    auto doc = mail::parse_email(read_file(o.in));
    std::istringstream in(model);
    if (model.rfind("VBSF-MODEL v1 stack", 0) == 0) {
        auto e = stack::stack_predict(stack::load_stack(in), doc);
        if (o.explain) {
            out << stack::explanation_tsv(e);
            return;
        }
        out << "label\tscore\tnb_vote\tdt_vote\tcnn_vote\n"
            << label_name(e.final.label) << "\t" << fixed4(e.final.score) << "\t" << e.votes[0] << "\t" << e.votes[1]
            << "\t" << e.votes[2] << "\n";
        return;
    }
    auto p = text::load_pipeline(in);
    std::string t = p.tokens == text::TokenMode::RawSource ? mail::raw_text(doc.body)
                                                           : ocr::ocr_text(render::render_email(doc).raster).text;
    auto pred = p.classify(t);
    out << "label\tscore\n" << label_name(pred.label) << "\t" << fixed4(pred.score) << "\n";
}

void evaluate_cmd(const Options& o, std::ostream& out) {
    auto c = corpus::load_corpus(o.corpus);
    auto data = harness::prepare_samples(c);
    auto s = harness::split(c.labels(), 0.8, true, o.seed);
    harness::EvalConfig cfg;
    cfg.stack = stack_config(o);
    cfg.folds = o.folds;
    std::string csv;
    if (o.table == 1) {
        csv = harness::table1_csv(harness::run_table1(data, s, harness::kTable1Kinds, cfg));
    } else {
        auto r = harness::run_table2(data, s, harness::kMetaKinds, cfg);
        csv = harness::table2_csv(r);
        // Base accuracies are not part of the table; they go with the run summary.
        out << "base accuracy: nb " << fixed4(r.base_accuracy[0]) << ", dt " << fixed4(r.base_accuracy[1]) << ", cnn "
            << fixed4(r.base_accuracy[2]) << "\n";
    }
    if (o.out.empty()) out << csv;
    else write_file(o.out, csv);
}

void heatmap_cmd(const Options& o, std::ostream& out) {
    auto c = corpus::load_corpus(o.corpus);
    std::vector<cnn::LabeledImage> images;
    for (auto i : harness::stratified_subset(c.labels(), o.subset, o.seed)) {
        const auto& e = c.entries[i];
        images.push_back({cnn::to_image_tensor(render::render_email(e.doc).raster), e.label});
    }
    auto csv = cnn::grid_csv(harness::run_heatmap(images, o.lrs, o.epochs, o.seed));
    if (o.out.empty()) out << csv;
    else write_file(o.out, csv);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Visual spam filter: corpus generation, rendering, OCR, training and evaluation", "vbsf"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen-corpus", "Generate a labeled synthetic corpus");
    gen->add_option("--spec", o.spec, "Corpus spec file (key = value lines)")->required();
    gen->add_option("--out", o.out, "Output directory")->required();

    auto* ren = app.add_subcommand("render", "Render an email to a PPM image");
    ren->add_option("--in", o.in, "Email file")->required();
    ren->add_option("--out", o.out, "Output PPM")->required();
    ren->add_option("--trace", o.trace, "Also write the glyph trace as TSV");

    auto* ocr = app.add_subcommand("ocr", "Read the text of a PPM image or a rendered email");
    ocr->add_option("--in", o.in, "PPM image or email file")->required();
    ocr->add_flag("--dump-cells", o.dump_cells, "Print the matched cells after the text");

    auto* train = app.add_subcommand("train", "Train one text model");
    train->add_option("--corpus", o.corpus, "Corpus directory")->required();
    train->add_option("--model", o.model, "nb, dt, lr, svm, adaboost, knn or rf")->required();
    train->add_option("--out", o.out, "Model file")->required();
    train->add_option("--mode", o.mode, "Text source")->check(CLI::IsMember({"raw", "ocr"}));

    auto* ts = app.add_subcommand("train-stack", "Train the stacked NB + DT + CNN model");
    ts->add_option("--corpus", o.corpus, "Corpus directory")->required();
    ts->add_option("--meta", o.meta, "Meta classifier")->check(CLI::IsMember({"lr", "rf", "dt"}));
    ts->add_option("--folds", o.folds, "Out-of-fold count")->check(CLI::Range(2, 1000000));
    ts->add_option("--seed", o.seed, "Fold seed");
    ts->add_option("--out", o.out, "Model file")->required();

    auto* cls = app.add_subcommand("classify", "Classify one email");
    cls->add_option("--model", o.model, "Model file from train or train-stack")->required();
    cls->add_option("--in", o.in, "Email file")->required();
    cls->add_flag("--explain", o.explain, "Print base scores and votes of a stacked model");

    auto* ev = app.add_subcommand("evaluate", "Reproduce a results table on a corpus");
    ev->add_option("--corpus", o.corpus, "Corpus directory")->required();
    ev->add_option("--table", o.table, "1: raw vs OCR text, 2: meta classifiers")->check(CLI::IsMember({1, 2}));
    ev->add_option("--seed", o.seed, "Split seed");
    ev->add_option("--folds", o.folds, "Out-of-fold count for table 2")->check(CLI::Range(2, 1000000));
    ev->add_option("--out", o.out, "CSV file (default: standard output)");

    auto* hm = app.add_subcommand("heatmap", "CNN validation accuracy over learning rates and epochs");
    hm->add_option("--corpus", o.corpus, "Corpus directory")->required();
    hm->add_option("--lrs", o.lrs, "Comma-separated learning rates")->delimiter(',');
    hm->add_option("--epochs", o.epochs, "Comma-separated epoch counts")->delimiter(',');
    hm->add_option("--subset", o.subset, "Images drawn from the corpus");
    hm->add_option("--seed", o.seed, "Subset, split and training seed");
    hm->add_option("--out", o.out, "CSV file (default: standard output)");

    for (auto* sub : {ts, ev}) {
        sub->add_option("--cnn-epochs", o.cnn_epochs, "CNN base epochs")->check(CLI::NonNegativeNumber);
        sub->add_option("--cnn-lr", o.cnn_lr, "CNN base learning rate")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        if (code != 0) {
            auto chosen = app.get_subcommands();
            err << (chosen.empty() ? app.help() : chosen.front()->help());
        }
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gen) gen_corpus_cmd(o, out);
        else if (*ren) render_cmd(o, out, err);
        else if (*ocr) ocr_cmd(o, out);
        else if (*train) train_cmd(o, out);
        else if (*ts) train_stack_cmd(o, out);
        else if (*cls) classify_cmd(o, out);
        else if (*ev) evaluate_cmd(o, out);
        else if (*hm) heatmap_cmd(o, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace vbsf::cli
