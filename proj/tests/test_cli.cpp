#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "vbsf/corpus.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "vbsf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = vbsf::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
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

// One small corpus shared by the slower cases.
struct Workspace {
    fs::path root = fs::temp_directory_path() / "vbsf_cli";
    fs::path spec = root / "spec.txt";
    fs::path corpus = root / "corpus";

    Workspace() {
        fs::remove_all(root);
        fs::create_directories(root);
        std::ofstream(spec) << "n_ham = 14\nn_spam = 14\nseed = 5\ntrick.comment_split = 0.5\ntrick.hidden_ham_color = 0.25\n";
        auto r = run({"gen-corpus", "--spec", spec.string(), "--out", corpus.string()});
        REQUIRE(r.code == 0);
    }

    std::string email_of(vbsf::Label label) const {
        std::ifstream in(corpus / "labels.tsv");
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line))
            if (line.find(std::string("\t") + vbsf::label_name(label) + "\t") != std::string::npos)
                return (corpus / "emails" / (line.substr(0, line.find('\t')) + ".eml")).string();
        return {};
    }
};

Workspace& ws() {
    static Workspace w;
    return w;
}

}  // namespace

TEST_CASE("unknown subcommand is a usage error") {
    auto r = run({"frobnicate"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.err.find("gen-corpus") != std::string::npos);
}

TEST_CASE("no subcommand and missing options are usage errors") {
    CHECK(run({}).code == 1);
    auto r = run({"render", "--in", "x.eml"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("--out") != std::string::npos);
    CHECK(run({"train-stack", "--corpus", "c", "--out", "m", "--meta", "knn"}).code == 1);
    CHECK(run({"evaluate", "--corpus", "c", "--table", "3"}).code == 1);
}

TEST_CASE("help goes to standard output") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("heatmap") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("bad data exits with 2 and a diagnostic only") {
    auto r = run({"evaluate", "--corpus", (ws().root / "nowhere").string(), "--table", "1"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error: ", 0) == 0);
    std::ofstream(ws().root / "bad.txt") << "n_ham = lots\n";
    auto g = run({"gen-corpus", "--spec", (ws().root / "bad.txt").string(), "--out", (ws().root / "x").string()});
    CHECK(g.code == 2);
    CHECK(g.out.empty());
}

TEST_CASE("gen-corpus is byte-identical across runs") {
    auto other = ws().root / "corpus2";
    auto r = run({"gen-corpus", "--spec", ws().spec.string(), "--out", other.string()});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(snapshot(other) == snapshot(ws().corpus));
    CHECK(vbsf::corpus::load_corpus(other).size() == 28);
}

TEST_CASE("render then ocr reads back the visible text") {
    auto ppm = ws().root / "ham.ppm", trace = ws().root / "ham.tsv";
    auto r = run({"render", "--in", ws().email_of(vbsf::Label::Ham), "--out", ppm.string(), "--trace", trace.string()});
    REQUIRE(r.code == 0);
    CHECK(slurp(ppm).rfind("P6\n800 ", 0) == 0);
    CHECK(slurp(trace).rfind("codepoint\tx\ty\twidth\theight\tfg\tbg\tdrawn\tbold\n", 0) == 0);
    auto from_image = run({"ocr", "--in", ppm.string()});
    auto from_email = run({"ocr", "--in", ws().email_of(vbsf::Label::Ham)});
    CHECK(from_image.code == 0);
    CHECK(from_image.out == from_email.out);
    CHECK(from_image.out.size() > 20);
    auto cells = run({"ocr", "--in", ppm.string(), "--dump-cells"});
    CHECK(cells.out.size() > from_image.out.size());
}

TEST_CASE("train and classify with a single text model") {
    auto model = ws().root / "nb.model";
    auto t = run({"train", "--corpus", ws().corpus.string(), "--model", "nb", "--out", model.string()});
    REQUIRE(t.code == 0);
    CHECK(slurp(model).rfind("VBSF-MODEL v1 nb", 0) == 0);
    auto c = run({"classify", "--model", model.string(), "--in", ws().email_of(vbsf::Label::Spam)});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("label\tscore\nspam\t", 0) == 0);
    CHECK(run({"train", "--corpus", ws().corpus.string(), "--model", "vgg", "--out", model.string()}).code == 1);
    auto raw = run({"train", "--corpus", ws().corpus.string(), "--model", "dt", "--mode", "raw", "--out", model.string()});
    CHECK(raw.code == 0);
}

TEST_CASE("train-stack is deterministic and classify shows the base votes") {
    auto a = ws().root / "a.stack", b = ws().root / "b.stack";
    std::vector<std::string> args{"train-stack", "--corpus", ws().corpus.string(), "--meta", "lr", "--folds", "5", "--seed", "7"};
    auto ra = args, rb = args;
    ra.insert(ra.end(), {"--out", a.string()});
    rb.insert(rb.end(), {"--out", b.string()});
    REQUIRE(run(ra).code == 0);
    REQUIRE(run(rb).code == 0);
    CHECK(slurp(a) == slurp(b));

    auto c = run({"classify", "--model", a.string(), "--in", ws().email_of(vbsf::Label::Spam)});
    REQUIRE(c.code == 0);
    std::istringstream lines(c.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "label\tscore\tnb_vote\tdt_vote\tcnn_vote");
    CHECK(row.rfind("spam\t", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), '\t') == 4);
    auto e = run({"classify", "--model", a.string(), "--in", ws().email_of(vbsf::Label::Spam), "--explain"});
    CHECK(e.out.rfind("nb_score\tdt_score\tcnn_score\tnb_vote\tdt_vote\tcnn_vote\tfinal\n", 0) == 0);
}

TEST_CASE("evaluate writes identical CSVs for identical seeds") {
    auto t1 = ws().root / "t1.csv";
    REQUIRE(run({"evaluate", "--corpus", ws().corpus.string(), "--table", "1", "--seed", "3", "--out", t1.string()}).code == 0);
    auto first = slurp(t1);
    CHECK(first.rfind("model,raw_accuracy,ocr_accuracy\nnb,", 0) == 0);
    CHECK(std::count(first.begin(), first.end(), '\n') == 7);
    REQUIRE(run({"evaluate", "--corpus", ws().corpus.string(), "--table", "1", "--seed", "3", "--out", t1.string()}).code == 0);
    CHECK(slurp(t1) == first);

    auto t2 = run({"evaluate", "--corpus", ws().corpus.string(), "--table", "2", "--seed", "3", "--cnn-epochs", "2"});
    REQUIRE(t2.code == 0);
    CHECK(t2.out.find("meta,accuracy,fp_total,fn_total\nlr,") != std::string::npos);
    CHECK(t2.out.find("\nrf,") != std::string::npos);
    CHECK(t2.out.find("\ndt,") != std::string::npos);
}

TEST_CASE("heatmap emits every cell") {
    auto r = run({"heatmap", "--corpus", ws().corpus.string(), "--lrs", "0.01,0.05", "--epochs", "1,2", "--subset", "20"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("lr,epochs,val_accuracy,diverged\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
    CHECK(run({"heatmap", "--corpus", ws().corpus.string(), "--lrs", "fast"}).code == 1);
}
