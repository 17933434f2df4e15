#include "vbsf/textmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vbsf/rng.hpp"

namespace vbsf::text {

namespace {

constexpr ModelKind kAllKinds[] = {ModelKind::NB,       ModelKind::DT,  ModelKind::LR, ModelKind::SVM,
                                   ModelKind::AdaBoost, ModelKind::KNN, ModelKind::RF};

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double spam_target(Label l) { return l == Label::Spam ? 1.0 : 0.0; }
double sign_of(Label l) { return l == Label::Spam ? 1.0 : -1.0; }

bool present(const FeatureVector& x, int feature) {
    auto it = std::lower_bound(x.entries.begin(), x.entries.end(), feature,
                               [](const std::pair<int, double>& e, int f) { return e.first < f; });
    return it != x.entries.end() && it->first == feature;
}

double dot(const std::vector<double>& w, const FeatureVector& x, double scale = 1.0) {
    double s = 0.0;
    for (const auto& [i, v] : x.entries) s += w[static_cast<std::size_t>(i)] * v;
    return s * scale;
}

double length_scale(const FeatureVector& x) {
    double sum = 0.0;
    for (const auto& e : x.entries) sum += e.second;
    return 1.0 / std::max(1.0, sum);
}

void check_indices(const FeatureVector& x, std::size_t vocab_size) {
    if (!x.entries.empty() && static_cast<std::size_t>(x.entries.back().first) >= vocab_size)
        throw VocabMismatch("feature index " + std::to_string(x.entries.back().first) +
                            " is outside a vocabulary of " + std::to_string(vocab_size));
    if (!x.entries.empty() && x.entries.front().first < 0) throw VocabMismatch("negative feature index");
    for (std::size_t i = 1; i < x.entries.size(); ++i)
        if (x.entries[i - 1].first >= x.entries[i].first) throw FormatError("feature indices must be strictly increasing");
}

struct Dataset {
    std::vector<FeatureVector> x;
    std::vector<Label> y;
};

Dataset canonical(const std::vector<FeatureVector>& x, const std::vector<Label>& y) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (y[a] != y[b]) return y[a] < y[b];
        return x[a].entries < x[b].entries;
    });
    Dataset d;
    for (auto i : order) {
        d.x.push_back(x[i]);
        d.y.push_back(y[i]);
    }
    return d;
}

// ---- trees ----

struct TreeBuilder {
    const Dataset& data;
    std::size_t vocab_size;
    const TrainParams& params;
    Rng* rng = nullptr;  // set for forest trees: enables the per-node feature bag
    int bag = 0;

    std::vector<TreeNode> nodes;
    int depth = 0;
    std::vector<long long> ps, ph;
    std::vector<char> seen;

    TreeBuilder(const Dataset& d, std::size_t v, const TrainParams& p) : data(d), vocab_size(v), params(p) {
        ps.assign(vocab_size, 0);
        ph.assign(vocab_size, 0);
        seen.assign(vocab_size, 0);
    }

    struct Item {
        int index;
        long long weight;
    };

    int build(std::vector<Item> items, int level) {
        long long spam = 0, ham = 0;
        for (const auto& it : items) (data.y[static_cast<std::size_t>(it.index)] == Label::Spam ? spam : ham) += it.weight;
        int id = static_cast<int>(nodes.size());
        TreeNode node;
        node.ham = static_cast<double>(ham);
        node.spam = static_cast<double>(spam);
        nodes.push_back(node);
        depth = std::max(depth, level);
        long long n = spam + ham;
        if (spam == 0 || ham == 0 || level >= params.max_depth || n < params.min_samples_split) return id;

        int feature = best_split(items, spam, ham);
        if (feature < 0) return id;

        std::vector<Item> absent, with;
        for (const auto& it : items)
            (present(data.x[static_cast<std::size_t>(it.index)], feature) ? with : absent).push_back(it);
        items.clear();
        items.shrink_to_fit();
        int a = build(std::move(absent), level + 1);
        int p = build(std::move(with), level + 1);
        nodes[static_cast<std::size_t>(id)].feature = feature;
        nodes[static_cast<std::size_t>(id)].absent = a;
        nodes[static_cast<std::size_t>(id)].present = p;
        return id;
    }

    // Maximizing sum over children of (s^2 + h^2) / n is minimizing weighted
    // Gini. Compared as exact fractions so ties resolve to the lowest index.
    int best_split(const std::vector<Item>& items, long long spam, long long ham) {
        std::vector<int> touched;
        for (const auto& it : items) {
            bool is_spam = data.y[static_cast<std::size_t>(it.index)] == Label::Spam;
            for (const auto& e : data.x[static_cast<std::size_t>(it.index)].entries) {
                auto f = static_cast<std::size_t>(e.first);
                if (!seen[f]) {
                    seen[f] = 1;
                    touched.push_back(e.first);
                }
                (is_spam ? ps[f] : ph[f]) += it.weight;
            }
        }
        std::sort(touched.begin(), touched.end());
        long long n = spam + ham;
        std::vector<int> candidates;
        for (int f : touched) {
            auto fi = static_cast<std::size_t>(f);
            if (ps[fi] + ph[fi] < n) candidates.push_back(f);
        }
        if (rng && static_cast<int>(candidates.size()) > bag) {
            for (int i = 0; i < bag; ++i) {
                auto j = static_cast<std::size_t>(i) + rng->below(candidates.size() - static_cast<std::size_t>(i));
                std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
            }
            candidates.resize(static_cast<std::size_t>(bag));
            std::sort(candidates.begin(), candidates.end());
        }
        int best = -1;
        __int128 best_num = 0, best_den = 1;
        for (int f : candidates) {
            auto fi = static_cast<std::size_t>(f);
            __int128 sr = ps[fi], hr = ph[fi], sl = spam - ps[fi], hl = ham - ph[fi];
            __int128 nr = sr + hr, nl = sl + hl;
            __int128 num = (sl * sl + hl * hl) * nr + (sr * sr + hr * hr) * nl;
            __int128 den = nl * nr;
            if (best < 0 || num * best_den > best_num * den) {
                best = f;
                best_num = num;
                best_den = den;
            }
        }
        for (int f : touched) {
            auto fi = static_cast<std::size_t>(f);
            ps[fi] = ph[fi] = 0;
            seen[fi] = 0;
        }
        return best;
    }
};

double tree_score(const std::vector<TreeNode>& tree, const FeatureVector& x) {
    std::size_t i = 0;
    while (!tree[i].leaf()) i = static_cast<std::size_t>(present(x, tree[i].feature) ? tree[i].present : tree[i].absent);
    return tree[i].spam / (tree[i].ham + tree[i].spam);
}

// ---- per-kind trainers ----

void train_nb(TextModel& m, const Dataset& d, const TrainParams& p) {
    std::size_t V = m.vocab_size;
    std::vector<double> count[2] = {std::vector<double>(V, 0.0), std::vector<double>(V, 0.0)};
    double total[2] = {0.0, 0.0};
    double docs[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        int c = d.y[i] == Label::Spam ? 1 : 0;
        docs[c] += 1.0;
        for (const auto& [f, v] : d.x[i].entries) {
            count[c][static_cast<std::size_t>(f)] += v;
            total[c] += v;
        }
    }
    double n = docs[0] + docs[1];
    m.log_prior = {std::log(docs[0] / n), std::log(docs[1] / n)};
    m.log_lik.assign(2, std::vector<double>(V));
    for (int c = 0; c < 2; ++c) {
        double denom = total[c] + p.nb_alpha * static_cast<double>(V);
        for (std::size_t j = 0; j < V; ++j) m.log_lik[static_cast<std::size_t>(c)][j] = std::log((count[c][j] + p.nb_alpha) / denom);
    }
}

void train_dt(TextModel& m, const Dataset& d, const TrainParams& p, TrainReport* report) {
    TreeBuilder b(d, m.vocab_size, p);
    std::vector<TreeBuilder::Item> items;
    for (std::size_t i = 0; i < d.x.size(); ++i) items.push_back({static_cast<int>(i), 1});
    b.build(std::move(items), 0);
    m.tree = std::move(b.nodes);
    if (report) {
        report->tree_nodes = static_cast<int>(m.tree.size());
        report->tree_depth = b.depth;
    }
}

void train_rf(TextModel& m, const Dataset& d, const TrainParams& p, TrainReport* report) {
    int bag = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(m.vocab_size))));
    std::size_t n = d.x.size();
    for (int t = 0; t < p.forest_trees; ++t) {
        std::uint64_t seed = mix_seed(p.seed, static_cast<std::uint64_t>(t));
        Rng rng(seed);
        std::vector<long long> mult(n, 0);
        for (std::size_t i = 0; i < n; ++i) ++mult[rng.below(n)];
        std::vector<TreeBuilder::Item> items;
        for (std::size_t i = 0; i < n; ++i)
            if (mult[i]) items.push_back({static_cast<int>(i), mult[i]});
        TreeBuilder b(d, m.vocab_size, p);
        b.rng = &rng;
        b.bag = bag;
        b.build(std::move(items), 0);
        if (report) {
            report->tree_nodes += static_cast<int>(b.nodes.size());
            report->tree_depth = std::max(report->tree_depth, b.depth);
        }
        m.forest.push_back(std::move(b.nodes));
        m.tree_seeds.push_back(seed);
    }
}

void train_lr(TextModel& m, const Dataset& d, const TrainParams& p, TrainReport* report) {
    m.weights.assign(m.vocab_size, 0.0);
    m.bias = 0.0;
    std::vector<double> gw;
    double gb = 0.0;
    for (int e = 0; e < p.lr_epochs; ++e) {
        double loss = lr_objective(m.weights, m.bias, d.x, d.y, p.lr_lambda, &gw, &gb);
        if (!std::isfinite(loss)) throw NonFinite("logistic regression loss is not finite");
        if (report) report->loss_history.push_back(loss);
        for (std::size_t j = 0; j < m.weights.size(); ++j) m.weights[j] -= p.lr_rate * gw[j];
        m.bias -= p.lr_rate * gb;
    }
    if (report) report->loss_history.push_back(lr_objective(m.weights, m.bias, d.x, d.y, p.lr_lambda));
}

// Pegasos with w = s * v so the shrink step is O(1); the bias is a constant
// feature stored after the vocabulary and regularized like the rest.
void train_svm(TextModel& m, const Dataset& d, const TrainParams& p) {
    std::size_t V = m.vocab_size;
    std::vector<double> v(V + 1, 0.0);
    double s = 1.0, vnorm2 = 0.0;
    double lambda = p.svm_lambda;
    double radius = 1.0 / std::sqrt(lambda);
    std::vector<std::size_t> order(d.x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(p.seed);
    std::uint64_t t = 0;
    for (int e = 0; e < p.svm_epochs; ++e) {
        rng.shuffle(order.begin(), order.end());
        for (auto i : order) {
            ++t;
            const auto& x = d.x[i];
            double yi = sign_of(d.y[i]);
            double eta = 1.0 / (lambda * static_cast<double>(t));
            double vx = dot(v, x) + v[V];
            double margin = yi * s * vx;
            s *= 1.0 - 1.0 / static_cast<double>(t);
            if (s == 0.0) {
                std::fill(v.begin(), v.end(), 0.0);
                s = 1.0;
                vnorm2 = 0.0;
                vx = 0.0;
            }
            if (margin < 1.0) {
                double a = eta * yi / s;
                double xnorm2 = 1.0;
                for (const auto& en : x.entries) xnorm2 += en.second * en.second;
                vnorm2 = std::max(0.0, vnorm2 + 2.0 * a * vx + a * a * xnorm2);
                for (const auto& [f, val] : x.entries) v[static_cast<std::size_t>(f)] += a * val;
                v[V] += a;
            }
            double norm = s * std::sqrt(vnorm2);
            if (norm > radius) s *= radius / norm;
        }
    }
    m.weights.resize(V + 1);
    for (std::size_t j = 0; j <= V; ++j) m.weights[j] = s * v[j];
    if (!std::all_of(m.weights.begin(), m.weights.end(), [](double w) { return std::isfinite(w); }))
        throw NonFinite("svm weights are not finite");
}

void train_boost(TextModel& m, const Dataset& d, const TrainParams& p, TrainReport* report) {
    std::size_t n = d.x.size(), V = m.vocab_size;
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<double> ps(V), ph(V);
    double bound = 1.0;
    for (int round = 0; round < p.boost_rounds; ++round) {
        std::fill(ps.begin(), ps.end(), 0.0);
        std::fill(ph.begin(), ph.end(), 0.0);
        double ws = 0.0, wh = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            bool spam = d.y[i] == Label::Spam;
            (spam ? ws : wh) += w[i];
            for (const auto& e : d.x[i].entries) (spam ? ps : ph)[static_cast<std::size_t>(e.first)] += w[i];
        }
        Stump best;
        double eps = 2.0;
        for (std::size_t f = 0; f < V; ++f) {
            double e_spam = (ws - ps[f]) + ph[f];  // present -> spam
            double e_ham = ps[f] + (wh - ph[f]);   // present -> ham
            if (e_spam < eps) {
                eps = e_spam;
                best = {static_cast<int>(f), true};
            }
            if (e_ham < eps) {
                eps = e_ham;
                best = {static_cast<int>(f), false};
            }
        }
        if (eps >= 0.5) break;
        bool perfect = eps <= 1e-10;
        eps = std::max(eps, 1e-10);
        double alpha = 0.5 * std::log((1.0 - eps) / eps);
        m.stumps.push_back(best);
        m.alphas.push_back(alpha);
        bound *= 2.0 * std::sqrt(eps * (1.0 - eps));
        if (report) {
            report->boost_errors.push_back(eps);
            report->boost_bound.push_back(bound);
        }
        if (perfect) break;
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double h = (present(d.x[i], best.feature) == best.present_means_spam) ? 1.0 : -1.0;
            w[i] *= std::exp(-alpha * sign_of(d.y[i]) * h);
            z += w[i];
        }
        for (auto& wi : w) wi /= z;
    }
}

double knn_score(const TextModel& m, const FeatureVector& x) {
    auto norm = [](const FeatureVector& v) {
        double s = 0.0;
        for (const auto& e : v.entries) s += e.second * e.second;
        return std::sqrt(s);
    };
    double nx = norm(x);
    std::vector<std::pair<double, std::size_t>> sims;
    sims.reserve(m.points.size());
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        const auto& p = m.points[i];
        double d = 0.0;
        auto a = x.entries.begin();
        auto b = p.entries.begin();
        while (a != x.entries.end() && b != p.entries.end()) {
            if (a->first < b->first) ++a;
            else if (b->first < a->first) ++b;
            else d += (a++)->second * (b++)->second;
        }
        double np = norm(p);
        sims.emplace_back(nx > 0 && np > 0 ? d / (nx * np) : 0.0, i);
    }
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(m.k), sims.size());
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(k), sims.end(),
                      [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    double spam = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        if (m.labels[sims[i].second] == Label::Spam) spam += 1.0;
    return spam / static_cast<double>(k);
}

void check_tree(const std::vector<TreeNode>& t) {
    if (t.empty()) throw FormatError("empty tree");
    auto n = static_cast<int>(t.size());
    for (const auto& node : t) {
        if (!(node.ham >= 0 && node.spam >= 0) || node.ham + node.spam <= 0) throw FormatError("bad tree node counts");
        if (node.leaf()) continue;
        if (node.absent <= 0 || node.present <= 0 || node.absent >= n || node.present >= n)
            throw FormatError("bad tree node link");
    }
}

void save_tree_sections(io::ModelWriter& w, const std::string& prefix, const std::vector<std::vector<TreeNode>>& trees) {
    std::vector<long long> sizes, links;
    std::vector<double> counts;
    for (const auto& t : trees) {
        sizes.push_back(static_cast<long long>(t.size()));
        for (const auto& n : t) {
            links.insert(links.end(), {n.feature, n.absent, n.present});
            counts.insert(counts.end(), {n.ham, n.spam});
        }
    }
    w.ints(prefix + "sizes", sizes);
    w.ints(prefix + "links", links);
    w.doubles(prefix + "counts", counts);
}

std::vector<std::vector<TreeNode>> load_tree_sections(const io::ModelReader& r, const std::string& prefix) {
    auto sizes = r.ints(prefix + "sizes");
    auto links = r.ints(prefix + "links");
    auto counts = r.doubles(prefix + "counts");
    std::size_t total = 0;
    for (auto s : sizes) {
        if (s <= 0) throw FormatError("bad tree size");
        total += static_cast<std::size_t>(s);
    }
    if (links.size() != 3 * total || counts.size() != 2 * total) throw FormatError("tree sections disagree in length");
    std::vector<std::vector<TreeNode>> trees;
    std::size_t k = 0;
    for (auto s : sizes) {
        std::vector<TreeNode> t;
        for (long long i = 0; i < s; ++i, ++k) {
            TreeNode n;
            n.feature = static_cast<int>(links[3 * k]);
            n.absent = static_cast<int>(links[3 * k + 1]);
            n.present = static_cast<int>(links[3 * k + 2]);
            n.ham = counts[2 * k];
            n.spam = counts[2 * k + 1];
            t.push_back(n);
        }
        check_tree(t);
        trees.push_back(std::move(t));
    }
    return trees;
}

}  // namespace

const char* model_kind_name(ModelKind k) {
    switch (k) {
    case ModelKind::NB: return "nb";
    case ModelKind::DT: return "dt";
    case ModelKind::LR: return "lr";
    case ModelKind::SVM: return "svm";
    case ModelKind::AdaBoost: return "adaboost";
    case ModelKind::KNN: return "knn";
    case ModelKind::RF: return "rf";
    }
    return "nb";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
    for (auto k : kAllKinds)
        if (s == model_kind_name(k)) return k;
    return std::nullopt;
}

FeatureMode default_feature_mode(ModelKind k) {
    switch (k) {
    case ModelKind::NB:
    case ModelKind::LR: return FeatureMode::Counts;
    case ModelKind::DT:
    case ModelKind::AdaBoost:
    case ModelKind::RF: return FeatureMode::Presence;
    case ModelKind::SVM:
    case ModelKind::KNN: return FeatureMode::TfIdf;
    }
    return FeatureMode::Counts;
}

Prediction make_prediction(double score) {
    if (score == 0.5) score = std::nextafter(0.5, 0.0);
    return {score >= 0.5 ? Label::Spam : Label::Ham, score};
}

double lr_objective(const std::vector<double>& w, double b, const std::vector<FeatureVector>& x,
                    const std::vector<Label>& y, double lambda, std::vector<double>* grad_w, double* grad_b) {
    if (x.size() != y.size()) throw LengthMismatch("features and labels differ in length");
    if (x.empty()) throw TooFewSamples("no samples");
    double n = static_cast<double>(x.size());
    if (grad_w) grad_w->assign(w.size(), 0.0);
    double gb = 0.0, loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double scale = length_scale(x[i]);
        double z = dot(w, x[i], scale) + b;
        double t = spam_target(y[i]);
        // log(1 + e^z) - t z, evaluated without overflow
        loss += (z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - t * z;
        double r = (sigmoid(z) - t) / n;
        gb += r;
        if (grad_w)
            for (const auto& [f, v] : x[i].entries) (*grad_w)[static_cast<std::size_t>(f)] += r * v * scale;
    }
    double reg = 0.0;
    for (double wj : w) reg += wj * wj;
    if (grad_w)
        for (std::size_t j = 0; j < w.size(); ++j) (*grad_w)[j] += lambda * w[j];
    if (grad_b) *grad_b = gb;
    return loss / n + 0.5 * lambda * reg;
}

TextModel train(ModelKind kind, const std::vector<FeatureVector>& x, const std::vector<Label>& y,
                std::size_t vocab_size, const TrainParams& params, TrainReport* report) {
    if (x.size() != y.size()) throw LengthMismatch("features and labels differ in length");
    if (x.size() < 2) throw TooFewSamples("training needs at least two samples");
    for (const auto& v : x) check_indices(v, vocab_size);
    bool has_spam = std::count(y.begin(), y.end(), Label::Spam) > 0;
    bool has_ham = std::count(y.begin(), y.end(), Label::Ham) > 0;
    if (kind != ModelKind::KNN && !(has_spam && has_ham)) throw DegenerateLabels("training labels contain a single class");

    Dataset d = canonical(x, y);
    TextModel m;
    m.kind = kind;
    m.mode = default_feature_mode(kind);
    m.vocab_size = vocab_size;
    if (report) {
        *report = TrainReport{};
        report->samples = x.size();
    }
    switch (kind) {
    case ModelKind::NB: train_nb(m, d, params); break;
    case ModelKind::DT: train_dt(m, d, params, report); break;
    case ModelKind::LR: train_lr(m, d, params, report); break;
    case ModelKind::SVM: train_svm(m, d, params); break;
    case ModelKind::AdaBoost: train_boost(m, d, params, report); break;
    case ModelKind::KNN:
        m.points = std::move(d.x);
        m.labels = std::move(d.y);
        m.k = std::max(1, params.knn_k);
        break;
    case ModelKind::RF: train_rf(m, d, params, report); break;
    }
    return m;
}

Prediction predict(const TextModel& m, const FeatureVector& x) {
    check_indices(x, m.vocab_size);
    double score = 0.0;
    switch (m.kind) {
    case ModelKind::NB: {
        double lp[2];
        for (int c = 0; c < 2; ++c) lp[c] = m.log_prior[static_cast<std::size_t>(c)] + dot(m.log_lik[static_cast<std::size_t>(c)], x);
        score = sigmoid(lp[1] - lp[0]);
        break;
    }
    case ModelKind::DT: score = tree_score(m.tree, x); break;
    case ModelKind::LR: score = sigmoid(dot(m.weights, x, length_scale(x)) + m.bias); break;
    case ModelKind::SVM: score = sigmoid(dot(m.weights, x) + m.weights.back()); break;
    case ModelKind::AdaBoost: {
        double f = 0.0;
        for (std::size_t t = 0; t < m.stumps.size(); ++t)
            f += m.alphas[t] * ((present(x, m.stumps[t].feature) == m.stumps[t].present_means_spam) ? 1.0 : -1.0);
        score = sigmoid(f);
        break;
    }
    case ModelKind::KNN: score = knn_score(m, x); break;
    case ModelKind::RF: {
        double votes = 0.0;
        for (const auto& t : m.forest)
            if (make_prediction(tree_score(t, x)).label == Label::Spam) votes += 1.0;
        score = votes / static_cast<double>(m.forest.size());
        break;
    }
    }
    return make_prediction(score);
}

void save_model(io::ModelWriter& w, const TextModel& m) {
    w.strings("kind", {model_kind_name(m.kind)});
    w.strings("mode", {feature_mode_name(m.mode)});
    w.integer("vocab_size", static_cast<long long>(m.vocab_size));
    switch (m.kind) {
    case ModelKind::NB:
        w.doubles("log_prior", m.log_prior);
        w.doubles("log_lik_ham", m.log_lik[0]);
        w.doubles("log_lik_spam", m.log_lik[1]);
        break;
    case ModelKind::DT: save_tree_sections(w, "tree_", {m.tree}); break;
    case ModelKind::LR:
    case ModelKind::SVM:
        w.doubles("weights", m.weights);
        w.scalar("bias", m.bias);
        break;
    case ModelKind::AdaBoost: {
        std::vector<long long> f, pol;
        for (const auto& s : m.stumps) {
            f.push_back(s.feature);
            pol.push_back(s.present_means_spam ? 1 : 0);
        }
        w.ints("stump_features", f);
        w.ints("stump_polarity", pol);
        w.doubles("alphas", m.alphas);
        break;
    }
    case ModelKind::KNN: {
        std::vector<long long> labels, sizes, idx;
        std::vector<double> vals;
        for (std::size_t i = 0; i < m.points.size(); ++i) {
            labels.push_back(m.labels[i] == Label::Spam ? 1 : 0);
            sizes.push_back(static_cast<long long>(m.points[i].entries.size()));
            for (const auto& [f, v] : m.points[i].entries) {
                idx.push_back(f);
                vals.push_back(v);
            }
        }
        w.integer("k", m.k);
        w.ints("labels", labels);
        w.ints("point_sizes", sizes);
        w.ints("point_indices", idx);
        w.doubles("point_values", vals);
        break;
    }
    case ModelKind::RF:
        save_tree_sections(w, "forest_", m.forest);
        w.u64s("tree_seeds", m.tree_seeds);
        break;
    }
}

TextModel load_model(const io::ModelReader& r) {
    TextModel m;
    auto kind = r.strings("kind");
    auto mode = r.strings("mode");
    if (kind.size() != 1 || !parse_model_kind(kind[0])) throw FormatError("unknown model kind");
    if (mode.size() != 1 || !parse_feature_mode(mode[0])) throw FormatError("unknown feature mode");
    m.kind = *parse_model_kind(kind[0]);
    m.mode = *parse_feature_mode(mode[0]);
    long long vs = r.integer("vocab_size");
    if (vs < 0) throw FormatError("negative vocab size");
    m.vocab_size = static_cast<std::size_t>(vs);
    switch (m.kind) {
    case ModelKind::NB:
        m.log_prior = r.doubles("log_prior");
        m.log_lik = {r.doubles("log_lik_ham"), r.doubles("log_lik_spam")};
        if (m.log_prior.size() != 2 || m.log_lik[0].size() != m.vocab_size || m.log_lik[1].size() != m.vocab_size)
            throw FormatError("naive bayes sections have the wrong size");
        break;
    case ModelKind::DT: {
        auto trees = load_tree_sections(r, "tree_");
        if (trees.size() != 1) throw FormatError("decision tree model must hold one tree");
        m.tree = std::move(trees[0]);
        break;
    }
    case ModelKind::LR:
    case ModelKind::SVM:
        m.weights = r.doubles("weights");
        m.bias = r.scalar("bias");
        if (m.weights.size() != m.vocab_size + (m.kind == ModelKind::SVM ? 1 : 0))
            throw FormatError("weight vector has the wrong size");
        break;
    case ModelKind::AdaBoost: {
        auto f = r.ints("stump_features");
        auto pol = r.ints("stump_polarity");
        m.alphas = r.doubles("alphas");
        if (f.size() != pol.size() || f.size() != m.alphas.size()) throw FormatError("stump sections disagree in length");
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0 || static_cast<std::size_t>(f[i]) >= std::max<std::size_t>(m.vocab_size, 1))
                throw FormatError("stump feature out of range");
            m.stumps.push_back({static_cast<int>(f[i]), pol[i] != 0});
        }
        break;
    }
    case ModelKind::KNN: {
        m.k = static_cast<int>(r.integer("k"));
        auto labels = r.ints("labels");
        auto sizes = r.ints("point_sizes");
        auto idx = r.ints("point_indices");
        auto vals = r.doubles("point_values");
        if (m.k < 1 || labels.size() != sizes.size() || idx.size() != vals.size() || labels.empty())
            throw FormatError("bad nearest-neighbour sections");
        std::size_t pos = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            FeatureVector v;
            v.mode = m.mode;
            for (long long j = 0; j < sizes[i]; ++j, ++pos) {
                if (pos >= idx.size()) throw FormatError("nearest-neighbour points overrun their values");
                v.entries.emplace_back(static_cast<int>(idx[pos]), vals[pos]);
            }
            m.points.push_back(std::move(v));
            m.labels.push_back(labels[i] ? Label::Spam : Label::Ham);
        }
        if (pos != idx.size()) throw FormatError("nearest-neighbour values left over");
        break;
    }
    case ModelKind::RF:
        m.forest = load_tree_sections(r, "forest_");
        m.tree_seeds = r.u64s("tree_seeds");
        if (m.tree_seeds.size() != m.forest.size()) throw FormatError("forest seeds disagree with trees");
        break;
    }
    return m;
}

Prediction TextPipeline::classify(std::string_view text) const {
    return predict(model, featurize(tokenize(text, tokens), vocab, model.mode));
}

TextPipeline fit_pipeline(ModelKind kind, TokenMode tokens, const std::vector<std::string>& texts,
                          const std::vector<Label>& y, const TrainParams& params, int min_df, TrainReport* report) {
    if (texts.size() != y.size()) throw LengthMismatch("texts and labels differ in length");
    std::vector<TokenSequence> docs;
    for (const auto& t : texts) docs.push_back(tokenize(t, tokens));
    TextPipeline p;
    p.tokens = tokens;
    p.vocab = build_vocab(docs, min_df);
    FeatureMode mode = default_feature_mode(kind);
    std::vector<FeatureVector> x;
    for (const auto& d : docs) x.push_back(featurize(d, p.vocab, mode));
    p.model = train(kind, x, y, p.vocab.size(), params, report);
    return p;
}

void save_vocab(io::ModelWriter& w, const Vocab& v) {
    w.strings("vocab", v.tokens());
    std::vector<long long> df(v.df().begin(), v.df().end());
    w.ints("vocab_df", df);
    w.integer("vocab_documents", v.documents());
}

Vocab load_vocab(const io::ModelReader& r) {
    auto tokens = r.strings("vocab");
    auto df64 = r.ints("vocab_df");
    std::vector<int> df(df64.begin(), df64.end());
    return Vocab(std::move(tokens), std::move(df), static_cast<int>(r.integer("vocab_documents")));
}

void save_pipeline(std::ostream& out, const TextPipeline& p) {
    io::ModelWriter w(out, model_kind_name(p.model.kind));
    w.strings("tokens", {p.tokens == TokenMode::Perceived ? "perceived" : "raw"});
    save_vocab(w, p.vocab);
    save_model(w, p.model);
}

TextPipeline load_pipeline(std::istream& in) {
    io::ModelReader r(in);
    TextPipeline p;
    auto t = r.strings("tokens");
    if (t.size() != 1 || (t[0] != "perceived" && t[0] != "raw")) throw FormatError("unknown token mode");
    p.tokens = t[0] == "perceived" ? TokenMode::Perceived : TokenMode::RawSource;
    p.vocab = load_vocab(r);
    p.model = load_model(r);
    if (r.kind() != model_kind_name(p.model.kind)) throw FormatError("model header disagrees with its kind section");
    if (p.model.vocab_size != p.vocab.size()) throw VocabMismatch("model and vocabulary sizes differ");
    return p;
}

}  // namespace vbsf::text
