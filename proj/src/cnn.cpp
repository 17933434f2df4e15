#include "vbsf/cnn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

namespace vbsf::cnn {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using ConstMapMat = Eigen::Map<const RowMat>;
using MapVec = Eigen::Map<Eigen::VectorXd>;
using ConstMapVec = Eigen::Map<const Eigen::VectorXd>;

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double bce_from_logit(double z, double y) {
    double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    return softplus - y * z;
}

bool has_params(LayerKind k) { return k == LayerKind::Conv3x3 || k == LayerKind::Dense; }

void im2col(const double* in, const Shape& s, RowMat& col) {
    const int H = s.height, W = s.width;
    col.setZero(s.channels * 9, H * W);
    for (int c = 0; c < s.channels; ++c)
        for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
                double* row = col.row(c * 9 + ky * 3 + kx).data();
                for (int y = 0; y < H; ++y) {
                    int sy = y + ky - 1;
                    if (sy < 0 || sy >= H) continue;
                    const double* src = in + (static_cast<std::ptrdiff_t>(c) * H + sy) * W;
                    for (int x = 0; x < W; ++x) {
                        int sx = x + kx - 1;
                        if (sx >= 0 && sx < W) row[y * W + x] = src[sx];
                    }
                }
            }
}

void col2im(const RowMat& col, const Shape& s, double* out) {
    const int H = s.height, W = s.width;
    std::fill(out, out + s.size(), 0.0);
    for (int c = 0; c < s.channels; ++c)
        for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
                const double* row = col.row(c * 9 + ky * 3 + kx).data();
                for (int y = 0; y < H; ++y) {
                    int sy = y + ky - 1;
                    if (sy < 0 || sy >= H) continue;
                    double* dst = out + (static_cast<std::ptrdiff_t>(c) * H + sy) * W;
                    for (int x = 0; x < W; ++x) {
                        int sx = x + kx - 1;
                        if (sx >= 0 && sx < W) dst[sx] += row[y * W + x];
                    }
                }
            }
}

// Everything the backward pass needs from one forward pass.
struct Trace {
    std::vector<Shape> shapes;               // shapes[0] is the input, shapes[i+1] the output of layer i
    std::vector<std::vector<double>> acts;   // same indexing as shapes
    std::vector<RowMat> cols;                // conv layers only
    std::vector<std::vector<int>> argmax;    // pool layers only
    double logit = 0.0;
};

void check_input(const CnnModel& m, const ImageTensor& x) {
    if (x.height != m.arch.input_height || x.width != m.arch.input_width ||
        x.data.size() != static_cast<std::size_t>(x.height) * static_cast<std::size_t>(x.width))
        throw ShapeMismatch("image is " + std::to_string(x.height) + "x" + std::to_string(x.width) + ", model expects " +
                            std::to_string(m.arch.input_height) + "x" + std::to_string(m.arch.input_width));
}

void forward(const CnnModel& m, const ImageTensor& x, Trace& t) {
    check_input(m, x);
    const auto& layers = m.arch.layers;
    t.shapes.assign(1, Shape{1, x.height, x.width});
    auto shapes = layer_shapes(m.arch);
    t.shapes.insert(t.shapes.end(), shapes.begin(), shapes.end());
    t.acts.resize(layers.size() + 1);
    t.cols.resize(layers.size());
    t.argmax.resize(layers.size());
    t.acts[0] = x.data;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const Shape& in = t.shapes[i];
        const Shape& out = t.shapes[i + 1];
        const auto& a = t.acts[i];
        auto& b = t.acts[i + 1];
        b.assign(out.size(), 0.0);
        switch (layers[i].kind) {
        case LayerKind::Conv3x3: {
            im2col(a.data(), in, t.cols[i]);
            ConstMapMat w(m.weights[i].data(), out.channels, in.channels * 9);
            MapMat o(b.data(), out.channels, out.height * out.width);
            o.noalias() = w * t.cols[i];
            ConstMapVec bias(m.biases[i].data(), out.channels);
            o.colwise() += bias;
            break;
        }
        case LayerKind::ReLU:
            for (std::size_t k = 0; k < a.size(); ++k) b[k] = a[k] > 0 ? a[k] : 0.0;
            break;
        case LayerKind::MaxPool2: {
            auto& am = t.argmax[i];
            am.assign(out.size(), 0);
            for (int c = 0; c < out.channels; ++c)
                for (int y = 0; y < out.height; ++y)
                    for (int xx = 0; xx < out.width; ++xx) {
                        int best = (c * in.height + 2 * y) * in.width + 2 * xx;
                        for (int dy = 0; dy < 2; ++dy)
                            for (int dx = 0; dx < 2; ++dx) {
                                int k = (c * in.height + 2 * y + dy) * in.width + 2 * xx + dx;
                                if (a[static_cast<std::size_t>(k)] > a[static_cast<std::size_t>(best)]) best = k;
                            }
                        auto o = static_cast<std::size_t>((c * out.height + y) * out.width + xx);
                        am[o] = best;
                        b[o] = a[static_cast<std::size_t>(best)];
                    }
            break;
        }
        case LayerKind::Flatten: b = a; break;
        case LayerKind::Dense: {
            ConstMapMat w(m.weights[i].data(), out.channels, static_cast<Eigen::Index>(in.size()));
            MapVec o(b.data(), out.channels);
            o.noalias() = w * ConstMapVec(a.data(), static_cast<Eigen::Index>(a.size()));
            o += ConstMapVec(m.biases[i].data(), out.channels);
            break;
        }
        case LayerKind::Sigmoid:
            t.logit = a[0];
            b[0] = sigmoid(a[0]);
            break;
        }
    }
}

std::vector<std::vector<double>> zeros_like(const std::vector<std::vector<double>>& v) {
    std::vector<std::vector<double>> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i].assign(v[i].size(), 0.0);
    return out;
}

// Accumulates the gradient of the loss into g (which must be shaped like the model).
double backward(const CnnModel& m, const ImageTensor& x, Label label, Trace& t, Gradients& g) {
    forward(m, x, t);
    const auto& layers = m.arch.layers;
    double y = label == Label::Spam ? 1.0 : 0.0;
    double loss = bce_from_logit(t.logit, y);
    g.probability = t.acts.back()[0];
    std::vector<double> delta(1, g.probability - y), next;
    for (std::size_t ii = layers.size(); ii-- > 0;) {
        const Shape& in = t.shapes[ii];
        const Shape& out = t.shapes[ii + 1];
        const auto& a = t.acts[ii];
        next.assign(in.size(), 0.0);
        switch (layers[ii].kind) {
        case LayerKind::Sigmoid: next = delta; break;  // folded into the loss derivative
        case LayerKind::Dense: {
            auto n = static_cast<Eigen::Index>(in.size());
            ConstMapMat w(m.weights[ii].data(), out.channels, n);
            ConstMapVec d(delta.data(), out.channels);
            MapMat gw(g.weights[ii].data(), out.channels, n);
            gw.noalias() += d * ConstMapVec(a.data(), n).transpose();
            MapVec(g.biases[ii].data(), out.channels) += d;
            MapVec(next.data(), n).noalias() = w.transpose() * d;
            break;
        }
        case LayerKind::Flatten: next = delta; break;
        case LayerKind::ReLU:
            for (std::size_t k = 0; k < a.size(); ++k) next[k] = a[k] > 0 ? delta[k] : 0.0;
            break;
        case LayerKind::MaxPool2:
            for (std::size_t k = 0; k < delta.size(); ++k) next[static_cast<std::size_t>(t.argmax[ii][k])] += delta[k];
            break;
        case LayerKind::Conv3x3: {
            ConstMapMat d(delta.data(), out.channels, out.height * out.width);
            ConstMapMat w(m.weights[ii].data(), out.channels, in.channels * 9);
            MapMat gw(g.weights[ii].data(), out.channels, in.channels * 9);
            gw.noalias() += d * t.cols[ii].transpose();
            MapVec(g.biases[ii].data(), out.channels) += d.rowwise().sum();
            if (ii > 0) {
                RowMat dcol = w.transpose() * d;
                col2im(dcol, in, next.data());
            }
            break;
        }
        }
        delta.swap(next);
    }
    return loss;
}

std::uint8_t dominant_luminance(const std::vector<std::uint8_t>& lum) {
    std::array<std::size_t, 256> hist{};
    for (auto v : lum) ++hist[v];
    return static_cast<std::uint8_t>(std::max_element(hist.begin(), hist.end()) - hist.begin());
}

// Weights of source cells [0, n) for each of `size` output cells spanning
// [0, n * ... ) equally: output i covers [i*n/size, (i+1)*n/size).
std::vector<std::vector<std::pair<int, double>>> area_weights(int n, int size) {
    std::vector<std::vector<std::pair<int, double>>> w(static_cast<std::size_t>(size));
    double step = static_cast<double>(n) / size;
    for (int i = 0; i < size; ++i) {
        double lo = i * step, hi = (i + 1) * step;
        for (int s = static_cast<int>(std::floor(lo)); s < n && s < hi; ++s) {
            double overlap = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
            if (overlap > 0) w[static_cast<std::size_t>(i)].emplace_back(s, overlap / step);
        }
    }
    return w;
}

void train_loop(const std::vector<LabeledImage>& train, const std::vector<LabeledImage>& val, const TrainHyper& hyper,
                CnnModel& model, const std::function<void(int, const EpochStats&)>& on_epoch) {
    bool spam = false, ham = false;
    for (const auto& s : train) (s.label == Label::Spam ? spam : ham) = true;
    if (!spam || !ham) throw DegenerateLabels("image training set needs both classes");
    if (hyper.batch < 1 || hyper.epochs < 0) throw FormatError("batch must be positive and epochs non-negative");
    Rng rng(mix_seed(hyper.seed, 1));
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Trace t;
    Gradients g;
    for (int e = 0; e < hyper.epochs; ++e) {
        rng.shuffle(order.begin(), order.end());
        double loss_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(hyper.batch)) {
            std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(hyper.batch));
            g.weights = zeros_like(model.weights);
            g.biases = zeros_like(model.biases);
            double batch_loss = 0.0;
            for (std::size_t k = start; k < end; ++k) {
                const auto& s = train[order[k]];
                double l = hyper.augment ? backward(model, augment(s.image, rng), s.label, t, g)
                                         : backward(model, s.image, s.label, t, g);
                batch_loss += l;
                correct += (g.probability >= 0.5) == (s.label == Label::Spam);
            }
            if (!std::isfinite(batch_loss))
                throw NonFinite("training loss diverged at learning rate " + io::format_double(hyper.lr));
            loss_sum += batch_loss;
            double step = hyper.lr / static_cast<double>(end - start);
            for (std::size_t i = 0; i < model.weights.size(); ++i) {
                for (std::size_t k = 0; k < model.weights[i].size(); ++k) model.weights[i][k] -= step * g.weights[i][k];
                for (std::size_t k = 0; k < model.biases[i].size(); ++k) model.biases[i][k] -= step * g.biases[i][k];
                for (double w : model.weights[i])
                    if (!std::isfinite(w)) throw NonFinite("weights diverged at learning rate " + io::format_double(hyper.lr));
            }
        }
        EpochStats st;
        st.loss = loss_sum / static_cast<double>(train.size());
        st.train_accuracy = static_cast<double>(correct) / static_cast<double>(train.size());
        st.val_accuracy = val.empty() ? 0.0 : accuracy(model, val);
        on_epoch(e + 1, st);
    }
}

}  // namespace

CnnArch CnnArch::standard() {
    CnnArch a;
    a.layers = {{LayerKind::Conv3x3, 8},  {LayerKind::ReLU, 0},    {LayerKind::MaxPool2, 0}, {LayerKind::Conv3x3, 16},
                {LayerKind::ReLU, 0},     {LayerKind::MaxPool2, 0}, {LayerKind::Conv3x3, 32}, {LayerKind::ReLU, 0},
                {LayerKind::MaxPool2, 0}, {LayerKind::Flatten, 0},  {LayerKind::Dense, 64},  {LayerKind::ReLU, 0},
                {LayerKind::Dense, 1},    {LayerKind::Sigmoid, 0}};
    return a;
}

std::vector<Shape> layer_shapes(const CnnArch& arch) {
    if (arch.input_height < 1 || arch.input_width < 1) throw ShapeMismatch("input must be at least 1x1");
    if (arch.layers.empty() || arch.layers.back().kind != LayerKind::Sigmoid)
        throw ShapeMismatch("the last layer must be a sigmoid");
    std::vector<Shape> out;
    Shape s{1, arch.input_height, arch.input_width};
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
        const auto& l = arch.layers[i];
        switch (l.kind) {
        case LayerKind::Conv3x3:
            if (l.units < 1) throw ShapeMismatch("conv layer needs at least one channel");
            s.channels = l.units;
            break;
        case LayerKind::ReLU: break;
        case LayerKind::MaxPool2:
            if (s.height < 2 || s.width < 2) throw ShapeMismatch("max pool needs at least 2x2 input");
            s.height /= 2;
            s.width /= 2;
            break;
        case LayerKind::Flatten: s = Shape{1, 1, static_cast<int>(s.size())}; break;
        case LayerKind::Dense:
            if (l.units < 1) throw ShapeMismatch("dense layer needs at least one output");
            s = Shape{l.units, 1, 1};
            break;
        case LayerKind::Sigmoid:
            if (i + 1 != arch.layers.size() || s.size() != 1) throw ShapeMismatch("sigmoid must be last and see one value");
            break;
        }
        out.push_back(s);
    }
    return out;
}

CnnModel zero_model(const CnnArch& arch) {
    auto shapes = layer_shapes(arch);
    CnnModel m;
    m.arch = arch;
    Shape in{1, arch.input_height, arch.input_width};
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
        std::size_t nw = 0, nb = 0;
        if (arch.layers[i].kind == LayerKind::Conv3x3) {
            nw = static_cast<std::size_t>(shapes[i].channels) * static_cast<std::size_t>(in.channels) * 9;
            nb = static_cast<std::size_t>(shapes[i].channels);
        } else if (arch.layers[i].kind == LayerKind::Dense) {
            nw = static_cast<std::size_t>(shapes[i].channels) * in.size();
            nb = static_cast<std::size_t>(shapes[i].channels);
        }
        m.weights.emplace_back(nw, 0.0);
        m.biases.emplace_back(nb, 0.0);
        in = shapes[i];
    }
    return m;
}

CnnModel init_model(const CnnArch& arch, std::uint64_t seed) {
    CnnModel m = zero_model(arch);
    m.seed = seed;
    Rng rng(seed);
    Shape in{1, arch.input_height, arch.input_width};
    auto shapes = layer_shapes(arch);
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
        if (has_params(arch.layers[i].kind)) {
            double fan_in = arch.layers[i].kind == LayerKind::Conv3x3 ? in.channels * 9.0 : static_cast<double>(in.size());
            double limit = std::sqrt(6.0 / fan_in);
            for (auto& w : m.weights[i]) w = rng.uniform(-limit, limit);
        }
        in = shapes[i];
    }
    return m;
}

double cnn_forward(const CnnModel& model, const ImageTensor& x) {
    Trace t;
    forward(model, x, t);
    return t.acts.back()[0];
}

double cnn_loss(const CnnModel& model, const ImageTensor& x, Label label) {
    Trace t;
    forward(model, x, t);
    return bce_from_logit(t.logit, label == Label::Spam ? 1.0 : 0.0);
}

Gradients cnn_backward(const CnnModel& model, const ImageTensor& x, Label label) {
    Gradients g;
    g.weights = zeros_like(model.weights);
    g.biases = zeros_like(model.biases);
    Trace t;
    g.loss = backward(model, x, label, t, g);
    return g;
}

ImageTensor to_image_tensor(const render::Raster& img, int size) {
    if (img.width() < 1 || img.height() < 1) throw ShapeMismatch("cannot convert an empty raster");
    if (size < 1) throw ShapeMismatch("target size must be positive");
    auto lum = render::luminance_plane(img);
    double bg = dominant_luminance(lum) / 255.0;
    int side = std::max(img.width(), img.height());
    auto wy = area_weights(side, size);
    auto wx = area_weights(side, size);
    // rows first: size x side intermediate, with padding rows at the background value
    std::vector<double> rows(static_cast<std::size_t>(size) * static_cast<std::size_t>(side), 0.0);
    for (int oy = 0; oy < size; ++oy) {
        double* dst = rows.data() + static_cast<std::ptrdiff_t>(oy) * side;
        for (const auto& [sy, w] : wy[static_cast<std::size_t>(oy)]) {
            for (int sx = 0; sx < side; ++sx) {
                double v = (sy < img.height() && sx < img.width())
                               ? lum[static_cast<std::size_t>(sy) * static_cast<std::size_t>(img.width()) + static_cast<std::size_t>(sx)] / 255.0
                               : bg;
                dst[sx] += w * v;
            }
        }
    }
    ImageTensor out{size, size, std::vector<double>(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0)};
    for (int oy = 0; oy < size; ++oy)
        for (int ox = 0; ox < size; ++ox) {
            double s = 0.0;
            for (const auto& [sx, w] : wx[static_cast<std::size_t>(ox)]) s += w * rows[static_cast<std::size_t>(oy) * static_cast<std::size_t>(side) + static_cast<std::size_t>(sx)];
            out.at(oy, ox) = std::clamp(s, 0.0, 1.0);
        }
    return out;
}

ImageTensor shift_scale(const ImageTensor& x, int dx, int dy, double scale, double background) {
    ImageTensor out{x.height, x.width, std::vector<double>(x.data.size(), background)};
    for (int y = 0; y < x.height; ++y)
        for (int xx = 0; xx < x.width; ++xx) {
            int sy = y - dy, sx = xx - dx;
            if (sy >= 0 && sy < x.height && sx >= 0 && sx < x.width) out.at(y, xx) = x.at(sy, sx);
        }
    for (auto& v : out.data) v = std::clamp(v * scale, 0.0, 1.0);
    return out;
}

ImageTensor augment(const ImageTensor& x, Rng& rng) {
    int dx = rng.range(-4, 4);
    int dy = rng.range(-4, 4);
    double scale = rng.uniform(0.9, 1.1);
    return shift_scale(x, dx, dy, scale);
}

double accuracy(const CnnModel& model, const std::vector<LabeledImage>& set) {
    if (set.empty()) return 0.0;
    std::size_t ok = 0;
    Trace t;
    for (const auto& s : set) {
        forward(model, s.image, t);
        ok += (t.acts.back()[0] >= 0.5) == (s.label == Label::Spam);
    }
    return static_cast<double>(ok) / static_cast<double>(set.size());
}

std::pair<CnnModel, TrainHistory> cnn_train(const std::vector<LabeledImage>& train, const std::vector<LabeledImage>& val,
                                            const TrainHyper& hyper, const CnnArch& arch) {
    CnnModel model = init_model(arch, hyper.seed);
    TrainHistory history;
    train_loop(train, val, hyper, model, [&](int, const EpochStats& s) { history.push_back(s); });
    return {std::move(model), std::move(history)};
}

HyperGrid lr_epoch_grid(const std::vector<LabeledImage>& train, const std::vector<LabeledImage>& val,
                        const std::vector<double>& lrs, const std::vector<int>& epoch_counts, std::uint64_t seed,
                        bool augment_images, const CnnArch& arch) {
    if (lrs.empty() || epoch_counts.empty()) throw FormatError("grid needs at least one learning rate and one epoch count");
    for (int e : epoch_counts)
        if (e < 0) throw FormatError("epoch counts must be non-negative");
    HyperGrid grid{lrs, epoch_counts, {}};
    int max_epochs = *std::max_element(epoch_counts.begin(), epoch_counts.end());
    for (double lr : lrs) {
        std::vector<double> at_epoch(static_cast<std::size_t>(max_epochs) + 1, 0.0);
        int reached = 0;
        CnnModel model = init_model(arch, seed);
        at_epoch[0] = val.empty() ? 0.0 : accuracy(model, val);
        TrainHyper h;
        h.lr = lr;
        h.epochs = max_epochs;
        h.seed = seed;
        h.augment = augment_images;
        try {
            train_loop(train, val, h, model, [&](int e, const EpochStats& s) {
                at_epoch[static_cast<std::size_t>(e)] = s.val_accuracy;
                reached = e;
            });
        } catch (const NonFinite&) {
        }
        for (int e : epoch_counts) {
            GridCell c{lr, e, 0.0, e > reached};
            if (!c.diverged) c.val_accuracy = at_epoch[static_cast<std::size_t>(e)];
            grid.cells.push_back(c);
        }
    }
    return grid;
}

std::string grid_csv(const HyperGrid& grid) {
    std::string out = "lr,epochs,val_accuracy,diverged\n";
    char buf[64];
    for (const auto& c : grid.cells) {
        std::snprintf(buf, sizeof buf, ",%d,%.4f,%d\n", c.epochs, c.val_accuracy, c.diverged ? 1 : 0);
        out += io::format_double(c.lr) + buf;
    }
    return out;
}

void save_cnn(io::ModelWriter& w, const CnnModel& m) {
    std::vector<long long> layers;
    for (const auto& l : m.arch.layers) {
        layers.push_back(static_cast<long long>(l.kind));
        layers.push_back(l.units);
    }
    w.ints("input", {m.arch.input_height, m.arch.input_width});
    w.ints("layers", layers);
    w.u64s("seed", {m.seed});
    auto shapes = layer_shapes(m.arch);
    Shape in{1, m.arch.input_height, m.arch.input_width};
    for (std::size_t i = 0; i < m.arch.layers.size(); ++i) {
        if (has_params(m.arch.layers[i].kind)) {
            std::string id = std::to_string(i);
            long long fan = m.arch.layers[i].kind == LayerKind::Conv3x3 ? in.channels * 9LL : static_cast<long long>(in.size());
            w.ints("w" + id + "_shape", {shapes[i].channels, fan});
            w.doubles("w" + id, m.weights[i]);
            w.doubles("b" + id, m.biases[i]);
        }
        in = shapes[i];
    }
}

CnnModel load_cnn(const io::ModelReader& r) {
    auto input = r.ints("input");
    auto layers = r.ints("layers");
    auto seed = r.u64s("seed");
    if (input.size() != 2 || layers.size() % 2 != 0 || seed.size() != 1) throw FormatError("bad network header sections");
    CnnArch arch;
    arch.input_height = static_cast<int>(input[0]);
    arch.input_width = static_cast<int>(input[1]);
    for (std::size_t i = 0; i < layers.size(); i += 2) {
        if (layers[i] < 0 || layers[i] > static_cast<long long>(LayerKind::Sigmoid)) throw FormatError("unknown layer kind");
        arch.layers.push_back({static_cast<LayerKind>(layers[i]), static_cast<int>(layers[i + 1])});
    }
    CnnModel m = zero_model(arch);
    m.seed = seed[0];
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
        if (!has_params(arch.layers[i].kind)) continue;
        std::string id = std::to_string(i);
        auto shape = r.ints("w" + id + "_shape");
        auto w = r.doubles("w" + id);
        auto b = r.doubles("b" + id);
        if (shape.size() != 2 || static_cast<std::size_t>(shape[0] * shape[1]) != m.weights[i].size() ||
            w.size() != m.weights[i].size() || b.size() != m.biases[i].size())
            throw ShapeMismatch("stored tensor shape disagrees with the architecture at layer " + id);
        m.weights[i] = std::move(w);
        m.biases[i] = std::move(b);
    }
    return m;
}

void save_cnn(std::ostream& out, const CnnModel& m) {
    io::ModelWriter w(out, "cnn");
    save_cnn(w, m);
}

CnnModel load_cnn(std::istream& in) {
    io::ModelReader r(in);
    if (r.kind() != "cnn") throw FormatError("not a network model file");
    return load_cnn(r);
}

}  // namespace vbsf::cnn
