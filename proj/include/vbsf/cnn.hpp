#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "vbsf/common.hpp"
#include "vbsf/model_io.hpp"
#include "vbsf/render.hpp"
#include "vbsf/rng.hpp"

namespace vbsf::cnn {

inline constexpr int kImageSize = 64;

/// Single-channel image, row-major, values in [0,1].
struct ImageTensor {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }

    friend bool operator==(const ImageTensor&, const ImageTensor&) = default;
};

/// Luminance, padded to a square with the page's dominant luminance, then
/// area-averaged down to size x size.
ImageTensor to_image_tensor(const render::Raster& img, int size = kImageSize);

enum class LayerKind : unsigned char { Conv3x3, ReLU, MaxPool2, Flatten, Dense, Sigmoid };

struct LayerSpec {
    LayerKind kind = LayerKind::ReLU;
    int units = 0;  // output channels for Conv3x3, outputs for Dense

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct CnnArch {
    int input_height = kImageSize;
    int input_width = kImageSize;
    std::vector<LayerSpec> layers;

    /// Three conv/ReLU/pool blocks (8, 16, 32 channels), Dense(64), ReLU,
    /// Dense(1), Sigmoid.
    static CnnArch standard();

    friend bool operator==(const CnnArch&, const CnnArch&) = default;
};

struct Shape {
    int channels = 1;
    int height = 0;
    int width = 0;

    std::size_t size() const { return static_cast<std::size_t>(channels) * static_cast<std::size_t>(height) * static_cast<std::size_t>(width); }
    friend bool operator==(const Shape&, const Shape&) = default;
};

/// Output shape after each layer. Throws ShapeMismatch unless the arch is a
/// chain of valid layers ending in Dense(1) followed by Sigmoid.
std::vector<Shape> layer_shapes(const CnnArch& arch);

struct CnnModel {
    CnnArch arch;
    std::vector<std::vector<double>> weights;  // per layer; empty for layers without parameters
    std::vector<std::vector<double>> biases;
    std::uint64_t seed = 0;
};

/// He-uniform weights, zero biases.
CnnModel init_model(const CnnArch& arch, std::uint64_t seed);
/// Same shapes as init_model, every parameter zero.
CnnModel zero_model(const CnnArch& arch);

/// Probability of Spam. Throws ShapeMismatch when x does not fit the arch.
double cnn_forward(const CnnModel& model, const ImageTensor& x);

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    double loss = 0.0;       // binary cross-entropy
    double probability = 0.0;
};

Gradients cnn_backward(const CnnModel& model, const ImageTensor& x, Label label);

/// Binary cross-entropy of a single sample, computed from the logit so it
/// stays finite for saturated outputs.
double cnn_loss(const CnnModel& model, const ImageTensor& x, Label label);

/// Translation by (dx, dy) with vacated pixels set to `background`, then
/// brightness scaling, clamped to [0,1].
ImageTensor shift_scale(const ImageTensor& x, int dx, int dy, double scale, double background = 1.0);

/// Random shift in [-4, 4] on both axes and brightness scale in [0.9, 1.1].
ImageTensor augment(const ImageTensor& x, Rng& rng);

struct LabeledImage {
    ImageTensor image;
    Label label = Label::Ham;
};

struct TrainHyper {
    double lr = 0.01;
    int epochs = 10;
    int batch = 32;
    std::uint64_t seed = 42;
    bool augment = false;
};

struct EpochStats {
    double loss = 0.0;
    double train_accuracy = 0.0;
    double val_accuracy = 0.0;
};

using TrainHistory = std::vector<EpochStats>;

/// Mini-batch SGD. Throws DegenerateLabels unless the training set holds
/// both classes and NonFinite when the loss blows up.
std::pair<CnnModel, TrainHistory> cnn_train(const std::vector<LabeledImage>& train, const std::vector<LabeledImage>& val,
                                            const TrainHyper& hyper, const CnnArch& arch = CnnArch::standard());

double accuracy(const CnnModel& model, const std::vector<LabeledImage>& set);

struct GridCell {
    double lr = 0.0;
    int epochs = 0;
    double val_accuracy = 0.0;
    bool diverged = false;
};

struct HyperGrid {
    std::vector<double> lrs;
    std::vector<int> epoch_counts;
    std::vector<GridCell> cells;  // row-major: lrs outer, epoch counts inner

    const GridCell& cell(std::size_t lr_index, std::size_t epoch_index) const {
        return cells[lr_index * epoch_counts.size() + epoch_index];
    }
};

/// One training run per learning rate, to the largest epoch count; every cell
/// reads the validation accuracy after its own epoch count. Training is
/// deterministic per epoch, so this equals an independent run per cell.
HyperGrid lr_epoch_grid(const std::vector<LabeledImage>& train, const std::vector<LabeledImage>& val,
                        const std::vector<double>& lrs, const std::vector<int>& epoch_counts, std::uint64_t seed,
                        bool augment = false, const CnnArch& arch = CnnArch::standard());

/// CSV with header lr,epochs,val_accuracy,diverged.
std::string grid_csv(const HyperGrid& grid);

void save_cnn(io::ModelWriter& w, const CnnModel& m);
CnnModel load_cnn(const io::ModelReader& r);
void save_cnn(std::ostream& out, const CnnModel& m);
CnnModel load_cnn(std::istream& in);

}  // namespace vbsf::cnn
