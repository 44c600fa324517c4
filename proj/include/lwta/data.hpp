#pragma once

// Datasets: MNIST IDX and CIFAR-10 binary loaders, augmentation, and a
// synthetic two-blob fixture. Images are NHWC with values in [0,1].

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lwta/rng.hpp"
#include "lwta/tensor.hpp"

namespace lwta {

struct Dataset {
    Shape image_shape;           // H, W, C
    std::vector<double> pixels;  // N * H * W * C
    std::vector<std::size_t> labels;
    std::size_t classes = 10;
    std::string split;

    std::size_t size() const { return labels.size(); }
    std::size_t image_numel() const { return shape_numel(image_shape); }
    std::span<const double> image(std::size_t i) const {
        return {pixels.data() + i * image_numel(), image_numel()};
    }
    /// Range, label and size checks; throws FormatError.
    void validate() const;

    Tensor images(std::span<const std::size_t> idx) const;  // [n,H,W,C]
    Tensor images() const;
    std::vector<std::size_t> labels_at(std::span<const std::size_t> idx) const;
    Dataset subset(std::span<const std::size_t> idx) const;
    /// First n examples (all when n exceeds the size).
    Dataset head(std::size_t n) const;
};

Dataset load_mnist_idx(const std::filesystem::path& images, const std::filesystem::path& labels);
Dataset load_cifar10_bin(const std::vector<std::filesystem::path>& paths);

/// Re-serialization in the IDX layout: pixels written as round(255 * v).
std::vector<std::uint8_t> encode_idx_images(const Dataset& d);
std::vector<std::uint8_t> encode_idx_labels(const Dataset& d);
void write_mnist_idx(const Dataset& d, const std::filesystem::path& images, const std::filesystem::path& labels);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

struct AugmentSpec {
    std::size_t pad_crop = 0;  // pad then crop back to the original size
    bool horizontal_flip = false;
    std::size_t shift = 0;     // random shift of up to +-shift pixels

    static AugmentSpec mnist() { return {0, false, 2}; }
    static AugmentSpec cifar10() { return {4, true, 0}; }
    bool identity() const { return pad_crop == 0 && !horizontal_flip && shift == 0; }
};

/// Augmented copy of a batch [B,H,W,C]; uncovered pixels are zero.
Tensor augment(const Tensor& batch, const AugmentSpec& spec, RngStream& rng);

/// Two unit-variance Gaussian classes at +-separation/2 along the first axis,
/// mapped affinely into [0,1] and clipped. Images are [1, d, 1].
Dataset synthetic_blobs(std::size_t n, std::size_t d, double separation, RngStream& rng);

/// Directory holding datasets: `override` when nonempty, else LWTA_DATA_DIR,
/// else "data".
std::filesystem::path data_dir(const std::string& override_dir = "");

/// Loads the MNIST subset (train-*/t10k-* IDX files) under `dir`.
Dataset load_mnist_split(const std::filesystem::path& dir, bool train);

}  // namespace lwta
