#pragma once

// Input-space attacks and margin probes. Attacks see a model only through
// AttackTarget, so analytic models can stand in for trained networks.

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lwta/model.hpp"
#include "lwta/rng.hpp"
#include "lwta/tensor.hpp"

namespace lwta {

class AttackTarget {
public:
    virtual ~AttackTarget() = default;
    virtual std::size_t classes() const = 0;
    /// Per-class decision scores [B,C] under one latent draw; differentiable in x.
    virtual Tensor scores(const Tensor& x, RngStream& rng) const = 0;
    /// Mean over the batch of -log p(true class) under one latent draw.
    virtual Tensor loss(const Tensor& x, const std::vector<std::size_t>& labels, RngStream& rng) const = 0;
    /// Class probabilities [B,C] from `samples` averaged forward passes.
    virtual Tensor predict(const Tensor& x, std::size_t samples, RngStream& rng) const = 0;
};

/// A trained classifier seen by an attacker. Parameters enter as constants.
class ClassifierTarget final : public AttackTarget {
public:
    explicit ClassifierTarget(const Classifier& model, Phase phase = Phase::EvalSample)
        : model_(model), phase_(phase) {}
    std::size_t classes() const override { return model_.code().classes(); }
    Tensor scores(const Tensor& x, RngStream& rng) const override;
    Tensor loss(const Tensor& x, const std::vector<std::size_t>& labels, RngStream& rng) const override;
    Tensor predict(const Tensor& x, std::size_t samples, RngStream& rng) const override;

private:
    const Classifier& model_;
    Phase phase_;
};

/// S-sample evaluation: averages the pre-decode bits of `samples` eval-mode
/// passes and decodes once.
Tensor averaged_bits(const Classifier& model, const Tensor& x, std::size_t samples, RngStream& rng);

enum class AttackKind { FGSM, PGD, Random, DeepFool, SubspaceDeepFool };
enum class LatentPolicy {
    Resample,  // fresh latent draws at every gradient evaluation
    Frozen,    // one latent draw replayed for the whole attack
};

std::string to_string(AttackKind k);
AttackKind parse_attack_kind(const std::string& name);

struct AttackConfig {
    AttackKind kind = AttackKind::PGD;
    double epsilon = 0.3;
    std::size_t iterations = 40;
    std::optional<double> step_size;  // PGD; defaults to 2.5 * epsilon / iterations
    bool random_start = true;
    std::size_t eot_samples = 1;
    LatentPolicy latents = LatentPolicy::Resample;
    std::size_t eval_samples = 5;
    std::size_t random_inputs = 1000;
    double confidence_threshold = 0.9;
    // DeepFool
    std::size_t max_iter = 100;
    double overshoot = 0.02;
    std::size_t frozen_draws = 5;
    std::size_t window_origin = 0;
    std::size_t window_size = 8;

    double pgd_step() const { return step_size.value_or(2.5 * epsilon / static_cast<double>(iterations)); }
    /// Throws DomainError on the first invalid field.
    void validate() const;
};

/// Gradient of the attack loss in x, averaged over `eot` latent draws.
/// Resampled draws consume `rng`; frozen draws replay copies of `frozen`.
std::vector<double> input_gradient(const AttackTarget& target, const Tensor& x, const std::vector<std::size_t>& labels,
                                   std::size_t eot, LatentPolicy policy, RngStream& rng, const RngStream& frozen);

Tensor fgsm(const AttackTarget& target, const Tensor& x, const std::vector<std::size_t>& labels, double epsilon,
            std::size_t eot_samples, RngStream& rng);

/// Called with (iteration, iterate); iteration 0 is the starting point.
using IterateCallback = std::function<void(std::size_t, const Tensor&)>;

Tensor pgd(const AttackTarget& target, const Tensor& x, const std::vector<std::size_t>& labels,
           const AttackConfig& config, RngStream& rng, const IterateCallback& on_iterate = {});

/// Fraction of `n_inputs` uniform-noise images whose predicted-class
/// probability falls below the threshold (higher is more robust).
double random_attack(const AttackTarget& target, const Shape& image_shape, std::size_t n_inputs,
                     std::size_t samples, RngStream& rng, double threshold = 0.9);

struct AttackResult {
    Tensor adversarial;
    std::vector<bool> success;  // prediction wrong after the attack
    double clean_accuracy = 0.0;
    double accuracy = 0.0;      // post-attack
    std::vector<double> linf;
    std::vector<double> pre_conf;
    std::vector<double> post_conf;

    /// Columns: example_id, success, margin_or_linf, pre_conf, post_conf.
    void write_csv(std::ostream& os) const;
};

/// Runs FGSM or PGD on (x, labels) and scores both clean and adversarial
/// inputs with eval_samples-averaged predictions.
AttackResult run_attack(const AttackTarget& target, const Tensor& x, const std::vector<std::size_t>& labels,
                        const AttackConfig& config, RngStream& rng);

// ------------------------------------------------------------------ margins

/// Orthonormal type-II DCT matrix C (n x n), so that coefficients are C g C^T.
std::vector<double> dct_matrix(std::size_t n);

/// Projection onto the span of 2D-DCT basis images with both frequency
/// indices in [origin, origin + size), applied per channel of [H,W,C] images.
class DctProjector {
public:
    DctProjector(std::size_t side, std::size_t origin, std::size_t size);
    std::size_t side() const { return side_; }
    bool full() const { return origin_ == 0 && size_ == side_; }
    void apply(std::vector<double>& image, std::size_t channels) const;

private:
    std::size_t side_, origin_, size_;
    std::vector<double> c_;
};

struct DeepFoolResult {
    std::vector<double> perturbation;  // r, without the overshoot
    double margin = 0.0;               // ||r||_2
    bool flipped = false;              // false means the margin is censored
    std::size_t iterations = 0;
};

/// DeepFool on a single example [1,H,W,C] under the latent draw replayed from
/// `frozen`. With a projector, every step lies in the projected subspace.
DeepFoolResult deepfool(const AttackTarget& target, const Tensor& x, std::size_t max_iter, double overshoot,
                        const RngStream& frozen, const DctProjector* projector = nullptr);

struct SubspaceMargin {
    double margin = 0.0;  // mean over flipped draws
    std::size_t censored = 0;
    std::size_t draws = 0;
};

/// DeepFool restricted to a DCT window, averaged over `config.frozen_draws`
/// latent draws derived from `rng`.
SubspaceMargin subspace_deepfool(const AttackTarget& target, const Tensor& x, std::size_t origin, std::size_t size,
                                 const AttackConfig& config, const RngStream& rng);

struct MarginPoint {
    std::size_t window_origin = 0;
    double mean_margin = 0.0;
    std::size_t censored = 0;
};

/// Mean subspace margin over the first M images for each window along the
/// frequency diagonal.
std::vector<MarginPoint> margin_curve(const AttackTarget& target, const Tensor& images, std::size_t m,
                                      std::size_t window_size, std::size_t stride, const AttackConfig& config,
                                      const RngStream& rng);

}  // namespace lwta
