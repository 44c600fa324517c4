#pragma once

// ELBO training with SGVB, FGSM adversarial mixing, S-sample evaluation and
// checkpoints.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lwta/data.hpp"
#include "lwta/model.hpp"

namespace lwta {

struct AdversarialConfig {
    double epsilon = 0.3;
    double mix_ratio = 0.5;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    std::size_t epochs = 10;
    std::size_t batch_size = 64;
    double prior_temperature = 0.5;
    double posterior_temperature = 0.67;
    double ibp_alpha = 1.0;
    std::optional<double> kl_scale;  // defaults to 1 / N_train
    bool kl_warmup = true;
    std::size_t warmup_epochs = 10;
    std::size_t eval_samples = 5;
    std::uint64_t seed = 0;
    std::optional<AdversarialConfig> adversarial;
    std::optional<AugmentSpec> augment;

    /// Throws DomainError on the first invalid field.
    void validate() const;
};

/// Loss terms of one step. The minimized loss is nll + kl_scale * (kl_xi +
/// kl_z + kl_u) and elbo is its negation.
struct ElboReport {
    double nll = 0.0;
    double kl_xi = 0.0;
    double kl_z = 0.0;
    double kl_u = 0.0;
    double kl_scale = 0.0;
    double elbo = 0.0;
};

class Adam {
public:
    explicit Adam(double learning_rate = 1e-3, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
    /// Applies one update from each parameter's current gradient.
    void step(const std::vector<Parameter*>& params);
    std::size_t steps() const { return t_; }

private:
    double lr_, b1_, b2_, eps_;
    std::size_t t_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

struct Batch {
    Tensor images;  // [B,H,W,C]
    std::vector<std::size_t> labels;
};

/// Loss tensor and its report for one Monte Carlo sample of every latent.
struct Objective {
    Tensor loss;
    ElboReport report;
    Tensor bits;
};

Objective elbo_objective(const Classifier& model, const Batch& batch, const TrainConfig& config, double kl_scale,
                         RngStream& rng);

/// One SGVB step; throws NumericError naming any non-finite term.
ElboReport elbo_step(Classifier& model, Adam& optimizer, const Batch& batch, const TrainConfig& config,
                     double kl_scale, RngStream& rng);

/// Replaces the first round(mix_ratio * B) examples by FGSM examples of the
/// current model; labels and batch size are unchanged.
Batch adversarial_augment(const Classifier& model, const Batch& batch, double epsilon, double mix_ratio,
                          RngStream& rng);

struct EpochMetrics {
    std::size_t epoch = 0;
    ElboReport mean;        // averaged over the epoch's steps
    double train_accuracy;  // argmax of the relaxed training pass
};

using EpochCallback = std::function<void(const EpochMetrics&)>;

std::vector<EpochMetrics> train_loop(Classifier& model, const Dataset& data, const TrainConfig& config,
                                     const EpochCallback& on_epoch = {});

struct EvalReport {
    double accuracy = 0.0;
    double mean_confidence = 0.0;  // decoded probability of the predicted class
    std::vector<std::size_t> predictions;
    Tensor probabilities;          // [N,C]
};

/// S-sample evaluation in batches of `batch_size`.
EvalReport evaluate(const Classifier& model, const Dataset& data, std::size_t samples, RngStream& rng,
                    std::size_t batch_size = 500);

// ---------------------------------------------------------------- checkpoints

inline constexpr const char* kCheckpointMagic = "LWTA1";

/// Writes `<path>` (manifest: magic line then JSON) and `<path>.bin` (raw
/// little-endian float64 blob).
void checkpoint_save(const Classifier& model, const std::filesystem::path& path, const std::string& extra_json = "{}");
Classifier checkpoint_load(const std::filesystem::path& path);

std::string model_spec_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const std::string& json_text);

}  // namespace lwta
