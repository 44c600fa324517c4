#pragma once

// Diagnostics over trained models: winner-probability maps, PGD logit
// trajectories, IBP sparsity and parameter counts, with their CSV schemas.

#include <ostream>
#include <vector>

#include "lwta/attacks.hpp"
#include "lwta/data.hpp"
#include "lwta/model.hpp"

namespace lwta {

/// Mean posterior winner probability per (class, block, unit) for one layer.
struct WinnerStats {
    std::size_t layer = 0;
    std::size_t classes = 0, blocks = 0, units = 0;
    std::vector<double> probs;        // [classes, blocks, units]
    std::vector<std::size_t> counts;  // examples per class

    double at(std::size_t c, std::size_t k, std::size_t u) const { return probs[(c * blocks + k) * units + u]; }
};

/// `layer_index` counts LWTA layers of the first member, from 0.
WinnerStats winner_probabilities(const Classifier& model, const Dataset& data, std::size_t layer_index,
                                 RngStream& rng, std::size_t batch_size = 500);

/// Decoded pre-normalization class scores at every PGD iterate of one example.
struct LogitTrajectory {
    std::vector<std::vector<double>> scores;  // iterations + 1 rows of C scores
};

/// Scores are read from one eval-mode pass per iterate; `iterations == 0`
/// records only the clean example.
LogitTrajectory logit_trajectory(const Classifier& model, const Tensor& x, std::size_t label,
                                 const AttackConfig& pgd_config, RngStream& rng);

struct LayerSparsity {
    std::size_t layer = 0;
    std::string kind;
    double mean_pi = 0.0;
    double frac_pruned = 0.0;  // fraction of inclusion probabilities below 0.01
};

std::vector<LayerSparsity> sparsity_report(const Classifier& model);
/// Mean inclusion probability over every IBP-masked variable of the model.
double mean_inclusion(const Classifier& model);

std::size_t param_count(const Classifier& model);

void write_winners_csv(std::ostream& os, const std::vector<WinnerStats>& stats);
void write_logits_csv(std::ostream& os, const LogitTrajectory& t);
void write_sparsity_csv(std::ostream& os, const std::vector<LayerSparsity>& s);
void write_margins_csv(std::ostream& os, const std::vector<MarginPoint>& curve);

}  // namespace lwta
