#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "authsim/channel.hpp"

namespace authsim {

// Real-valued attribute vector: (Re h_1, Im h_1, ..., Re h_N, Im h_N).
using FeatureVector = std::vector<double>;

FeatureVector featurize(const ComplexVector& estimate);
ComplexVector defeaturize(const FeatureVector& features);

// Euclidean metric on feature space. Throws on length mismatch.
double feature_distance(std::span<const double> a, std::span<const double> b);

// The four one-class nearest-neighbor variants; the name encodes which of
// the two neighbor counts (query side j, training side k) is fixed to 1.
enum class OcnnVariant { nn11, nn1k, nnj1, nnjk };

std::string to_string(OcnnVariant v);
OcnnVariant ocnn_variant_from_string(const std::string& s);

// A trained one-class nearest-neighbor classifier: the memorized training
// set plus the neighbor counts and the acceptance threshold on the distance
// ratio. Call finalize() after filling the fields; scoring needs the cached
// per-point neighborhood radii.
class OcnnModel {
public:
    OcnnVariant variant = OcnnVariant::nn11;
    int j = 1;
    int k = 1;
    double theta_d = 1.0;
    std::size_t dim = 0;
    std::vector<double> training;  // row-major, `dim` columns

    std::size_t rows() const { return dim == 0 ? 0 : training.size() / dim; }
    std::span<const double> row(std::size_t i) const { return {training.data() + i * dim, dim}; }

    // Validates invariants and caches, for every training point, the mean
    // distance to its k nearest co-training points (self excluded).
    void finalize();

    std::span<const double> self_neighbor_means() const { return self_mean_; }

private:
    std::vector<double> self_mean_;
};

// Distance-ratio score: mean distance from x to its j nearest training
// points, divided by the mean distance of those points to their own k
// nearest training neighbors. Neighbor ties are broken by training index.
// A zero denominator scores +infinity unless the numerator is also zero,
// which scores 0. Accept when score < theta_d.
double ocnn_score(std::span<const double> x, const OcnnModel& model);

inline bool ocnn_accepts(std::span<const double> x, const OcnnModel& model) {
    return ocnn_score(x, model) < model.theta_d;
}

// Cross-validated tuning. The free neighbor counts (per variant) range over
// {1, 2, 3, 5, 7, 9}; for each candidate the acceptance threshold is the
// (1 - target_pfa) quantile of held-out scores pooled over g folds, and the
// winning candidate minimizes the fold-wise deviation of the held-out
// false-alarm rate from the target (ties: smaller j + k, then smaller j).
OcnnModel tune_ocnn(const std::vector<FeatureVector>& training, OcnnVariant variant,
                    double target_pfa, int g_folds);

// Versioned text serialization carrying variant, j, k, theta_d and the
// training matrix; floating-point fields are hex-formatted and round-trip
// exactly.
void save_ocnn_model(const OcnnModel& model, std::ostream& out);
OcnnModel load_ocnn_model(std::istream& in);

}  // namespace authsim
