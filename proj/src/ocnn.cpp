#include "authsim/ocnn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace authsim {

FeatureVector featurize(const ComplexVector& estimate) {
    FeatureVector f;
    f.reserve(2 * estimate.size());
    for (const auto& z : estimate) {
        f.push_back(z.real());
        f.push_back(z.imag());
    }
    return f;
}

ComplexVector defeaturize(const FeatureVector& features) {
    if (features.size() % 2 != 0)
        throw std::invalid_argument("defeaturize: feature length must be even");
    ComplexVector v(features.size() / 2);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {features[2 * i], features[2 * i + 1]};
    return v;
}

double feature_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("feature_distance: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::string to_string(OcnnVariant v) {
    switch (v) {
        case OcnnVariant::nn11: return "11NN";
        case OcnnVariant::nn1k: return "1KNN";
        case OcnnVariant::nnj1: return "J1NN";
        case OcnnVariant::nnjk: return "JKNN";
    }
    throw std::logic_error("to_string: unknown OcnnVariant");
}

OcnnVariant ocnn_variant_from_string(const std::string& s) {
    if (s == "11NN") return OcnnVariant::nn11;
    if (s == "1KNN") return OcnnVariant::nn1k;
    if (s == "J1NN") return OcnnVariant::nnj1;
    if (s == "JKNN") return OcnnVariant::nnjk;
    throw std::invalid_argument("unknown OCNN variant: " + s);
}

namespace {

struct Neighbor {
    double dist2;
    std::size_t index;

    bool operator<(const Neighbor& o) const {
        return dist2 < o.dist2 || (dist2 == o.dist2 && index < o.index);
    }
};

inline double sq_distance(const double* a, const double* b, std::size_t dim) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

// Keeps the `want` smallest (dist2, index) pairs of a scan in ascending
// order. `want` is tiny (<= 9) so insertion into a fixed array wins over
// heap bookkeeping.
class SmallestSet {
public:
    explicit SmallestSet(std::size_t want) : want_(want) {}

    void offer(Neighbor cand) {
        if (size_ == want_ && !(cand < buf_[size_ - 1])) return;
        std::size_t pos = size_ < want_ ? size_ : size_ - 1;
        while (pos > 0 && cand < buf_[pos - 1]) {
            buf_[pos] = buf_[pos - 1];
            --pos;
        }
        buf_[pos] = cand;
        if (size_ < want_) ++size_;
    }

    std::size_t size() const { return size_; }
    const Neighbor& operator[](std::size_t i) const { return buf_[i]; }

private:
    std::size_t want_;
    std::size_t size_ = 0;
    std::array<Neighbor, 16> buf_{};
};

double mean_distance_to_knn(const OcnnModel& model, std::size_t self, int k) {
    SmallestSet nn(static_cast<std::size_t>(k));
    const double* base = model.training.data();
    const double* me = base + self * model.dim;
    for (std::size_t i = 0; i < model.rows(); ++i) {
        if (i == self) continue;
        nn.offer({sq_distance(me, base + i * model.dim, model.dim), i});
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < nn.size(); ++i) acc += std::sqrt(nn[i].dist2);
    return acc / static_cast<double>(nn.size());
}

}  // namespace

void OcnnModel::finalize() {
    const std::size_t n = rows();
    if (dim == 0 || training.size() % dim != 0)
        throw std::invalid_argument("OcnnModel: training matrix shape mismatch");
    if (j < 1 || k < 1) throw std::invalid_argument("OcnnModel: j and k must be >= 1");
    if (static_cast<std::size_t>(j) >= n || static_cast<std::size_t>(k) >= n)
        throw std::invalid_argument("OcnnModel: j and k must be smaller than the training size");
    if (!(theta_d > 0.0)) throw std::invalid_argument("OcnnModel: theta_d must be > 0");
    if ((variant == OcnnVariant::nn11 || variant == OcnnVariant::nn1k) && j != 1)
        throw std::invalid_argument("OcnnModel: variant fixes j = 1");
    if ((variant == OcnnVariant::nn11 || variant == OcnnVariant::nnj1) && k != 1)
        throw std::invalid_argument("OcnnModel: variant fixes k = 1");

    self_mean_.resize(n);
    for (std::size_t i = 0; i < n; ++i) self_mean_[i] = mean_distance_to_knn(*this, i, k);
}

double ocnn_score(std::span<const double> x, const OcnnModel& model) {
    if (x.size() != model.dim) throw std::invalid_argument("ocnn_score: feature length mismatch");
    if (model.self_neighbor_means().size() != model.rows())
        throw std::logic_error("ocnn_score: model not finalized");

    const std::size_t n = model.rows();
    const double* base = model.training.data();
    SmallestSet nn(static_cast<std::size_t>(model.j));
    for (std::size_t i = 0; i < n; ++i)
        nn.offer({sq_distance(x.data(), base + i * model.dim, model.dim), i});

    double d_xy = 0.0;
    double d_yz = 0.0;
    for (std::size_t i = 0; i < nn.size(); ++i) {
        d_xy += std::sqrt(nn[i].dist2);
        d_yz += model.self_neighbor_means()[nn[i].index];
    }
    d_xy /= static_cast<double>(nn.size());
    d_yz /= static_cast<double>(nn.size());

    if (d_yz == 0.0) return d_xy == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return d_xy / d_yz;
}

namespace {

constexpr std::array<int, 6> kNeighborGrid{1, 2, 3, 5, 7, 9};

// Acceptance threshold leaving about target_pfa of the (ascending) scores at
// or above it; the cut is taken halfway between the adjacent order
// statistics so held-out points do not sit exactly on the boundary.
double upper_quantile_threshold(const std::vector<double>& sorted_scores, double target_pfa) {
    const std::size_t m = sorted_scores.size();
    auto rejected = static_cast<std::size_t>(std::lround(target_pfa * static_cast<double>(m)));
    if (rejected >= m) rejected = m - 1;
    if (rejected == 0) {
        const double top = sorted_scores.back();
        return std::isinf(top) ? top : std::nextafter(top, std::numeric_limits<double>::max());
    }
    const double hi = sorted_scores[m - rejected];
    const double lo = sorted_scores[m - rejected - 1];
    return 0.5 * (lo + hi);
}

struct Candidate {
    int j;
    int k;
};

}  // namespace

OcnnModel tune_ocnn(const std::vector<FeatureVector>& training, OcnnVariant variant,
                    double target_pfa, int g_folds) {
    const std::size_t n = training.size();
    if (g_folds < 2) throw std::invalid_argument("tune_ocnn: need at least 2 folds");
    if (n < 10 * static_cast<std::size_t>(g_folds))
        throw std::invalid_argument("tune_ocnn: training set too small for requested folds");
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw std::domain_error("tune_ocnn: target_pfa must lie in (0, 1)");
    const std::size_t dim = training.front().size();
    for (const auto& f : training)
        if (f.size() != dim) throw std::invalid_argument("tune_ocnn: ragged feature matrix");

    const bool free_j = variant == OcnnVariant::nnj1 || variant == OcnnVariant::nnjk;
    const bool free_k = variant == OcnnVariant::nn1k || variant == OcnnVariant::nnjk;
    std::vector<Candidate> candidates;
    for (int j : free_j ? std::vector<int>(kNeighborGrid.begin(), kNeighborGrid.end())
                        : std::vector<int>{1})
        for (int k : free_k ? std::vector<int>(kNeighborGrid.begin(), kNeighborGrid.end())
                            : std::vector<int>{1})
            candidates.push_back({j, k});

    constexpr int kMaxNeighbors = kNeighborGrid.back();

    // Interleaved fold assignment: point i belongs to fold i mod g.
    const auto fold_of = [g_folds](std::size_t i) {
        return static_cast<int>(i % static_cast<std::size_t>(g_folds));
    };

    // Per candidate: held-out scores in training order, pooled across folds.
    std::vector<std::vector<double>> scores(candidates.size(), std::vector<double>(n));

    std::vector<std::size_t> part;  // indices of the fold's training portion
    part.reserve(n);
    std::vector<double> mean_knn;  // per part member, per grid k: mean k-nn distance
    for (int fold = 0; fold < g_folds; ++fold) {
        part.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (fold_of(i) != fold) part.push_back(i);

        // Neighborhood radii of every in-part point for all grid values of k.
        mean_knn.assign(part.size() * kNeighborGrid.size(), 0.0);
        for (std::size_t a = 0; a < part.size(); ++a) {
            SmallestSet nn(kMaxNeighbors);
            for (std::size_t b = 0; b < part.size(); ++b) {
                if (a == b) continue;
                nn.offer({sq_distance(training[part[a]].data(), training[part[b]].data(), dim),
                          part[b]});
            }
            double acc = 0.0;
            std::size_t gi = 0;
            for (std::size_t i = 0; i < nn.size(); ++i) {
                acc += std::sqrt(nn[i].dist2);
                while (gi < kNeighborGrid.size() &&
                       static_cast<std::size_t>(kNeighborGrid[gi]) == i + 1) {
                    mean_knn[a * kNeighborGrid.size() + gi] =
                        acc / static_cast<double>(i + 1);
                    ++gi;
                }
            }
        }

        for (std::size_t x = static_cast<std::size_t>(fold); x < n;
             x += static_cast<std::size_t>(g_folds)) {
            SmallestSet nn(kMaxNeighbors);
            for (std::size_t b = 0; b < part.size(); ++b)
                nn.offer({sq_distance(training[x].data(), training[part[b]].data(), dim),
                          part[b]});

            // part is sorted, so a part-index lookup is a binary search.
            std::array<std::size_t, kMaxNeighbors> part_pos{};
            std::array<double, kMaxNeighbors> dist{};
            for (std::size_t i = 0; i < nn.size(); ++i) {
                dist[i] = std::sqrt(nn[i].dist2);
                part_pos[i] = static_cast<std::size_t>(
                    std::lower_bound(part.begin(), part.end(), nn[i].index) - part.begin());
            }

            for (std::size_t c = 0; c < candidates.size(); ++c) {
                const auto j = static_cast<std::size_t>(candidates[c].j);
                std::size_t k_slot = 0;
                while (kNeighborGrid[k_slot] != candidates[c].k) ++k_slot;
                double d_xy = 0.0, d_yz = 0.0;
                for (std::size_t i = 0; i < j; ++i) {
                    d_xy += dist[i];
                    d_yz += mean_knn[part_pos[i] * kNeighborGrid.size() + k_slot];
                }
                d_xy /= static_cast<double>(j);
                d_yz /= static_cast<double>(j);
                scores[c][x] = d_yz == 0.0
                                   ? (d_xy == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                   : d_xy / d_yz;
            }
        }
    }

    // Pick the candidate whose false-alarm level transfers most reliably
    // across folds. Measured on held-out training scores the rejection rate
    // of a rank-statistic threshold is distribution free, so the raw
    // per-fold deviation cannot separate the candidates; what does differ is
    // the stability of the fitted threshold itself, which multiplies
    // one-for-one into the deployed false-alarm deviation. The criterion is
    // therefore the relative spread of the leave-one-fold-out thresholds.
    std::size_t best = 0;
    double best_dev = std::numeric_limits<double>::infinity();
    std::vector<double> pool, others;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double mean_cut = 0.0;
        double mean_sq = 0.0;
        bool degenerate = false;
        for (int fold = 0; fold < g_folds; ++fold) {
            others.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (fold_of(i) != fold) others.push_back(scores[c][i]);
            std::sort(others.begin(), others.end());
            const double cut = upper_quantile_threshold(others, target_pfa);
            if (!std::isfinite(cut)) degenerate = true;
            mean_cut += cut;
            mean_sq += cut * cut;
        }
        mean_cut /= static_cast<double>(g_folds);
        mean_sq /= static_cast<double>(g_folds);
        double dev;
        if (degenerate) {
            dev = std::numeric_limits<double>::infinity();
        } else if (mean_cut == 0.0) {
            dev = 0.0;  // all-zero scores (fully duplicated training)
        } else {
            dev = std::sqrt(std::max(0.0, mean_sq - mean_cut * mean_cut)) / mean_cut;
        }

        const int budget = candidates[c].j + candidates[c].k;
        const int best_budget = candidates[best].j + candidates[best].k;
        if (c == 0 || dev < best_dev ||
            (dev == best_dev && (budget < best_budget ||
                                 (budget == best_budget && candidates[c].j < candidates[best].j)))) {
            best = c;
            best_dev = dev;
        }
    }

    pool = scores[best];
    std::sort(pool.begin(), pool.end());

    OcnnModel model;
    model.variant = variant;
    model.j = candidates[best].j;
    model.k = candidates[best].k;
    model.theta_d = upper_quantile_threshold(pool, target_pfa);
    // Fully duplicated training collapses every held-out score to zero; keep
    // the threshold positive so exact matches are still accepted.
    if (!(model.theta_d > 0.0)) model.theta_d = std::numeric_limits<double>::min();
    model.dim = dim;
    model.training.reserve(n * dim);
    for (const auto& f : training) model.training.insert(model.training.end(), f.begin(), f.end());
    model.finalize();
    return model;
}

void save_ocnn_model(const OcnnModel& model, std::ostream& out) {
    char buf[64];
    out << "authsim-ocnn-model 1\n";
    out << "variant " << to_string(model.variant) << "\n";
    out << "j " << model.j << "\n";
    out << "k " << model.k << "\n";
    std::snprintf(buf, sizeof buf, "%a", model.theta_d);
    out << "theta_d " << buf << "\n";
    out << "rows " << model.rows() << "\n";
    out << "cols " << model.dim << "\n";
    for (std::size_t r = 0; r < model.rows(); ++r) {
        for (std::size_t c = 0; c < model.dim; ++c) {
            std::snprintf(buf, sizeof buf, "%a", model.training[r * model.dim + c]);
            out << buf << (c + 1 == model.dim ? "\n" : " ");
        }
    }
}

OcnnModel load_ocnn_model(std::istream& in) {
    auto fail = [](const std::string& what) -> std::runtime_error {
        return std::runtime_error("ocnn model parse error: " + what);
    };
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "authsim-ocnn-model") throw fail("bad header");
    if (version != 1) throw fail("unsupported version " + std::to_string(version));

    OcnnModel model;
    std::string key, value;
    std::size_t rows = 0;
    if (!(in >> key >> value) || key != "variant") throw fail("expected variant");
    model.variant = ocnn_variant_from_string(value);
    if (!(in >> key >> model.j) || key != "j") throw fail("expected j");
    if (!(in >> key >> model.k) || key != "k") throw fail("expected k");
    if (!(in >> key >> value) || key != "theta_d") throw fail("expected theta_d");
    model.theta_d = std::strtod(value.c_str(), nullptr);
    if (!(in >> key >> rows) || key != "rows") throw fail("expected rows");
    if (!(in >> key >> model.dim) || key != "cols") throw fail("expected cols");

    model.training.resize(rows * model.dim);
    for (auto& cell : model.training) {
        if (!(in >> value)) throw fail("truncated training matrix");
        cell = std::strtod(value.c_str(), nullptr);
    }
    model.finalize();
    return model;
}

}  // namespace authsim
