#ifndef ERP_INSTANCES_HPP
#define ERP_INSTANCES_HPP

#include <cstdint>
#include <random>

#include "erp/models.hpp"

namespace erp {

// Deterministic uniform doubles; std::distributions are implementation-
// defined, so sampling goes through explicit mantissa scaling everywhere.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  Complex box(double scale) { return Complex(range(-scale, scale), range(-scale, scale)); }
};

// Named fixture models.
VertexModel ones_complement_model(int n);       // a = ones, b = J - I
VertexModel independent_set_model();            // a = (1,1), b = [[1,1],[1,0]]
VertexModel negated_matching_model();           // a = (1,1), b = [[0,-1],[-1,0]]

// Random complex model: a bounded away from zero, b symmetric with entries
// in the complex unit box; twin-free by rejection.
VertexModel random_complex_model(int n, Rng& rng);

// Random real model with a mixed-sign spectrum: b = q diag(lambda) q^T with
// at least one positive and one negative eigenvalue, a positive.
VertexModel random_real_mixed_model(int n, Rng& rng);

// Duplicate `pairs` random colors of a base model into twins. Each planted
// pair is zero-sum (a_j = -a_i) or generic depending on `zero_sum`.
VertexModel plant_twins(const VertexModel& base, int pairs, bool zero_sum, Rng& rng);

// Evaluation-form edge model closed under conjugation: real points plus
// conjugate pairs (complex weights on the pairs), pairwise distinct.
EdgeModelEval random_conjugation_closed_model(int k, int real_terms, int conj_pairs, Rng& rng);

// Generic evaluation-form model: complex points in the unit box, weights
// bounded away from zero. No closure property.
EdgeModelEval random_eval_model(int k, int terms, Rng& rng);

}  // namespace erp

#endif
