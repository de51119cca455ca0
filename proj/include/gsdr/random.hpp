// Random number streams and seed derivation.

#ifndef GSDR_RANDOM_HPP
#define GSDR_RANDOM_HPP

#include <cstdint>
#include <random>

namespace gsdr {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive well-separated child seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Child seed for stream `stream` of a parent seed. Distinct (parent, stream)
/// pairs give distinct seeds with overwhelming probability.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

Rng make_rng(std::uint64_t seed);

// Samplers written against the shape-rate Gamma convention.
double sample_gamma(Rng& rng, double shape, double rate);
double sample_beta(Rng& rng, double a, double b);
double sample_normal(Rng& rng, double mean, double sd);
double sample_uniform(Rng& rng);

}  // namespace gsdr

#endif  // GSDR_RANDOM_HPP
