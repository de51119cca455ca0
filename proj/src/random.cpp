#include "gsdr/random.hpp"

namespace gsdr {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return mix_seed(mix_seed(parent) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

double sample_gamma(Rng& rng, double shape, double rate) {
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(rng);
}

double sample_beta(Rng& rng, double a, double b) {
  const double x = sample_gamma(rng, a, 1.0);
  const double y = sample_gamma(rng, b, 1.0);
  return x / (x + y);
}

double sample_normal(Rng& rng, double mean, double sd) {
  std::normal_distribution<double> dist(mean, sd);
  return dist(rng);
}

double sample_uniform(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace gsdr
