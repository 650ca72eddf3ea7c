#pragma once

#include <cstdint>
#include <random>

namespace pkdyn {

// splitmix64: finalizer used to derive independent per-job seeds from a
// master seed and a job counter. Thread-schedule independent: the seed of
// job i depends only on (master, i).
std::uint64_t splitmix64(std::uint64_t x);

// Counter-based seed splitter. derive(i) is pure; derive(i) != derive(j)
// for i != j with overwhelming probability.
class JobSeeder {
public:
  explicit JobSeeder(std::uint64_t master) : master_(master) {}
  std::uint64_t derive(std::uint64_t job) const;
  JobSeeder child(std::uint64_t job) const { return JobSeeder(derive(job)); }
  std::uint64_t master() const { return master_; }

private:
  std::uint64_t master_;
};

// Engine wrapper so all modules draw from the same generator type.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine_); }
  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace pkdyn
