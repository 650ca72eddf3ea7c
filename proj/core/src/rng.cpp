#include "pkdyn/rng.hpp"

namespace pkdyn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t JobSeeder::derive(std::uint64_t job) const {
  return splitmix64(master_ ^ splitmix64(job + 0x51ed2701a9b5d3c7ULL));
}

} // namespace pkdyn
