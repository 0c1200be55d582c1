#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace chancomp::verify {

struct Check {
  std::string name;
  double residual = 0;
  double threshold = 0;
  bool pass = false;
  bool informational = false;  // recorded, never fails the suite
};

struct Suite {
  std::string name;
  std::vector<Check> checks;

  bool passed() const;
  nlohmann::json to_json() const;
  void print(std::ostream& os) const;
};

Suite spectra(int trials, std::uint64_t seed);
Suite nu_p(int channels, int restarts, std::uint64_t seed);
Suite min_entropy(int channels, int restarts, std::uint64_t seed);
Suite tensor_complement(int trials, std::uint64_t seed);
Suite wh_witness(int d, double p);
Suite gaussian();

}  // namespace chancomp::verify
