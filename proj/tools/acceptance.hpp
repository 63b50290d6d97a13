#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wvol::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240611;
  bool verbose = true;
};

int criterion_count();
CriterionResult run_criterion(int id, const Options& opt = {});
std::vector<CriterionResult> run_all(const Options& opt = {});

// "PASS  C3  title: summary"
std::string format_line(const CriterionResult& r);

}  // namespace wvol::acceptance
