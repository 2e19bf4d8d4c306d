#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mixlab {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<CriterionResult()> run;
};

/// The declarative claim table: every quantitative band lives here.
const std::vector<Criterion>& acceptance_table();

bool acceptance_has_claim(const std::string& id);

/// Runs every criterion (or the named subset), printing one PASS/FAIL line
/// per criterion. Returns the results in table order.
std::vector<CriterionResult> run_acceptance(std::ostream& log,
                                            const std::vector<std::string>& only = {});

}  // namespace mixlab
