// report.hpp
//
// Named pass/fail checks with a human-readable witness on failure.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chainext {

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

class Report {
public:
  void add(std::string name, bool passed, std::string detail = {}) {
    checks_.push_back({std::move(name), passed, std::move(detail)});
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.passed, c.detail});
  }

  [[nodiscard]] bool ok() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }

  [[nodiscard]] const Check* first_failure() const {
    for (const auto& c : checks_)
      if (!c.passed) return &c;
    return nullptr;
  }

  [[nodiscard]] std::string summary() const {
    std::string out;
    for (const auto& c : checks_) {
      out += (c.passed ? "  ok   " : "  FAIL ") + c.name;
      if (!c.detail.empty()) out += "  (" + c.detail + ")";
      out += "\n";
    }
    return out;
  }

private:
  std::vector<Check> checks_;
};

}  // namespace chainext
