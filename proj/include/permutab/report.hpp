#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace permutab {

using Json = nlohmann::ordered_json;

enum class Status { holds, fails, inconclusive };

const char* to_string(Status s);

/// Verdict of a composite check. `summary` is for people (element labels);
/// `data` is for machines (element indices) and carries the inputs and
/// witness needed to re-run the check. `critical` marks a failure that would
/// contradict a theorem rather than a property merely not holding.
struct Report {
  std::string check;
  Status status = Status::holds;
  std::string summary;
  bool critical = false;
  Json data = Json::object();
  std::vector<Report> parts;

  bool holds() const noexcept { return status == Status::holds; }

  /// Appends a sub-check and folds its status into this one:
  /// fails dominates inconclusive, which dominates holds.
  Report& add(Report part);

  bool operator==(const Report&) const = default;
};

Report make_report(std::string check, Status status, std::string summary = {});
Report make_report(std::string check, bool holds, std::string summary = {});

/// Indented text tree, one line per check.
std::string render_text(const Report& report);

}  // namespace permutab
