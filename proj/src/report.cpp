#include "permutab/report.hpp"

namespace permutab {

const char* to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::fails:
      return "fails";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Report& Report::add(Report part) {
  if (part.status == Status::fails)
    status = Status::fails;
  else if (part.status == Status::inconclusive && status == Status::holds)
    status = Status::inconclusive;
  critical = critical || part.critical;
  parts.push_back(std::move(part));
  return *this;
}

Report make_report(std::string check, Status status, std::string summary) {
  Report r;
  r.check = std::move(check);
  r.status = status;
  r.summary = std::move(summary);
  return r;
}

Report make_report(std::string check, bool holds, std::string summary) {
  return make_report(std::move(check), holds ? Status::holds : Status::fails,
                     std::move(summary));
}

namespace {

void render(const Report& r, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "[";
  out += to_string(r.status);
  out += "] ";
  out += r.check;
  if (r.critical && r.status == Status::fails) out += " (CRITICAL)";
  if (!r.summary.empty()) {
    out += ": ";
    out += r.summary;
  }
  out += "\n";
  for (const auto& p : r.parts) render(p, depth + 1, out);
}

}  // namespace

std::string render_text(const Report& report) {
  std::string out;
  render(report, 0, out);
  return out;
}

}  // namespace permutab
