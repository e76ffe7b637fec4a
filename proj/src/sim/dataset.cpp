#include "gpsparx/sim/dataset.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gpsparx/common/angles.hpp"
#include "gpsparx/common/error.hpp"
#include "gpsparx/io/text.hpp"

namespace gpsparx::sim {

FarmDataset::FarmDataset(std::size_t n_turbines, std::vector<TimeRecord> records)
    : n_turbines_(n_turbines), records_(std::move(records)) {
  if (n_turbines_ == 0) throw InputError("a dataset needs at least one turbine");
  std::int64_t prev_t = 0;
  bool first = true;
  for (const TimeRecord& r : records_) {
    if (r.speeds.size() != n_turbines_) {
      throw InputError("every record must carry one speed per turbine");
    }
    if (!(r.wind.u_inf >= 0.0) || !std::isfinite(r.wind.u_inf)) {
      throw InputError("free-stream speeds must be finite and non-negative");
    }
    if (!(r.wind.phi >= 0.0 && r.wind.phi < kTwoPi)) {
      throw InputError("wind directions must lie in [0, 2*pi)");
    }
    for (double u : r.speeds) {
      if (!(u >= 0.0) || !std::isfinite(u)) {
        throw InputError("turbine speeds must be finite and non-negative");
      }
    }
    if (!first && r.wind.t <= prev_t) {
      throw InputError("time indices must strictly increase");
    }
    prev_t = r.wind.t;
    first = false;
  }
}

std::string FarmDataset::to_csv() const {
  std::ostringstream os;
  os << "t,phi,u_inf";
  for (std::size_t s = 1; s <= n_turbines_; ++s) os << ",u_" << s;
  os << "\n";
  for (const TimeRecord& r : records_) {
    os << r.wind.t << "," << io::format_double(r.wind.phi) << ","
       << io::format_double(r.wind.u_inf);
    for (double u : r.speeds) os << "," << io::format_double(u);
    os << "\n";
  }
  return os.str();
}

FarmDataset FarmDataset::from_csv(const std::string& text) {
  const auto lines = io::split_lines(text);
  if (lines.empty()) throw InputError("dataset CSV is empty");

  const auto header = io::split_csv(lines[0]);
  if (header.size() < 4 || header[0] != "t" || header[1] != "phi" ||
      header[2] != "u_inf") {
    throw InputError("dataset CSV header must start with t,phi,u_inf,u_1,...");
  }
  const std::size_t n_turbines = header.size() - 3;
  for (std::size_t s = 0; s < n_turbines; ++s) {
    std::ostringstream expect;
    expect << "u_" << s + 1;
    if (header[s + 3] != expect.str()) {
      throw InputError("dataset CSV speed columns must be u_1..u_S in order");
    }
  }

  std::vector<TimeRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto fields = io::split_csv(lines[li]);
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << "dataset CSV line " << li + 1 << " has " << fields.size()
          << " fields; expected " << header.size();
      throw InputError(msg.str());
    }
    TimeRecord r;
    r.wind.t = io::parse_int(fields[0], "t");
    r.wind.phi = io::parse_double(fields[1], "phi");
    r.wind.u_inf = io::parse_double(fields[2], "u_inf");
    r.speeds.resize(n_turbines);
    for (std::size_t s = 0; s < n_turbines; ++s) {
      r.speeds[s] = io::parse_double(fields[s + 3], "turbine speed");
    }
    records.push_back(std::move(r));
  }
  return FarmDataset(n_turbines, std::move(records));
}

}  // namespace gpsparx::sim
