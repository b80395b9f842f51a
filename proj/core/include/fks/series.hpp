// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace fks {

struct DiagnosticRecord {
  double t = 0.0;
  std::string name;
  double value = 0.0;
  double mc_error = 0.0;
};

struct DiagnosticsSeries {
  std::vector<DiagnosticRecord> records;
  std::vector<double> snapshot_times;
  std::string run_manifest;
  bool blown_up = false;
  double blow_up_time = std::numeric_limits<double>::quiet_NaN();
  std::string termination_reason;

  // Rejects decreasing times and negative errors.
  void add(double t, std::string name, double value, double mc_error = 0.0);
  std::vector<double> times_of(const std::string& name) const;
  std::vector<double> values_of(const std::string& name) const;
  // Header t,metric,value,mc_error.
  void write_csv(std::ostream& os) const;
};

}  // namespace fks
