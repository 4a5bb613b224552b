// dataset.hpp — tabular run output with metadata, CSV and JSON emission.
#pragma once

#include <deque>
#include <string>
#include <vector>

#include "json.hpp"

namespace dcesim {

// Column-oriented table. Cells are doubles except for explicitly text columns
// (dressed-level labels). Formatting is fixed (%.17g) so identical runs produce
// byte-identical files.
struct Dataset {
  struct Column {
    std::string name;
    bool text = false;
    std::vector<double> num;
    std::vector<std::string> str;
  };

  std::string name;                  // basename of the emitted files
  std::deque<Column> columns;        // deque: add_column references stay valid
  nlohmann::ordered_json metadata;   // resolved config, version, per-run extras

  long rows() const;
  Column& add_column(const std::string& col_name, bool text = false);
  const Column* find(const std::string& col_name) const;

  std::string csv_text() const;
  std::string json_text() const;   // metadata sidecar
  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;
};

std::string format_double(double x);  // %.17g

}  // namespace dcesim
