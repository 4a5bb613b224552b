// dataset.cpp — CSV/JSON serialization of run tables.
#include "dataset.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dcesim {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

long Dataset::rows() const {
  if (columns.empty()) return 0;
  const Column& c = columns.front();
  return static_cast<long>(c.text ? c.str.size() : c.num.size());
}

Dataset::Column& Dataset::add_column(const std::string& col_name, bool text) {
  Column c;
  c.name = col_name;
  c.text = text;
  columns.push_back(std::move(c));
  return columns.back();
}

const Dataset::Column* Dataset::find(const std::string& col_name) const {
  for (const Column& c : columns)
    if (c.name == col_name) return &c;
  return nullptr;
}

std::string Dataset::csv_text() const {
  std::ostringstream out;
  // Metadata first, as comment lines; flat dotted keys keep it grep-friendly.
  const std::function<void(const std::string&, const nlohmann::ordered_json&)> emit =
      [&](const std::string& prefix, const nlohmann::ordered_json& node) {
        if (node.is_object()) {
          for (const auto& [k, v] : node.items())
            emit(prefix.empty() ? k : prefix + "." + k, v);
        } else if (node.is_array()) {
          out << "# " << prefix << " = " << node.dump() << "\n";
        } else if (node.is_string()) {
          out << "# " << prefix << " = " << node.get<std::string>() << "\n";
        } else {
          out << "# " << prefix << " = " << node.dump() << "\n";
        }
      };
  emit("", metadata);
  for (size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << columns[j].name;
  out << "\n";
  const long n = rows();
  for (long i = 0; i < n; ++i) {
    for (size_t j = 0; j < columns.size(); ++j) {
      if (j) out << ",";
      const Column& c = columns[j];
      if (c.text)
        out << c.str.at(i);
      else
        out << format_double(c.num.at(i));
    }
    out << "\n";
  }
  return out.str();
}

std::string Dataset::json_text() const {
  nlohmann::ordered_json doc = metadata;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const Column& c : columns) cols.push_back(c.name);
  doc["columns"] = cols;
  doc["rows"] = rows();
  return doc.dump(2) + "\n";
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dataset: cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("dataset: write to '" + path + "' failed");
}

}  // namespace

void Dataset::write_csv(const std::string& path) const { write_text(path, csv_text()); }
void Dataset::write_json(const std::string& path) const { write_text(path, json_text()); }

}  // namespace dcesim
