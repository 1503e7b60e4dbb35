#include "dsrr/json_io.hpp"

#include <cstdio>

#include "json_writer.hpp"

namespace dsrr {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string to_json(const MetricsReport& report) {
  internal::JsonWriter w;
  w.begin_object();
  w.key("precision");
  w.number(report.precision);
  w.key("recall");
  w.number(report.recall);
  w.key("f1");
  w.number(report.f1);
  w.key("accuracy");
  w.number(report.accuracy);
  w.key("zero_division_flagged");
  w.boolean(report.zero_division);
  w.key("per_class");
  w.begin_array();
  for (const ClassMetrics& m : report.per_class) {
    w.begin_object();
    w.key("label");
    w.string(m.label);
    w.key("precision");
    w.number(m.precision);
    w.key("recall");
    w.number(m.recall);
    w.key("f1");
    w.number(m.f1);
    w.key("support");
    w.integer(m.support);
    w.key("zero_division");
    w.boolean(m.zero_division);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

std::string metrics_csv_header() { return "method,w,a,precision,recall,f1,accuracy"; }

std::string metrics_csv_row(const std::string& method, std::size_t window, std::size_t step,
                            const MetricsReport& report) {
  std::string out = method;
  out += ',';
  out += std::to_string(window);
  out += ',';
  out += std::to_string(step);
  for (double v : {report.precision, report.recall, report.f1, report.accuracy}) {
    out += ',';
    append_double(out, v);
  }
  return out;
}

std::string to_json(const CorrelationReport& report) {
  internal::JsonWriter w;
  w.begin_object();
  w.key("features");
  w.begin_array();
  for (const std::string& name : report.feature_names) w.string(name);
  w.end_array();
  w.key("phi_k");
  w.begin_array();
  for (const auto& row : report.phi_k) {
    w.begin_array();
    for (double v : row) w.number(v);
    w.end_array();
  }
  w.end_array();
  w.key("kendall_tau");
  w.begin_array();
  for (const auto& row : report.kendall) {
    w.begin_array();
    for (double v : row) w.number(v);
    w.end_array();
  }
  w.end_array();
  w.key("target_association");
  w.begin_array();
  for (double v : report.target_association) w.number(v);
  w.end_array();
  w.key("dropped");
  w.begin_array();
  for (const DroppedFeature& d : report.dropped) {
    w.begin_object();
    w.key("feature");
    w.string(d.name);
    w.key("index");
    w.uinteger(d.index);
    w.key("reason");
    w.string(drop_reason_name(d.reason));
    w.key("against");
    w.string(report.feature_names[d.against]);
    w.end_object();
  }
  w.end_array();
  w.key("constant_columns");
  w.begin_array();
  for (std::size_t j : report.constant_columns) w.string(report.feature_names[j]);
  w.end_array();
  w.key("tau_threshold");
  w.number(report.tau_threshold);
  w.key("n_bins");
  w.integer(report.n_bins);
  w.end_object();
  return w.take();
}

std::string matrix_csv(const std::vector<std::vector<double>>& matrix,
                       std::span<const std::string> names) {
  std::string out = "feature";
  for (const std::string& name : names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += names[i];
    for (double v : matrix[i]) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace dsrr
