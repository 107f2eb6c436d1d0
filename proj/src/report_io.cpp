#include "epr/report_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "epr/format.hpp"

namespace epr {
namespace {

std::string params_cell(const std::map<std::string, double>& params) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) os << ';';
    os << key << '=' << format_sig(value);
    first = false;
  }
  return os.str();
}

const char* method_label(InferenceMethod m) {
  return m == InferenceMethod::conditional ? "conditional" : "linear";
}

void write_report_row(const CriterionReport& r, std::ostream& os,
                      const double* se) {
  os << criterion_label(r.name) << ',' << method_label(r.method) << ','
     << format_sig(r.lhs) << ',' << format_sig(r.bound) << ','
     << format_sig(r.margin()) << ',' << (r.violated ? "true" : "false") << ','
     << params_cell(r.params) << ',';
  if (r.convergence_delta) os << format_sig(*r.convergence_delta);
  os << ',';
  if (se) os << format_sig(*se);
  os << '\n';
}

}  // namespace

void write_reports_csv(const std::vector<CriterionReport>& reports,
                       std::ostream& os,
                       const std::vector<double>* standard_errors) {
  os << "criterion,method,lhs,bound,margin,violated,params,convergence_delta,se\n";
  for (std::size_t i = 0; i < reports.size(); ++i)
    write_report_row(reports[i], os,
                     standard_errors ? &(*standard_errors)[i] : nullptr);
}

void write_reports_table(const std::vector<CriterionReport>& reports,
                         std::ostream& os,
                         const std::vector<double>* standard_errors) {
  os << std::left << std::setw(20) << "criterion" << std::setw(13) << "method"
     << std::setw(16) << "lhs" << std::setw(16) << "bound" << std::setw(16)
     << "margin" << std::setw(10) << "violated";
  if (standard_errors) os << std::setw(16) << "se";
  os << "params\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << std::left << std::setw(20) << criterion_label(r.name) << std::setw(13)
       << method_label(r.method) << std::setw(16) << format_sig(r.lhs)
       << std::setw(16) << format_sig(r.bound) << std::setw(16)
       << format_sig(r.margin()) << std::setw(10)
       << (r.violated ? "yes" : "no");
    if (standard_errors) os << std::setw(16) << format_sig((*standard_errors)[i]);
    os << params_cell(r.params);
    if (r.convergence_delta)
      os << (r.params.empty() ? "" : ";") << "delta="
         << format_sig(*r.convergence_delta);
    os << '\n';
    if (!r.note.empty()) os << "    note: " << r.note << '\n';
  }
}

void write_sweep_csv(const std::string& param, const std::vector<SweepRow>& rows,
                     std::ostream& os) {
  os << "param,value,criterion,method,lhs,bound,margin,violated,params,"
        "convergence_delta\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    os << param << ',' << format_sig(row.value) << ',' << criterion_label(r.name)
       << ',' << method_label(r.method) << ',' << format_sig(r.lhs) << ','
       << format_sig(r.bound) << ',' << format_sig(r.margin()) << ','
       << (r.violated ? "true" : "false") << ',' << params_cell(r.params) << ',';
    if (r.convergence_delta) os << format_sig(*r.convergence_delta);
    os << '\n';
  }
}

void write_sweep_table(const std::string& param, const std::vector<SweepRow>& rows,
                       std::ostream& os) {
  os << std::left << std::setw(10) << param << std::setw(20) << "criterion"
     << std::setw(16) << "lhs" << std::setw(16) << "bound" << std::setw(10)
     << "violated" << '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    os << std::left << std::setw(10) << format_sig(row.value) << std::setw(20)
       << criterion_label(r.name) << std::setw(16) << format_sig(r.lhs)
       << std::setw(16) << format_sig(r.bound) << std::setw(10)
       << (r.violated ? "yes" : "no") << '\n';
  }
}

}  // namespace epr
