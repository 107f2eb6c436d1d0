#pragma once

#include <iosfwd>
#include <vector>

#include "epr/criteria.hpp"
#include "epr/experiment.hpp"

namespace epr {

enum class OutputFormat { table, csv };

// CSV columns: criterion, method, lhs, bound, margin, violated, params,
// convergence_delta, se.  params is a semicolon-joined k=v list; empty cells
// stand for inapplicable values.  All numbers carry 12 significant digits so
// a parsed file reprints byte-identically.
void write_reports_csv(const std::vector<CriterionReport>& reports,
                       std::ostream& os,
                       const std::vector<double>* standard_errors = nullptr);

void write_reports_table(const std::vector<CriterionReport>& reports,
                         std::ostream& os,
                         const std::vector<double>* standard_errors = nullptr);

// One row per (parameter value, criterion): param, value, then the report
// columns above.
struct SweepRow {
  double value = 0.0;
  CriterionReport report;
};
void write_sweep_csv(const std::string& param, const std::vector<SweepRow>& rows,
                     std::ostream& os);
void write_sweep_table(const std::string& param, const std::vector<SweepRow>& rows,
                       std::ostream& os);

}  // namespace epr
