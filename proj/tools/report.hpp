// SPDX-License-Identifier: Apache-2.0
// Output formatting, sweeps and the verification suites shared by the CLI and
// the acceptance runner.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "casimir/freeenergy.hpp"
#include "casimir/heatkernel.hpp"

namespace casimir::tools {

enum class Format { Csv, Json };

// Shortest decimal string that parses back to the same double.
std::string fmt_double(double v);

struct SweepSpec {
  int dimension = 3;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double aT_min = 0.001;
  double aT_max = 10.0;
  int points = 25;
  bool log_spacing = true;
  double a_mu = 1.0;
  double rel_tol = 1e-8;
  std::string output_path;  // empty: stdout
  Format format = Format::Csv;

  void validate() const;  // throws std::invalid_argument
};

struct SweepRow {
  double aT = 0.0;
  FreeEnergyResult r;
  double ratio() const { return r.e_mu_indep / r.e_asym; }
};

std::vector<double> sweep_grid(const SweepSpec& spec);
// Parallel over points, capped by CASIMIR_THREADS (0 or unset: hardware
// concurrency). Rows come back in grid order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::string render_sweep(const SweepSpec& spec, const std::vector<SweepRow>& rows);

unsigned thread_cap();
// Evaluates f(i) for i in [0, n) on up to thread_cap() threads.
void parallel_for(size_t n, const std::function<void(size_t)>& f);

struct TableRow {
  int dimension;
  BoundaryCondition bc;
  std::string term;
  std::string exact;  // empty when only a float is known
  double value;
};

std::vector<TableRow> table_hk(const std::vector<int>& dims, const std::vector<BoundaryCondition>& bcs);
std::vector<TableRow> table_zp(const std::vector<int>& dims, const std::vector<BoundaryCondition>& bcs);
std::vector<TableRow> table_asym(const std::vector<int>& dims, const std::vector<BoundaryCondition>& bcs);
std::string render_table(const std::vector<TableRow>& rows, Format f);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::string data_dir;       // golden tables; empty: CASIMIR_DATA_DIR env or build default
  double zp_tol = 1e-4;       // relative, zeta'(0) numeric column
  double sweep_tol = 1e-8;    // rel_tol of the temperature sweeps
  int sweep_points = 25;
};

// Criterion ids 1..9.
CriterionResult run_criterion(int id, const SuiteOptions& opt);
std::string criterion_line(const CriterionResult& c);

}  // namespace casimir::tools
