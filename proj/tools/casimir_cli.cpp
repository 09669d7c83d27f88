// SPDX-License-Identifier: Apache-2.0
// casimir: tables, temperature sweeps, verification suites and Debye dumps.
//
// Exit codes: 0 success, 1 verification failure or internal error,
// 2 invalid arguments, 3 non-convergence in a sweep.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "casimir/debye.hpp"
#include "casimir/heatkernel.hpp"
#include "casimir/lattice.hpp"
#include "report.hpp"

using namespace casimir;
using namespace casimir::tools;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitNonConv = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "3", "3-8", "3,5,7" or "all"
std::vector<int> parse_dims(const std::string& s) {
  if (s.empty() || s == "all") return {3, 4, 5, 6, 7, 8};
  std::set<int> out;
  std::istringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      const auto dash = item.find('-');
      const int lo = std::stoi(item.substr(0, dash));
      const int hi = dash == std::string::npos ? lo : std::stoi(item.substr(dash + 1));
      if (lo < 3 || hi > 8 || lo > hi) throw UsageError("");
      for (int d = lo; d <= hi; ++d) out.insert(d);
    } catch (const std::exception&) {
      throw UsageError("bad --dim '" + s + "' (expected D, D1-D2 or a comma list within 3..8)");
    }
  }
  return {out.begin(), out.end()};
}

std::vector<BoundaryCondition> parse_bcs(const std::string& s) {
  if (s.empty() || s == "all") return {std::begin(kAllBcs), std::end(kAllBcs)};
  std::vector<BoundaryCondition> out;
  std::istringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto bc = parse_bc(item);
    if (!bc) throw UsageError("bad --bc '" + item + "' (dirichlet, neumann, pc, ip)");
    out.push_back(*bc);
  }
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw UsageError("bad --format '" + s + "' (csv or json)");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump_debye(const std::vector<int>& dims, const std::vector<BoundaryCondition>& bcs, int order,
                       Format f) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::ostringstream os;
  if (f == Format::Csv) os << "D,bc,family,c,n,k,value\n";
  std::set<std::string> seen;
  for (BoundaryCondition bc : bcs)
    for (int D : dims) {
      const DebyeTable tab = debye_for(D, bc, order);
      int fam = 0;
      for (const auto& mf : mode_families(D, bc)) {
        const std::string cstr = mf.robin_c ? mf.robin_c->str() : "";
        for (int n = 1; n <= 2 * order; ++n)
          for (int k = 0; k <= n; ++k) {
            const Rational v = mf.robin_c ? tab.m(n, k, *mf.robin_c) : tab.d(n, k);
            if (f == Format::Csv) {
              os << D << ',' << to_string(bc) << ',' << fam << ',' << cstr << ',' << n << ',' << k << ',' << v.str()
                 << '\n';
            } else {
              arr.push_back({{"D", D}, {"bc", to_string(bc)}, {"family", fam}, {"c", cstr}, {"n", n}, {"k", k},
                             {"value", v.str()}});
            }
          }
        ++fam;
      }
    }
  return f == Format::Csv ? os.str() : arr.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir free energy of a D-dimensional spherical shell"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "casimir 1.0.0");

  std::string dim_s, bc_s, fmt_s = "csv", out_path;
  // tables
  auto* tables = app.add_subcommand("tables", "heat-kernel (hk), zeta'(0) (zp) or high-T asymptote (asym) tables");
  std::string table_kind;
  tables->add_option("kind", table_kind, "hk | zp | asym")->required()->check(CLI::IsMember({"hk", "zp", "asym"}));
  tables->add_option("--dim", dim_s, "dimension(s): D, D1-D2, comma list or all");
  tables->add_option("--bc", bc_s, "dirichlet, neumann, pc, ip, comma list or all");
  tables->add_option("--format", fmt_s, "csv | json");
  tables->add_option("--out", out_path, "output file (default stdout)");

  // sweep
  SweepSpec spec;
  std::string sweep_bc = "dirichlet";
  auto* sweep = app.add_subcommand("sweep", "free energy over a temperature grid");
  sweep->add_option("--dim", spec.dimension, "spatial dimension D (3..8)")->required();
  sweep->add_option("--bc", sweep_bc, "dirichlet | neumann | pc | ip")->required();
  sweep->add_option("--tmin", spec.aT_min, "smallest aT")->capture_default_str();
  sweep->add_option("--tmax", spec.aT_max, "largest aT")->capture_default_str();
  sweep->add_option("--points", spec.points, "grid points (>= 2)")->capture_default_str();
  sweep->add_flag("--log", spec.log_spacing, "logarithmic spacing (default linear)");
  sweep->add_option("--mu", spec.a_mu, "a*mu")->capture_default_str();
  sweep->add_option("--tol", spec.rel_tol, "relative tolerance")->capture_default_str();
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--format", fmt_s, "csv | json");
  spec.log_spacing = false;

  // verify
  std::string suite;
  SuiteOptions opt;
  auto* verify = app.add_subcommand("verify", "run the acceptance suites; exit 1 on any failure");
  verify->add_option("suite", suite, "all | exact | numeric")->required()->check(CLI::IsMember({"all", "exact", "numeric"}));
  verify->add_option("--tol", opt.zp_tol, "relative tolerance on the zeta'(0) column")->capture_default_str();
  verify->add_option("--data", opt.data_dir, "directory holding the golden tables");
  verify->add_option("--format", fmt_s, "csv (text lines) | json");

  // dump
  int order = 4;
  auto* dump = app.add_subcommand("dump", "exact Debye coefficients d_{n,k} and m_{n,k}(c)");
  dump->add_option("--dim", dim_s, "dimension(s)");
  dump->add_option("--bc", bc_s, "boundary condition(s)");
  dump->add_option("--order", order, "half the largest n")->capture_default_str()->check(CLI::Range(1, 16));
  dump->add_option("--format", fmt_s, "csv | json");
  dump->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Format fmt = parse_format(fmt_s);
    if (*tables) {
      const auto dims = parse_dims(dim_s);
      const auto bcs = parse_bcs(bc_s);
      std::vector<TableRow> rows = table_kind == "hk"   ? table_hk(dims, bcs)
                                   : table_kind == "zp" ? table_zp(dims, bcs)
                                                        : table_asym(dims, bcs);
      emit(render_table(rows, fmt), out_path);
      return kExitOk;
    }
    if (*sweep) {
      const auto bc = parse_bc(sweep_bc);
      if (!bc) throw UsageError("bad --bc '" + sweep_bc + "'");
      spec.bc = *bc;
      spec.format = fmt;
      spec.output_path = out_path;
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto rows = run_sweep(spec);
      emit(render_sweep(spec, rows), out_path);
      size_t bad = 0;
      for (const auto& r : rows) bad += r.r.diagnostics.converged ? 0 : 1;
      if (bad) {
        std::fprintf(stderr, "casimir: %zu of %zu points did not converge\n", bad, rows.size());
        return kExitNonConv;
      }
      return kExitOk;
    }
    if (*verify) {
      std::vector<int> ids;
      if (suite == "exact") ids = {1, 2, 4, 8};
      else if (suite == "numeric") ids = {3, 5, 7};
      else ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
      bool all = true;
      nlohmann::ordered_json summary = nlohmann::ordered_json::array();
      for (int id : ids) {
        const auto c = run_criterion(id, opt);
        all = all && c.pass;
        if (fmt == Format::Json)
          summary.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail},
                             {"seconds", c.seconds}});
        else
          std::cout << criterion_line(c) << std::endl;
      }
      if (fmt == Format::Json)
        std::cout << nlohmann::ordered_json{{"suite", suite}, {"pass", all}, {"criteria", summary}}.dump(2) << "\n";
      else
        std::cout << (all ? "verify " + suite + ": all passed" : "verify " + suite + ": FAILED") << std::endl;
      return all ? kExitOk : kExitFail;
    }
    if (*dump) {
      emit(dump_debye(parse_dims(dim_s), parse_bcs(bc_s), order, fmt), out_path);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "casimir: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "casimir: error: %s\n", e.what());
    return kExitFail;
  }
  return kExitFail;
}
